"""Human-readable report writer."""

from typing import Any, Callable, TextIO

from src.domain.interfaces import ReportSink

Renderer = Callable[[dict[str, Any]], str]


class TextReportSink(ReportSink):
    def __init__(self, render: Renderer):
        self._render = render

    def write(self, payload: dict[str, Any], stream: TextIO) -> None:
        text = self._render(payload)
        stream.write(text if text.endswith("\n") else text + "\n")

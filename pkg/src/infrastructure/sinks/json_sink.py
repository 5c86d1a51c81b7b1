"""JSON report writer."""

import json
from typing import Any, TextIO

from src.domain.interfaces import ReportSink


class JsonReportSink(ReportSink):
    """Sorted keys and fixed separators keep the output byte-stable for a fixed run."""

    def __init__(self, indent: int = 2):
        self._indent = indent

    def write(self, payload: dict[str, Any], stream: TextIO) -> None:
        json.dump(payload, stream, indent=self._indent, sort_keys=True, separators=(",", ": "))
        stream.write("\n")

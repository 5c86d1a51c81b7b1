"""Abstract sink interface for finished reports."""

from abc import ABC, abstractmethod
from typing import Any, TextIO


class ReportSink(ABC):
    """Writes a serialized report payload somewhere."""

    @abstractmethod
    def write(self, payload: dict[str, Any], stream: TextIO) -> None: ...

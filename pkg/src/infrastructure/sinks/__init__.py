"""Report sinks."""

from .json_sink import JsonReportSink
from .text_sink import TextReportSink

__all__ = [
    "JsonReportSink",
    "TextReportSink",
]

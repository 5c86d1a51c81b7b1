"""
Domain Interfaces (Ports)
"""

from .sinks import ReportSink

__all__ = [
    "ReportSink",
]

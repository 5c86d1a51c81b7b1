"""Pydantic schemas for report and error output."""

from .error import ErrorResponseSchema
from .report import SCHEMA_VERSION, CheckInfoSchema, CheckResultSchema, ReportSchema, SummarySchema

__all__ = [
    "SCHEMA_VERSION",
    "CheckInfoSchema",
    "CheckResultSchema",
    "ErrorResponseSchema",
    "ReportSchema",
    "SummarySchema",
]

"""Domain Entities - checks, results and reports."""

from .check import Check, CheckBody, CheckOutcome, CheckParameters, ParamMode, Severity
from .report import CONVENTIONS, CheckResult, Report, Verdict

__all__ = [
    "Check",
    "CheckBody",
    "CheckOutcome",
    "CheckParameters",
    "ParamMode",
    "Severity",
    "CONVENTIONS",
    "CheckResult",
    "Report",
    "Verdict",
]

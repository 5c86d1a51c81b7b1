"""Engine exceptions - every error carries a stable code."""

from .base import EngineException, InternalInconsistency
from .algebra import (
    DivisionByZero,
    DomainViolation,
    ExpressionSyntaxError,
    SubstitutionOutsideClass,
    UnknownSymbol,
)
from .forms import (
    ChartMismatch,
    DegreeOverflow,
    DependentForms,
    InconsistentRank,
    NotEquivalent,
    NotSolvable,
)
from .curvature import NoSolution, OracleDisagreement, SingularMetric
from .verification import GuardViolation, MalformedParameter, UnknownCheck, UnknownModel

__all__ = [
    "EngineException",
    "InternalInconsistency",
    "DivisionByZero",
    "DomainViolation",
    "ExpressionSyntaxError",
    "SubstitutionOutsideClass",
    "UnknownSymbol",
    "ChartMismatch",
    "DegreeOverflow",
    "DependentForms",
    "InconsistentRank",
    "NotEquivalent",
    "NotSolvable",
    "NoSolution",
    "OracleDisagreement",
    "SingularMetric",
    "GuardViolation",
    "MalformedParameter",
    "UnknownCheck",
    "UnknownModel",
]

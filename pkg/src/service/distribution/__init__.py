"""
Pfaffian systems, derived flags and equivalence certificates.
"""

from .equivalence import EquivalenceCertificate, identity_certificate, ideal_equivalent
from .pfaffian import (
    GrowthVector,
    PfaffianSystem,
    SpanMembership,
    derived_flag,
    ideal_contains,
    is_235,
    span_equal,
)

__all__ = [
    "EquivalenceCertificate",
    "identity_certificate",
    "ideal_equivalent",
    "GrowthVector",
    "PfaffianSystem",
    "SpanMembership",
    "derived_flag",
    "ideal_contains",
    "is_235",
    "span_equal",
]

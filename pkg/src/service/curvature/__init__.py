"""
Adapted coframes, connection forms, metrics and curvature certificates.
"""

from .coframe import PAIRS, AdaptedCoframe
from .connection import STRUCTURE_EQUATIONS, ConnectionSolution, solve_connection
from .curvature import (
    CurvatureTensors,
    FiniteDifferenceJet,
    SymbolicJet,
    curvature_from_jet,
    curvature_numeric,
    finite_difference_curvature,
)
from .metric import Metric, nurowski_metric, quadratic_form, quadratic_identity_check
from .settings import CurvatureSettings, curvature_settings
from .weyl import (
    WeylCertificate,
    WeylVerdict,
    ConformalComparison,
    conformal_weyl_comparison,
    isotropy_defect,
    scalar_curvature_samples,
    tensors_at,
    weyl_flat_certificate,
)

__all__ = [
    "PAIRS",
    "AdaptedCoframe",
    "STRUCTURE_EQUATIONS",
    "ConnectionSolution",
    "solve_connection",
    "CurvatureTensors",
    "FiniteDifferenceJet",
    "SymbolicJet",
    "curvature_from_jet",
    "curvature_numeric",
    "finite_difference_curvature",
    "Metric",
    "nurowski_metric",
    "quadratic_form",
    "quadratic_identity_check",
    "CurvatureSettings",
    "curvature_settings",
    "WeylCertificate",
    "WeylVerdict",
    "ConformalComparison",
    "conformal_weyl_comparison",
    "isotropy_defect",
    "tensors_at",
    "scalar_curvature_samples",
    "weyl_flat_certificate",
]

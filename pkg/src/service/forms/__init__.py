"""
Exterior algebra on coordinate charts.
"""

from .chart import Chart, Guard, GuardKind
from .coord_map import CoordMap, numeric_pullback_defect, pullback
from .form import Form, differentials, exterior_derivative, linear_combination, wedge, wedge_all
from .kernel import coefficient_matrix, cross_check_rank, kernel, numeric_ranks
from .linalg import determinant, inverse, nullspace, rank, rref, solve
from .sampling import PointSampler, default_sampler
from .settings import SamplingSettings, sampling_settings
from .vector_field import VectorField, contract, interior, lie_bracket

__all__ = [
    "Chart",
    "Guard",
    "GuardKind",
    "CoordMap",
    "numeric_pullback_defect",
    "pullback",
    "Form",
    "differentials",
    "exterior_derivative",
    "linear_combination",
    "wedge",
    "wedge_all",
    "coefficient_matrix",
    "cross_check_rank",
    "kernel",
    "numeric_ranks",
    "determinant",
    "inverse",
    "nullspace",
    "rank",
    "rref",
    "solve",
    "PointSampler",
    "default_sampler",
    "SamplingSettings",
    "sampling_settings",
    "VectorField",
    "contract",
    "interior",
    "lie_bracket",
]

"""Annihilators of Pfaffian forms with a numeric rank cross-check."""

from typing import Optional, Sequence

import numpy as np
import structlog

from src.core.metrics import record_rank_check
from src.domain.exceptions import DegreeOverflow, DependentForms, DomainViolation, InconsistentRank
from src.service.algebra import CompiledScalars, Scalar, Symbol, SymbolKind, registry

from .chart import Chart
from .form import Form, require_same_chart
from .linalg import nullspace, numeric_rank, rref
from .sampling import PointSampler, default_sampler
from .vector_field import VectorField

logger = structlog.get_logger(__name__)


def matrix_symbols(matrix: Sequence[Sequence[Scalar]]) -> list[Symbol]:
    symbols: set[Symbol] = set()
    for row in matrix:
        for entry in row:
            symbols |= entry.base_symbols()
    return sorted(symbols, key=lambda s: registry.sort_key(s.atom))


def numeric_ranks(
    matrix: Sequence[Sequence[Scalar]],
    chart: Chart,
    sampler: PointSampler,
    samples: int,
) -> list[int]:
    """Ranks of the matrix at admissible sample points."""
    symbols = matrix_symbols(matrix)
    parameters = [s for s in symbols if s.kind == SymbolKind.PARAMETER]
    flat = [entry for row in matrix for entry in row]
    compiled = CompiledScalars(flat, symbols)
    shape = (len(matrix), len(matrix[0]) if matrix else 0)
    ranks: list[int] = []
    attempts = 0
    while len(ranks) < samples:
        attempts += 1
        if attempts > samples * 10:
            raise DomainViolation(f"no evaluable sample point on {chart.name}")
        point = sampler.draw_on(chart, extra=parameters)
        try:
            entries = compiled([point[s] for s in symbols])
        except DomainViolation:
            continue
        values = np.array(entries, dtype=float).reshape(shape)
        ranks.append(numeric_rank(values, sampler.settings.rank_tolerance))
    return ranks


def cross_check_rank(
    matrix: Sequence[Sequence[Scalar]],
    symbolic: int,
    chart: Chart,
    sampler: Optional[PointSampler] = None,
    samples: Optional[int] = None,
) -> list[int]:
    """Raise InconsistentRank when no sample point reproduces the symbolic rank."""
    sampler = sampler or default_sampler()
    ranks = numeric_ranks(matrix, chart, sampler, samples or sampler.settings.rank_samples)
    agreed = symbolic in ranks
    record_rank_check(agreed)
    if not agreed:
        logger.error("rank_cross_check_failed", chart=chart.name, symbolic=symbolic, numeric=ranks)
        raise InconsistentRank(symbolic, ranks)
    if any(r != symbolic for r in ranks):
        logger.warning("rank_cross_check_partial", chart=chart.name, symbolic=symbolic, numeric=ranks)
    return ranks


def coefficient_matrix(forms: Sequence[Form]) -> list[list[Scalar]]:
    if not forms:
        return []
    for form in forms:
        require_same_chart(forms[0].chart, form.chart)
        if form.degree != 1:
            raise DegreeOverflow(form.degree, 1)
    return [form.coefficients() for form in forms]


def kernel(forms: Sequence[Form], sampler: Optional[PointSampler] = None) -> list[VectorField]:
    """Vector fields annihilated by independent 1-forms."""
    if not forms:
        raise ValueError("kernel() needs at least one form")
    chart = forms[0].chart
    matrix = coefficient_matrix(forms)
    echelon = rref(matrix)
    if echelon.rank < len(forms):
        raise DependentForms(echelon.rank, len(forms))
    cross_check_rank(matrix, echelon.rank, chart, sampler)
    return [VectorField(chart, tuple(v)) for v in nullspace(matrix)]

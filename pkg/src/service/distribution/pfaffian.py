"""Pfaffian systems, their kernels and derived flags."""

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Optional, Sequence, Union

import structlog

from src.domain.exceptions import DegreeOverflow, DependentForms
from src.service.algebra import Scalar, Symbol
from src.service.algebra.scalar import ScalarLike
from src.service.forms import (
    Chart,
    Form,
    PointSampler,
    VectorField,
    coefficient_matrix,
    cross_check_rank,
    default_sampler,
    kernel,
    lie_bracket,
    linear_combination,
    rref,
    solve,
)
from src.service.forms.form import require_same_chart
from src.service.forms.linalg import transpose

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class GrowthVector:
    ranks: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(a > b for a, b in zip(self.ranks, self.ranks[1:])):
            raise ValueError(f"growth vector must be nondecreasing: {self.ranks}")

    @property
    def is_235(self) -> bool:
        return self.ranks == (2, 3, 5)

    @property
    def final_rank(self) -> int:
        return self.ranks[-1]

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.ranks) + ")"


@dataclass(frozen=True, eq=False)
class PfaffianSystem:
    """Ordered independent 1-forms; the distribution is their common kernel."""

    name: str
    chart: Chart
    forms: tuple[Form, ...]

    def __post_init__(self) -> None:
        for form in self.forms:
            require_same_chart(self.chart, form.chart)
            if form.degree != 1:
                raise DegreeOverflow(form.degree, 1)
        symbolic = rref(coefficient_matrix(self.forms)).rank
        if symbolic < len(self.forms):
            raise DependentForms(symbolic, len(self.forms))

    @classmethod
    def create(cls, name: str, forms: Sequence[Form]) -> "PfaffianSystem":
        if not forms:
            raise ValueError("a Pfaffian system needs at least one form")
        return cls(name, forms[0].chart, tuple(forms))

    @property
    def rank(self) -> int:
        return self.chart.dimension - len(self.forms)

    def annihilator(self, sampler: Optional[PointSampler] = None) -> list[VectorField]:
        return kernel(self.forms, sampler)

    @cached_property
    def distribution(self) -> tuple[VectorField, ...]:
        return tuple(self.annihilator())

    def subs(self, bindings: Mapping[Union[Symbol, str], ScalarLike]) -> "PfaffianSystem":
        return PfaffianSystem(self.name, self.chart, tuple(f.subs(bindings) for f in self.forms))

    def recombined(self, matrix: Sequence[Sequence[ScalarLike]], name: Optional[str] = None) -> "PfaffianSystem":
        """System spanned by matrix · forms."""
        forms = tuple(
            linear_combination(self.chart, 1, zip(row, self.forms)) for row in matrix
        )
        return PfaffianSystem(name or f"{self.name}'", self.chart, forms)

    def to_text(self) -> list[str]:
        return [f.to_text() for f in self.forms]


def _independent_fields(fields: Sequence[VectorField]) -> list[VectorField]:
    """Leading maximal independent subset, in input order."""
    accepted: list[VectorField] = []
    reduced: list[tuple[int, list[Scalar]]] = []
    for field in fields:
        row = list(field.components)
        for pivot, pivot_row in reduced:
            factor = row[pivot]
            if factor.is_zero():
                continue
            row = [a if b.is_zero() else a - factor * b for a, b in zip(row, pivot_row)]
        lead = next((i for i, v in enumerate(row) if not v.is_zero()), None)
        if lead is None:
            continue
        inverse = row[lead].reciprocal()
        reduced.append((lead, [v * inverse for v in row]))
        accepted.append(field)
    return accepted


def derived_flag(
    system: PfaffianSystem,
    max_steps: int = 3,
    sampler: Optional[PointSampler] = None,
) -> GrowthVector:
    """Ranks of D, D + [D, D], ... until stabilization or max_steps."""
    sampler = sampler or default_sampler()
    chart = system.chart
    current = system.annihilator(sampler)
    ranks = [len(current)]

    for step in range(max_steps):
        if ranks[-1] == chart.dimension:
            break
        candidates = list(current)
        for i, left in enumerate(current):
            for right in current[i + 1:]:
                candidates.append(lie_bracket(left, right))
        basis = _independent_fields(candidates)
        cross_check_rank([list(f.components) for f in candidates], len(basis), chart, sampler)
        ranks.append(len(basis))
        logger.debug("derived_flag_step", system=system.name, step=step + 1, rank=len(basis))
        if len(basis) == ranks[-2]:
            break
        current = basis

    growth = GrowthVector(tuple(ranks))
    logger.info("derived_flag_computed", system=system.name, growth=str(growth))
    return growth


def is_235(system: PfaffianSystem, sampler: Optional[PointSampler] = None) -> bool:
    return derived_flag(system, sampler=sampler).is_235


@dataclass(frozen=True)
class SpanMembership:
    coefficients: tuple[Scalar, ...]
    residual: Form

    @property
    def contained(self) -> bool:
        return self.residual.is_zero()


def ideal_contains(system: PfaffianSystem, form: Form) -> SpanMembership:
    """Coefficients g with form = Σ g_j α_j, plus the residual when none exist."""
    require_same_chart(system.chart, form.chart)
    if form.degree != 1:
        raise DegreeOverflow(form.degree, 1)
    matrix = transpose(coefficient_matrix(system.forms))
    solution = solve(matrix, form.coefficients())
    combination = linear_combination(system.chart, 1, zip(solution.values, system.forms))
    residual = form - combination
    return SpanMembership(tuple(solution.values), residual)


def span_equal(left: Sequence[Form], right: Sequence[Form]) -> bool:
    """Both lists span the same module of 1-forms."""
    if len(left) != len(right):
        return False
    if not left:
        return True
    left_system = PfaffianSystem.create("left", left)
    right_system = PfaffianSystem.create("right", right)
    return all(ideal_contains(left_system, f).contained for f in right) and all(
        ideal_contains(right_system, f).contained for f in left
    )

"""Symmetric rank-2 tensors in the coordinate basis of a chart."""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

import numpy as np
import structlog

from src.domain.exceptions import ChartMismatch, DegreeOverflow, SingularMetric
from src.service.algebra import ZERO, CompiledScalars, Scalar, Symbol, SymbolKind, registry, substitute
from src.service.algebra.scalar import ScalarLike
from src.service.forms import Chart, Form, VectorField, determinant

from .coframe import AdaptedCoframe

logger = structlog.get_logger(__name__)

HALF = Fraction(1, 2)

QuadraticTerm = tuple[ScalarLike, Form, Form]


@dataclass(frozen=True, eq=False)
class Metric:
    chart: Chart
    components: tuple[tuple[Scalar, ...], ...]
    name: str = ""

    def __post_init__(self) -> None:
        n = self.chart.dimension
        if len(self.components) != n or any(len(row) != n for row in self.components):
            raise ChartMismatch(f"{len(self.components)}x? metric", self.chart.name)
        for i in range(n):
            for j in range(i + 1, n):
                if self.components[i][j] != self.components[j][i]:
                    raise ValueError(f"metric {self.name} is not symmetric at ({i}, {j})")

    @classmethod
    def zero(cls, chart: Chart, name: str = "") -> "Metric":
        n = chart.dimension
        return cls(chart, tuple(tuple(ZERO for _ in range(n)) for _ in range(n)), name)

    @classmethod
    def from_quadratic(cls, chart: Chart, terms: Iterable[QuadraticTerm], name: str = "") -> "Metric":
        """Σ c·(a⊙b) with a⊙b = (a⊗b + b⊗a)/2, so a⊙a = a⊗a."""
        n = chart.dimension
        entries = [[ZERO] * n for _ in range(n)]
        for coefficient, a, b in terms:
            for form in (a, b):
                if form.chart != chart:
                    raise ChartMismatch(form.chart.name, chart.name)
                if form.degree != 1:
                    raise DegreeOverflow(form.degree, 1)
            factor = Scalar.of(coefficient) * HALF
            ra, rb = a.coefficients(), b.coefficients()
            for i in range(n):
                if ra[i].is_zero() and rb[i].is_zero():
                    continue
                for j in range(n):
                    term = ra[i] * rb[j] + ra[j] * rb[i]
                    if not term.is_zero():
                        entries[i][j] = entries[i][j] + factor * term
        return cls(chart, tuple(tuple(row) for row in entries), name)

    @classmethod
    def square(cls, form: Form, coefficient: ScalarLike = 1) -> "Metric":
        return cls.from_quadratic(form.chart, [(coefficient, form, form)])

    # --------------------------------------------------------------------------
    # Algebra
    # --------------------------------------------------------------------------

    def _combine(self, other: "Metric", sign: int) -> "Metric":
        if other.chart != self.chart:
            raise ChartMismatch(other.chart.name, self.chart.name)
        return Metric(
            self.chart,
            tuple(
                tuple(a + b if sign > 0 else a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.components, other.components)
            ),
            self.name,
        )

    def __add__(self, other: "Metric") -> "Metric":
        return self._combine(other, 1)

    def __sub__(self, other: "Metric") -> "Metric":
        return self._combine(other, -1)

    def __neg__(self) -> "Metric":
        return self.scale(-1)

    def scale(self, factor: ScalarLike) -> "Metric":
        factor = Scalar.of(factor)
        return Metric(
            self.chart,
            tuple(tuple(factor * v for v in row) for row in self.components),
            self.name,
        )

    def is_zero(self) -> bool:
        return all(v.is_zero() for row in self.components for v in row)

    def apply(self, x: VectorField, y: VectorField) -> Scalar:
        total = ZERO
        for i, xi in enumerate(x.components):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y.components):
                gij = self.components[i][j]
                if not yj.is_zero() and not gij.is_zero():
                    total = total + gij * xi * yj
        return total

    def subs(self, bindings: Mapping[Union[Symbol, str], ScalarLike]) -> "Metric":
        return Metric(
            self.chart,
            tuple(tuple(substitute(v, bindings) for v in row) for row in self.components),
            self.name,
        )

    @cached_property
    def determinant(self) -> Scalar:
        return determinant(self.components)

    def nonzero_components(self) -> dict[str, Scalar]:
        names = [c.name for c in self.chart.coordinates]
        return {
            f"g[{names[i]},{names[j]}]": self.components[i][j]
            for i in range(len(names))
            for j in range(i, len(names))
            if not self.components[i][j].is_zero()
        }

    # --------------------------------------------------------------------------
    # Numeric evaluation
    # --------------------------------------------------------------------------

    @cached_property
    def parameters(self) -> tuple[Symbol, ...]:
        found: set[Symbol] = set()
        for row in self.components:
            for v in row:
                found |= {s for s in v.base_symbols() if s.kind == SymbolKind.PARAMETER}
        return tuple(sorted(found, key=lambda s: registry.sort_key(s.atom)))

    @cached_property
    def inputs(self) -> tuple[Symbol, ...]:
        return tuple(self.chart.coordinates) + self.parameters

    def compile(self, precision: str = "float64") -> CompiledScalars:
        flat = [v for row in self.components for v in row]
        return CompiledScalars(flat, self.inputs, precision)  # type: ignore[arg-type]

    @cached_property
    def _compiled(self) -> CompiledScalars:
        return self.compile()

    def evaluate(self, point: Mapping[Symbol, Any]) -> np.ndarray:
        n = self.chart.dimension
        values = self._compiled([point[s] for s in self.inputs])
        return np.array(values, dtype=float).reshape(n, n)

    def signature(self, point: Mapping[Symbol, Any], tolerance: float = 1e-12) -> tuple[int, int]:
        """(positive, negative) eigenvalue counts at a point."""
        values = self.evaluate(point)
        eigenvalues = np.linalg.eigvalsh(values)
        scale = max(float(np.max(np.abs(eigenvalues))), 1.0)
        if np.any(np.abs(eigenvalues) <= tolerance * scale):
            raise SingularMetric(format_point(point))
        return int(np.sum(eigenvalues > 0)), int(np.sum(eigenvalues < 0))

    def to_payload(self) -> dict[str, str]:
        return {label: str(value) for label, value in self.nonzero_components().items()}


def format_point(point: Mapping[Symbol, Any]) -> str:
    ordered = sorted(point.items(), key=lambda item: registry.sort_key(item[0].atom))
    return "{" + ", ".join(f"{s.name}={v}" for s, v in ordered) + "}"


def nurowski_metric(coframe: AdaptedCoframe, name: Optional[str] = None) -> Metric:
    """2θ1θ5 − 2θ2θ4 + (4/3)θ3θ3 in coordinate components."""
    t = coframe.theta
    return Metric.from_quadratic(
        coframe.chart,
        [(2, t[0], t[4]), (-2, t[1], t[3]), (Fraction(4, 3), t[2], t[2])],
        name or f"g[{coframe.name}]",
    )


def quadratic_form(chart: Chart, terms: Sequence[QuadraticTerm], name: str = "") -> Metric:
    return Metric.from_quadratic(chart, terms, name)


def quadratic_identity_check(lhs: Metric, rhs: Metric) -> bool:
    """Componentwise exact equality of two quadratic forms."""
    if lhs.chart != rhs.chart:
        raise ChartMismatch(lhs.chart.name, rhs.chart.name)
    difference = lhs - rhs
    equal = difference.is_zero()
    if not equal:
        logger.info(
            "quadratic_identity_failed",
            lhs=lhs.name,
            rhs=rhs.name,
            components=sorted(difference.nonzero_components()),
        )
    return equal

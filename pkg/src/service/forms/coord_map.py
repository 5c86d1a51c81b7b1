"""Coordinate maps between charts and the pullback of forms."""

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping, Optional, Sequence, Union

import mpmath
import numpy as np

from src.domain.exceptions import ChartMismatch
from src.service.algebra import (
    CompiledScalars,
    Scalar,
    Symbol,
    SymbolKind,
    differentiate,
    extended_precision,
    registry,
    substitute,
)
from src.service.algebra.scalar import ScalarLike

from .chart import Chart
from .form import Form, wedge_all


@dataclass(frozen=True, eq=False)
class CoordMap:
    """Target coordinates written in source coordinates (and parameters)."""

    name: str
    source: Chart
    target: Chart
    exprs: tuple[Scalar, ...]
    inverse: Optional["CoordMap"] = None

    def __post_init__(self) -> None:
        if len(self.exprs) != self.target.dimension:
            raise ChartMismatch(f"{len(self.exprs)} expressions", self.target.name)
        allowed = set(self.source.coordinates)
        for expr in self.exprs:
            for symbol in expr.base_symbols():
                if symbol.kind == SymbolKind.COORDINATE and symbol not in allowed:
                    raise ChartMismatch(f"{self.name} uses {symbol.name}", self.source.name)

    @classmethod
    def create(
        cls,
        name: str,
        source: Chart,
        target: Chart,
        exprs: Union[Mapping[str, ScalarLike], Sequence[ScalarLike]],
    ) -> "CoordMap":
        if isinstance(exprs, Mapping):
            values = tuple(Scalar.of(exprs[c.name]) for c in target.coordinates)
        else:
            values = tuple(Scalar.of(e) for e in exprs)
        return cls(name, source, target, values)

    @classmethod
    def identity(cls, chart: Chart) -> "CoordMap":
        return cls(f"id_{chart.name}", chart, chart, chart.scalars())

    def with_inverse(self, inverse: "CoordMap") -> "CoordMap":
        if inverse.source != self.target or inverse.target != self.source:
            raise ChartMismatch(inverse.name, self.name)
        return replace(self, inverse=inverse)

    @property
    def bindings(self) -> dict[Symbol, Scalar]:
        return dict(zip(self.target.coordinates, self.exprs))

    def pull(self, f: ScalarLike) -> Scalar:
        """f written in target coordinates, expressed in source coordinates."""
        return substitute(f, self.bindings)

    @cached_property
    def jacobian(self) -> tuple[tuple[Scalar, ...], ...]:
        """Rows: target coordinates; columns: source coordinates."""
        return tuple(
            tuple(differentiate(expr, c) for c in self.source.coordinates) for expr in self.exprs
        )

    @cached_property
    def pulled_differentials(self) -> tuple[Form, ...]:
        return tuple(
            Form.from_components(self.source, 1, {(k,): v for k, v in enumerate(row)})
            for row in self.jacobian
        )

    def pullback(self, form: Form) -> Form:
        return pullback(self, form)

    def compose(self, after: "CoordMap") -> "CoordMap":
        """after ∘ self: source of self → target of after."""
        if after.source != self.target:
            raise ChartMismatch(after.source.name, self.target.name)
        return CoordMap(
            f"{after.name}∘{self.name}",
            self.source,
            after.target,
            tuple(self.pull(e) for e in after.exprs),
        )

    def inverse_residuals(self) -> dict[str, Scalar]:
        """Nonzero entries of inverse∘self − id and self∘inverse − id."""
        if self.inverse is None:
            raise ValueError(f"{self.name} has no declared inverse")
        residuals: dict[str, Scalar] = {}
        there_and_back = self.compose(self.inverse)
        for c, e in zip(self.source.coordinates, there_and_back.exprs):
            diff = e - Scalar.of(c)
            if not diff.is_zero():
                residuals[f"{self.source.name}.{c.name}"] = diff
        back_and_there = self.inverse.compose(self)
        for c, e in zip(self.target.coordinates, back_and_there.exprs):
            diff = e - Scalar.of(c)
            if not diff.is_zero():
                residuals[f"{self.target.name}.{c.name}"] = diff
        return residuals

    def verify_inverse(self) -> bool:
        return not self.inverse_residuals()

    def subs(self, bindings: Mapping[Union[Symbol, str], ScalarLike]) -> "CoordMap":
        """Specialize parameters in every expression (and the declared inverse)."""
        inverse = self.inverse.subs(bindings) if self.inverse is not None else None
        return CoordMap(
            self.name,
            self.source,
            self.target,
            tuple(substitute(e, bindings) for e in self.exprs),
            inverse,
        )

    def to_text(self) -> str:
        return ", ".join(f"{c.name} = {e}" for c, e in zip(self.target.coordinates, self.exprs))


def pullback(m: CoordMap, form: Form) -> Form:
    if form.chart != m.target:
        raise ChartMismatch(form.chart.name, m.target.name)
    if form.degree == 0:
        return Form.function(m.source, m.pull(form.as_scalar()))
    result = Form.zero(m.source, form.degree)
    for index, value in form.terms:
        basis = wedge_all(m.pulled_differentials[i] for i in index)
        result = result + basis.scale(m.pull(value))
    return result


def numeric_pullback_defect(
    m: CoordMap,
    form: Form,
    point: Mapping[Symbol, Fraction],
    step: float = 1e-12,
) -> float:
    """Largest relative gap between symbolic pullback coefficients and the chain rule at a point.

    The Jacobian is taken by central differences of the map in extended
    precision, so it shares nothing with the symbolic derivatives.
    """
    if form.chart != m.target:
        raise ChartMismatch(form.chart.name, m.target.name)
    if form.degree == 0:
        raise ValueError("chain-rule comparison needs a form of positive degree")
    scalars = list(m.exprs) + [value for _, value in form.terms]
    parameters = sorted(
        {s for e in scalars for s in e.base_symbols() if s.kind == SymbolKind.PARAMETER},
        key=lambda s: registry.sort_key(s.atom),
    )
    source_inputs = list(m.source.coordinates) + parameters
    n, dim = m.source.dimension, m.target.dimension
    source_indices = list(combinations(range(n), form.degree))

    exact = [Fraction(point[s]) for s in source_inputs]
    pulled = pullback(m, form)
    symbolic = CompiledScalars([pulled.component(k) for k in source_indices], source_inputs)
    expected = np.array(symbolic(exact))

    mapping = CompiledScalars(list(m.exprs), source_inputs, "mpmath")
    with extended_precision():
        base = [mpmath.mpf(q.numerator) / q.denominator for q in exact]
        h = mpmath.mpf(step)
        center = mapping.evaluate_raw(base)
        jacobian = np.zeros((dim, n))
        for k in range(n):
            plus, minus = list(base), list(base)
            plus[k] += h
            minus[k] -= h
            forward, backward = mapping.evaluate_raw(plus), mapping.evaluate_raw(minus)
            for i in range(dim):
                jacobian[i, k] = float((forward[i] - backward[i]) / (2 * h))
        image = [float(v) for v in center]

    target_inputs = list(m.target.coordinates) + parameters
    coefficients = CompiledScalars([value for _, value in form.terms], target_inputs)
    values = coefficients(image + exact[n:])

    chained = np.zeros(len(source_indices))
    for (index, _), value in zip(form.terms, values):
        for j, k in enumerate(source_indices):
            chained[j] += value * np.linalg.det(jacobian[np.ix_(index, k)])

    scale = max(1.0, float(np.max(np.abs(expected))))
    return float(np.max(np.abs(expected - chained))) / scale

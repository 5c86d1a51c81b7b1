"""Vector fields, contraction and the Lie bracket."""

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from src.domain.exceptions import ChartMismatch
from src.service.algebra import ZERO, Scalar, Symbol, differentiate, substitute
from src.service.algebra.scalar import ScalarLike

from .chart import Chart
from .form import Form, format_term, require_same_chart


@dataclass(frozen=True, eq=False)
class VectorField:
    chart: Chart
    components: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if len(self.components) != self.chart.dimension:
            raise ChartMismatch(f"{len(self.components)} components", self.chart.name)

    @classmethod
    def from_components(cls, chart: Chart, values: Sequence[ScalarLike]) -> "VectorField":
        return cls(chart, tuple(Scalar.of(v) for v in values))

    @classmethod
    def from_mapping(cls, chart: Chart, values: Mapping[str, ScalarLike]) -> "VectorField":
        row = [ZERO] * chart.dimension
        for name, value in values.items():
            row[chart.index(name)] = Scalar.of(value)
        return cls(chart, tuple(row))

    @classmethod
    def partial(cls, chart: Chart, coordinate: Union[Symbol, str]) -> "VectorField":
        return cls.from_mapping(chart, {coordinate if isinstance(coordinate, str) else coordinate.name: 1})

    def apply(self, f: ScalarLike) -> Scalar:
        """Directional derivative X(f)."""
        total = ZERO
        for component, coordinate in zip(self.components, self.chart.coordinates):
            if component.is_zero():
                continue
            total = total + component * differentiate(f, coordinate)
        return total

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "VectorField") -> "VectorField":
        require_same_chart(self.chart, other.chart)
        return VectorField(self.chart, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        require_same_chart(self.chart, other.chart)
        return VectorField(self.chart, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "VectorField":
        return VectorField(self.chart, tuple(-a for a in self.components))

    def scale(self, factor: ScalarLike) -> "VectorField":
        factor = Scalar.of(factor)
        return VectorField(self.chart, tuple(factor * a for a in self.components))

    def __mul__(self, factor: object) -> "VectorField":
        if isinstance(factor, VectorField):
            return NotImplemented
        try:
            return self.scale(factor)  # type: ignore[arg-type]
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def subs(self, bindings: Mapping[Union[Symbol, str], ScalarLike]) -> "VectorField":
        return VectorField(self.chart, tuple(substitute(c, bindings) for c in self.components))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.chart, self.components))

    def to_text(self) -> str:
        parts: list[str] = []
        for component, coordinate in zip(self.components, self.chart.coordinates):
            if component.is_zero():
                continue
            parts.append(format_term(component, f"D({coordinate.name})", first=not parts))
        return "".join(parts) or "0"

    def __str__(self) -> str:
        return self.to_text()


def lie_bracket(x: VectorField, y: VectorField) -> VectorField:
    """[X, Y]^i = X(Y^i) - Y(X^i)."""
    require_same_chart(x.chart, y.chart)
    return VectorField(
        x.chart,
        tuple(x.apply(yi) - y.apply(xi) for xi, yi in zip(x.components, y.components)),
    )


def contract(form: Form, field: VectorField) -> Scalar:
    """Value of a 1-form on a vector field."""
    require_same_chart(form.chart, field.chart)
    if form.degree != 1:
        raise ValueError(f"contract() needs a 1-form, got degree {form.degree}")
    total = ZERO
    for (i,), value in form.terms:
        if not field.components[i].is_zero():
            total = total + value * field.components[i]
    return total


def interior(form: Form, field: VectorField) -> Form:
    """Interior product i_X of a k-form, k >= 1."""
    require_same_chart(form.chart, field.chart)
    if form.degree == 0:
        raise ValueError("interior product of a 0-form is undefined")
    result: dict[tuple[int, ...], Scalar] = {}
    for index, value in form.terms:
        for position, i in enumerate(index):
            xi = field.components[i]
            if xi.is_zero():
                continue
            rest = index[:position] + index[position + 1:]
            term = value * xi
            result[rest] = result.get(rest, ZERO) + (term if position % 2 == 0 else -term)
    return Form.from_components(form.chart, form.degree - 1, result)

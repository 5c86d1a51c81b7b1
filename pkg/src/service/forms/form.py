"""Differential forms on a chart, stored sparsely over increasing index tuples."""

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Union

from src.domain.exceptions import ChartMismatch, DegreeOverflow
from src.service.algebra import ZERO, Scalar, Symbol, differentiate, substitute
from src.service.algebra.scalar import ScalarLike

from .chart import Chart

Index = tuple[int, ...]


def permutation_sign(indices: Iterable[int]) -> int:
    items = list(indices)
    sign = 1
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


def _signed(value: Scalar, sign: int) -> Scalar:
    return value if sign > 0 else -value


def require_same_chart(left: Chart, right: Chart) -> None:
    if left != right:
        raise ChartMismatch(left.name, right.name)


@dataclass(frozen=True, eq=False)
class Form:
    chart: Chart
    degree: int
    terms: tuple[tuple[Index, Scalar], ...]

    # --------------------------------------------------------------------------
    # Construction
    # --------------------------------------------------------------------------

    @classmethod
    def from_components(
        cls,
        chart: Chart,
        degree: int,
        components: Mapping[Index, ScalarLike],
    ) -> "Form":
        if degree < 0 or degree > chart.dimension:
            raise DegreeOverflow(degree, chart.dimension)
        cleaned: dict[Index, Scalar] = {}
        for index, value in components.items():
            index = tuple(index)
            if len(index) != degree or any(a >= b for a, b in zip(index, index[1:])):
                raise ValueError(f"component index {index} is not strictly increasing of length {degree}")
            if index and (index[0] < 0 or index[-1] >= chart.dimension):
                raise ValueError(f"component index {index} out of range for {chart.name}")
            scalar = Scalar.of(value)
            if not scalar.is_zero():
                cleaned[index] = scalar
        return cls(chart, degree, tuple(sorted(cleaned.items())))

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> "Form":
        return cls.from_components(chart, degree, {})

    @classmethod
    def function(cls, chart: Chart, value: ScalarLike) -> "Form":
        return cls.from_components(chart, 0, {(): value})

    @classmethod
    def differential(cls, chart: Chart, coordinate: Union[Symbol, str]) -> "Form":
        return cls.from_components(chart, 1, {(chart.index(coordinate),): 1})

    @classmethod
    def one_form(cls, chart: Chart, coefficients: Mapping[str, ScalarLike]) -> "Form":
        """1-form from a coordinate name → coefficient mapping."""
        return cls.from_components(chart, 1, {(chart.index(n),): v for n, v in coefficients.items()})

    # --------------------------------------------------------------------------
    # Inspection
    # --------------------------------------------------------------------------

    @property
    def components(self) -> dict[Index, Scalar]:
        return dict(self.terms)

    def component(self, indices: Iterable[int]) -> Scalar:
        """Coefficient for any ordering of indices; repeated indices give zero."""
        items = tuple(indices)
        if len(set(items)) != len(items):
            return ZERO
        value = self.components.get(tuple(sorted(items)), ZERO)
        return _signed(value, permutation_sign(items))

    def coefficients(self) -> list[Scalar]:
        """Dense coefficient row of a 1-form."""
        if self.degree != 1:
            raise ValueError(f"coefficients() needs a 1-form, got degree {self.degree}")
        row = [ZERO] * self.chart.dimension
        for (i,), value in self.terms:
            row[i] = value
        return row

    def as_scalar(self) -> Scalar:
        if self.degree != 0:
            raise ValueError(f"as_scalar() needs a 0-form, got degree {self.degree}")
        return self.components.get((), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    # --------------------------------------------------------------------------
    # Algebra
    # --------------------------------------------------------------------------

    def _combine(self, other: "Form", sign: int) -> "Form":
        require_same_chart(self.chart, other.chart)
        if self.degree != other.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        result = self.components
        for index, value in other.terms:
            result[index] = result.get(index, ZERO) + _signed(value, sign)
        return Form.from_components(self.chart, self.degree, result)

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self) -> "Form":
        return Form(self.chart, self.degree, tuple((i, -v) for i, v in self.terms))

    def scale(self, factor: ScalarLike) -> "Form":
        factor = Scalar.of(factor)
        return Form.from_components(self.chart, self.degree, {i: factor * v for i, v in self.terms})

    def __mul__(self, factor: object) -> "Form":
        if isinstance(factor, Form):
            return NotImplemented
        try:
            return self.scale(factor)  # type: ignore[arg-type]
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def wedge(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def d(self) -> "Form":
        return exterior_derivative(self)

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "Form":
        return Form.from_components(self.chart, self.degree, {i: fn(v) for i, v in self.terms})

    def subs(self, bindings: Mapping[Union[Symbol, str], ScalarLike]) -> "Form":
        """Substitute parameters (or coordinates, keeping the chart) in every coefficient."""
        return self.map_coefficients(lambda v: substitute(v, bindings))

    def on_chart(self, chart: Chart) -> "Form":
        """Same components read on another chart of the same dimension."""
        if chart.dimension != self.chart.dimension:
            raise ChartMismatch(self.chart.name, chart.name)
        return Form(chart, self.degree, self.terms)

    # --------------------------------------------------------------------------
    # Equality and text
    # --------------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.chart == other.chart and self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.chart, self.degree, self.terms))

    def to_text(self) -> str:
        if self.degree == 0:
            return str(self.as_scalar())
        if not self.terms:
            return "0"
        parts: list[str] = []
        for index, value in self.terms:
            basis = "^".join(f"d({self.chart.coordinates[i].name})" for i in index)
            parts.append(format_term(value, basis, first=not parts))
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Form({self.chart.name}, {self.degree}, {self.to_text()})"


def _is_compound(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False


def format_term(value: Scalar, basis: str, first: bool) -> str:
    """Coefficient * basis with the sign pulled out when that keeps it a single term."""
    negative = False
    text = str(value)
    if text.startswith("-") and not _is_compound(text):
        negative = True
        text = text[1:]
    if text == "1":
        body = basis
    elif _is_compound(text):
        body = f"({text})*{basis}"
    else:
        body = f"{text}*{basis}"
    if first:
        return f"-{body}" if negative else body
    return f" - {body}" if negative else f" + {body}"


# ==============================================================================
# Operations
# ==============================================================================


def wedge(a: Form, b: Form) -> Form:
    require_same_chart(a.chart, b.chart)
    degree = a.degree + b.degree
    if degree > a.chart.dimension:
        raise DegreeOverflow(degree, a.chart.dimension)
    result: dict[Index, Scalar] = {}
    for left, f in a.terms:
        for right, g in b.terms:
            if set(left) & set(right):
                continue
            merged = left + right
            key = tuple(sorted(merged))
            result[key] = result.get(key, ZERO) + _signed(f * g, permutation_sign(merged))
    return Form.from_components(a.chart, degree, result)


def exterior_derivative(a: Form) -> Form:
    if a.degree + 1 > a.chart.dimension:
        raise DegreeOverflow(a.degree + 1, a.chart.dimension)
    result: dict[Index, Scalar] = {}
    for index, f in a.terms:
        for j, coordinate in enumerate(a.chart.coordinates):
            if j in index:
                continue
            df = differentiate(f, coordinate)
            if df.is_zero():
                continue
            position = sum(1 for i in index if i < j)
            key = tuple(sorted(index + (j,)))
            result[key] = result.get(key, ZERO) + _signed(df, -1 if position % 2 else 1)
    return Form.from_components(a.chart, a.degree + 1, result)


def differentials(chart: Chart) -> tuple[Form, ...]:
    return tuple(Form.differential(chart, c) for c in chart.coordinates)


def wedge_all(forms: Iterable[Form]) -> Form:
    items = list(forms)
    if not items:
        raise ValueError("wedge_all needs at least one form")
    result = items[0]
    for form in items[1:]:
        result = wedge(result, form)
    return result


def linear_combination(chart: Chart, degree: int, terms: Iterable[tuple[ScalarLike, Form]]) -> Form:
    result = Form.zero(chart, degree)
    for coefficient, form in terms:
        result = result + form.scale(coefficient)
    return result

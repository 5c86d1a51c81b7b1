"""Coordinate charts and their guard loci."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import ContextManager, Iterable, Mapping, Sequence, Union

from src.domain.exceptions import DomainViolation, GuardViolation, UnknownSymbol
from src.service.algebra import Scalar, Symbol, SymbolKind, assume_positive, coordinate, eval_numeric, substitute
from src.service.algebra.scalar import ScalarLike

from .settings import sampling_settings


class GuardKind(str, Enum):
    NONZERO = "nonzero"
    POSITIVE = "positive"


@dataclass(frozen=True)
class Guard:
    expr: Scalar
    kind: GuardKind = GuardKind.NONZERO

    @classmethod
    def nonzero(cls, expr: ScalarLike) -> "Guard":
        return cls(Scalar.of(expr), GuardKind.NONZERO)

    @classmethod
    def positive(cls, expr: ScalarLike) -> "Guard":
        return cls(Scalar.of(expr), GuardKind.POSITIVE)

    def _accepts(self, value: float) -> bool:
        tolerance = sampling_settings.guard_tolerance
        if self.kind == GuardKind.POSITIVE:
            return value > tolerance
        return abs(value) > tolerance

    def holds_at(self, point: Mapping[Symbol, Union[Fraction, float]]) -> bool:
        """Numeric test; guards mentioning unbound symbols are not decided here."""
        if not self.expr.base_symbols() <= set(point):
            return True
        try:
            return self._accepts(eval_numeric(self.expr, point))
        except DomainViolation:
            return False

    def check_exact(self, bindings: Mapping[Symbol, ScalarLike]) -> None:
        """Raise GuardViolation when the bound guard is a constant off the locus."""
        value = substitute(self.expr, bindings) if bindings else self.expr
        if not value.is_constant:
            return
        number = value.as_fraction()
        if self.kind == GuardKind.POSITIVE and number <= 0:
            raise GuardViolation(str(self), _format_bindings(bindings))
        if number == 0:
            raise GuardViolation(str(self), _format_bindings(bindings))

    def __str__(self) -> str:
        return f"{self.expr} > 0" if self.kind == GuardKind.POSITIVE else f"{self.expr} != 0"


def _format_bindings(bindings: Mapping[Symbol, ScalarLike]) -> str:
    return ", ".join(f"{s.name}={Scalar.of(v)}" for s, v in bindings.items())


@dataclass(frozen=True)
class Chart:
    """A named chart; equality ignores guards."""

    name: str
    coordinates: tuple[Symbol, ...]
    guards: tuple[Guard, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        names = [c.name for c in self.coordinates]
        if len(set(names)) != len(names):
            raise UnknownSymbol(",".join(names), "duplicate coordinate names")
        for c in self.coordinates:
            if c.kind != SymbolKind.COORDINATE:
                raise UnknownSymbol(c.name, f"is a {c.kind.value}, not a coordinate")

    @classmethod
    def create(cls, name: str, coordinate_names: Sequence[str], guards: Iterable[Guard] = ()) -> "Chart":
        return cls(name, tuple(coordinate(n) for n in coordinate_names), tuple(guards))

    @property
    def dimension(self) -> int:
        return len(self.coordinates)

    def index(self, symbol: Union[Symbol, str]) -> int:
        name = symbol if isinstance(symbol, str) else symbol.name
        for i, c in enumerate(self.coordinates):
            if c.name == name:
                return i
        raise UnknownSymbol(name, f"not a coordinate of chart {self.name}")

    def coordinate(self, name: str) -> Symbol:
        return self.coordinates[self.index(name)]

    def scalar(self, name: str) -> Scalar:
        return Scalar.of(self.coordinate(name))

    def scalars(self) -> tuple[Scalar, ...]:
        return tuple(Scalar.of(c) for c in self.coordinates)

    def admissible(self, point: Mapping[Symbol, Union[Fraction, float]]) -> bool:
        return all(g.holds_at(point) for g in self.guards)

    def check_parameters(self, bindings: Mapping[Symbol, ScalarLike]) -> None:
        for guard in self.guards:
            guard.check_exact(bindings)

    def with_guards(self, *guards: Guard) -> "Chart":
        return Chart(self.name, self.coordinates, self.guards + tuple(guards))

    @property
    def positive_coordinates(self) -> tuple[Symbol, ...]:
        """Coordinates that a positivity guard bounds directly."""
        bounded = {g.expr for g in self.guards if g.kind == GuardKind.POSITIVE}
        return tuple(c for c in self.coordinates if Scalar.of(c) in bounded)

    def positivity(self) -> ContextManager[None]:
        """Even roots taken inside the block treat positive coordinates as such."""
        return assume_positive(*self.positive_coordinates)

    def __str__(self) -> str:
        return f"{self.name}({', '.join(c.name for c in self.coordinates)})"

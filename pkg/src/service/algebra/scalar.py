"""Exact scalars.

A Scalar is a reduced ratio of polynomials over QQ in coordinate, parameter
and generator symbols. Canonicalization cancels common factors, reduces
radical powers, rationalizes denominators, rewrites exponentials along one
direction onto a single generator and makes the denominator's leading
coefficient (graded lex, canonical symbol order) equal to one. Zero is
decided by the numerator alone.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Union

import sympy

from src.core.metrics import record_canonicalization
from src.domain.exceptions import DivisionByZero, SubstitutionOutsideClass, UnknownSymbol

from .generators import (
    ExponentialRule,
    GeneratorDef,
    RadicalRule,
    generator_table,
    rational_gcd,
)
from .printer import format_ratio
from .symbols import Symbol, SymbolKind, ordered_atoms, registry

Number = Union[int, Fraction, sympy.Rational]
ScalarLike = Union["Scalar", int, Fraction, sympy.Rational, Symbol]

_ZERO = sympy.Integer(0)
_ONE = sympy.Integer(1)
_MAX_RESCALE_PASSES = 4


# ==============================================================================
# Canonicalization
# ==============================================================================


def _cancel(num: sympy.Expr, den: sympy.Expr) -> tuple[sympy.Expr, sympy.Expr]:
    atoms = ordered_atoms(num.free_symbols | den.free_symbols)
    if not atoms:
        return sympy.Rational(num) / sympy.Rational(den), _ONE
    p = sympy.Poly(num, *atoms, domain=sympy.QQ)
    q = sympy.Poly(den, *atoms, domain=sympy.QQ)
    coeff, p, q = p.cancel(q, include=False)
    return sympy.expand(coeff * p.as_expr()), q.as_expr()


def _reduce_radicals(expr: sympy.Expr, radicals: Iterable[GeneratorDef]) -> sympy.Expr:
    for gdef in radicals:
        atom = gdef.atom
        if atom not in expr.free_symbols:
            continue
        rule = gdef.rule
        poly = sympy.Poly(expr, atom)
        if poly.degree() < rule.index:
            continue
        expr = sympy.expand(
            sum(
                (
                    coeff * rule.base ** (power // rule.index) * atom ** (power % rule.index)
                    for (power,), coeff in poly.terms()
                ),
                _ZERO,
            )
        )
    return expr


def _rationalizing_cofactor(den: sympy.Expr, gdef: GeneratorDef) -> sympy.Expr:
    """First adjugate column of multiplication-by-den on the basis 1, r, ..., r^(k-1)."""
    atom, k = gdef.atom, gdef.rule.index
    columns = []
    for j in range(k):
        product = _reduce_radicals(sympy.expand(den * atom**j), [gdef])
        poly = sympy.Poly(product, atom)
        columns.append([poly.coeff_monomial(atom**i) for i in range(k)])
    matrix = sympy.Matrix(k, k, lambda i, j: columns[j][i])
    adjugate = matrix.adjugate()
    return sympy.expand(sum((adjugate[i, 0] * atom**i for i in range(k)), _ZERO))


def _rewrite_exponentials(
    expr: sympy.Expr,
    atoms: list[sympy.Symbol],
    scales: list[sympy.Rational],
    unit: sympy.Rational,
    target: sympy.Symbol,
) -> sympy.Expr:
    poly = sympy.Poly(expr, *atoms)
    terms = []
    for monom, coeff in poly.terms():
        exponent = sum((m * s for m, s in zip(monom, scales)), _ZERO) / unit
        terms.append(coeff * target ** int(exponent))
    return sympy.expand(sum(terms, _ZERO))


def _rescale_exponentials(num: sympy.Expr, den: sympy.Expr) -> tuple[sympy.Expr, sympy.Expr]:
    for _ in range(_MAX_RESCALE_PASSES):
        groups: dict[tuple[str, str], list[GeneratorDef]] = {}
        for gdef in generator_table.generators_in(num.free_symbols | den.free_symbols):
            if gdef.is_exponential:
                key = (gdef.rule.coordinate.name, sympy.srepr(gdef.rule.direction))
                groups.setdefault(key, []).append(gdef)

        changed = False
        for group in groups.values():
            atoms = [g.atom for g in group]
            scales = [g.rule.scale for g in group]
            exponents = set()
            for expr in (num, den):
                for monom in sympy.Poly(expr, *atoms).monoms():
                    exponents.add(sum((m * s for m, s in zip(monom, scales)), _ZERO))
            unit = rational_gcd(exponents)
            if len(group) == 1 and scales[0] == unit:
                continue
            rule = group[0].rule
            target = generator_table.exponential_scaled(rule.coordinate, rule.direction, unit).atom
            num = _rewrite_exponentials(num, atoms, scales, unit, target)
            den = _rewrite_exponentials(den, atoms, scales, unit, target)
            changed = True

        if not changed:
            break
        num, den = _cancel(num, den)
    return num, den


def canonicalize(num: sympy.Expr, den: sympy.Expr) -> tuple[sympy.Expr, sympy.Expr]:
    record_canonicalization()
    num = sympy.expand(num)
    den = sympy.expand(den)
    if den == 0:
        raise DivisionByZero(format_ratio(num, _ONE))
    if num == 0:
        return _ZERO, _ONE
    if not num.free_symbols and not den.free_symbols:
        return sympy.Rational(num) / sympy.Rational(den), _ONE

    num, den = _cancel(num, den)

    radicals = [
        g for g in generator_table.generators_in(num.free_symbols | den.free_symbols) if g.is_radical
    ]
    if radicals:
        num = _reduce_radicals(num, radicals)
        den = _reduce_radicals(den, radicals)
        for gdef in radicals:
            if gdef.atom not in den.free_symbols:
                continue
            cofactor = _rationalizing_cofactor(den, gdef)
            num = _reduce_radicals(sympy.expand(num * cofactor), radicals)
            den = _reduce_radicals(sympy.expand(den * cofactor), radicals)
        if den == 0:
            raise DivisionByZero("denominator vanishes under radical relations")
        if num == 0:
            return _ZERO, _ONE
        num, den = _cancel(num, den)

    num, den = _rescale_exponentials(num, den)

    atoms = ordered_atoms(den.free_symbols)
    lc = sympy.Poly(den, *atoms, domain=sympy.QQ).LC(order="grlex") if atoms else den
    if lc != 1:
        num = sympy.expand(num / lc)
        den = sympy.expand(den / lc)
    return num, den


# ==============================================================================
# Scalar
# ==============================================================================


class Scalar:
    """Immutable exact scalar; arithmetic returns canonical Scalars."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, num: sympy.Expr | Number = 0, den: sympy.Expr | Number = 1, *, canonical: bool = False):
        num = sympy.sympify(num)
        den = sympy.sympify(den)
        if not canonical:
            num, den = canonicalize(num, den)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Scalar is immutable")

    # --------------------------------------------------------------------------
    # Construction
    # --------------------------------------------------------------------------

    @classmethod
    def of(cls, value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, Symbol):
            if value.kind == SymbolKind.GENERATOR:
                generator_table.lookup(value.atom)
            return cls(value.atom, _ONE, canonical=True)
        if isinstance(value, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(value, int):
            return cls(sympy.Integer(value), _ONE, canonical=True)
        if isinstance(value, Fraction):
            return cls(sympy.Rational(value.numerator, value.denominator), _ONE, canonical=True)
        if isinstance(value, sympy.Rational):
            return cls(value, _ONE, canonical=True)
        raise TypeError(f"cannot build a Scalar from {type(value).__name__}")

    @classmethod
    def from_expr(cls, expr: sympy.Expr) -> "Scalar":
        num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
        return cls(num, den)

    @classmethod
    def zero(cls) -> "Scalar":
        return ZERO

    @classmethod
    def one(cls) -> "Scalar":
        return ONE

    # --------------------------------------------------------------------------
    # Inspection
    # --------------------------------------------------------------------------

    @property
    def num(self) -> sympy.Expr:
        return self._num

    @property
    def den(self) -> sympy.Expr:
        return self._den

    def is_zero(self) -> bool:
        return self._num == 0

    @property
    def is_constant(self) -> bool:
        return not self._num.free_symbols and not self._den.free_symbols

    def as_fraction(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not a rational constant")
        value = sympy.Rational(self._num) / sympy.Rational(self._den)
        return Fraction(int(value.p), int(value.q))

    @property
    def free_atoms(self) -> set[sympy.Symbol]:
        return set(self._num.free_symbols | self._den.free_symbols)

    @property
    def generators(self) -> list[GeneratorDef]:
        return generator_table.generators_in(self.free_atoms)

    def base_symbols(self) -> set[Symbol]:
        """Coordinates and parameters this scalar depends on, through generators too."""
        atoms = set()
        for atom in self.free_atoms:
            gdef = generator_table.get(atom)
            if gdef is None:
                atoms.add(atom)
            elif isinstance(gdef.rule, ExponentialRule):
                atoms.add(gdef.rule.coordinate)
                atoms |= gdef.rule.direction.free_symbols
            else:
                atoms |= gdef.rule.base.free_symbols
        return {registry.lookup(a.name) for a in atoms}

    def depends_on(self, symbol: Symbol) -> bool:
        return symbol in self.base_symbols()

    # --------------------------------------------------------------------------
    # Arithmetic
    # --------------------------------------------------------------------------

    @staticmethod
    def _coerce(value: object) -> Optional["Scalar"]:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction, sympy.Rational, Symbol)) and not isinstance(value, bool):
            return Scalar.of(value)
        return None

    def __add__(self, other: object) -> "Scalar":
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if b.is_zero():
            return self
        if self.is_zero():
            return b
        if self._den == b._den:
            return Scalar(self._num + b._num, self._den)
        return Scalar(self._num * b._den + b._num * self._den, self._den * b._den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self._num, self._den, canonical=True)

    def __sub__(self, other: object) -> "Scalar":
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other: object) -> "Scalar":
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other: object) -> "Scalar":
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if self.is_zero() or b.is_zero():
            return ZERO
        if b.is_constant and b._den == 1:
            return Scalar(sympy.expand(self._num * b._num), self._den, canonical=True)
        return Scalar(self._num * b._num, self._den * b._den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Scalar":
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if b.is_zero():
            raise DivisionByZero(str(b))
        return Scalar(self._num * b._den, self._den * b._num)

    def __rtruediv__(self, other: object) -> "Scalar":
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b / self

    def __pow__(self, exponent: Union[int, Fraction]) -> "Scalar":
        if isinstance(exponent, Fraction) and exponent.denominator != 1:
            return root(self, exponent.denominator) ** exponent.numerator
        n = int(exponent)
        if n == 0:
            return ONE
        if n < 0:
            if self.is_zero():
                raise DivisionByZero("zero to a negative power")
            return Scalar(self._den**-n, self._num**-n)
        return Scalar(self._num**n, self._den**n)

    def reciprocal(self) -> "Scalar":
        return ONE / self

    # --------------------------------------------------------------------------
    # Calculus and substitution
    # --------------------------------------------------------------------------

    def diff(self, variable: Symbol) -> "Scalar":
        return differentiate(self, variable)

    def subs(self, bindings: Mapping[Union[Symbol, str], ScalarLike]) -> "Scalar":
        return substitute(self, bindings)

    # --------------------------------------------------------------------------
    # Equality and text
    # --------------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self._num == b._num and self._den == b._den

    def __hash__(self) -> int:
        cached = self._hash
        if cached is None:
            cached = hash((self._num, self._den))
            object.__setattr__(self, "_hash", cached)
        return cached

    def __str__(self) -> str:
        return format_ratio(self._num, self._den)

    def __repr__(self) -> str:
        return f"Scalar({self})"


ZERO = Scalar(_ZERO, _ONE, canonical=True)
ONE = Scalar(_ONE, _ONE, canonical=True)


def as_scalar(value: ScalarLike) -> Scalar:
    return Scalar.of(value)


# ==============================================================================
# Operations
# ==============================================================================


def arith(a: ScalarLike, b: ScalarLike, op: str) -> Scalar:
    left, right = Scalar.of(a), Scalar.of(b)
    if op == "add":
        return left + right
    if op == "sub":
        return left - right
    if op == "mul":
        return left * right
    if op == "div":
        return left / right
    raise ValueError(f"unknown operation {op!r}")


def is_zero(a: ScalarLike) -> bool:
    return Scalar.of(a).is_zero()


@lru_cache(maxsize=None)
def generator_derivative(gdef: GeneratorDef, variable: Symbol) -> Optional[Scalar]:
    rule = gdef.rule
    if isinstance(rule, ExponentialRule):
        if rule.coordinate != variable.atom:
            return None
        return Scalar.from_expr(rule.coefficient) * Scalar(gdef.atom, _ONE, canonical=True)
    base = Scalar(rule.base, _ONE)
    dbase = differentiate(base, variable)
    if dbase.is_zero():
        return None
    return Scalar(gdef.atom, _ONE, canonical=True) * dbase / (base * rule.index)


def _polynomial_derivative(expr: sympy.Expr, variable: Symbol) -> Scalar:
    total = Scalar(sympy.diff(expr, variable.atom), _ONE)
    for gdef in generator_table.generators_in(expr.free_symbols):
        chain = generator_derivative(gdef, variable)
        if chain is None:
            continue
        total = total + Scalar(sympy.diff(expr, gdef.atom), _ONE) * chain
    return total


def differentiate(a: ScalarLike, variable: Symbol) -> Scalar:
    """Partial derivative along a coordinate, quotient rule on num/den."""
    a = Scalar.of(a)
    if variable.kind != SymbolKind.COORDINATE:
        raise UnknownSymbol(variable.name, "derivatives are taken along coordinates only")
    if a.is_constant:
        return ZERO
    d_num = _polynomial_derivative(a.num, variable)
    d_den = _polynomial_derivative(a.den, variable)
    if d_den.is_zero():
        return d_num / Scalar(a.den, _ONE, canonical=True)
    num = Scalar(a.num, _ONE, canonical=True)
    den = Scalar(a.den, _ONE, canonical=True)
    return (d_num * den - num * d_den) / (den * den)


def _resolve_bindings(bindings: Mapping[Union[Symbol, str], ScalarLike]) -> dict[sympy.Symbol, Scalar]:
    resolved: dict[sympy.Symbol, Scalar] = {}
    for key, value in bindings.items():
        symbol = key if isinstance(key, Symbol) else registry.lookup(key)
        if symbol.kind == SymbolKind.GENERATOR:
            raise UnknownSymbol(symbol.name, "generators cannot be bound")
        resolved[symbol.atom] = Scalar.of(value)
    return resolved


def _generator_image(gdef: GeneratorDef, resolved: Mapping[sympy.Symbol, Scalar]) -> Optional[Scalar]:
    rule = gdef.rule
    if isinstance(rule, ExponentialRule):
        coordinate_image = resolved.get(rule.coordinate)
        bound_parameters = rule.direction.free_symbols & resolved.keys()
        if coordinate_image is None and not bound_parameters:
            return None
        coefficient = Scalar.from_expr(rule.coefficient)
        if bound_parameters:
            coefficient = _substitute(coefficient, resolved)
        if coordinate_image is None:
            coordinate_image = Scalar(rule.coordinate, _ONE, canonical=True)
        return exp(coefficient * coordinate_image)

    assert isinstance(rule, RadicalRule)
    if not (rule.base.free_symbols & resolved.keys()):
        return None
    return root(_substitute(Scalar(rule.base, _ONE), resolved), rule.index)


def _substitute(a: Scalar, resolved: Mapping[sympy.Symbol, Scalar]) -> Scalar:
    replacement: dict[sympy.Symbol, Scalar] = {}
    for atom in a.free_atoms:
        if atom in resolved:
            replacement[atom] = resolved[atom]
            continue
        gdef = generator_table.get(atom)
        if gdef is not None:
            image = _generator_image(gdef, resolved)
            if image is not None:
                replacement[atom] = image
    if not replacement:
        return a

    mapping = {atom: value.num / value.den for atom, value in replacement.items()}
    num = a.num.xreplace(mapping)
    den = a.den.xreplace(mapping)
    num_n, num_d = sympy.together(num).as_numer_denom()
    den_n, den_d = sympy.together(den).as_numer_denom()
    if sympy.expand(den_n) == 0:
        raise DivisionByZero(f"substituted denominator of {a}")
    return Scalar(num_n * den_d, num_d * den_n)


def substitute(a: ScalarLike, bindings: Mapping[Union[Symbol, str], ScalarLike]) -> Scalar:
    """Simultaneous substitution of coordinates and parameters, recanonicalized."""
    return _substitute(Scalar.of(a), _resolve_bindings(bindings))


# ==============================================================================
# Transcendental constructors
# ==============================================================================


def exp(argument: ScalarLike) -> Scalar:
    """exp of a parameter-linear form in the coordinates without constant term."""
    value = Scalar.of(argument)
    if value.is_zero():
        return ONE
    if value.generators:
        raise SubstitutionOutsideClass(f"exp({value}) has a transcendental argument")
    coordinates = [a for a in ordered_atoms(value.free_atoms) if registry.kind_of(a) == SymbolKind.COORDINATE]
    if any(c in value.den.free_symbols for c in coordinates):
        raise SubstitutionOutsideClass(f"exp({value}) is not linear in the coordinates")
    if not coordinates:
        raise SubstitutionOutsideClass(f"exp({value}) has a constant exponent")

    poly = sympy.Poly(value.num, *coordinates)
    if poly.total_degree() > 1 or poly.coeff_monomial(1) != 0:
        raise SubstitutionOutsideClass(f"exp({value}) is not linear in the coordinates")

    numerator: list[sympy.Expr] = []
    denominator: list[sympy.Expr] = []
    for coordinate in coordinates:
        coeff = poly.coeff_monomial(coordinate)
        if coeff == 0:
            continue
        gdef, sign = generator_table.exponential(coordinate, coeff / value.den)
        (numerator if sign > 0 else denominator).append(gdef.atom)
    return Scalar(sympy.Mul(*numerator), sympy.Mul(*denominator))


def sinh(argument: ScalarLike) -> Scalar:
    value = Scalar.of(argument)
    return (exp(value) - exp(-value)) / 2


def cosh(argument: ScalarLike) -> Scalar:
    value = Scalar.of(argument)
    return (exp(value) + exp(-value)) / 2


def root(argument: ScalarLike, index: int) -> Scalar:
    """Real index-th root; bases containing generators are rejected."""
    value = Scalar.of(argument)
    if index < 1:
        raise SubstitutionOutsideClass(f"root index must be positive, got {index}")
    if index == 1 or value.is_zero():
        return value
    if value.generators:
        raise SubstitutionOutsideClass(f"root of {value} would nest generators")

    num_prefactor, num_parts = generator_table.split_root(value.num, index)
    den_prefactor, den_parts = generator_table.split_root(value.den, index)
    num = num_prefactor * sympy.Mul(*(g.atom**e for g, e in num_parts))
    den = den_prefactor * sympy.Mul(*(g.atom**e for g, e in den_parts))
    return Scalar(num, den)


def sqrt(argument: ScalarLike) -> Scalar:
    return root(argument, 2)


def cbrt(argument: ScalarLike) -> Scalar:
    return root(argument, 3)

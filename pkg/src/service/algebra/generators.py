"""Exponential and radical generators and the append-only table that owns them.

An exponential generator is exp(scale * direction * x) for one coordinate x,
a positive rational scale and a sign-normalized, content-free direction in
the parameters. A radical generator is the real k-th root of -1, of a prime,
or of a polynomial free of generators.
"""

import math
import threading
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Union

import structlog
import sympy

from src.domain.exceptions import SubstitutionOutsideClass, UnknownSymbol

from .printer import format_polynomial, format_ratio
from .symbols import Symbol, SymbolKind, is_assumed_positive, ordered_atoms, registry

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class ExponentialRule:
    coordinate: sympy.Symbol
    direction: sympy.Expr
    scale: sympy.Rational

    @property
    def coefficient(self) -> sympy.Expr:
        return self.scale * self.direction


@dataclass(frozen=True)
class RadicalRule:
    base: sympy.Expr
    index: int


GeneratorRule = Union[ExponentialRule, RadicalRule]


@dataclass(frozen=True)
class GeneratorDef:
    symbol: Symbol
    rule: GeneratorRule

    @property
    def atom(self) -> sympy.Symbol:
        return self.symbol.atom

    @property
    def name(self) -> str:
        return self.symbol.name

    @property
    def is_radical(self) -> bool:
        return isinstance(self.rule, RadicalRule)

    @property
    def is_exponential(self) -> bool:
        return isinstance(self.rule, ExponentialRule)


def _leading_sign(expr: sympy.Expr) -> int:
    atoms = ordered_atoms(expr.free_symbols)
    if not atoms:
        return 1 if expr > 0 else -1
    lc = sympy.Poly(expr, *atoms).LC(order="grlex")
    return 1 if lc > 0 else -1


def monic_ratio(expr: sympy.Expr) -> tuple[sympy.Expr, sympy.Expr]:
    """Reduced numerator/denominator with a denominator of leading coefficient 1."""
    num, den = sympy.fraction(sympy.cancel(sympy.sympify(expr)))
    atoms = ordered_atoms(den.free_symbols)
    lc = sympy.Poly(den, *atoms).LC(order="grlex") if atoms else den
    return sympy.expand(num / lc), sympy.expand(den / lc)


def split_exponent_coefficient(coefficient: sympy.Expr) -> tuple[int, sympy.Rational, sympy.Expr]:
    """Write a nonzero coefficient as sign * scale * direction."""
    num, den = sympy.fraction(sympy.cancel(sympy.sympify(coefficient)))
    num_content, num_prim = sympy.expand(num).as_content_primitive()
    den_content, den_prim = sympy.expand(den).as_content_primitive()
    num_sign = _leading_sign(num_prim)
    den_sign = _leading_sign(den_prim)
    direction_num, direction_den = monic_ratio((num_sign * num_prim) / (den_sign * den_prim))
    scale = sympy.Rational(num_content) / sympy.Rational(den_content)
    return num_sign * den_sign, scale, direction_num / direction_den


def rational_gcd(values: Iterable[sympy.Rational]) -> sympy.Rational:
    """Largest positive rational g with every value an integer multiple of g."""
    items = [abs(sympy.Rational(v)) for v in values if v != 0]
    if not items:
        return sympy.Integer(1)
    numerator = reduce(math.gcd, (int(v.p) for v in items))
    denominator = reduce(lambda a, b: a * b // math.gcd(a, b), (int(v.q) for v in items))
    return sympy.Rational(numerator, denominator)


def _radical_name(base: sympy.Expr, index: int) -> str:
    text = format_polynomial(base)
    if index == 2:
        return f"sqrt({text})"
    if index == 3:
        return f"cbrt({text})"
    return f"({text})^(1/{index})"


class GeneratorTable:
    """Append-only registry of generators.

    Concurrent lookups are lock-free; insertions are serialized.
    """

    def __init__(self) -> None:
        self._by_atom: dict[sympy.Symbol, GeneratorDef] = {}
        self._by_key: dict[tuple, GeneratorDef] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._by_atom)

    def get(self, atom: sympy.Symbol) -> GeneratorDef | None:
        return self._by_atom.get(atom)

    def lookup(self, atom: sympy.Symbol) -> GeneratorDef:
        gdef = self._by_atom.get(atom)
        if gdef is None:
            raise UnknownSymbol(atom.name, "not a registered generator")
        return gdef

    def generators_in(self, atoms: Iterable[sympy.Symbol]) -> list[GeneratorDef]:
        return [self._by_atom[a] for a in ordered_atoms(atoms) if a in self._by_atom]

    def _register(self, key: tuple, name: str, rule: GeneratorRule) -> GeneratorDef:
        existing = self._by_key.get(key)
        if existing is not None:
            return existing
        with self._lock:
            existing = self._by_key.get(key)
            if existing is not None:
                return existing
            symbol = registry.declare(name, SymbolKind.GENERATOR)
            gdef = GeneratorDef(symbol=symbol, rule=rule)
            self._by_key[key] = gdef
            self._by_atom[symbol.atom] = gdef
        logger.debug("generator_registered", name=name, total=len(self._by_atom))
        return gdef

    # ==========================================================================
    # Exponentials
    # ==========================================================================

    def exponential_scaled(
        self,
        coordinate: sympy.Symbol,
        direction: sympy.Expr,
        scale: sympy.Rational,
    ) -> GeneratorDef:
        scale = sympy.Rational(scale)
        if scale <= 0:
            raise SubstitutionOutsideClass(f"exponential scale must be positive, got {scale}")
        key = ("exp", coordinate.name, sympy.srepr(direction), scale)
        num, den = monic_ratio(scale * direction * coordinate)
        name = f"exp({format_ratio(num, den)})"
        return self._register(key, name, ExponentialRule(coordinate, direction, scale))

    def exponential(self, coordinate: sympy.Symbol, coefficient: sympy.Expr) -> tuple[GeneratorDef, int]:
        """Generator g and sign s with exp(coefficient * coordinate) = g**s."""
        if registry.kind_of(coordinate) != SymbolKind.COORDINATE:
            raise SubstitutionOutsideClass(f"exp is only taken along coordinates, not {coordinate.name}")
        for atom in sympy.sympify(coefficient).free_symbols:
            if registry.kind_of(atom) != SymbolKind.PARAMETER:
                raise SubstitutionOutsideClass(
                    f"exponent coefficient {coefficient} depends on {atom.name}"
                )
        sign, scale, direction = split_exponent_coefficient(coefficient)
        return self.exponential_scaled(coordinate, direction, scale), sign

    # ==========================================================================
    # Radicals
    # ==========================================================================

    def radical(self, base: sympy.Expr, index: int) -> GeneratorDef:
        base = sympy.expand(base)
        key = ("root", index, sympy.srepr(base))
        return self._register(key, _radical_name(base, index), RadicalRule(base, index))

    def split_root(self, poly: sympy.Expr, index: int) -> tuple[sympy.Expr, list[tuple[GeneratorDef, int]]]:
        """Real index-th root of a polynomial as prefactor * prod(g**e).

        Odd roots split into irreducible factors and primes. Even roots pull
        whole powers of coordinates assumed positive out of the polynomial
        part, keep the rest whole and split only the rational content.
        """
        coeff, factors = sympy.factor_list(sympy.expand(poly))
        coeff = sympy.Rational(coeff)
        prefactor: sympy.Expr = sympy.Integer(1)
        parts: list[tuple[GeneratorDef, int]] = []
        negative = coeff < 0
        coeff = abs(coeff)

        if index % 2 == 1:
            if negative:
                prefactor = -prefactor
            for factor, multiplicity in factors:
                whole, remainder = divmod(multiplicity, index)
                prefactor *= factor**whole
                if remainder:
                    parts.append((self.radical(factor, index), remainder))
        else:
            rest = sympy.Integer(1)
            for factor, multiplicity in factors:
                if is_assumed_positive(factor):
                    whole, multiplicity = divmod(multiplicity, index)
                    prefactor *= factor**whole
                rest *= factor**multiplicity
            if negative:
                rest = -rest
            rest = sympy.expand(rest)
            if rest != 1:
                parts.append((self.radical(rest, index), 1))

        numerator, denominator = int(coeff.p), int(coeff.q)
        prefactor /= denominator
        for prime, exponent in sorted(sympy.factorint(numerator * denominator ** (index - 1)).items()):
            whole, remainder = divmod(exponent, index)
            prefactor *= sympy.Integer(prime) ** whole
            if remainder:
                parts.append((self.radical(sympy.Integer(prime), index), remainder))
        return sympy.expand(prefactor), parts


generator_table = GeneratorTable()

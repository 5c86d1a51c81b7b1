"""Symbols of the expression kernel and the process-wide symbol registry."""

import re
import threading
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

import sympy

from src.domain.exceptions import UnknownSymbol

NAME_PATTERN = re.compile(r"^[a-zA-Z][a-zA-Z0-9_]*$")
RESERVED_NAMES = frozenset({"exp", "sqrt", "cbrt", "sinh", "cosh", "d", "D"})


class SymbolKind(str, Enum):
    COORDINATE = "coordinate"
    PARAMETER = "parameter"
    GENERATOR = "generator"


_KIND_RANK = {
    SymbolKind.COORDINATE: 0,
    SymbolKind.PARAMETER: 1,
    SymbolKind.GENERATOR: 2,
}


@dataclass(frozen=True)
class Symbol:
    """A named indeterminate; generators are named by their definition text."""

    name: str
    kind: SymbolKind

    @property
    def atom(self) -> sympy.Symbol:
        return sympy.Symbol(self.name)

    def __str__(self) -> str:
        return self.name


class SymbolRegistry:
    """Name → Symbol table shared by every chart and scalar.

    Lookups are lock-free; declarations are serialized.
    """

    def __init__(self) -> None:
        self._symbols: dict[str, Symbol] = {}
        self._lock = threading.Lock()

    def declare(self, name: str, kind: SymbolKind) -> Symbol:
        existing = self._symbols.get(name)
        if existing is not None:
            if existing.kind != kind:
                raise UnknownSymbol(name, f"already declared as {existing.kind.value}")
            return existing
        if kind != SymbolKind.GENERATOR:
            if not NAME_PATTERN.match(name) or name in RESERVED_NAMES:
                raise UnknownSymbol(name, "not a valid identifier")
        with self._lock:
            existing = self._symbols.get(name)
            if existing is None:
                existing = Symbol(name=name, kind=kind)
                self._symbols[name] = existing
        if existing.kind != kind:
            raise UnknownSymbol(name, f"already declared as {existing.kind.value}")
        return existing

    def lookup(self, name: str) -> Symbol:
        symbol = self._symbols.get(name)
        if symbol is None:
            raise UnknownSymbol(name)
        return symbol

    def find(self, name: str) -> Symbol | None:
        return self._symbols.get(name)

    def kind_of(self, atom: sympy.Symbol) -> SymbolKind:
        return self.lookup(atom.name).kind

    def sort_key(self, atom: sympy.Symbol) -> tuple[int, str]:
        symbol = self._symbols.get(atom.name)
        rank = _KIND_RANK[symbol.kind] if symbol is not None else 3
        return rank, atom.name


registry = SymbolRegistry()


def coordinate(name: str) -> Symbol:
    return registry.declare(name, SymbolKind.COORDINATE)


def parameter(name: str) -> Symbol:
    return registry.declare(name, SymbolKind.PARAMETER)


_POSITIVE: ContextVar[frozenset[str]] = ContextVar("positive_symbols", default=frozenset())


@contextmanager
def assume_positive(*symbols: Symbol) -> Iterator[None]:
    """Treat the given coordinates as positive while taking even roots."""
    token = _POSITIVE.set(_POSITIVE.get() | {s.name for s in symbols})
    try:
        yield
    finally:
        _POSITIVE.reset(token)


def is_assumed_positive(expr: sympy.Expr) -> bool:
    return isinstance(expr, sympy.Symbol) and expr.name in _POSITIVE.get()


def ordered_atoms(atoms: Iterable[sympy.Symbol]) -> list[sympy.Symbol]:
    """Canonical order: coordinates, parameters, generators; alphabetical within class."""
    return sorted(set(atoms), key=registry.sort_key)


def atoms_of_kind(atoms: Iterable[sympy.Symbol], kind: SymbolKind) -> list[sympy.Symbol]:
    return [a for a in ordered_atoms(atoms) if registry.kind_of(a) == kind]

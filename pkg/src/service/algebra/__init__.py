"""
Expression kernel: exact scalars over coordinates, parameters and generators.
"""

from .generators import GeneratorDef, generator_table
from .numeric import CompiledScalars, eval_numeric, extended_precision
from .parser import parse, to_text
from .scalar import (
    ONE,
    ZERO,
    Scalar,
    arith,
    cbrt,
    cosh,
    differentiate,
    exp,
    is_zero,
    root,
    sinh,
    sqrt,
    substitute,
)
from .symbols import Symbol, SymbolKind, assume_positive, coordinate, parameter, registry

__all__ = [
    "GeneratorDef",
    "generator_table",
    "CompiledScalars",
    "eval_numeric",
    "extended_precision",
    "parse",
    "to_text",
    "ONE",
    "ZERO",
    "Scalar",
    "arith",
    "cbrt",
    "cosh",
    "differentiate",
    "exp",
    "is_zero",
    "root",
    "sinh",
    "sqrt",
    "substitute",
    "Symbol",
    "SymbolKind",
    "assume_positive",
    "coordinate",
    "parameter",
    "registry",
]

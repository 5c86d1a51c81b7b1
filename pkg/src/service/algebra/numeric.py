"""Floating-point evaluation of scalars.

Generators are evaluated from their definitions: exponentials through the
exponential function, radicals as real roots of an exactly evaluated base.
"""

import math
import threading
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterator, Literal, Mapping, Sequence, Union

import mpmath
import sympy

from src.domain.exceptions import DomainViolation

from .generators import ExponentialRule, GeneratorDef, generator_table
from .scalar import Scalar
from .symbols import Symbol, registry

Precision = Literal["float64", "mpmath"]
PointValue = Union[int, float, Fraction]

EXTENDED_DPS = 40
_mpmath_lock = threading.RLock()


@contextmanager
def extended_precision() -> Iterator[None]:
    """mpmath working precision of EXTENDED_DPS digits, serialized across threads."""
    with _mpmath_lock, mpmath.workdps(EXTENDED_DPS):
        yield


def _real_root(value: Any, index: int, precision: Precision) -> Any:
    if value < 0:
        if index % 2 == 0:
            raise DomainViolation(f"even root of negative value {float(value):.6g}")
        return -_real_root(-value, index, precision)
    if precision == "mpmath":
        return mpmath.root(value, index)
    return value ** (1.0 / index)


def _to_number(value: PointValue, precision: Precision) -> Any:
    if precision == "mpmath":
        if isinstance(value, Fraction):
            return mpmath.mpf(value.numerator) / mpmath.mpf(value.denominator)
        return mpmath.mpf(value)
    return float(value)


class CompiledScalars:
    """A batch of scalars compiled for repeated evaluation on fixed inputs."""

    def __init__(
        self,
        scalars: Sequence[Scalar],
        inputs: Sequence[Symbol],
        precision: Precision = "float64",
    ):
        self.inputs = tuple(inputs)
        self.precision = precision
        self.size = len(scalars)

        needed = set().union(*(s.base_symbols() for s in scalars)) if scalars else set()
        missing = sorted(s.name for s in needed - set(self.inputs))
        if missing:
            raise DomainViolation(f"no value supplied for {', '.join(missing)}")

        atoms: set[sympy.Symbol] = set()
        for scalar in scalars:
            atoms |= scalar.free_atoms
        self._generators: list[GeneratorDef] = generator_table.generators_in(atoms)

        input_slots = sympy.symbols(f"u0:{len(self.inputs)}") if self.inputs else ()
        generator_slots = sympy.symbols(f"g0:{len(self._generators)}") if self._generators else ()
        mapping = {s.atom: slot for s, slot in zip(self.inputs, input_slots)}
        mapping.update({g.atom: slot for g, slot in zip(self._generators, generator_slots)})

        modules = "mpmath" if precision == "mpmath" else "math"
        self._generator_fns: list[tuple[GeneratorDef, Callable[..., Any]]] = []
        for gdef in self._generators:
            rule = gdef.rule
            if isinstance(rule, ExponentialRule):
                expr = (rule.coefficient * rule.coordinate).xreplace(mapping)
            else:
                expr = rule.base.xreplace(mapping)
            self._generator_fns.append((gdef, sympy.lambdify(list(input_slots), expr, modules=modules)))

        arguments = list(input_slots) + list(generator_slots)
        self._num_fn = sympy.lambdify(arguments, [s.num.xreplace(mapping) for s in scalars], modules=modules)
        self._den_fn = sympy.lambdify(arguments, [s.den.xreplace(mapping) for s in scalars], modules=modules)

    def _evaluate(self, values: Sequence[Any]) -> list[Any]:
        generator_values = []
        for gdef, fn in self._generator_fns:
            argument = fn(*values)
            if gdef.is_exponential:
                generator_values.append(mpmath.exp(argument) if self.precision == "mpmath" else math.exp(argument))
            else:
                generator_values.append(_real_root(argument, gdef.rule.index, self.precision))
        arguments = list(values) + generator_values
        numerators = self._num_fn(*arguments)
        denominators = self._den_fn(*arguments)
        results = []
        for n, d in zip(numerators, denominators):
            if d == 0:
                raise DomainViolation("denominator vanishes at the evaluation point")
            results.append(n / d)
        return results

    def evaluate_raw(self, values: Sequence[Any]) -> list[Any]:
        """Unconverted values; call inside extended_precision() for mpmath."""
        if len(values) != len(self.inputs):
            raise ValueError(f"expected {len(self.inputs)} values, got {len(values)}")
        return self._evaluate([_to_number(v, self.precision) if isinstance(v, (int, Fraction)) else v for v in values])

    def __call__(self, values: Sequence[PointValue]) -> list[float]:
        if len(values) != len(self.inputs):
            raise ValueError(f"expected {len(self.inputs)} values, got {len(values)}")
        if self.precision == "mpmath":
            with extended_precision():
                numbers = [_to_number(v, self.precision) for v in values]
                return [float(v) for v in self._evaluate(numbers)]
        numbers = [_to_number(v, self.precision) for v in values]
        return [float(v) for v in self._evaluate(numbers)]


def _resolve_point(point: Mapping[Union[Symbol, str], PointValue]) -> dict[Symbol, PointValue]:
    return {
        (key if isinstance(key, Symbol) else registry.lookup(key)): value
        for key, value in point.items()
    }


@lru_cache(maxsize=4096)
def _compiled(scalar: Scalar, inputs: tuple[Symbol, ...], precision: Precision) -> CompiledScalars:
    return CompiledScalars([scalar], inputs, precision)


def eval_numeric(
    a: Scalar,
    point: Mapping[Union[Symbol, str], PointValue],
    precision: Precision = "float64",
) -> float:
    """Value of a at point; deterministic for fixed point and precision."""
    resolved = _resolve_point(point)
    inputs = tuple(sorted(a.base_symbols(), key=lambda s: registry.sort_key(s.atom)))
    missing = [s.name for s in inputs if s not in resolved]
    if missing:
        raise DomainViolation(f"no value supplied for {', '.join(missing)}")
    compiled = _compiled(a, inputs, precision)
    return compiled([resolved[s] for s in inputs])[0]

"""Connection forms Ω1..Ω7 from the structure equations of an adapted coframe.

Each Ω_m is expanded as Σ_j c_mj θ_j. The five equations

    dθ1 = θ1∧(2Ω1 + Ω4) + θ2∧Ω2 + θ3∧θ4
    dθ2 = θ1∧Ω3 + θ2∧(Ω1 + 2Ω4) + θ3∧θ5
    dθ3 = θ1∧Ω5 + θ2∧Ω6 + θ3∧(Ω1 + Ω4) + θ4∧θ5
    dθ4 = θ1∧Ω7 + (4/3)θ3∧Ω6 + θ4∧Ω1 + θ5∧Ω2
    dθ5 = θ2∧Ω7 − (4/3)θ3∧Ω5 + θ4∧Ω3 + θ5∧Ω4

read off in the θa∧θb basis give 50 linear equations in the 35 unknowns
c_mj with a constant rational coefficient matrix.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

import structlog

from src.domain.exceptions import NoSolution
from src.service.algebra import ONE, ZERO, Scalar
from src.service.forms import Form, linear_combination, rref

from .coframe import COFRAME_SIZE, PAIR_INDEX, PAIRS, AdaptedCoframe

logger = structlog.get_logger(__name__)

CONNECTION_SIZE = 7
UNKNOWNS = CONNECTION_SIZE * COFRAME_SIZE
EQUATIONS = COFRAME_SIZE * len(PAIRS)


@dataclass(frozen=True)
class StructureEquation:
    """dθ_i = Σ c θ_k∧Ω_m + Σ c θ_k∧θ_l, indices from zero."""

    connection_terms: tuple[tuple[Fraction, int, int], ...]
    torsion_terms: tuple[tuple[Fraction, int, int], ...]


def _eq(connection: list[tuple[Any, int, int]], torsion: list[tuple[Any, int, int]]) -> StructureEquation:
    return StructureEquation(
        tuple((Fraction(c), k, m) for c, k, m in connection),
        tuple((Fraction(c), k, l) for c, k, l in torsion),
    )


STRUCTURE_EQUATIONS: tuple[StructureEquation, ...] = (
    _eq([(2, 0, 0), (1, 0, 3), (1, 1, 1)], [(1, 2, 3)]),
    _eq([(1, 0, 2), (1, 1, 0), (2, 1, 3)], [(1, 2, 4)]),
    _eq([(1, 0, 4), (1, 1, 5), (1, 2, 0), (1, 2, 3)], [(1, 3, 4)]),
    _eq([(1, 0, 6), (Fraction(4, 3), 2, 5), (1, 3, 0), (1, 4, 1)], []),
    _eq([(1, 1, 6), (Fraction(-4, 3), 2, 4), (1, 3, 2), (1, 4, 3)], []),
)


def unknown_index(m: int, j: int) -> int:
    return COFRAME_SIZE * m + j


def equation_label(row: int) -> str:
    i, p = divmod(row, len(PAIRS))
    a, b = PAIRS[p]
    return f"dtheta{i + 1}[theta{a + 1}^theta{b + 1}]"


@lru_cache(maxsize=1)
def connection_matrix() -> tuple[tuple[Fraction, ...], ...]:
    """Coefficients of the unknowns in each θa∧θb component of each equation."""
    rows = [[Fraction(0)] * UNKNOWNS for _ in range(EQUATIONS)]
    for i, equation in enumerate(STRUCTURE_EQUATIONS):
        for c, k, m in equation.connection_terms:
            for j in range(COFRAME_SIZE):
                if j == k:
                    continue
                sign = 1 if k < j else -1
                row = len(PAIRS) * i + PAIR_INDEX[(min(k, j), max(k, j))]
                rows[row][unknown_index(m, j)] += sign * c
    return tuple(tuple(row) for row in rows)


@lru_cache(maxsize=1)
def torsion_constants() -> tuple[Fraction, ...]:
    values = [Fraction(0)] * EQUATIONS
    for i, equation in enumerate(STRUCTURE_EQUATIONS):
        for c, k, l in equation.torsion_terms:
            values[len(PAIRS) * i + PAIR_INDEX[(k, l)]] += c
    return tuple(values)


@dataclass(frozen=True)
class EliminationOperator:
    """Row operations reducing the constant matrix, applied to any right-hand side."""

    transform: tuple[tuple[Scalar, ...], ...]
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def gauge_dimension(self) -> int:
        return UNKNOWNS - self.rank

    def apply(self, rhs: list[Scalar]) -> list[Scalar]:
        values = [ZERO] * UNKNOWNS
        for row, pivot in zip(self.transform, self.pivots):
            total = ZERO
            for factor, value in zip(row, rhs):
                if not factor.is_zero() and not value.is_zero():
                    total = total + factor * value
            values[pivot] = total
        return values


@lru_cache(maxsize=1)
def elimination_operator() -> EliminationOperator:
    identity = [[ONE if r == c else ZERO for c in range(EQUATIONS)] for r in range(EQUATIONS)]
    echelon = rref([[Scalar.of(v) for v in row] for row in connection_matrix()], identity)
    return EliminationOperator(echelon.augmented[: echelon.rank], echelon.pivots)


@dataclass(frozen=True, eq=False)
class ConnectionSolution:
    coframe: AdaptedCoframe
    coefficients: tuple[tuple[Scalar, ...], ...]
    residuals: dict[str, Scalar]
    gauge_dimension: int

    @property
    def valid(self) -> bool:
        return not self.residuals

    def omega(self, m: int) -> Form:
        """Ω_{m+1} as a coordinate 1-form."""
        return linear_combination(self.coframe.chart, 1, zip(self.coefficients[m], self.coframe.theta))

    def omegas(self) -> tuple[Form, ...]:
        return tuple(self.omega(m) for m in range(CONNECTION_SIZE))

    def reconstruct(self) -> list[Form]:
        """Right-hand sides of the structure equations assembled from Ω and θ."""
        theta = self.coframe.theta
        omega = self.omegas()
        sides = []
        for equation in STRUCTURE_EQUATIONS:
            total = Form.zero(self.coframe.chart, 2)
            for c, k, m in equation.connection_terms:
                total = total + (theta[k] ^ omega[m]).scale(c)
            for c, k, l in equation.torsion_terms:
                total = total + (theta[k] ^ theta[l]).scale(c)
            sides.append(total)
        return sides

    def verify(self) -> list[Form]:
        """dθ_i minus the reconstructed right-hand side, for every i."""
        return [t.d() - side for t, side in zip(self.coframe.theta, self.reconstruct())]

    def to_payload(self) -> dict[str, Any]:
        return {
            "coframe": self.coframe.name,
            "valid": self.valid,
            "gauge_dimension": self.gauge_dimension,
            "omega": {
                f"Omega{m + 1}": [str(c) for c in row] for m, row in enumerate(self.coefficients)
            },
            "residuals": {label: str(value) for label, value in self.residuals.items()},
        }


def solve_connection(coframe: AdaptedCoframe, strict: bool = True) -> ConnectionSolution:
    """Elimination-canonical Ω (free coefficients zero) and the leftover residuals."""
    matrix = connection_matrix()
    torsion = torsion_constants()
    structure = [v for row in coframe.structure_functions for v in row]
    rhs = [d - Scalar.of(t) for d, t in zip(structure, torsion)]

    operator = elimination_operator()
    values = operator.apply(rhs)

    residuals: dict[str, Scalar] = {}
    for row, (coefficients, target) in enumerate(zip(matrix, rhs)):
        total = ZERO
        for factor, value in zip(coefficients, values):
            if factor and not value.is_zero():
                total = total + value * Scalar.of(factor)
        difference = total - target
        if not difference.is_zero():
            residuals[equation_label(row)] = difference

    solution = ConnectionSolution(
        coframe=coframe,
        coefficients=tuple(
            tuple(values[unknown_index(m, j)] for j in range(COFRAME_SIZE))
            for m in range(CONNECTION_SIZE)
        ),
        residuals=residuals,
        gauge_dimension=operator.gauge_dimension,
    )
    if residuals:
        logger.warning("connection_unsolved", coframe=coframe.name, residuals=len(residuals))
        if strict:
            raise NoSolution({label: str(value) for label, value in residuals.items()})
    else:
        logger.info("connection_solved", coframe=coframe.name, gauge=operator.gauge_dimension)
    return solution

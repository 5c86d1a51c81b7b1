"""Exact linear algebra over Scalars.

Elimination is Gauss-Jordan with the leftmost-column, first-nonzero-row
pivot rule; zero tests go through Scalar.is_zero.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.domain.exceptions import DependentForms
from src.service.algebra import ONE, ZERO, Scalar
from src.service.algebra.scalar import ScalarLike

Matrix = list[list[Scalar]]


def as_matrix(rows: Sequence[Sequence[ScalarLike]]) -> Matrix:
    return [[Scalar.of(v) for v in row] for row in rows]


def transpose(matrix: Sequence[Sequence[Scalar]]) -> Matrix:
    if not matrix:
        return []
    return [list(column) for column in zip(*matrix)]


def mat_mul(left: Sequence[Sequence[Scalar]], right: Sequence[Sequence[Scalar]]) -> Matrix:
    columns = transpose(right)
    result: Matrix = []
    for row in left:
        out = []
        for column in columns:
            total = ZERO
            for a, b in zip(row, column):
                if not a.is_zero() and not b.is_zero():
                    total = total + a * b
            out.append(total)
        result.append(out)
    return result


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class Echelon:
    rows: tuple[tuple[Scalar, ...], ...]
    pivots: tuple[int, ...]
    augmented: tuple[tuple[Scalar, ...], ...]
    columns: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def free_columns(self) -> tuple[int, ...]:
        return tuple(c for c in range(self.columns) if c not in self.pivots)


def _axpy(target: list[Scalar], factor: Scalar, source: list[Scalar]) -> list[Scalar]:
    return [t if s.is_zero() else t - factor * s for t, s in zip(target, source)]


def rref(
    matrix: Sequence[Sequence[ScalarLike]],
    rhs: Optional[Sequence[Sequence[ScalarLike]]] = None,
) -> Echelon:
    rows = as_matrix(matrix)
    columns = len(rows[0]) if rows else 0
    augmented = as_matrix(rhs) if rhs is not None else [[] for _ in rows]
    pivots: list[int] = []
    r = 0
    for c in range(columns):
        if r == len(rows):
            break
        pivot = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        augmented[r], augmented[pivot] = augmented[pivot], augmented[r]

        inverse = rows[r][c].reciprocal()
        rows[r] = [v * inverse for v in rows[r]]
        augmented[r] = [v * inverse for v in augmented[r]]
        for i in range(len(rows)):
            if i == r:
                continue
            factor = rows[i][c]
            if factor.is_zero():
                continue
            rows[i] = _axpy(rows[i], factor, rows[r])
            augmented[i] = _axpy(augmented[i], factor, augmented[r])
        pivots.append(c)
        r += 1

    return Echelon(
        rows=tuple(tuple(row) for row in rows),
        pivots=tuple(pivots),
        augmented=tuple(tuple(row) for row in augmented),
        columns=columns,
    )


def rank(matrix: Sequence[Sequence[ScalarLike]]) -> int:
    return rref(matrix).rank


def nullspace(matrix: Sequence[Sequence[ScalarLike]]) -> list[list[Scalar]]:
    """Kernel basis, one vector per free column, first nonzero entry normalized to 1."""
    echelon = rref(matrix)
    basis = []
    for free in echelon.free_columns:
        vector = [ZERO] * echelon.columns
        vector[free] = ONE
        for row, pivot in zip(echelon.rows, echelon.pivots):
            vector[pivot] = -row[free]
        lead = next(v for v in vector if not v.is_zero())
        if lead != ONE:
            inverse = lead.reciprocal()
            vector = [v * inverse for v in vector]
        basis.append(vector)
    return basis


@dataclass(frozen=True)
class LinearSolution:
    values: tuple[Scalar, ...]
    residuals: tuple[tuple[int, Scalar], ...]
    pivots: tuple[int, ...]

    @property
    def consistent(self) -> bool:
        return not self.residuals


def solve(matrix: Sequence[Sequence[ScalarLike]], rhs: Sequence[ScalarLike]) -> LinearSolution:
    """Solution of A x = b with free variables set to zero.

    Inconsistent systems report the reduced right-hand side of every zero
    row as a residual, indexed by the row's position after elimination.
    """
    echelon = rref(matrix, [[v] for v in rhs])
    values = [ZERO] * echelon.columns
    for row, pivot, aug in zip(echelon.rows, echelon.pivots, echelon.augmented):
        values[pivot] = aug[0]
    residuals = tuple(
        (i, echelon.augmented[i][0])
        for i in range(echelon.rank, len(echelon.augmented))
        if not echelon.augmented[i][0].is_zero()
    )
    return LinearSolution(values=tuple(values), residuals=residuals, pivots=echelon.pivots)


def inverse(matrix: Sequence[Sequence[ScalarLike]]) -> Matrix:
    n = len(matrix)
    echelon = rref(matrix, identity(n))
    if echelon.rank < n:
        raise DependentForms(echelon.rank, n)
    return [list(row) for row in echelon.augmented]


def determinant(matrix: Sequence[Sequence[ScalarLike]]) -> Scalar:
    rows = as_matrix(matrix)
    n = len(rows)
    result = ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            result = -result
        result = result * rows[c][c]
        inverse_pivot = rows[c][c].reciprocal()
        for i in range(c + 1, n):
            factor = rows[i][c]
            if factor.is_zero():
                continue
            rows[i] = _axpy(rows[i], factor * inverse_pivot, rows[c])
    return result


def numeric_rank(values: np.ndarray, tolerance: float) -> int:
    """Rank from singular values relative to the largest one."""
    if values.size == 0:
        return 0
    singular = np.linalg.svd(values, compute_uv=False)
    if singular[0] == 0.0:
        return 0
    return int(np.sum(singular > tolerance * singular[0]))

"""Equivalence of Pfaffian systems under coordinate maps."""

from dataclasses import dataclass
from typing import Any

import structlog

from src.domain.exceptions import ChartMismatch, NotEquivalent
from src.service.algebra import ONE, ZERO, Scalar
from src.service.forms import CoordMap, determinant, pullback
from src.service.forms.linalg import mat_mul

from .pfaffian import PfaffianSystem, ideal_contains

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class EquivalenceCertificate:
    """pullback(map, target.forms[i]) = Σ_j matrix[i][j] · source.forms[j]."""

    source: str
    target: str
    map_name: str
    matrix: tuple[tuple[Scalar, ...], ...]
    determinant: Scalar

    @property
    def is_identity(self) -> bool:
        return all(
            entry == (ONE if i == j else ZERO)
            for i, row in enumerate(self.matrix)
            for j, entry in enumerate(row)
        )

    def then(self, second: "EquivalenceCertificate", first_map: CoordMap) -> "EquivalenceCertificate":
        """Certificate for second's map after first_map.

        With m*(b) = G·a and m'*(c) = G'·b the composite satisfies
        (m'∘m)*(c) = m*(G')·G·a.
        """
        if second.source != self.target:
            raise ChartMismatch(second.source, self.target)
        pulled = [[first_map.pull(entry) for entry in row] for row in second.matrix]
        matrix = mat_mul(pulled, [list(row) for row in self.matrix])
        return EquivalenceCertificate(
            source=self.source,
            target=second.target,
            map_name=f"{second.map_name}∘{self.map_name}",
            matrix=tuple(tuple(row) for row in matrix),
            determinant=determinant(matrix),
        )

    def to_payload(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "target": self.target,
            "map": self.map_name,
            "matrix": [[str(entry) for entry in row] for row in self.matrix],
            "determinant": str(self.determinant),
        }


def ideal_equivalent(a: PfaffianSystem, b: PfaffianSystem, m: CoordMap) -> EquivalenceCertificate:
    """Certify that m carries the span of b.forms onto the span of a.forms."""
    if m.source != a.chart:
        raise ChartMismatch(m.source.name, a.chart.name)
    if m.target != b.chart:
        raise ChartMismatch(m.target.name, b.chart.name)

    rows: list[tuple[Scalar, ...]] = []
    for index, form in enumerate(b.forms):
        membership = ideal_contains(a, pullback(m, form))
        if not membership.contained:
            logger.info("ideal_membership_failed", source=a.name, target=b.name, index=index)
            raise NotEquivalent(index, membership.residual.to_text())
        rows.append(membership.coefficients)

    det = determinant(rows)
    if det.is_zero():
        raise NotEquivalent(-1, "pulled-back forms are dependent: det G = 0")

    logger.info("ideal_equivalence_certified", source=a.name, target=b.name, map=m.name)
    return EquivalenceCertificate(a.name, b.name, m.name, tuple(rows), det)


def identity_certificate(system: PfaffianSystem) -> EquivalenceCertificate:
    return ideal_equivalent(system, system, CoordMap.identity(system.chart))

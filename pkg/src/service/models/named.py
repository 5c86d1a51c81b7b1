"""Named coframes with their declared exterior-derivative relations."""

from dataclasses import dataclass, field
from typing import Any, Sequence

import structlog

from src.service.algebra.scalar import ScalarLike
from src.service.forms import Form

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class Relation:
    """d(forms[index]) = Σ c · forms[i] ∧ forms[j]."""

    index: int
    terms: Sequence[tuple[ScalarLike, int, int]] = field(default_factory=tuple)

    def rhs(self, forms: Sequence[Form]) -> Form:
        total = Form.zero(forms[0].chart, 2)
        for c, i, j in self.terms:
            total = total + (forms[i] ^ forms[j]).scale(c)
        return total

    def describe(self, names: Sequence[str]) -> str:
        parts = []
        for c, i, j in self.terms:
            parts.append(f"{c}*{names[i]}^{names[j]}")
        return f"d{names[self.index]} = " + (" + ".join(parts) if parts else "0")


@dataclass(frozen=True, eq=False)
class NamedCoframe:
    name: str
    forms: tuple[Form, ...]
    relations: tuple[Relation, ...]
    labels: tuple[str, ...] = ()

    @property
    def names(self) -> tuple[str, ...]:
        return self.labels or tuple(f"{self.name}{i + 1}" for i in range(len(self.forms)))

    def residuals(self) -> dict[str, Form]:
        """Nonzero d(form) − declared right-hand side, keyed by relation text."""
        found: dict[str, Form] = {}
        for relation in self.relations:
            difference = self.forms[relation.index].d() - relation.rhs(self.forms)
            if not difference.is_zero():
                found[relation.describe(self.names)] = difference
        if found:
            logger.info("structure_relations_failed", coframe=self.name, failed=sorted(found))
        return found

    def holds(self) -> bool:
        return not self.residuals()

    def to_payload(self) -> dict[str, Any]:
        return {
            "forms": {n: f.to_text() for n, f in zip(self.names, self.forms)},
            "relations": [r.describe(self.names) for r in self.relations],
        }

"""Adapted coframes: five independent 1-forms θ1..θ5 on a chart."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional, Sequence, Union

from src.domain.exceptions import DegreeOverflow, DependentForms
from src.service.algebra import Scalar, Symbol
from src.service.algebra.scalar import ScalarLike
from src.service.forms import Chart, Form, VectorField, coefficient_matrix, contract, interior, inverse
from src.service.forms.form import require_same_chart

COFRAME_SIZE = 5

# θa∧θb basis of 2-forms, a < b, in this order.
PAIRS: tuple[tuple[int, int], ...] = tuple(
    (a, b) for a in range(COFRAME_SIZE) for b in range(a + 1, COFRAME_SIZE)
)
PAIR_INDEX = {pair: i for i, pair in enumerate(PAIRS)}


@dataclass(frozen=True, eq=False)
class AdaptedCoframe:
    name: str
    chart: Chart
    theta: tuple[Form, ...]
    provenance: str = ""
    constants: Mapping[str, Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.theta) != COFRAME_SIZE:
            raise ValueError(f"coframe {self.name} has {len(self.theta)} forms, expected {COFRAME_SIZE}")
        for form in self.theta:
            require_same_chart(self.chart, form.chart)
            if form.degree != 1:
                raise DegreeOverflow(form.degree, 1)

    @classmethod
    def create(
        cls,
        name: str,
        theta: Sequence[Form],
        provenance: str = "",
        constants: Optional[Mapping[str, ScalarLike]] = None,
    ) -> "AdaptedCoframe":
        coframe = cls(
            name,
            theta[0].chart,
            tuple(theta),
            provenance,
            {k: Scalar.of(v) for k, v in (constants or {}).items()},
        )
        coframe.dual_frame  # rank check
        return coframe

    @cached_property
    def matrix(self) -> list[list[Scalar]]:
        """Rows: θ_i; columns: coordinate differentials."""
        return coefficient_matrix(self.theta)

    @cached_property
    def dual_frame(self) -> tuple[VectorField, ...]:
        """Fields E_a with θ_i(E_a) = δ_ia."""
        try:
            inv = inverse(self.matrix)
        except DependentForms as exc:
            raise DependentForms(exc.rank, COFRAME_SIZE) from exc
        return tuple(
            VectorField(self.chart, tuple(inv[k][a] for k in range(COFRAME_SIZE)))
            for a in range(COFRAME_SIZE)
        )

    def frame_components(self, form: Form) -> list[Scalar]:
        """Components of a 2-form in the θa∧θb basis, ordered as PAIRS."""
        frame = self.dual_frame
        return [contract(interior(form, frame[a]), frame[b]) for a, b in PAIRS]

    def one_form_components(self, form: Form) -> list[Scalar]:
        return [contract(form, e) for e in self.dual_frame]

    @cached_property
    def structure_functions(self) -> tuple[tuple[Scalar, ...], ...]:
        """dθ_i in the θa∧θb basis, one row per θ_i."""
        return tuple(tuple(self.frame_components(t.d())) for t in self.theta)

    def subs(self, bindings: Mapping[Union[Symbol, str], ScalarLike]) -> "AdaptedCoframe":
        return AdaptedCoframe.create(
            self.name,
            [t.subs(bindings) for t in self.theta],
            self.provenance,
            {k: v.subs(bindings) for k, v in self.constants.items()},
        )

    def to_text(self) -> list[str]:
        return [f"theta{i + 1} = {t.to_text()}" for i, t in enumerate(self.theta)]

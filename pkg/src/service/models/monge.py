"""Monge normal forms dz − F dx on the mixed jet space and the F that produces them."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import structlog

from src.domain.exceptions import NotSolvable
from src.service.algebra import Scalar, parse
from src.service.algebra.scalar import ScalarLike
from src.service.distribution import PfaffianSystem
from src.service.forms import Chart, CoordMap, Form, VectorField, coefficient_matrix, solve
from src.service.forms.linalg import transpose

from .charts import ALPHA, BETA, GAMMA, JET, JET_ALPHA, JET_BETA_GAMMA, bind, coordinate_forms, scalars

logger = structlog.get_logger(__name__)

MONGE_F_TEXT = "q*z^2 + 1/(alpha^2 - 1)*(sqrt(q)*z - 1/(2*sqrt(q)*x))^2"
SL2_PAIR_F_TEXT = "q*z^2 + beta*gamma/(1 - beta*gamma)*(sqrt(q)*z - 1/(2*sqrt(q)*x))^2"
RECIPROCAL_F_TEXT = "z^2*q + 1/(1/(beta*gamma) - 1)*(sqrt(q)*z - 1/(2*sqrt(q)*x))^2"


@dataclass(frozen=True, eq=False)
class MongeData:
    """dy − p dx, dp − q dx, dz − F dx for one F."""

    chart: Chart
    F: Scalar
    system: PfaffianSystem

    @classmethod
    def create(cls, F: ScalarLike, chart: Chart = JET, name: str = "monge") -> "MongeData":
        F = Scalar.of(F)
        d = coordinate_forms(chart)
        v = scalars(chart)
        forms = [
            d["y"] - d["x"] * v["p"],
            d["p"] - d["x"] * v["q"],
            d["z"] - d["x"] * F,
        ]
        return cls(chart, F, PfaffianSystem.create(name, forms))

    def expected_kernel(self) -> tuple[VectorField, VectorField]:
        """∂q and ∂x + p∂y + q∂p + F∂z."""
        v = scalars(self.chart)
        return (
            VectorField.partial(self.chart, "q"),
            VectorField.from_mapping(self.chart, {"x": 1, "y": v["p"], "p": v["q"], "z": self.F}),
        )


def _correction(chart: Chart = JET) -> Scalar:
    """(√q z − 1/(2√q x))² written without radicals."""
    x, z, q = chart.scalar("x"), chart.scalar("z"), chart.scalar("q")
    return q * z**2 - z / x + 1 / (4 * q * x**2)


def monge_F(alpha: ScalarLike = ALPHA) -> Scalar:
    """qz² + (qz² − z/x + 1/(4qx²))/(α²−1)."""
    alpha = Scalar.of(alpha)
    bind(JET_ALPHA, alpha=alpha)
    q, z = JET.scalar("q"), JET.scalar("z")
    return q * z**2 + _correction() / (alpha**2 - 1)


def monge_F_display(alpha: ScalarLike = ALPHA) -> Scalar:
    """F exactly as printed, with the square roots."""
    return parse(MONGE_F_TEXT, {"alpha": Scalar.of(alpha)})


def sl2_pair_F(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA) -> Scalar:
    """qz² + βγ/(1−βγ)·(qz² − z/x + 1/(4qx²))."""
    bg = Scalar.of(beta) * Scalar.of(gamma)
    bind(JET_BETA_GAMMA, beta=beta, gamma=gamma)
    q, z = JET.scalar("q"), JET.scalar("z")
    return q * z**2 + bg / (1 - bg) * _correction()


def sl2_pair_F_displays(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA) -> dict[str, Scalar]:
    namespace = {"beta": Scalar.of(beta), "gamma": Scalar.of(gamma)}
    x, z, q = JET.scalar("x"), JET.scalar("z"), JET.scalar("q")
    bg = namespace["beta"] * namespace["gamma"]
    mu = bg / (bg - 1)
    return {
        "closed": parse(SL2_PAIR_F_TEXT, namespace),
        "reciprocal": parse(RECIPROCAL_F_TEXT, namespace),
        "mu": q * (z**2 - mu * (z - 1 / (2 * q * x)) ** 2),
        "expanded": (1 - mu) * z**2 * q - mu / (4 * q * x**2) + mu * z / x,
    }


def maximal_F(alpha_squared: Fraction) -> Scalar:
    """The printed specializations at α² = 9 and α² = 1/9."""
    x, z, q = JET.scalar("x"), JET.scalar("z"), JET.scalar("q")
    if alpha_squared == 9:
        return Fraction(9, 8) * q * z**2 - z / (8 * x) + 1 / (32 * q * x**2)
    if alpha_squared == Fraction(1, 9):
        return Fraction(-1, 8) * q * z**2 + Fraction(9, 8) * z / x - 9 / (32 * q * x**2)
    raise ValueError(f"no printed F for alpha^2 = {alpha_squared}")


def monge_data(alpha: ScalarLike = ALPHA) -> MongeData:
    chart = bind(JET_ALPHA, alpha=alpha)
    return MongeData.create(monge_F(alpha), chart, "monge")


def sl2_pair_monge_data(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA) -> MongeData:
    chart = bind(JET_BETA_GAMMA, beta=beta, gamma=gamma)
    return MongeData.create(sl2_pair_F(beta, gamma), chart, "monge_sl2")


# --------------------------------------------------------------------------
# Deriving F from a coordinate change
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DerivedF:
    """F composed with the map (on its source chart) and, via the inverse, on the jet chart."""

    on_source: Scalar
    on_jet: Optional[Scalar]
    coefficients: tuple[Scalar, ...]


def derive_F(jet_map: CoordMap, source: PfaffianSystem) -> DerivedF:
    """F with m*(dz) − (F∘m)·m*(dx) in the span of the source forms."""
    target = jet_map.target
    dz = jet_map.pullback(Form.differential(target, "z"))
    dx = jet_map.pullback(Form.differential(target, "x"))

    columns = list(source.forms) + [dx]
    matrix = transpose(coefficient_matrix(columns))
    solution = solve(matrix, dz.coefficients())
    if not solution.consistent:
        raise NotSolvable(f"no multiple of dx under {jet_map.name} matches dz modulo {source.name}")
    if len(columns) - 1 not in solution.pivots:
        raise NotSolvable(f"dx pulls back into the ideal of {source.name}; F is undetermined")

    on_source = solution.values[-1]
    on_jet = jet_map.inverse.pull(on_source) if jet_map.inverse is not None else None
    logger.info("monge_F_derived", map=jet_map.name, source=source.name, inverted=on_jet is not None)
    return DerivedF(on_source, on_jet, tuple(solution.values[:-1]))

"""Hyperboloid rolling system on SL(2) x R^2 with the left-invariant coframe."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from src.service.algebra import Scalar, cbrt, cosh, exp, sinh
from src.service.algebra.scalar import ScalarLike
from src.service.curvature import AdaptedCoframe, Metric, nurowski_metric, quadratic_form
from src.service.distribution import PfaffianSystem
from src.service.forms import Chart, CoordMap, Form

from .charts import ALPHA, ROLLING, ROLLING_ADAPTED, SURFACE, SURFACE_PRIME, bind, coordinate_forms, scalars
from .named import NamedCoframe, Relation

HALF = Fraction(1, 2)

SIGMA_RELATIONS = (
    Relation(0, [(-1, 1, 2)]),
    Relation(1, [(-1, 0, 2)]),
    Relation(2, [(1, 0, 1)]),
)


def sigma_coframe(chart: Chart = ROLLING) -> NamedCoframe:
    """Left-invariant forms with dσ1 = −σ2∧σ3, dσ2 = −σ1∧σ3, dσ3 = σ1∧σ2."""
    v = scalars(chart)
    d = coordinate_forms(chart)
    y, z = v["y"], v["z"]
    sigma1 = d["p"] * (sinh(y) * cosh(z)) - d["y"] * sinh(z)
    sigma2 = d["p"] * (-sinh(y) * sinh(z)) + d["y"] * cosh(z)
    sigma3 = -d["z"] - d["p"] * cosh(y)
    return NamedCoframe("sigma", (sigma1, sigma2, sigma3), SIGMA_RELATIONS)


@dataclass(frozen=True, eq=False)
class RollingForms:
    """ω1..ω5 of the rolling system and the sign-reversed pair ω̄1, ω̄2."""

    sigma: tuple[Form, Form, Form]
    omega: tuple[Form, Form, Form, Form, Form]

    @property
    def chart(self) -> Chart:
        return self.omega[0].chart

    @property
    def omega_bar(self) -> tuple[Form, Form]:
        return (-self.sigma[0] + self.omega[4], self.sigma[1] + self.omega[3])


def rolling_forms(sigma: tuple[Form, Form, Form], alpha: ScalarLike = ALPHA) -> RollingForms:
    """ω1 = −(σ1 + e^{αx}dq), ω2 = σ2 + dx, ω3 = −(σ3 + αe^{αx}dq), ω4 = −dx, ω5 = e^{αx}dq."""
    alpha = Scalar.of(alpha)
    chart = sigma[0].chart
    d = coordinate_forms(chart)
    e = exp(alpha * chart.scalar("x"))
    omega = (
        -(sigma[0] + d["q"] * e),
        sigma[1] + d["x"],
        -(sigma[2] + d["q"] * (alpha * e)),
        -d["x"],
        d["q"] * e,
    )
    return RollingForms(tuple(sigma), omega)  # type: ignore[arg-type]


def rolling(alpha: ScalarLike = ALPHA) -> RollingForms:
    chart = bind(ROLLING, alpha=alpha)
    return rolling_forms(sigma_coframe(chart).forms, alpha)  # type: ignore[arg-type]


def rolling_system(alpha: ScalarLike = ALPHA) -> PfaffianSystem:
    return PfaffianSystem.create("rolling", rolling(alpha).omega[:3])


def sign_reversed_system(alpha: ScalarLike = ALPHA) -> PfaffianSystem:
    forms = rolling(alpha)
    bar1, bar2 = forms.omega_bar
    return PfaffianSystem.create("rolling_sign_reversed", [bar1, bar2, forms.omega[2]])


def reversal_map() -> CoordMap:
    """(x, q) ↦ (−x, −q) on the rolling chart."""
    v = scalars(ROLLING)
    return CoordMap.create(
        "reversal",
        ROLLING,
        ROLLING,
        {"x": -v["x"], "y": v["y"], "z": v["z"], "p": v["p"], "q": -v["q"]},
    )


# --------------------------------------------------------------------------
# Adapted coframe and metric
# --------------------------------------------------------------------------


def section2_constants(alpha: ScalarLike = ALPHA) -> dict[str, Scalar]:
    """K = 1/(α²−1), P = T = R = U = 0, Q = S = (3α²−7)/(10(α²−1)^(2/3))."""
    alpha = Scalar.of(alpha)
    bind(ROLLING_ADAPTED, alpha=alpha)
    k = 1 / (alpha**2 - 1)
    qs = (3 * alpha**2 - 7) / (10 * cbrt(alpha**2 - 1) ** 2)
    zero = Scalar.of(0)
    return {"K": k, "P": zero, "Q": qs, "R": zero, "S": qs, "T": zero, "U": zero}


def section2_coframe(
    alpha: ScalarLike = ALPHA,
    overrides: Optional[Mapping[str, ScalarLike]] = None,
) -> AdaptedCoframe:
    """θ1 = ω1, θ2 = ω2, θ3 = K^(1/3)ω3, θ4, θ5 completed with P..U."""
    constants = section2_constants(alpha)
    for name, value in (overrides or {}).items():
        constants[name] = Scalar.of(value)
    omega = rolling(alpha).omega
    k3 = cbrt(constants["K"])
    theta1, theta2 = omega[0], omega[1]
    theta3 = omega[2] * k3
    theta4 = (
        omega[3] * (1 / k3) + theta1 * constants["P"] + theta2 * constants["Q"] + theta3 * constants["R"]
    )
    theta5 = (
        omega[4] * (1 / k3) + theta1 * constants["S"] + theta2 * constants["T"] + theta3 * constants["U"]
    )
    return AdaptedCoframe.create(
        "section2",
        [theta1, theta2, theta3, theta4, theta5],
        provenance="rolling coframe completed by ω4 = −dx, ω5 = e^{αx}dq",
        constants=constants,
    )


@dataclass(frozen=True, eq=False)
class DiagonalMetricLines:
    """The successive displays of K^(1/3)g for the rolling coframe."""

    scaled: Metric
    lines: tuple[Metric, Metric, Metric]
    identity_lhs: Metric
    identity_rhs: Metric


def diagonal_metric_lines(alpha: ScalarLike = ALPHA) -> DiagonalMetricLines:
    alpha = Scalar.of(alpha)
    forms = rolling(alpha)
    chart = forms.chart
    s1, s2, _ = forms.sigma
    w1, w2, w3, w4, w5 = forms.omega
    bar1, bar2 = forms.omega_bar
    coframe = section2_coframe(alpha)
    k = coframe.constants["K"]
    ratio = (3 * alpha**2 - 7) / (5 * (alpha**2 - 1))
    w3_coefficient = Fraction(4, 3) / (alpha**2 - 1)

    scaled = nurowski_metric(coframe).scale(cbrt(k))
    first = quadratic_form(
        chart,
        [
            (2, w1, w5),
            (-2, w2, w4),
            ((3 * alpha**2 - 7) / 5 * k, w1, w1),
            (-(3 * alpha**2 - 7) / 5 * k, w2, w2),
            (Fraction(4, 3) * k, w3, w3),
        ],
        "line1",
    )
    second = quadratic_form(
        chart,
        [
            (2, w4, w4),
            (-2, w5, w5),
            (HALF, s1 - w5, s1 - w5),
            (-HALF, w1, w1),
            (-HALF, s2 + w4, s2 + w4),
            (HALF, w2, w2),
            (ratio, w1, w1),
            (-ratio, w2, w2),
            (w3_coefficient, w3, w3),
        ],
        "line2",
    )
    third = quadratic_form(
        chart,
        [
            (1, w4, w4),
            (-1, w5, w5),
            (-1, s2, s2),
            (1, s1, s1),
            (ratio - 1, w1, w1),
            (1 - ratio, w2, w2),
            (w3_coefficient, w3, w3),
        ],
        "line3",
    )
    lhs = quadratic_form(chart, [(1, s1, s1), (-1, s2, s2), (1, w5, w5), (-1, w4, w4)], "sigma_sum")
    rhs = quadratic_form(
        chart,
        [(HALF, w1, w1), (-HALF, w2, w2), (HALF, bar1, bar1), (-HALF, bar2, bar2)],
        "omega_sum",
    )
    return DiagonalMetricLines(scaled, (first, second, third), lhs, rhs)


def sigma_surface_element(chart: Chart = ROLLING) -> tuple[Metric, Metric]:
    """σ2² − σ1² and dy² − sinh²(y)dp² on the rolling chart."""
    s1, s2, _ = sigma_coframe(chart).forms
    d = coordinate_forms(chart)
    y = chart.scalar("y")
    element = quadratic_form(chart, [(1, s2, s2), (-1, s1, s1)], "sigma_surface")
    expected = quadratic_form(chart, [(1, d["y"], d["y"]), (-sinh(y) ** 2, d["p"], d["p"])], "dy2_sinh2_dp2")
    return element, expected


def surface_metrics(alpha: ScalarLike = ALPHA) -> tuple[Metric, Metric]:
    """dx² − e^{2αx}dq² on Σ and dy² − sinh²(y)dp² on Σ' as 2-dimensional metrics."""
    alpha = Scalar.of(alpha)
    d = coordinate_forms(SURFACE)
    e = exp(alpha * SURFACE.scalar("x"))
    sigma = quadratic_form(SURFACE, [(1, d["x"], d["x"]), (-(e**2), d["q"], d["q"])], "omega4_omega5_surface")
    dp = coordinate_forms(SURFACE_PRIME)
    y = SURFACE_PRIME.scalar("y")
    sigma_prime = quadratic_form(
        SURFACE_PRIME, [(1, dp["y"], dp["y"]), (-sinh(y) ** 2, dp["p"], dp["p"])], "sigma_surface"
    )
    return sigma, sigma_prime

"""Two copies of sl2 on M^5: the gen1 system, its adapted coframes and the Monge reduction."""

from dataclasses import dataclass
from typing import Any, Optional

import structlog

from src.domain.exceptions import DomainViolation
from src.service.algebra import Scalar, cbrt, exp, sqrt
from src.service.algebra.scalar import ScalarLike
from src.service.curvature import AdaptedCoframe, Metric, nurowski_metric, quadratic_form
from src.service.distribution import PfaffianSystem
from src.service.forms import Chart, CoordMap, Form

from .charts import (
    BETA,
    C,
    GAMMA,
    HAT4,
    JET_BETA_GAMMA,
    SL2_PAIR,
    SL2_PAIR_HAT,
    bind,
    coordinate_forms,
    scalars,
)
from .monge import DerivedF, derive_F
from .named import NamedCoframe, Relation
from .section3 import S_RELATIONS, DisplayedCombination

logger = structlog.get_logger(__name__)

SBAR_RELATIONS = (
    Relation(0, [(-1, 0, 2), (-2, 0, 4)]),
    Relation(1, [(1, 1, 2), (2, 1, 4)]),
    Relation(2, [(-2, 0, 1), (-2, 3, 4)]),
    Relation(3, [(1, 3, 4)]),
    Relation(4, [(1, 3, 4)]),
)

# (sign of 3, sign of the square root)
BRANCHES = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True, eq=False)
class PairForms:
    """ω1..ω5 and both sl2 triples s1..s6 with the barred completion."""

    omega: tuple[Form, Form, Form, Form, Form]
    s: tuple[Form, Form, Form, Form, Form, Form]
    sbar: tuple[Form, Form, Form]

    @property
    def chart(self) -> Chart:
        return self.omega[0].chart


def pair_forms(chart: Chart = SL2_PAIR) -> PairForms:
    d = coordinate_forms(chart)
    v = scalars(chart)
    x, y, p, q = v["x"], v["y"], v["p"], v["q"]
    w1 = d["y"] + d["z"] * y
    w2 = -(d["p"] - d["z"] * p)
    w3 = -d["z"]
    w4 = d["q"] + d["z"] * q
    w5 = -(d["x"] - d["z"] * x)
    s = (
        w1 + w2 * y**2,
        w2,
        w3 - w2 * (2 * y),
        w4 + w5 * q**2,
        w5,
        w3 - w5 * (2 * q),
    )
    sbar = (s[2] - w5 * (2 * q), (w4 + w5 * q**2) * (1 / q), w5 * q)
    return PairForms((w1, w2, w3, w4, w5), s, sbar)


def sbar_coframe(chart: Chart = SL2_PAIR) -> NamedCoframe:
    forms = pair_forms(chart)
    return NamedCoframe(
        "sbar",
        (forms.s[0], forms.s[1], *forms.sbar),
        SBAR_RELATIONS,
        ("s1", "s2", "sbar3", "sbar4", "sbar5"),
    )


def second_copy(chart: Chart = SL2_PAIR) -> NamedCoframe:
    forms = pair_forms(chart)
    return NamedCoframe("s_second", forms.s[3:], S_RELATIONS, ("s4", "s5", "s6"))


def _chart(beta: ScalarLike, gamma: ScalarLike) -> Chart:
    return bind(SL2_PAIR, beta=beta, gamma=gamma)


def gen1_forms(
    beta: ScalarLike = BETA,
    gamma: ScalarLike = GAMMA,
    chart: Optional[Chart] = None,
) -> tuple[Form, Form, Form]:
    """θ1 = s1 − βs̄4, θ2 = s2 − γs̄5, θ3 = s3 + s̄4 + s̄5."""
    beta, gamma = Scalar.of(beta), Scalar.of(gamma)
    forms = pair_forms(chart or _chart(beta, gamma))
    s1, s2, s3 = forms.s[:3]
    _, sbar4, sbar5 = forms.sbar
    return (s1 - sbar4 * beta, s2 - sbar5 * gamma, s3 + sbar4 + sbar5)


def gen1_system(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA) -> PfaffianSystem:
    return PfaffianSystem.create("gen1", gen1_forms(beta, gamma))


def gen1_expansions(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA) -> tuple[Form, Form, Form]:
    """The printed coordinate forms of the three θ's."""
    beta, gamma = Scalar.of(beta), Scalar.of(gamma)
    chart = _chart(beta, gamma)
    d = coordinate_forms(chart)
    v = scalars(chart)
    x, y, p, q = v["x"], v["y"], v["p"], v["q"]
    horizontal = d["y"] + d["z"] * y
    contact = d["p"] - d["z"] * p
    second = d["q"] + d["z"] * q
    second_contact = d["x"] - d["z"] * x
    return (
        horizontal - contact * y**2 - (second - second_contact * q**2) * (beta / q),
        -contact + second_contact * (gamma * q),
        contact * (2 * y) + d["q"] * (1 / q) - second_contact * (2 * q),
    )


def tilde_forms(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA) -> tuple[DisplayedCombination, ...]:
    """Combinations of the θ's in ỹ = y − β against their printed right-hand sides."""
    beta, gamma = Scalar.of(beta), Scalar.of(gamma)
    chart = bind(SL2_PAIR_HAT, beta=beta, gamma=gamma)
    theta1, theta2, theta3 = gen1_forms(beta, gamma, chart)
    d = coordinate_forms(chart)
    v = scalars(chart)
    x, y, p, q = v["x"], v["y"], v["p"], v["q"]
    yt = y - beta
    contact = d["p"] - d["z"] * p
    return (
        DisplayedCombination(
            "theta1+beta*theta3+(beta/gamma)*theta2",
            theta1 + theta3 * beta + theta2 * (beta / gamma),
            d["y"] + d["z"] * yt - contact * (yt / gamma + (yt + beta - 1 / gamma) * (yt - beta)),
        ),
        DisplayedCombination(
            "(theta3+2y*theta2)/(2q(gamma*y-1))",
            (theta3 + theta2 * (2 * y)) * (1 / (2 * q * (gamma * y - 1))),
            d["x"] - d["z"] * x + d["q"] * (1 / (2 * (yt + beta - 1 / gamma) * gamma * q**2)),
        ),
    )


# --------------------------------------------------------------------------
# Constants and adapted coframes
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Branch:
    signs: tuple[int, int]
    T: Scalar
    lam: Scalar

    @property
    def label(self) -> str:
        first = "+" if self.signs[0] > 0 else "-"
        second = "+" if self.signs[1] > 0 else "-"
        return f"{first}3{second}sqrt"


def discriminant(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA) -> Scalar:
    """3(3β²γ² − 26βγ + 3)."""
    bg = Scalar.of(beta) * Scalar.of(gamma)
    return 3 * (3 * bg**2 - 26 * bg + 3)


def section4_constants(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA) -> dict[str, Any]:
    """K, the discriminant, μ and T, λ for the four sign branches."""
    beta, gamma = Scalar.of(beta), Scalar.of(gamma)
    bind(SL2_PAIR_HAT, beta=beta, gamma=gamma)
    bg = beta * gamma
    k = bg / (2 * (bg - 1))
    disc = discriminant(beta, gamma)
    if disc.is_constant and disc.as_fraction() < 0:
        raise DomainViolation(f"discriminant {disc} is negative at beta*gamma = {bg}")
    k3 = cbrt(k)
    root = sqrt(disc)
    branches = []
    for first, second in BRANCHES:
        lam = (-9 * bg + 3 * first + second * root) / (6 * (bg - 1))
        branches.append(Branch((first, second), lam / k3, lam))
    return {
        "K": k,
        "discriminant": disc,
        "mu": bg / (bg - 1),
        "branches": tuple(branches),
    }


def section4_coframe(
    beta: ScalarLike = BETA,
    gamma: ScalarLike = GAMMA,
    branch: int = 0,
) -> AdaptedCoframe:
    """θ1, θ2, θ̄3 = K^(1/3)θ3, θ4 = K^(-1/3)βs̄4, θ5 = −K^(-1/3)γs̄5 + Tθ2."""
    beta, gamma = Scalar.of(beta), Scalar.of(gamma)
    constants = section4_constants(beta, gamma)
    chosen: Branch = constants["branches"][branch]
    chart = _chart(beta, gamma)
    theta1, theta2, theta3 = gen1_forms(beta, gamma, chart)
    _, sbar4, sbar5 = pair_forms(chart).sbar
    k3 = cbrt(constants["K"])
    return AdaptedCoframe.create(
        f"section4[{chosen.label}]",
        [
            theta1,
            theta2,
            theta3 * k3,
            sbar4 * (beta / k3),
            sbar5 * (-gamma / k3) + theta2 * chosen.T,
        ],
        provenance="gen1 system completed by s̄4, s̄5",
        constants={"K": constants["K"], "T": chosen.T, "lambda": chosen.lam},
    )


@dataclass(frozen=True, eq=False)
class MetricExpansion:
    scaled: Metric
    display: Metric
    # s̄4 s̄5 − s4 s5
    product_identity: Metric


def metric_expansion(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA, branch: int = 0) -> MetricExpansion:
    """K^(1/3)g for one branch against the closed expansion

        −2γ(1+λ)s1s̄5 − 2β(1+λ)s2s̄4 + 2βγ(2+λ)s4s5 + 2λs1s2 + (4/3)K(s3+s̄4+s̄5)².
    """
    beta, gamma = Scalar.of(beta), Scalar.of(gamma)
    coframe = section4_coframe(beta, gamma, branch)
    k, lam = coframe.constants["K"], coframe.constants["lambda"]
    forms = pair_forms(coframe.chart)
    s1, s2, s3, s4, s5, _ = forms.s
    _, sbar4, sbar5 = forms.sbar
    chart = coframe.chart
    display = quadratic_form(
        chart,
        [
            (-2 * gamma * (1 + lam), s1, sbar5),
            (-2 * beta * (1 + lam), s2, sbar4),
            (2 * beta * gamma * (2 + lam), s4, s5),
            (2 * lam, s1, s2),
            (k * 4 / 3, s3 + sbar4 + sbar5, s3 + sbar4 + sbar5),
        ],
        "section4_display",
    )
    identity = quadratic_form(chart, [(1, sbar4, sbar5), (-1, s4, s5)], "sbar4sbar5_minus_s4s5")
    return MetricExpansion(nurowski_metric(coframe).scale(cbrt(k)), display, identity)


# --------------------------------------------------------------------------
# Hat coordinates and the jet space
# --------------------------------------------------------------------------


def hat_map(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA, c: ScalarLike = C) -> CoordMap:
    """ŷ = e^z(y−β)/c, p̂ = ce^{−z}p, x̂ = −ce^{−z}x, q̂ = −1/(γq), ẑ = (β−1/γ)e^z/c."""
    beta, gamma, c = Scalar.of(beta), Scalar.of(gamma), Scalar.of(c)
    source = bind(SL2_PAIR_HAT, beta=beta, gamma=gamma, c=c)
    v = scalars(source)
    x, y, z, p, q = v["x"], v["y"], v["z"], v["p"], v["q"]
    return CoordMap.create(
        "hat4",
        source,
        bind(HAT4, beta=beta, gamma=gamma),
        {
            "xh": -c * exp(-z) * x,
            "yh": exp(z) * (y - beta) / c,
            "zh": (beta - 1 / gamma) * exp(z) / c,
            "ph": c * exp(-z) * p,
            "qh": -1 / (gamma * q),
        },
    )


def hat_system(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA) -> PfaffianSystem:
    """dx̂ − q̂dp̂, dŷ − (ŷ² − (β/(β−1/γ))ẑ²)dp̂, dx̂ − dq̂/(2(ŷ+ẑ))."""
    beta, gamma = Scalar.of(beta), Scalar.of(gamma)
    chart = bind(HAT4, beta=beta, gamma=gamma)
    d = coordinate_forms(chart)
    v = scalars(chart)
    yh, zh, qh = v["yh"], v["zh"], v["qh"]
    return PfaffianSystem.create(
        "hat4_ideal",
        [
            d["xh"] - d["ph"] * qh,
            d["yh"] - d["ph"] * (yh**2 - beta / (beta - 1 / gamma) * zh**2),
            d["xh"] - d["qh"] * (1 / (2 * (yh + zh))),
        ],
    )


def hat_second_form_display(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA, c: ScalarLike = C) -> Form:
    """Pulled-back second hat form minus its printed e^{2z} version, on the source chart."""
    beta, gamma, c = Scalar.of(beta), Scalar.of(gamma), Scalar.of(c)
    m = hat_map(beta, gamma, c)
    d = coordinate_forms(m.target)
    z = m.source.scalar("z")
    yh = m.exprs[m.target.index("yh")]
    printed = m.pullback(d["yh"]) - m.pullback(d["ph"]) * (
        yh**2 - beta * (beta - 1 / gamma) * exp(2 * z) / c**2
    )
    return m.pullback(hat_system(beta, gamma).forms[1]) - printed


def jet_map(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA) -> CoordMap:
    """(x, y, z, p, q) = (q̂, x̂ − p̂q̂, −ŷ, −p̂, −1/(2(ŷ+ẑ)q̂)), with its inverse."""
    beta, gamma = Scalar.of(beta), Scalar.of(gamma)
    source = bind(HAT4, beta=beta, gamma=gamma)
    v = scalars(source)
    xh, yh, zh, ph, qh = v["xh"], v["yh"], v["zh"], v["ph"], v["qh"]
    forward = CoordMap.create(
        "jet4",
        source,
        bind(JET_BETA_GAMMA, beta=beta, gamma=gamma),
        [qh, xh - ph * qh, -yh, -ph, -1 / (2 * (yh + zh) * qh)],
    )
    return forward.with_inverse(inverse_map(beta, gamma))


def inverse_map(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA) -> CoordMap:
    """q̂ = x, p̂ = −p, ŷ = −z, x̂ = y − px, ẑ = z − 1/(2qx)."""
    beta, gamma = Scalar.of(beta), Scalar.of(gamma)
    source = bind(JET_BETA_GAMMA, beta=beta, gamma=gamma)
    v = scalars(source)
    x, y, z, p, q = v["x"], v["y"], v["z"], v["p"], v["q"]
    return CoordMap.create(
        "inverse4",
        source,
        bind(HAT4, beta=beta, gamma=gamma),
        {"xh": y - p * x, "yh": -z, "zh": z - 1 / (2 * q * x), "ph": -p, "qh": x},
    )


def composite_map(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA, c: ScalarLike = C) -> CoordMap:
    return hat_map(beta, gamma, c).compose(jet_map(beta, gamma))


def composite_display(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA, c: ScalarLike = C) -> dict[str, Scalar]:
    """Composite coordinates minus their printed closed forms."""
    beta, gamma, c = Scalar.of(beta), Scalar.of(gamma), Scalar.of(c)
    m = composite_map(beta, gamma, c)
    v = scalars(m.source)
    x, y, z, p, q = v["x"], v["y"], v["z"], v["p"], v["q"]
    printed = {
        "x": -1 / (gamma * q),
        "y": -c * exp(-z) * x + c * exp(-z) * p / (gamma * q),
        "z": -exp(z) * (y - beta) / c,
        "p": -c * exp(-z) * p,
        "q": c * gamma**2 * q * exp(-z) / (2 * (gamma * y - 1)),
    }
    return {name: m.exprs[m.target.index(name)] - value for name, value in printed.items()}


@dataclass(frozen=True)
class Section4F:
    derived: DerivedF
    # −(ŷ² − μẑ²)/(2(ŷ+ẑ)q̂)
    on_hat_display: Scalar


def derive_section4_F(beta: ScalarLike = BETA, gamma: ScalarLike = GAMMA) -> Section4F:
    beta, gamma = Scalar.of(beta), Scalar.of(gamma)
    m = jet_map(beta, gamma)
    derived = derive_F(m, hat_system(beta, gamma))
    v = scalars(m.source)
    yh, zh, qh = v["yh"], v["zh"], v["qh"]
    mu = beta * gamma / (beta * gamma - 1)
    logger.debug("section4_F_derived", beta=str(beta), gamma=str(gamma))
    return Section4F(derived, -(yh**2 - mu * zh**2) / (2 * (yh + zh) * qh))

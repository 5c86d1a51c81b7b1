"""The rolling system in the prolonged sl2 parametrization and its reduction to Monge form."""

from dataclasses import dataclass

from src.service.algebra import Scalar, exp
from src.service.algebra.scalar import ScalarLike
from src.service.distribution import PfaffianSystem
from src.service.forms import Chart, CoordMap, Form, VectorField

from .charts import (
    ALPHA,
    HAT3,
    JET_ALPHA,
    JET_INVERTIBLE,
    PROLONGED,
    bind,
    coordinate_forms,
    scalars,
)
from .monge import DerivedF, derive_F, monge_data
from .named import NamedCoframe, Relation
from .section2 import SIGMA_RELATIONS, RollingForms, rolling_forms

S_RELATIONS = (
    Relation(0, [(-1, 0, 2)]),
    Relation(1, [(1, 1, 2)]),
    Relation(2, [(-2, 0, 1)]),
)

# {σ1, σ2, σ3} ≅ {−(s1+s2), s1−s2, −s3}
SL2_IDENTIFICATION = ((-1, -1, 0), (1, -1, 0), (0, 0, -1))


@dataclass(frozen=True, eq=False)
class ProlongedForms:
    tau: tuple[Form, Form, Form]
    s: tuple[Form, Form, Form]

    @property
    def chart(self) -> Chart:
        return self.s[0].chart


def prolonged_forms(chart: Chart = PROLONGED) -> ProlongedForms:
    """τ1 = dy + y dz, τ2 = −(dp − p dz), τ3 = −dz and s1 = τ1 + y²τ2, s2 = τ2, s3 = τ3 − 2yτ2."""
    d = coordinate_forms(chart)
    v = scalars(chart)
    y, p = v["y"], v["p"]
    tau1 = d["y"] + d["z"] * y
    tau2 = -(d["p"] - d["z"] * p)
    tau3 = -d["z"]
    return ProlongedForms((tau1, tau2, tau3), (tau1 + tau2 * y**2, tau2, tau3 - tau2 * (2 * y)))


def s_coframe(chart: Chart = PROLONGED) -> NamedCoframe:
    return NamedCoframe("s", prolonged_forms(chart).s, S_RELATIONS)


def sl2_fields(chart: Chart = PROLONGED) -> tuple[VectorField, VectorField, VectorField]:
    """∂y, y²∂y − 2y∂z − (2yp+1)∂p, y∂y − ∂z − p∂p."""
    v = scalars(chart)
    y, p = v["y"], v["p"]
    return (
        VectorField.partial(chart, "y"),
        VectorField.from_mapping(chart, {"y": y**2, "z": -2 * y, "p": -(2 * y * p + 1)}),
        VectorField.from_mapping(chart, {"y": y, "z": -1, "p": -p}),
    )


def sigma_images(chart: Chart = PROLONGED) -> NamedCoframe:
    """σ's realized through the identification, carrying the σ relations."""
    s = prolonged_forms(chart).s
    images = tuple(
        sum((s[j].scale(c) for j, c in enumerate(row) if c), Form.zero(chart, 1)) for row in SL2_IDENTIFICATION
    )
    return NamedCoframe("sigma_image", images, SIGMA_RELATIONS, ("sigma1", "sigma2", "sigma3"))


def _chart(alpha: ScalarLike) -> Chart:
    return bind(PROLONGED, alpha=alpha)


def rolling_image(alpha: ScalarLike = ALPHA) -> RollingForms:
    """The rolling ω's written with the identified σ's."""
    return rolling_forms(sigma_images(_chart(alpha)).forms, alpha)  # type: ignore[arg-type]


def prolonged_theta(alpha: ScalarLike = ALPHA) -> tuple[Form, Form, Form]:
    """θ1 = s1 + s2 − e^{αx}dq, θ2 = s1 − s2 + dx, θ3 = −s3 + αe^{αx}dq."""
    alpha = Scalar.of(alpha)
    chart = _chart(alpha)
    s1, s2, s3 = prolonged_forms(chart).s
    d = coordinate_forms(chart)
    e = exp(alpha * chart.scalar("x"))
    return (s1 + s2 - d["q"] * e, s1 - s2 + d["x"], -s3 + d["q"] * (alpha * e))


def prolonged_system(alpha: ScalarLike = ALPHA) -> PfaffianSystem:
    return PfaffianSystem.create("rolling_prolonged", prolonged_theta(alpha))


def theta_expansions(alpha: ScalarLike = ALPHA) -> tuple[Form, Form, Form]:
    """The printed coordinate expansions of the three θ's."""
    alpha = Scalar.of(alpha)
    chart = _chart(alpha)
    d = coordinate_forms(chart)
    v = scalars(chart)
    y, p = v["y"], v["p"]
    e = exp(alpha * v["x"])
    contact = d["p"] - d["z"] * p
    horizontal = d["y"] + d["z"] * y
    return (
        horizontal - contact * (y**2 + 1) - d["q"] * e,
        contact * (1 - y**2) + horizontal + d["x"],
        contact * (-2 * y) + d["z"] + d["q"] * (alpha * e),
    )


@dataclass(frozen=True, eq=False)
class DisplayedCombination:
    label: str
    combination: Form
    display: Form

    def residual(self) -> Form:
        return self.combination - self.display


def new_forms(alpha: ScalarLike = ALPHA) -> tuple[DisplayedCombination, ...]:
    """θ1 + θ3/α, θ1 − θ2 and θ3 − y(θ1 − θ2) against their printed right-hand sides."""
    alpha = Scalar.of(alpha)
    theta1, theta2, theta3 = prolonged_theta(alpha)
    chart = theta1.chart
    d = coordinate_forms(chart)
    v = scalars(chart)
    y, p = v["y"], v["p"]
    e = exp(alpha * v["x"])
    contact = d["p"] - d["z"] * p
    return (
        DisplayedCombination(
            "theta1+theta3/alpha",
            theta1 + theta3 * (1 / alpha),
            d["y"] + d["z"] * y - contact * (y**2 + 1 + 2 * y / alpha) + d["z"] * (1 / alpha),
        ),
        DisplayedCombination(
            "theta1-theta2",
            theta1 - theta2,
            contact * (-2) - d["x"] - d["q"] * e,
        ),
        DisplayedCombination(
            "theta3-y(theta1-theta2)",
            theta3 - (theta1 - theta2) * y,
            d["z"] + d["x"] * y + d["q"] * ((y + alpha) * e),
        ),
    )


def new_forms_system(alpha: ScalarLike = ALPHA) -> PfaffianSystem:
    return PfaffianSystem.create("new1forms", [c.combination for c in new_forms(alpha)])


# --------------------------------------------------------------------------
# Hat coordinates
# --------------------------------------------------------------------------


def hat_map(alpha: ScalarLike = ALPHA) -> CoordMap:
    """ŷ = e^z(y + 1/α), p̂ = e^{−z}p, q̂ = e^{−αx}/α, ẑ = e^{z−αx}, x̂ = q − e^{−αx}/α."""
    alpha = Scalar.of(alpha)
    source = _chart(alpha)
    v = scalars(source)
    x, y, z, p, q = v["x"], v["y"], v["z"], v["p"], v["q"]
    return CoordMap.create(
        "hat3",
        source,
        bind(HAT3, alpha=alpha),
        {
            "xh": q - exp(-alpha * x) / alpha,
            "yh": exp(z) * (y + 1 / alpha),
            "zh": exp(z - alpha * x),
            "ph": exp(-z) * p,
            "qh": exp(-alpha * x) / alpha,
        },
    )


@dataclass(frozen=True, eq=False)
class HatForms:
    system: PfaffianSystem
    # First form with e^{2z} written on the source chart, before eliminating z.
    first_on_source: Form


def hat_forms(alpha: ScalarLike = ALPHA) -> HatForms:
    """dŷ − (ŷ² + (1−1/α²)ẑ²/(α²q̂²))dp̂, dp̂ + dx̂/(2ẑ), dẑ + (ŷ + (1−1/α²)ẑ/q̂)dx̂."""
    alpha = Scalar.of(alpha)
    chart = bind(HAT3, alpha=alpha)
    d = coordinate_forms(chart)
    v = scalars(chart)
    yh, zh, qh = v["yh"], v["zh"], v["qh"]
    k = 1 - 1 / alpha**2
    forms = [
        d["yh"] - d["ph"] * (yh**2 + k * zh**2 / (alpha**2 * qh**2)),
        d["ph"] + d["xh"] * (1 / (2 * zh)),
        d["zh"] + d["xh"] * (yh + k * zh / qh),
    ]

    m = hat_map(alpha)
    source = m.source
    y, z = source.scalar("y"), source.scalar("z")
    pulled_yh = m.pullback(d["yh"])
    pulled_ph = m.pullback(d["ph"])
    first_on_source = pulled_yh - pulled_ph * (exp(2 * z) * (y**2 + 2 * y / alpha + 1))
    return HatForms(PfaffianSystem.create("hat3_ideal", forms), first_on_source)


def hat_first_form_variants(alpha: ScalarLike = ALPHA) -> tuple[Form, Form, Form]:
    """The three printed versions of the first hat form, all pulled back to the source chart."""
    alpha = Scalar.of(alpha)
    m = hat_map(alpha)
    chart = m.target
    d = coordinate_forms(chart)
    z = m.source.scalar("z")
    k = 1 - 1 / alpha**2
    yh_image = m.exprs[chart.index("yh")]
    second = m.pullback(d["yh"]) - m.pullback(d["ph"]) * (yh_image**2 + k * exp(2 * z))
    third = m.pullback(hat_forms(alpha).system.forms[0])
    return hat_forms(alpha).first_on_source, second, third


def exp_2z_identity(alpha: ScalarLike = ALPHA) -> Scalar:
    """e^{2z} − ẑ²/(α²q̂²) with the hat coordinates substituted."""
    alpha = Scalar.of(alpha)
    m = hat_map(alpha)
    zh, qh = HAT3.scalar("zh"), HAT3.scalar("qh")
    return exp(2 * m.source.scalar("z")) - m.pull(zh**2 / (alpha**2 * qh**2))


# --------------------------------------------------------------------------
# Hat chart to the jet space
# --------------------------------------------------------------------------


def jet_map(alpha: ScalarLike = ALPHA) -> CoordMap:
    """(x, y, z, p, q) = (2ẑ, x̂ + 2ẑp̂, ŷ, p̂, 1/(4(ẑŷ + (1−1/α²)ẑ²/q̂))), with its inverse."""
    alpha = Scalar.of(alpha)
    source = bind(HAT3, alpha=alpha)
    v = scalars(source)
    xh, yh, zh, ph, qh = v["xh"], v["yh"], v["zh"], v["ph"], v["qh"]
    k = 1 - 1 / alpha**2
    forward = CoordMap.create(
        "jet3",
        source,
        bind(JET_ALPHA, alpha=alpha),
        {
            "x": 2 * zh,
            "y": xh + 2 * zh * ph,
            "z": yh,
            "p": ph,
            "q": 1 / (4 * (zh * yh + k * zh**2 / qh)),
        },
    )
    return forward.with_inverse(inverse_map(alpha))


def inverse_map(alpha: ScalarLike = ALPHA) -> CoordMap:
    """(x̂, ŷ, ẑ, p̂, q̂) = (y − xp, z, x/2, p, (1−1/α²)qx²/(1−2zqx))."""
    alpha = Scalar.of(alpha)
    source = bind(JET_INVERTIBLE, alpha=alpha)
    v = scalars(source)
    x, y, z, p, q = v["x"], v["y"], v["z"], v["p"], v["q"]
    k = 1 - 1 / alpha**2
    return CoordMap.create(
        "inverse3",
        source,
        bind(HAT3, alpha=alpha),
        {
            "xh": y - x * p,
            "yh": z,
            "zh": x / 2,
            "ph": p,
            "qh": k * q * x**2 / (1 - 2 * z * q * x),
        },
    )


def composite_map(alpha: ScalarLike = ALPHA) -> CoordMap:
    return hat_map(alpha).compose(jet_map(alpha))


@dataclass(frozen=True, eq=False)
class JetPullbacks:
    """The printed pullbacks of dy − p dx and dp − q dx to the hat chart."""

    computed: tuple[Form, Form]
    displayed: tuple[Form, Form]


def jet_pullbacks(alpha: ScalarLike = ALPHA) -> JetPullbacks:
    alpha = Scalar.of(alpha)
    m = jet_map(alpha)
    monge = monge_data(alpha).system.forms
    chart = m.source
    d = coordinate_forms(chart)
    v = scalars(chart)
    yh, zh, ph, qh = v["yh"], v["zh"], v["ph"], v["qh"]
    k = 1 - 1 / alpha**2
    return JetPullbacks(
        (m.pullback(monge[0]), m.pullback(monge[1])),
        (
            d["xh"] + d["ph"] * (2 * zh),
            (d["xh"] + d["zh"] * (1 / (yh + k * zh / qh))) * (-1 / (2 * zh)),
        ),
    )


def inverse_consequences(alpha: ScalarLike = ALPHA) -> dict[str, Scalar]:
    """ẑ/q̂ and e^{2z} through the inverse map, minus their printed jet expressions."""
    alpha = Scalar.of(alpha)
    inverse = inverse_map(alpha)
    hat = hat_map(alpha)
    x, z, q = JET_ALPHA.scalar("x"), JET_ALPHA.scalar("z"), JET_ALPHA.scalar("q")
    zh, qh = HAT3.scalar("zh"), HAT3.scalar("qh")
    k = 1 - 1 / alpha**2
    ratio_display = (1 / (2 * q * x) - z) / k
    ratio = inverse.pull(zh / qh)
    exp_on_hat = zh**2 / (alpha**2 * qh**2)
    exp_display = (1 / alpha**2) * (1 / k**2) * (1 / (2 * q * x) - z) ** 2
    return {
        "zh/qh": ratio - ratio_display,
        "exp(2z)": inverse.pull(exp_on_hat) - exp_display,
        "exp(2z) on the rolling chart": hat.pull(exp_on_hat) - exp(2 * hat.source.scalar("z")),
    }


@dataclass(frozen=True)
class Section3F:
    derived: DerivedF
    # qz² + (1−1/α²)q e^{2z} on the hat chart, e^{2z} = ẑ²/(α²q̂²).
    before_inverse: Scalar


def derive_section3_F(alpha: ScalarLike = ALPHA) -> Section3F:
    alpha = Scalar.of(alpha)
    m = jet_map(alpha)
    derived = derive_F(m, hat_forms(alpha).system)
    q_image = m.exprs[m.target.index("q")]
    z_image = m.exprs[m.target.index("z")]
    zh, qh = HAT3.scalar("zh"), HAT3.scalar("qh")
    closed = q_image * z_image**2 + (1 - 1 / alpha**2) * q_image * zh**2 / (alpha**2 * qh**2)
    return Section3F(derived, closed)

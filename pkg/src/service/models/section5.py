"""Adapted coframe for the Monge normal form and its representative metric."""

from typing import Mapping, Optional

from src.service.algebra import Scalar, cbrt, parse
from src.service.algebra.scalar import ScalarLike
from src.service.curvature import AdaptedCoframe, Metric, nurowski_metric
from src.service.forms import Form

from .charts import ALPHA, JET_ALPHA, bind, coordinate_forms, scalars
from .monge import MongeData, monge_data

A42_TEXT = (
    "2^(1/3)*alpha^2*(alpha^2 - 9)*(4*q*x*z*(q*x*z - 1) + 1)"
    " / (60*x^(10/3)*(alpha^2 - 1)^(8/3)*q^2)"
)
A43_TEXT = (
    "-2^(2/3)*(12*alpha^2*q^2*x^2*z^2 - 8*alpha^2*q*x*z - 2*alpha^2 + 3)"
    " / (12*x^(5/3)*(alpha^2 - 1)^(4/3)*q)"
)
A52_TEXT = "2^(1/3)*(2*alpha^2 - 3) / (5*(alpha^2 - 1)^(2/3)*x^(1/3))"
A53_TEXT = "-2^(2/3)*q*x^(4/3)*(alpha^2 - 1)^(2/3)"
K_TEXT = "1 / (2*q^3*x^2*(alpha^2 - 1))"


def section5_constants(alpha: ScalarLike = ALPHA) -> dict[str, Scalar]:
    """K and a41..a53, parsed from their printed form."""
    bind(JET_ALPHA, alpha=alpha)
    namespace = {"alpha": Scalar.of(alpha)}
    zero = Scalar.of(0)
    return {
        "K": parse(K_TEXT, namespace),
        "a41": zero,
        "a42": parse(A42_TEXT, namespace),
        "a43": parse(A43_TEXT, namespace),
        "a51": zero,
        "a52": parse(A52_TEXT, namespace),
        "a53": parse(A53_TEXT, namespace),
    }


def completion_forms(alpha: ScalarLike = ALPHA) -> tuple[MongeData, tuple[Form, Form]]:
    """Monge data and the completing ω4, ω5."""
    alpha = Scalar.of(alpha)
    data = monge_data(alpha)
    chart = data.chart
    d = coordinate_forms(chart)
    v = scalars(chart)
    x, z, q = v["x"], v["z"], v["q"]
    a2 = alpha**2
    omega4 = d["q"] * (1 / (2 * q**3 * x**2 * (a2 - 1))) - d["x"] * (
        (4 * a2 * q**2 * x**2 * z**2 - 4 * a2 * q * x * z + (3 - 2 * a2))
        / (4 * (a2 - 1) ** 2 * x**3 * q**2)
    )
    return data, (omega4, -d["x"])


def section5_coframe(
    alpha: ScalarLike = ALPHA,
    overrides: Optional[Mapping[str, ScalarLike]] = None,
) -> AdaptedCoframe:
    """θ1 = ω3 − (4α²q²x²z² − 1)/(4q²x²(α²−1))ω2, θ2 = ω1, θ3 = K^(1/3)ω2.

    θ4 and θ5 are completed with the a's.
    """
    alpha = Scalar.of(alpha)
    constants = section5_constants(alpha)
    for name, value in (overrides or {}).items():
        constants[name] = Scalar.of(value)
    data, (omega4, omega5) = completion_forms(alpha)
    w1, w2, w3 = data.system.forms
    v = scalars(data.chart)
    x, z, q = v["x"], v["z"], v["q"]
    k3 = cbrt(constants["K"])

    theta1 = w3 - w2 * ((4 * alpha**2 * q**2 * x**2 * z**2 - 1) / (4 * q**2 * x**2 * (alpha**2 - 1)))
    theta2 = w1
    theta3 = w2 * k3
    theta4 = (
        omega4 * (1 / k3)
        + theta1 * constants["a41"]
        + theta2 * constants["a42"]
        + theta3 * constants["a43"]
    )
    theta5 = (
        omega5 * (1 / k3)
        + theta1 * constants["a51"]
        + theta2 * constants["a52"]
        + theta3 * constants["a53"]
    )
    return AdaptedCoframe.create(
        "section5",
        [theta1, theta2, theta3, theta4, theta5],
        provenance="Monge forms completed by ω4, ω5 = −dx",
        constants=constants,
    )


def section5_metric(alpha: ScalarLike = ALPHA) -> Metric:
    return nurowski_metric(section5_coframe(alpha), name="section5")

"""Checks for the prolonged sl2 picture and the reduction to Monge normal form."""

from fractions import Fraction

from src.domain.entities import CheckOutcome, CheckParameters, ParamMode, Severity
from src.service.distribution import PfaffianSystem, derived_flag, ideal_contains, ideal_equivalent
from src.service.forms import CoordMap, contract
from src.service.models import monge_data, monge_F
from src.service.models.monge import maximal_F, monge_F_display
from src.service.models.section3 import (
    composite_map,
    derive_section3_F,
    exp_2z_identity,
    hat_first_form_variants,
    hat_forms,
    hat_map,
    inverse_consequences,
    jet_map,
    jet_pullbacks,
    new_forms,
    prolonged_system,
    prolonged_theta,
    rolling_image,
    s_coframe,
    sigma_images,
    sl2_fields,
    theta_expansions,
)

from .registry import check
from .support import alpha_of, dumped, form_residuals, nonzero, sampler_for

IDENTIFICATION_MATRIX = ((1, 0, 0), (0, 1, 0), (0, 0, -1))


@check(
    "S3.structure-s",
    "s1, s2, s3 satisfy the sl2 relations and are dual to the prolonged action fields",
    "forms a basis dual to the $sl_2$ Lie algebra of vector fields",
    Severity.IDENTITY,
    models=("s",),
)
def structure_s(params: CheckParameters) -> CheckOutcome:
    coframe = s_coframe()
    fields = sl2_fields()
    pairing = {}
    for i, form in enumerate(coframe.forms):
        for j, field in enumerate(fields):
            value = contract(form, field)
            if value != (1 if i == j else 0):
                pairing[f"s{i + 1}(X{j + 1})"] = str(value)
    residuals = coframe.residuals()
    return CheckOutcome(
        not residuals and not pairing,
        {"residuals": form_residuals(residuals), "pairing_defects": pairing},
    )


@check(
    "S3.sl2-isomorphism",
    "Identified s-forms carry the sigma relations and give back the rolling system",
    "\\{\\sigma_1,\\sigma_2,\\sigma_3\\}\\cong \\{-(s_1+s_2),s_1-s_2,-s_3\\}",
    Severity.EQUIVALENCE,
    ParamMode.ALPHA,
    models=("sl2-iso", "prolonged"),
)
def sl2_isomorphism(params: CheckParameters) -> CheckOutcome:
    alpha = alpha_of(params)
    images = sigma_images()
    prolonged = prolonged_system(alpha)
    image = PfaffianSystem.create("rolling_image", rolling_image(alpha).omega[:3])
    certificate = ideal_equivalent(prolonged, image, CoordMap.identity(prolonged.chart))
    expected = all(
        entry == IDENTIFICATION_MATRIX[i][j]
        for i, row in enumerate(certificate.matrix)
        for j, entry in enumerate(row)
    )
    residuals = images.residuals()
    return CheckOutcome(
        not residuals and expected,
        {"residuals": form_residuals(residuals), "certificate": certificate.to_payload()},
    )


@check(
    "S3.theta-expansions",
    "Coordinate expansions of theta1..theta3 on the prolonged chart",
    "We now consider the {\\it rolling} distribution annihilated by the 1-forms",
    Severity.IDENTITY,
    ParamMode.ALPHA,
    models=("prolonged",),
)
def theta_coordinates(params: CheckParameters) -> CheckOutcome:
    alpha = alpha_of(params)
    differences = {
        f"theta{i + 1}": computed - printed
        for i, (computed, printed) in enumerate(zip(prolonged_theta(alpha), theta_expansions(alpha)))
    }
    mismatched = nonzero(differences)
    return CheckOutcome(not mismatched, {"mismatched": mismatched})


@check(
    "S3.new1forms",
    "The recombined 1-forms match their printed right-hand sides",
    "The distribution is equivalently annihilated by the 1-forms",
    Severity.IDENTITY,
    ParamMode.ALPHA,
    models=("new1forms",),
)
def recombined_forms(params: CheckParameters) -> CheckOutcome:
    combinations = new_forms(alpha_of(params))
    mismatched = nonzero({c.label: c.residual() for c in combinations})
    return CheckOutcome(
        not mismatched,
        {"mismatched": mismatched, **dumped(params, forms=[c.display for c in combinations])},
    )


@check(
    "S3.hat-ideal",
    "Hat coordinates carry the rolling ideal onto the printed hat forms",
    "Under this change of coordinates, the system spanned by the 1-forms",
    Severity.EQUIVALENCE,
    ParamMode.ALPHA,
    models=("hat3", "hat3-ideal"),
)
def hat_ideal(params: CheckParameters) -> CheckOutcome:
    alpha = alpha_of(params)
    hat = hat_forms(alpha)
    certificate = ideal_equivalent(prolonged_system(alpha), hat.system, hat_map(alpha))
    first, second, third = hat_first_form_variants(alpha)
    variants = {"first = second": (first - second).is_zero(), "second = third": (second - third).is_zero()}
    exp_identity = exp_2z_identity(alpha)
    return CheckOutcome(
        all(variants.values()) and exp_identity.is_zero(),
        {
            "certificate": certificate.to_payload(),
            "variants": variants,
            "exp_2z_residual": str(exp_identity),
        },
    )


@check(
    "S3.jet-map",
    "Jet coordinate change is invertible and its pullbacks match the printed ones",
    "Using the inverse map",
    Severity.IDENTITY,
    ParamMode.ALPHA,
    models=("jet3", "inverse3"),
)
def jet_coordinates(params: CheckParameters) -> CheckOutcome:
    alpha = alpha_of(params)
    m = jet_map(alpha)
    inverse_defects = {k: str(v) for k, v in m.inverse_residuals().items()}
    pullbacks = jet_pullbacks(alpha)
    hat = hat_forms(alpha).system
    outside = {
        f"pullback{i + 1}": (computed - printed).to_text()
        for i, (computed, printed) in enumerate(zip(pullbacks.computed, pullbacks.displayed))
        if not ideal_contains(hat, computed - printed).contained
    }
    consequences = nonzero(inverse_consequences(alpha))
    return CheckOutcome(
        not inverse_defects and not outside and not consequences,
        {
            "inverse_defects": inverse_defects,
            "pullbacks_outside_ideal": outside,
            "inverse_consequences": consequences,
        },
    )


@check(
    "S3.derive-F",
    "F obtained from the coordinate change equals the closed form",
    "can be brought into the Monge normal form",
    Severity.IDENTITY,
    ParamMode.ALPHA,
    models=("F",),
)
def derive_f(params: CheckParameters) -> CheckOutcome:
    alpha = alpha_of(params)
    result = derive_section3_F(alpha)
    derived = result.derived
    steps = {
        "on hat chart": (derived.on_source - result.before_inverse).is_zero(),
        "on jet chart": derived.on_jet is not None and (derived.on_jet - monge_F(alpha)).is_zero(),
        "printed with radicals": (monge_F_display(alpha) - monge_F(alpha)).is_zero(),
    }
    return CheckOutcome(
        all(steps.values()),
        {"steps": steps, "F": str(monge_F(alpha)), **dumped(params, on_source=derived.on_source)},
    )


@check(
    "S3.F-specializations",
    "F at alpha = 3 and alpha = 1/3 matches the printed maximal-symmetry forms",
    "When $\\alpha^2=9$, we obtain",
    Severity.IDENTITY,
    models=("F",),
)
def f_specializations(params: CheckParameters) -> CheckOutcome:
    cases = {
        "alpha=3": (monge_F(3) - maximal_F(Fraction(9))).is_zero(),
        "alpha=1/3": (monge_F(Fraction(1, 3)) - maximal_F(Fraction(1, 9))).is_zero(),
    }
    return CheckOutcome(all(cases.values()), {"cases": cases})


@check(
    "T1.monge-equivalence",
    "Rolling system is locally equivalent to dy - p dx, dp - q dx, dz - F dx",
    "can be brought into the Monge normal form",
    Severity.EQUIVALENCE,
    ParamMode.ALPHA,
    models=("composite3", "monge"),
)
def monge_equivalence(params: CheckParameters) -> CheckOutcome:
    alpha = alpha_of(params)
    certificate = ideal_equivalent(prolonged_system(alpha), monge_data(alpha).system, composite_map(alpha))
    return CheckOutcome(
        not certificate.determinant.is_zero(),
        {"certificate": certificate.to_payload()},
    )


@check(
    "S3.monge-235",
    "Monge system with the derived F has growth vector (2,3,5)",
    "is a $(2,3,5)$-distribution whenever $\\alpha^2 \\neq 1$",
    Severity.EQUIVALENCE,
    ParamMode.ALPHA,
    models=("monge",),
)
def monge_235(params: CheckParameters) -> CheckOutcome:
    system = monge_data(alpha_of(params)).system
    growth = derived_flag(system, sampler=sampler_for(params))
    return CheckOutcome(growth.is_235, {"growth": str(growth)})

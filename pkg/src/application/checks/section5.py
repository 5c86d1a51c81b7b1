"""Checks for the coframe and metric attached directly to the Monge normal form."""

from fractions import Fraction

from src.domain.entities import CheckOutcome, CheckParameters, ParamMode, Severity
from src.service.algebra import cbrt
from src.service.curvature import (
    WeylVerdict,
    conformal_weyl_comparison,
    curvature_settings,
    isotropy_defect,
    solve_connection,
    weyl_flat_certificate,
)
from src.service.forms import contract
from src.service.models import monge_data
from src.service.models.section5 import section5_coframe, section5_constants, section5_metric

from .registry import check
from .support import alpha_of, numeric_bindings, sampler_for, tolerance_or

MAXIMAL_RATIOS = (Fraction(9), Fraction(1, 9))


@check(
    "S5.kernel",
    "dq and the total derivative with z' = F span the kernel of the Monge forms",
    "is annihilated by the three 1-forms",
    Severity.IDENTITY,
    models=("monge",),
)
def kernel(params: CheckParameters) -> CheckOutcome:
    data = monge_data()
    defects = {}
    for i, form in enumerate(data.system.forms):
        for j, field in enumerate(data.expected_kernel()):
            value = contract(form, field)
            if not value.is_zero():
                defects[f"omega{i + 1}(X{j + 1})"] = str(value)
    return CheckOutcome(not defects, {"defects": defects})


@check(
    "S5.structure-equations",
    "Monge coframe completed with the a-constants solves the structure equations",
    "then we find Cartan's structure equations are satisfied",
    Severity.IDENTITY,
    ParamMode.ALPHA,
    slow=True,
    models=("section5-coframe",),
)
def structure_equations(params: CheckParameters) -> CheckOutcome:
    alpha = alpha_of(params)
    solution = solve_connection(section5_coframe(alpha), strict=False)
    return CheckOutcome(
        solution.valid,
        {
            "constants": {k: str(v) for k, v in section5_constants(alpha).items()},
            "solution": solution.to_payload(),
        },
    )


@check(
    "S5.perturbation-control",
    "Perturbing a52 leaves a nonzero structure-equation residual",
    "then we find Cartan's structure equations are satisfied",
    Severity.IDENTITY,
    ParamMode.ALPHA,
    slow=True,
    models=("section5-coframe",),
)
def perturbation_control(params: CheckParameters) -> CheckOutcome:
    alpha = alpha_of(params)
    a52 = section5_constants(alpha)["a52"]
    solution = solve_connection(section5_coframe(alpha, {"a52": a52 + 1}), strict=False)
    return CheckOutcome(not solution.valid, {"residual_components": sorted(solution.residuals)})


@check(
    "S5.isotropy",
    "The Monge distribution is totally null for the representative metric",
    "such that the rank 2 distribution is isotropic with respect to any metric in the conformal class",
    Severity.NUMERIC,
    ParamMode.ALPHA_RATIONAL,
    models=("section5-metric",),
)
def isotropy(params: CheckParameters) -> CheckOutcome:
    data = monge_data(params.alpha)
    defect = isotropy_defect(
        section5_metric(params.alpha),
        data.expected_kernel(),
        numeric_bindings(params),
        params.points,
        sampler_for(params),
    )
    return CheckOutcome(defect < curvature_settings.isotropy_tolerance, {"max_defect": defect})


@check(
    "S5.weyl-flat",
    "Monge metric is conformally flat exactly at alpha^2 in {9, 1/9}",
    "The metric is conformally flat when $\\alpha^2=9$ or $\\alpha^2=\\frac{1}{9}$",
    Severity.NUMERIC,
    ParamMode.ALPHA_RATIONAL,
    slow=True,
    models=("section5-metric",),
)
def weyl_flat(params: CheckParameters) -> CheckOutcome:
    certificate = weyl_flat_certificate(
        section5_metric(params.alpha),
        numeric_bindings(params),
        params.points,
        tol=params.tolerance,
        sampler=sampler_for(params),
    )
    expected = WeylVerdict.FLAT if params.alpha**2 in MAXIMAL_RATIOS else WeylVerdict.NOT_FLAT
    identities = certificate.identities_hold(curvature_settings.bianchi_tolerance)
    return CheckOutcome(
        certificate.verdict == expected and identities,
        {"expected": expected.value, "identities_hold": identities, "certificate": certificate.to_payload()},
    )


@check(
    "S5.conformal-scaling",
    "Weyl tensor C^a_bcd is unchanged when g is rescaled by K^(1/3)",
    "gives a representative metric from Nurowski's conformal class",
    Severity.NUMERIC,
    ParamMode.ALPHA_RATIONAL,
    models=("section5-metric",),
)
def conformal_scaling(params: CheckParameters) -> CheckOutcome:
    factor = cbrt(section5_constants(params.alpha)["K"])
    comparison = conformal_weyl_comparison(
        section5_metric(params.alpha),
        factor,
        numeric_bindings(params),
        params.points,
        sampler_for(params),
    )
    tolerance = tolerance_or(params, curvature_settings.conformal_tolerance)
    return CheckOutcome(comparison.holds(tolerance), {"tolerance": tolerance, **comparison.to_payload()})

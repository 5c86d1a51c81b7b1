"""Checks for the hyperboloid rolling system and its diagonal metric."""

from fractions import Fraction

from src.domain.entities import CheckOutcome, CheckParameters, ParamMode, Severity
from src.service.curvature import (
    WeylVerdict,
    curvature_settings,
    nurowski_metric,
    quadratic_identity_check,
    scalar_curvature_samples,
    solve_connection,
    weyl_flat_certificate,
)
from src.service.distribution import derived_flag, ideal_equivalent
from src.service.models.section2 import (
    diagonal_metric_lines,
    reversal_map,
    rolling_system,
    section2_coframe,
    section2_constants,
    sigma_coframe,
    sigma_surface_element,
    sign_reversed_system,
    surface_metrics,
)

from .registry import check
from .support import alpha_of, dumped, form_residuals, numeric_bindings, sampler_for, tolerance_or

MAXIMAL_RATIOS = (Fraction(9), Fraction(1, 9))


def expected_235(params: CheckParameters) -> bool:
    return params.alpha is None or params.alpha**2 != 1


def expected_flat(params: CheckParameters) -> bool:
    return params.alpha is not None and params.alpha**2 in MAXIMAL_RATIOS


@check(
    "S2.structure-sigma",
    "Left-invariant sigma forms satisfy their Maurer-Cartan relations",
    "These 1-forms satisfy the relations",
    Severity.IDENTITY,
    models=("sigma",),
)
def structure_sigma(params: CheckParameters) -> CheckOutcome:
    coframe = sigma_coframe()
    residuals = coframe.residuals()
    return CheckOutcome(
        not residuals,
        {"relations": coframe.to_payload()["relations"], "residuals": form_residuals(residuals)},
    )


@check(
    "S2.surface-element",
    "sigma2^2 - sigma1^2 is the surface element dy^2 - sinh^2(y) dp^2",
    "\\sigma_2\\sigma_2-\\sigma_1\\sigma_1={\\rm d} y^2-\\sinh^2(y){\\rm d} p^2",
    Severity.IDENTITY,
    models=("sigma",),
)
def surface_element(params: CheckParameters) -> CheckOutcome:
    element, expected = sigma_surface_element()
    return CheckOutcome(quadratic_identity_check(element, expected))


@check(
    "S2.rolling-235",
    "Rolling system has growth vector (2,3,5) exactly when alpha^2 != 1",
    "is a $(2,3,5)$-distribution whenever $\\alpha^2 \\neq 1$",
    Severity.EQUIVALENCE,
    ParamMode.ALPHA,
    models=("rolling",),
)
def rolling_235(params: CheckParameters) -> CheckOutcome:
    system = rolling_system(alpha_of(params))
    growth = derived_flag(system, sampler=sampler_for(params))
    expected = expected_235(params)
    return CheckOutcome(
        growth.is_235 == expected,
        {"growth": str(growth), "expected_235": expected, **dumped(params, forms=system.forms)},
    )


@check(
    "S2.sign-reversed",
    "Sign-reversed system is the rolling system for -alpha under (x, q) -> (-x, -q)",
    "\\bar \\omega_1=-\\sigma_1+\\omega_5",
    Severity.EQUIVALENCE,
    ParamMode.ALPHA,
    models=("rolling-reversed", "rolling"),
)
def sign_reversed(params: CheckParameters) -> CheckOutcome:
    alpha = alpha_of(params)
    reversed_system = sign_reversed_system(alpha)
    certificate = ideal_equivalent(reversed_system, rolling_system(-alpha), reversal_map())
    growth = derived_flag(reversed_system, sampler=sampler_for(params))
    expected = expected_235(params)
    return CheckOutcome(
        growth.is_235 == expected,
        {
            "certificate": certificate.to_payload(),
            "identity_matrix": certificate.is_identity,
            "growth": str(growth),
        },
    )


@check(
    "S2.structure-equations",
    "Rolling coframe with K, P..U solves the structure equations",
    "where $K=\\frac{1}{\\alpha^2-1}$",
    Severity.IDENTITY,
    ParamMode.ALPHA,
    slow=True,
    models=("section2-coframe",),
)
def structure_equations(params: CheckParameters) -> CheckOutcome:
    alpha = alpha_of(params)
    solution = solve_connection(section2_coframe(alpha), strict=False)
    return CheckOutcome(
        solution.valid,
        {
            "constants": {k: str(v) for k, v in section2_constants(alpha).items()},
            "solution": solution.to_payload(),
        },
    )


@check(
    "S2.perturbation-control",
    "Perturbing Q to Q + 1 leaves a nonzero structure-equation residual",
    "where $K=\\frac{1}{\\alpha^2-1}$",
    Severity.IDENTITY,
    ParamMode.ALPHA,
    slow=True,
    models=("section2-coframe",),
)
def perturbation_control(params: CheckParameters) -> CheckOutcome:
    alpha = alpha_of(params)
    q = section2_constants(alpha)["Q"]
    solution = solve_connection(section2_coframe(alpha, {"Q": q + 1}), strict=False)
    return CheckOutcome(
        not solution.valid,
        {"residual_components": sorted(solution.residuals)},
    )


@check(
    "S2.metric-lines",
    "K^(1/3) g equals each displayed diagonal rewrite",
    "Observe that the metric we obtain",
    Severity.IDENTITY,
    ParamMode.ALPHA,
    slow=True,
    models=("section2-metric",),
)
def metric_lines(params: CheckParameters) -> CheckOutcome:
    lines = diagonal_metric_lines(alpha_of(params))
    steps = {
        "scaled = line1": quadratic_identity_check(lines.scaled, lines.lines[0]),
        "line1 = line2": quadratic_identity_check(lines.lines[0], lines.lines[1]),
        "line2 = line3": quadratic_identity_check(lines.lines[1], lines.lines[2]),
    }
    return CheckOutcome(all(steps.values()), {"steps": steps})


@check(
    "S2.quadratic-identity",
    "sigma1^2 - sigma2^2 + omega5^2 - omega4^2 against the omega and omega-bar squares",
    "Using the fact that",
    Severity.IDENTITY,
    ParamMode.ALPHA,
    models=("section2-metric",),
)
def quadratic_identity(params: CheckParameters) -> CheckOutcome:
    lines = diagonal_metric_lines(alpha_of(params))
    return CheckOutcome(quadratic_identity_check(lines.identity_lhs, lines.identity_rhs))


@check(
    "S2.gauss-curvature",
    "Surface elements have Gauss curvature -alpha^2 and -1",
    "The Gauss curvature of the surface element $\\omega_4^2-\\omega_5^2$ over $\\Sigma$ is given by $-\\alpha^2$",
    Severity.NUMERIC,
    ParamMode.ALPHA_RATIONAL,
)
def gauss_curvature(params: CheckParameters) -> CheckOutcome:
    bindings = numeric_bindings(params)
    sigma, sigma_prime = surface_metrics(params.alpha)
    sampler = sampler_for(params)
    expected = (-float(params.alpha**2), -1.0)
    worst = 0.0
    observed = []
    for metric, target in zip((sigma, sigma_prime), expected):
        gauss = [value / 2 for value in scalar_curvature_samples(metric, bindings, params.points, sampler)]
        worst = max(worst, max(abs(g - target) for g in gauss) / max(abs(target), 1.0))
        observed.append(gauss[0])
    ratio = observed[0] / observed[1]
    return CheckOutcome(
        worst < tolerance_or(params, 1e-8),
        {"gauss": observed, "ratio": ratio, "max_relative_error": worst},
    )


@check(
    "S2.weyl-flat",
    "Diagonal metric is conformally flat exactly at alpha^2 in {9, 1/9}",
    "In these cases, the metric (\\ref{diagonalm}) has vanishing Weyl tensor",
    Severity.NUMERIC,
    ParamMode.ALPHA_RATIONAL,
    slow=True,
    models=("section2-metric",),
)
def weyl_flat(params: CheckParameters) -> CheckOutcome:
    metric = nurowski_metric(section2_coframe(params.alpha))
    certificate = weyl_flat_certificate(
        metric,
        numeric_bindings(params),
        params.points,
        tol=params.tolerance,
        sampler=sampler_for(params),
    )
    expected = WeylVerdict.FLAT if expected_flat(params) else WeylVerdict.NOT_FLAT
    identities = certificate.identities_hold(curvature_settings.bianchi_tolerance)
    return CheckOutcome(
        certificate.verdict == expected and identities,
        {"expected": expected.value, "identities_hold": identities, "certificate": certificate.to_payload()},
    )

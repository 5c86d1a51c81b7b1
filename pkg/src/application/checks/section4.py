"""Checks for the SL(2) Pfaffian system built from two copies of sl2."""

from fractions import Fraction

from src.domain.entities import CheckOutcome, CheckParameters, ParamMode, Severity
from src.domain.exceptions import DomainViolation
from src.service.algebra import Scalar
from src.service.curvature import (
    WeylVerdict,
    curvature_settings,
    nurowski_metric,
    quadratic_identity_check,
    solve_connection,
    weyl_flat_certificate,
)
from src.service.distribution import derived_flag, ideal_equivalent
from src.service.models.charts import ALPHA, C, GAMMA
from src.service.models.monge import maximal_F, monge_F, sl2_pair_F, sl2_pair_F_displays, sl2_pair_monge_data
from src.service.models.section4 import (
    BRANCHES,
    composite_display,
    composite_map,
    derive_section4_F,
    gen1_expansions,
    gen1_forms,
    gen1_system,
    hat_map,
    hat_second_form_display,
    hat_system,
    jet_map,
    metric_expansion,
    sbar_coframe,
    second_copy,
    section4_coframe,
    section4_constants,
    tilde_forms,
)

from .registry import check
from .support import beta_gamma_of, form_residuals, nonzero, sampler_for

MAXIMAL_PRODUCTS = (Fraction(9), Fraction(1, 9))

PROPOSITION_CASES = (
    (Fraction(3), Fraction(3), True),
    (Fraction(1), Fraction(1, 9), True),
    (Fraction(2), Fraction(5), True),
    (Fraction(2), Fraction(1, 2), False),
)

LAMBDAS_AT_NINE = {Fraction(-3, 2), Fraction(-7, 4), Fraction(-13, 8), Fraction(-15, 8)}


def c_values(params: CheckParameters) -> list[tuple[str, Scalar]]:
    """The hat map is checked for a symbolic c and for the run value."""
    values = [("c=symbolic", C)]
    if params.c is not None:
        values.append((f"c={params.c}", Scalar.of(params.c)))
    return values


def valid_branches(params: CheckParameters) -> dict[str, bool]:
    beta, gamma = beta_gamma_of(params)
    found = {}
    for index in range(len(BRANCHES)):
        coframe = section4_coframe(beta, gamma, index)
        found[coframe.name] = solve_connection(coframe, strict=False).valid
    return found


@check(
    "S4.structure-sbar",
    "s1, s2 and the barred forms satisfy their structure equations; s4..s6 form a second sl2",
    "These 1-forms satisfy the equations",
    Severity.IDENTITY,
    models=("sbar", "s-second"),
)
def structure_sbar(params: CheckParameters) -> CheckOutcome:
    barred = sbar_coframe().residuals()
    second = second_copy().residuals()
    return CheckOutcome(
        not barred and not second,
        {"sbar_residuals": form_residuals(barred), "second_copy_residuals": form_residuals(second)},
    )


@check(
    "S4.proposition-235",
    "gen1 system has growth vector (2,3,5) exactly when beta*gamma != 1",
    "is a bracket-generating $(2,3,5)$-distribution whenever $\\beta\\gamma \\neq 1$",
    Severity.EQUIVALENCE,
    models=("gen1",),
)
def proposition_235(params: CheckParameters) -> CheckOutcome:
    sampler = sampler_for(params)
    cases = {}
    passed = True
    symbolic = derived_flag(gen1_system(), sampler=sampler)
    cases["symbolic"] = str(symbolic)
    passed = passed and symbolic.is_235
    for beta, gamma, expected in PROPOSITION_CASES:
        growth = derived_flag(gen1_system(beta, gamma), sampler=sampler)
        cases[f"beta={beta},gamma={gamma}"] = str(growth)
        passed = passed and growth.is_235 == expected
    return CheckOutcome(passed, {"growth": cases})


@check(
    "S4.coordinate-forms",
    "Coordinate expressions of theta1..theta3 and their tilde-y recombinations",
    "The 1-forms annihilating the vector fields can be expressed as",
    Severity.IDENTITY,
    models=("gen1",),
)
def coordinate_forms(params: CheckParameters) -> CheckOutcome:
    expansions = {
        f"theta{i + 1}": computed - printed
        for i, (computed, printed) in enumerate(zip(gen1_forms(), gen1_expansions()))
    }
    mismatched = nonzero(expansions)
    recombined = nonzero({c.label: c.residual() for c in tilde_forms()})
    return CheckOutcome(
        not mismatched and not recombined,
        {"expansions": mismatched, "recombinations": recombined},
    )


@check(
    "S4.constants",
    "K, the discriminant and the four lambda values at the reference products",
    "K=\\frac{\\beta \\gamma}{2(\\beta \\gamma-1)}",
    Severity.IDENTITY,
)
def constants(params: CheckParameters) -> CheckOutcome:
    at_nine = section4_constants(3, 3)
    at_ninth = section4_constants(1, Fraction(1, 9))
    lambdas = {b.lam.as_fraction() for b in at_nine["branches"]}
    steps = {
        "K at beta*gamma=9": at_nine["K"] == Fraction(9, 16),
        "discriminant at beta*gamma=9": at_nine["discriminant"] == 36,
        "discriminant at beta*gamma=1/9": at_ninth["discriminant"] == Fraction(4, 9),
        "lambda values at beta*gamma=9": lambdas == LAMBDAS_AT_NINE,
    }
    try:
        section4_constants(2, 1)
        steps["negative discriminant rejected"] = False
    except DomainViolation:
        steps["negative discriminant rejected"] = True
    return CheckOutcome(
        all(steps.values()),
        {"steps": steps, "lambdas": sorted(str(v) for v in lambdas)},
    )


@check(
    "S4.structure-equations",
    "Completed gen1 coframe solves the structure equations on at least one sign branch",
    "Then Cartan's structure equations (\\ref{cse}) are satisfied for the 1-forms",
    Severity.IDENTITY,
    ParamMode.BETA_GAMMA,
    slow=True,
    models=("section4-coframe",),
)
def structure_equations(params: CheckParameters) -> CheckOutcome:
    branches = valid_branches(params)
    return CheckOutcome(any(branches.values()), {"branches": branches})


@check(
    "S4.metric-expansion",
    "K^(1/3) g equals the printed expansion on every branch and sbar4 sbar5 = s4 s5",
    "K^{\\frac{1}{3}}g=-2 \\gamma(1+\\lambda) s_1\\bar s_5",
    Severity.IDENTITY,
    ParamMode.BETA_GAMMA,
    models=("section4-coframe",),
)
def metric_expansions(params: CheckParameters) -> CheckOutcome:
    beta, gamma = beta_gamma_of(params)
    results = {}
    product = True
    for index in range(len(BRANCHES)):
        expansion = metric_expansion(beta, gamma, index)
        results[expansion.scaled.name or str(index)] = quadratic_identity_check(expansion.scaled, expansion.display)
        product = product and expansion.product_identity.is_zero()
    return CheckOutcome(
        all(results.values()) and product,
        {"branches": results, "sbar4sbar5 = s4s5": product},
    )


@check(
    "S4.hat-ideal",
    "Hat coordinates reduce gen1 to the printed ideal and the jet map inverts",
    "This reduces the system (\\ref{gen1forms}) to the ideal spanned by the 1-forms",
    Severity.EQUIVALENCE,
    models=("hat4", "hat4-ideal", "jet4", "inverse4"),
)
def hat_ideal(params: CheckParameters) -> CheckOutcome:
    certificates = {
        label: ideal_equivalent(gen1_system(), hat_system(), hat_map(c=c)).to_payload()
        for label, c in c_values(params)
    }
    second = hat_second_form_display()
    composite = nonzero(composite_display())
    inverse_defects = {k: str(v) for k, v in jet_map().inverse_residuals().items()}
    return CheckOutcome(
        second.is_zero() and not composite and not inverse_defects,
        {
            "certificates": certificates,
            "second_form_residual": second.to_text(),
            "composite_defects": composite,
            "inverse_defects": inverse_defects,
        },
    )


@check(
    "S4.derive-F",
    "F from the jet coordinates matches every printed form and the alpha identification",
    "This is equivalent to the form given in (\\ref{meq}) after identifying $\\beta \\gamma=\\alpha^{-2}$",
    Severity.IDENTITY,
    models=("F-sl2",),
)
def derive_f(params: CheckParameters) -> CheckOutcome:
    result = derive_section4_F()
    derived = result.derived
    closed = sl2_pair_F()
    steps = {
        "on hat chart": (derived.on_source - result.on_hat_display).is_zero(),
        "on jet chart": derived.on_jet is not None and (derived.on_jet - closed).is_zero(),
    }
    for label, display in sl2_pair_F_displays().items():
        steps[f"printed {label}"] = (display - closed).is_zero()
    identified = sl2_pair_F(1 / (ALPHA**2 * GAMMA), GAMMA)
    steps["beta*gamma = alpha^-2"] = (identified - monge_F()).is_zero()
    steps["beta*gamma = 1/9"] = (sl2_pair_F(1, Fraction(1, 9)) - maximal_F(Fraction(9))).is_zero()
    steps["beta*gamma = 9"] = (sl2_pair_F(3, 3) - maximal_F(Fraction(1, 9))).is_zero()
    return CheckOutcome(all(steps.values()), {"steps": steps, "F": str(closed)})


@check(
    "T3.monge-equivalence",
    "gen1 system is locally equivalent to the Monge system with beta*gamma/(1 - beta*gamma)",
    "this Pfaffian system can be brought into the Monge normal form equivalent to the {\\it rolling} distribution",
    Severity.EQUIVALENCE,
    models=("composite4", "monge-sl2"),
)
def monge_equivalence(params: CheckParameters) -> CheckOutcome:
    certificates = {}
    for label, c in c_values(params):
        certificate = ideal_equivalent(gen1_system(), sl2_pair_monge_data().system, composite_map(c=c))
        certificates[label] = certificate
    return CheckOutcome(
        all(not cert.determinant.is_zero() for cert in certificates.values()),
        {label: cert.to_payload() for label, cert in certificates.items()},
    )


@check(
    "S4.weyl-flat",
    "Nurowski metric of the gen1 coframe is conformally flat exactly at beta*gamma in {9, 1/9}",
    "is conformally flat whenever $\\beta\\gamma=9$ or $\\beta\\gamma=\\frac{1}{9}$",
    Severity.NUMERIC,
    ParamMode.BETA_GAMMA,
    slow=True,
    models=("section4-coframe",),
)
def weyl_flat(params: CheckParameters) -> CheckOutcome:
    beta, gamma = beta_gamma_of(params)
    branches = valid_branches(params)
    chosen = next((index for index, valid in enumerate(branches.values()) if valid), None)
    if chosen is None:
        return CheckOutcome(False, {"branches": branches})
    coframe = section4_coframe(beta, gamma, chosen)
    certificate = weyl_flat_certificate(
        nurowski_metric(coframe),
        {"beta": params.beta, "gamma": params.gamma},
        params.points,
        tol=params.tolerance,
        sampler=sampler_for(params),
    )
    product = Scalar.of(beta) * Scalar.of(gamma)
    expected = WeylVerdict.FLAT if product.as_fraction() in MAXIMAL_PRODUCTS else WeylVerdict.NOT_FLAT
    identities = certificate.identities_hold(curvature_settings.bianchi_tolerance)
    return CheckOutcome(
        certificate.verdict == expected and identities,
        {
            "branch": coframe.name,
            "expected": expected.value,
            "identities_hold": identities,
            "certificate": certificate.to_payload(),
        },
    )

"""
Unit tests for the check registry and the verification service.

These tests verify:
1. Registration, lookup and selection of checks
2. Expansion of checks into parameter instances
3. Verdicts, exit codes and internal-inconsistency handling
4. Error mapping and report rendering
"""

import json
from fractions import Fraction
from io import StringIO

import pytest

from src.application.checks import CheckRegistry, registry
from src.application.dto import RunOutcome, RunRequest
from src.application.services import VerificationService
from src.core.config import Settings, alpha_items
from src.domain.entities import (
    Check,
    CheckOutcome,
    CheckParameters,
    CheckResult,
    ParamMode,
    Report,
    Severity,
    Verdict,
)
from src.domain.exceptions import (
    DomainViolation,
    InternalInconsistency,
    MalformedParameter,
    NotEquivalent,
    UnknownCheck,
)
from src.presentation.cli import EXIT_FAILED, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, attach_negative_values, exit_code_for
from src.presentation.cli.error_handler import UsageError, run_guarded
from src.presentation.render import render_check_table, render_report
from src.presentation.schemas import CheckInfoSchema, ReportSchema


# =============================================================================
# Test Fixtures
# =============================================================================

def make_check(check_id: str, body, mode: ParamMode = ParamMode.NONE, slow: bool = False) -> Check:
    return Check(
        id=check_id,
        title=f"title of {check_id}",
        anchor="anchor text",
        section=check_id.split(".", 1)[0],
        severity=Severity.IDENTITY,
        mode=mode,
        body=body,
        slow=slow,
    )


def passing(params: CheckParameters) -> CheckOutcome:
    return CheckOutcome(True, {"alpha": params.to_dict()["alpha"]})


def failing(params: CheckParameters) -> CheckOutcome:
    return CheckOutcome(False, {"residual": "x"})


def raises(exc: Exception):
    def body(params: CheckParameters) -> CheckOutcome:
        raise exc

    return body


def local_registry(*checks: Check) -> CheckRegistry:
    checks_registry = CheckRegistry()
    for c in checks:
        checks_registry.register(c)
    return checks_registry


def report_with(*verdicts: Verdict) -> Report:
    results = [
        CheckResult(f"T.c{i}", f"T.c{i}", "T", verdict, {}) for i, verdict in enumerate(verdicts)
    ]
    return Report(engine_version="test", seed=1, results=results)


# =============================================================================
# Registry Tests
# =============================================================================

class TestRegistry:
    """The global registry populated by the section modules."""

    def test_all_checks_registered(self):
        assert len(registry) == 36

    def test_listing_is_sorted(self):
        ids = [c.id for c in registry.all()]
        assert ids == sorted(ids)

    def test_sections_follow_id_prefix(self):
        for c in registry.all():
            assert c.section in {"S2", "S3", "S4", "S5", "T1", "T3"}
            assert c.id.startswith(c.section + ".")

    def test_unknown_check(self):
        with pytest.raises(UnknownCheck):
            registry.get("nope")

    def test_select_all(self):
        assert registry.select(["all"]) == registry.all()
        assert registry.select([]) == registry.all()

    def test_select_keeps_listing_order(self):
        chosen = registry.select(["S4.proposition-235", "S2.structure-sigma"])
        assert [c.id for c in chosen] == ["S2.structure-sigma", "S4.proposition-235"]

    def test_duplicate_ids_rejected(self):
        checks_registry = local_registry(make_check("T.one", passing))
        with pytest.raises(ValueError):
            checks_registry.register(make_check("T.one", passing))

    def test_anchor_is_quoted_source(self):
        info = CheckInfoSchema.from_check(registry.get("S4.proposition-235"))
        assert "bracket-generating $(2,3,5)$-distribution whenever" in info.anchor


# =============================================================================
# Expansion Tests
# =============================================================================

class TestExpand:
    """Check selection times parameter values."""

    def test_alpha_checks_run_per_alpha(self):
        request = RunRequest(checks=("S2.rolling-235",), alphas=(None, Fraction(3)))
        ids = [c.instance_id(p) for c, p in VerificationService().expand(request)]
        assert ids == ["S2.rolling-235[alpha=symbolic]", "S2.rolling-235[alpha=3]"]

    def test_numeric_checks_skip_symbolic_alpha(self):
        request = RunRequest(checks=("S2.gauss-curvature",), alphas=(None, Fraction(3)))
        instances = VerificationService().expand(request)
        assert len(instances) == 1
        assert instances[0][1].alpha == 3

    def test_beta_gamma_instance(self):
        request = RunRequest(checks=("S4.metric-expansion",), beta=Fraction(3), gamma=Fraction(3))
        (check, params), = VerificationService().expand(request)
        assert check.instance_id(params) == "S4.metric-expansion[beta=3,gamma=3]"

    def test_parameter_free_instance(self):
        (check, params), = VerificationService().expand(RunRequest(checks=("S2.structure-sigma",)))
        assert check.instance_id(params) == "S2.structure-sigma"
        assert params.to_dict()["alpha"] == "symbolic"

    def test_skip_slow(self):
        request = RunRequest(skip_slow=True)
        assert all(not c.slow for c, _ in VerificationService().expand(request))

    def test_run_parameters_are_forwarded(self):
        request = RunRequest(checks=("S2.structure-sigma",), seed=9, points=7, tolerance=1e-6)
        (_, params), = VerificationService().expand(request)
        assert (params.seed, params.points, params.tolerance) == (9, 7, 1e-6)


class TestRunRequest:
    """Request validation."""

    def test_defaults_are_valid(self):
        assert RunRequest().validate() == []

    def test_invalid_values(self):
        request = RunRequest(points=0, threads=0, tolerance=-1.0, alphas=())
        assert len(request.validate()) == 4


class TestAlphaArguments:
    """Alpha presets and negative rationals on the command line."""

    def test_presets_expand(self):
        assert alpha_items("maximal, symbolic") == ["3", "-3", "1/3", "-1/3", "symbolic"]

    def test_acceptance_preset_values(self):
        values = Settings(alphas="acceptance").alpha_values
        assert values[0] is None
        assert {Fraction(-3), Fraction(-1, 3), Fraction(1, 2), Fraction(5, 7), Fraction(1)} <= set(values[1:])

    def test_unknown_alpha_token_rejected(self):
        with pytest.raises(ValueError):
            Settings(alphas="3,bogus")

    def test_negative_values_are_attached(self):
        argv = ["run", "--alpha", "-1/3", "--beta", "2", "--c", "-.5", "--alpha", "-3"]
        assert attach_negative_values(argv) == ["run", "--alpha=-1/3", "--beta", "2", "--c=-.5", "--alpha=-3"]

    def test_flags_after_rational_options_stay_flags(self):
        argv = ["run", "--alpha", "3", "--skip-slow", "--check", "-x"]
        assert attach_negative_values(argv) == argv


# =============================================================================
# Service Tests
# =============================================================================

class TestVerificationService:
    """Verdict assignment and result ordering."""

    def test_verdicts(self):
        checks = local_registry(
            make_check("T.pass", passing),
            make_check("T.fail", failing),
            make_check("T.skip", raises(DomainViolation("outside"))),
            make_check("T.error", raises(NotEquivalent(0, "d(x)"))),
        )
        outcome = VerificationService(checks).run(RunRequest(threads=2))
        verdicts = {r.check_id: r.verdict for r in outcome.report.results}
        assert verdicts == {
            "T.error": Verdict.FAIL,
            "T.fail": Verdict.FAIL,
            "T.pass": Verdict.PASS,
            "T.skip": Verdict.DOMAIN_SKIP,
        }
        assert outcome.exit_code == EXIT_FAILED

    def test_results_follow_instance_order(self):
        checks = local_registry(make_check("T.alpha", passing, ParamMode.ALPHA))
        request = RunRequest(alphas=(Fraction(2), None, Fraction(1, 3)), threads=3)
        outcome = VerificationService(checks).run(request)
        assert [r.instance_id for r in outcome.report.results] == [
            "T.alpha[alpha=2]",
            "T.alpha[alpha=symbolic]",
            "T.alpha[alpha=1/3]",
        ]

    def test_internal_inconsistency_sets_exit_code(self):
        checks = local_registry(make_check("T.broken", raises(InternalInconsistency("paths disagree"))))
        outcome = VerificationService(checks).run(RunRequest())
        assert outcome.report.results[0].verdict == Verdict.FAIL
        assert outcome.exit_code == EXIT_INTERNAL
        assert "paths disagree" in outcome.internal_errors[0]

    def test_sigma_structure_passes(self):
        outcome = VerificationService().run(RunRequest(checks=("S2.structure-sigma",)))
        assert outcome.report.results[0].verdict == Verdict.PASS
        assert outcome.exit_code == EXIT_OK

    def test_guard_violation_is_domain_skip(self):
        request = RunRequest(checks=("S2.structure-equations",), alphas=(Fraction(1),))
        outcome = VerificationService().run(request)
        result = outcome.report.results[0]
        assert result.verdict == Verdict.DOMAIN_SKIP
        assert result.payload["error"] == "GUARD_VIOLATION"
        assert outcome.exit_code == EXIT_OK

    def test_equivalence_on_guard_locus_is_domain_skip(self):
        request = RunRequest(checks=("T1.monge-equivalence",), alphas=(Fraction(1),))
        result = VerificationService().run(request).report.results[0]
        assert result.instance_id == "T1.monge-equivalence[alpha=1]"
        assert result.verdict == Verdict.DOMAIN_SKIP
        assert result.payload["error"] == "GUARD_VIOLATION"

    @pytest.mark.parametrize(
        "check_id",
        ["S5.structure-equations", "S5.perturbation-control", "S5.weyl-flat", "S5.conformal-scaling"],
    )
    def test_section5_checks_skip_on_guard_locus(self, check_id):
        request = RunRequest(checks=(check_id,), alphas=(Fraction(1), Fraction(-1)), points=5)
        outcome = VerificationService().run(request)
        for result in outcome.report.results:
            assert result.verdict == Verdict.DOMAIN_SKIP
            assert result.payload["error"] == "GUARD_VIOLATION"
        assert outcome.exit_code == EXIT_OK


# =============================================================================
# Published Claim Tests
# =============================================================================

SYMBOLIC = None


def verdicts(check_id: str, *alphas, points: int = 6) -> dict[str, Verdict]:
    request = RunRequest(checks=(check_id,), alphas=alphas or (SYMBOLIC,), points=points, seed=7)
    return {r.instance_id: r.verdict for r in VerificationService().run(request).report.results}


@pytest.mark.slow
class TestPublishedClaims:
    """Every headline check passes on the registered models."""

    @pytest.mark.parametrize(
        "check_id",
        [
            "T1.monge-equivalence",
            "S3.derive-F",
            "S3.F-specializations",
            "S2.structure-equations",
            "S2.perturbation-control",
            "S5.structure-equations",
        ],
    )
    def test_symbolic_alpha_checks(self, check_id):
        assert verdicts(check_id) == {f"{check_id}[alpha=symbolic]": Verdict.PASS}

    @pytest.mark.parametrize(
        "check_id",
        ["T3.monge-equivalence", "S4.derive-F", "S4.structure-equations", "S4.metric-expansion"],
    )
    def test_beta_gamma_checks(self, check_id):
        assert set(verdicts(check_id).values()) == {Verdict.PASS}

    def test_rolling_distribution_is_235(self):
        result = verdicts("S2.rolling-235", SYMBOLIC, Fraction(3))
        assert set(result.values()) == {Verdict.PASS}
        assert len(result) == 2

    @pytest.mark.parametrize("alpha", [Fraction(3), Fraction(1, 3), Fraction(2)])
    def test_monge_metric_weyl_verdict(self, alpha):
        assert verdicts("S5.weyl-flat", alpha) == {f"S5.weyl-flat[alpha={alpha}]": Verdict.PASS}

    @pytest.mark.parametrize("alpha", [Fraction(3), Fraction(-3), Fraction(2)])
    def test_conformal_scaling_at_flat_and_curved_ratios(self, alpha):
        assert set(verdicts("S5.conformal-scaling", alpha).values()) == {Verdict.PASS}

    def test_kernel_fields_are_null(self):
        assert set(verdicts("S5.isotropy", Fraction(3), Fraction(2)).values()) == {Verdict.PASS}


class TestRunOutcome:
    """Exit codes from report verdicts."""

    def test_pass_and_skip_exit_zero(self):
        outcome = RunOutcome(report_with(Verdict.PASS, Verdict.DOMAIN_SKIP), run_id="r")
        assert outcome.exit_code == 0

    def test_failure_exits_one(self):
        assert RunOutcome(report_with(Verdict.PASS, Verdict.FAIL), run_id="r").exit_code == 1

    def test_internal_error_exits_three(self):
        outcome = RunOutcome(report_with(Verdict.PASS), run_id="r", internal_errors=["x"])
        assert outcome.exit_code == 3


# =============================================================================
# Error Mapping Tests
# =============================================================================

class TestErrorMapping:
    """Exceptions onto the CLI exit-code contract."""

    @pytest.mark.parametrize(
        "exc,code",
        [
            (UnknownCheck("nope"), EXIT_USAGE),
            (MalformedParameter("alpha", "x"), EXIT_USAGE),
            (UsageError("bad"), EXIT_USAGE),
            (InternalInconsistency("disagree"), EXIT_INTERNAL),
            (DomainViolation("outside"), EXIT_FAILED),
            (RuntimeError("boom"), EXIT_INTERNAL),
        ],
    )
    def test_exit_codes(self, exc, code):
        assert exit_code_for(exc) == code

    def test_guarded_command_writes_error_line(self):
        stream = StringIO()

        def command() -> int:
            raise UnknownCheck("nope")

        assert run_guarded(command, stream) == EXIT_USAGE
        body = json.loads(stream.getvalue())
        assert body["error"] == "UNKNOWN_CHECK"
        assert body["message"] == "Unknown check: nope"
        assert body["exit_code"] == EXIT_USAGE

    def test_unexpected_exception_is_internal(self):
        stream = StringIO()

        def command() -> int:
            raise KeyError("missing")

        assert run_guarded(command, stream) == EXIT_INTERNAL
        assert json.loads(stream.getvalue())["error"] == "INTERNAL_ERROR"


# =============================================================================
# Rendering Tests
# =============================================================================

class TestRendering:
    """Text rendering of reports and listings."""

    def test_report_text(self):
        report = report_with(Verdict.PASS, Verdict.DOMAIN_SKIP)
        report.results[1].payload = {"error": "GUARD_VIOLATION", "message": "Guard violated: alpha^2 - 1 != 0"}
        text = render_report(ReportSchema.from_report(report).to_payload())
        assert "PASS  T.c0" in text
        assert "SKIP  T.c1" in text
        assert "GUARD_VIOLATION: Guard violated" in text
        assert text.endswith("1 passed, 0 failed, 1 skipped\n")

    def test_timings_only_on_request(self):
        report = report_with(Verdict.PASS)
        report.results[0].elapsed = 0.25
        assert "elapsed_seconds" not in ReportSchema.from_report(report).to_payload()["results"][0]
        assert ReportSchema.from_report(report, timings=True).to_payload()["results"][0]["elapsed_seconds"] == 0.25

    def test_summary_uses_verdict_names(self):
        payload = ReportSchema.from_report(report_with(Verdict.FAIL)).to_payload()
        assert payload["summary"] == {"pass": 0, "fail": 1, "domain-skip": 0}
        assert payload["schema_version"] == "1.0"

    def test_check_table(self):
        infos = [CheckInfoSchema.from_check(registry.get("S2.structure-sigma"))]
        table = render_check_table(infos)
        assert table.startswith("S2.structure-sigma  identity  none")

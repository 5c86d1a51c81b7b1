"""
Integration tests for metrics tracking.

These tests verify:
1. Check verdict counters are incremented per instance
2. Latency histograms are observed per section
3. The kernel counters move while checks run
4. Metrics are written in Prometheus text format
"""

from fractions import Fraction

from src.application.dto import RunRequest
from src.application.services import VerificationService
from src.core.metrics import REGISTRY, write_metrics


def sample(name: str, **labels: str) -> float:
    return REGISTRY.get_sample_value(name, labels or None) or 0.0


# =============================================================================
# Counter Tests
# =============================================================================

class TestCheckCounters:
    """Counters recorded by the verification service."""

    def test_verdicts_are_counted(self, stand_in_checks):
        passed = sample("verify_checks_total", verdict="pass")
        skipped = sample("verify_checks_total", verdict="domain-skip")

        request = RunRequest(alphas=(Fraction(1), Fraction(2)))
        VerificationService(stand_in_checks).run(request)

        assert sample("verify_checks_total", verdict="pass") == passed + 2
        assert sample("verify_checks_total", verdict="domain-skip") == skipped + 1

    def test_latency_is_observed_per_section(self, stand_in_checks):
        before = sample("verify_check_duration_seconds_count", section="T")

        VerificationService(stand_in_checks).run(RunRequest(alphas=(None,)))

        assert sample("verify_check_duration_seconds_count", section="T") == before + 2

    def test_pool_size_is_recorded(self, stand_in_checks):
        VerificationService(stand_in_checks).run(RunRequest(alphas=(None, Fraction(3)), threads=8))

        # Three instances cap the pool.
        assert sample("verify_pool_threads") == 3

    def test_canonicalizations_are_counted(self):
        before = sample("verify_canonicalizations_total")

        VerificationService().run(RunRequest(checks=("S2.structure-sigma",)))

        assert sample("verify_canonicalizations_total") > before


# =============================================================================
# Export Tests
# =============================================================================

class TestMetricsExport:
    """Prometheus text written at the end of a run."""

    def test_textfile_format(self, stand_in_checks, tmp_path):
        VerificationService(stand_in_checks).run(RunRequest())
        path = tmp_path / "metrics.prom"

        write_metrics(str(path))

        content = path.read_text()
        assert "# HELP verify_checks_total" in content
        assert "# TYPE verify_check_duration_seconds histogram" in content
        assert 'verify_checks_total{verdict="pass"}' in content

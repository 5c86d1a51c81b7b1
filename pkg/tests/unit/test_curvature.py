"""
Unit tests for metrics and curvature.

These tests verify:
1. Symmetric quadratic forms built from 1-forms
2. Signature of the conformal metric of an adapted coframe
3. Curvature tensors of flat, conformally flat and curved metrics
4. Weyl flatness certificates and their verdict thresholds
"""

from fractions import Fraction

import pytest

from src.domain.exceptions import ChartMismatch, MalformedParameter, SingularMetric
from src.service.algebra import ONE, ZERO, exp
from src.service.curvature import (
    AdaptedCoframe,
    ConformalComparison,
    CurvatureSettings,
    Metric,
    WeylVerdict,
    conformal_weyl_comparison,
    curvature_numeric,
    finite_difference_curvature,
    nurowski_metric,
    quadratic_identity_check,
    tensors_at,
    weyl_flat_certificate,
)
from src.service.curvature.weyl import classify
from src.service.forms import Chart, Form, PointSampler


# =============================================================================
# Test Fixtures
# =============================================================================

PLANE = Chart.create("metric_plane", ("a", "b"))
DA, DB = (Form.differential(PLANE, n) for n in ("a", "b"))

FOUR = Chart.create("four", ("s1", "s2", "s3", "s4"))
S1, S2 = FOUR.scalars()[:2]
DS = [Form.differential(FOUR, f"s{i}") for i in range(1, 5)]

FIVE = Chart.create("five", ("e1", "e2", "e3", "e4", "e5"))


def euclidean(factor=1) -> Metric:
    return Metric.from_quadratic(FOUR, [(factor, d, d) for d in DS], "euclidean")


def hyperbolic_times_plane() -> Metric:
    """(ds1² + ds2²)/s2² + ds3² + ds4²."""
    terms = [(1 / S2**2, DS[0], DS[0]), (1 / S2**2, DS[1], DS[1]), (1, DS[2], DS[2]), (1, DS[3], DS[3])]
    return Metric.from_quadratic(FOUR, terms, "h2xr2")


def point(chart: Chart, *values) -> dict:
    return {c: Fraction(v) for c, v in zip(chart.coordinates, values)}


# =============================================================================
# Quadratic Form Tests
# =============================================================================

class TestMetric:
    """Symmetrized products and exact identities."""

    def test_square_of_differential(self):
        g = Metric.square(DA)
        assert g.components[0][0] == ONE
        assert g.components[1][1] == ZERO

    def test_mixed_term_is_symmetrized(self):
        g = Metric.from_quadratic(PLANE, [(1, DA, DB)])
        assert g.components[0][1] == Fraction(1, 2)
        assert g.components[1][0] == Fraction(1, 2)

    def test_asymmetric_components_rejected(self):
        with pytest.raises(ValueError):
            Metric(PLANE, ((ZERO, ONE), (ZERO, ZERO)))

    def test_difference_of_squares_identity(self):
        lhs = Metric.square(DA + DB) - Metric.square(DA - DB)
        rhs = Metric.from_quadratic(PLANE, [(4, DA, DB)])
        assert quadratic_identity_check(lhs, rhs)

    def test_identity_check_detects_difference(self):
        assert not quadratic_identity_check(Metric.square(DA), Metric.square(DB))

    def test_identity_check_needs_one_chart(self):
        with pytest.raises(ChartMismatch):
            quadratic_identity_check(Metric.square(DA), euclidean())

    def test_nonzero_components_labels(self):
        g = Metric.from_quadratic(PLANE, [(4, DA, DB)])
        assert g.to_payload() == {"g[a,b]": "2"}

    def test_determinant(self):
        g = Metric.square(DA) - Metric.square(DB)
        assert g.determinant == -1


class TestSignature:
    """Eigenvalue counts at a point."""

    def test_conformal_metric_of_plain_coframe(self):
        theta = [Form.differential(FIVE, c) for c in FIVE.coordinates]
        coframe = AdaptedCoframe.create("plain", theta)
        metric = nurowski_metric(coframe)
        assert metric.signature(point(FIVE, 1, 1, 1, 1, 1)) == (3, 2)

    def test_degenerate_metric_rejected(self):
        with pytest.raises(SingularMetric):
            Metric.square(DA).signature(point(PLANE, 1, 2))


# =============================================================================
# Curvature Tensor Tests
# =============================================================================

class TestCurvatureTensors:
    """Riemann, Ricci and Weyl from the metric 2-jet."""

    def test_flat_metric_has_no_curvature(self):
        tensors = curvature_numeric(euclidean(), point(FOUR, 1, 2, 1, 3))
        assert tensors.riemann_norm == pytest.approx(0.0, abs=1e-12)
        assert tensors.scalar == pytest.approx(0.0, abs=1e-12)

    def test_hyperbolic_factor_has_scalar_curvature(self):
        tensors = tensors_at(hyperbolic_times_plane(), {}, point(FOUR, 1, 2, 1, 1))
        # Gauss curvature -1 on the hyperbolic factor.
        assert tensors.scalar == pytest.approx(-2.0)

    def test_curvature_identities(self):
        tensors = tensors_at(hyperbolic_times_plane(), {}, point(FOUR, 1, Fraction(3, 2), 2, 1))
        assert tensors.bianchi_residual() < 1e-9
        assert tensors.pair_symmetry_residual() < 1e-9
        assert tensors.weyl_trace_residual() < 1e-9

    def test_conformally_flat_metric(self):
        tensors = tensors_at(euclidean(exp(2 * S1)), {}, point(FOUR, 1, 1, 1, 1))
        assert tensors.riemann_norm > 1e-3
        assert tensors.relative_weyl < 1e-9

    def test_product_with_curved_factor_is_not_conformally_flat(self):
        tensors = tensors_at(hyperbolic_times_plane(), {}, point(FOUR, 1, 2, 1, 1))
        assert tensors.relative_weyl > 1e-3

    def test_finite_differences_agree(self):
        at = point(FOUR, 1, 2, 1, 1)
        exact = tensors_at(hyperbolic_times_plane(), {}, at)
        approx = finite_difference_curvature(hyperbolic_times_plane(), at)
        assert abs(exact.scalar - approx.scalar) < 1e-4


# =============================================================================
# Weyl Certificate Tests
# =============================================================================

class TestWeylCertificate:
    """Sampled verdicts with two differentiation paths."""

    def test_too_few_points_rejected(self):
        with pytest.raises(MalformedParameter):
            weyl_flat_certificate(euclidean(), {}, 2)

    def test_classify(self):
        assert classify([1e-12, 1e-11], 1e-9, 1e-3) == WeylVerdict.FLAT
        assert classify([0.5, 0.2], 1e-9, 1e-3) == WeylVerdict.NOT_FLAT
        assert classify([1e-12, 0.5], 1e-9, 1e-3) == WeylVerdict.INCONCLUSIVE

    def test_thresholds_must_be_ordered(self):
        with pytest.raises(ValueError):
            CurvatureSettings(flat_tolerance=1e-2, nonflat_floor=1e-3)

    @pytest.mark.slow
    def test_conformally_flat_verdict(self):
        certificate = weyl_flat_certificate(euclidean(exp(2 * S1)), {}, 5, sampler=PointSampler(5))
        assert certificate.verdict == WeylVerdict.FLAT
        assert len(certificate.samples) == 5
        assert certificate.identities_hold(1e-9)

    @pytest.mark.slow
    def test_curved_product_verdict(self):
        certificate = weyl_flat_certificate(hyperbolic_times_plane(), {}, 5, sampler=PointSampler(5))
        assert certificate.verdict == WeylVerdict.NOT_FLAT
        assert certificate.to_payload()["verdict"] == "not-flat"


class TestConformalComparison:
    """Weyl verdicts and C^a_bcd before and after rescaling the metric."""

    def test_small_difference_with_disagreeing_verdicts_fails(self):
        comparison = ConformalComparison("g", WeylVerdict.FLAT, WeylVerdict.NOT_FLAT, 0.0)
        assert not comparison.verdicts_agree
        assert not comparison.holds(1e-6)

    def test_inconclusive_verdicts_never_hold(self):
        comparison = ConformalComparison("g", WeylVerdict.INCONCLUSIVE, WeylVerdict.INCONCLUSIVE, 0.0)
        assert not comparison.holds(1e-6)

    def test_noise_at_flat_ratio_is_within_default_tolerance(self):
        comparison = ConformalComparison("g", WeylVerdict.FLAT, WeylVerdict.FLAT, 2.018e-8)
        assert comparison.holds(CurvatureSettings().conformal_tolerance)

    def test_difference_beyond_tolerance_fails(self):
        comparison = ConformalComparison("g", WeylVerdict.NOT_FLAT, WeylVerdict.NOT_FLAT, 1e-3)
        assert not comparison.holds(1e-6)
        assert comparison.to_payload()["scaled_verdict"] == "not-flat"

    @pytest.mark.slow
    def test_flat_metric_stays_flat(self):
        comparison = conformal_weyl_comparison(euclidean(exp(2 * S1)), exp(S2), {}, 5, PointSampler(5))
        assert comparison.original == comparison.scaled == WeylVerdict.FLAT
        assert comparison.holds(1e-6)

    @pytest.mark.slow
    def test_curved_product_stays_curved(self):
        comparison = conformal_weyl_comparison(hyperbolic_times_plane(), 3, {}, 5, PointSampler(5))
        assert comparison.original == comparison.scaled == WeylVerdict.NOT_FLAT
        assert comparison.max_relative_difference < 1e-9

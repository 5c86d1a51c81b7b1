"""
Unit tests for Pfaffian systems.

These tests verify:
1. Construction rejects dependent forms
2. Derived flags of Monge systems
3. Ideal membership, span equality and equivalence certificates
"""

from fractions import Fraction

import pytest

from src.domain.exceptions import ChartMismatch, DependentForms, NotEquivalent
from src.service.algebra import ONE
from src.service.distribution import (
    PfaffianSystem,
    derived_flag,
    ideal_contains,
    ideal_equivalent,
    identity_certificate,
    span_equal,
)
from src.service.forms import CoordMap, Form, PointSampler, contract
from src.service.models import MongeData, monge_F
from src.service.models.charts import JET, ROLLING


# =============================================================================
# Test Fixtures
# =============================================================================

Q = JET.scalar("q")


def hilbert_cartan() -> MongeData:
    """z' = (y'')^2."""
    return MongeData.create(Q**2, JET, "hilbert_cartan")


def linear_monge() -> MongeData:
    """z' = y'', whose flag stops short of the full space."""
    return MongeData.create(Q, JET, "linear")


# =============================================================================
# Construction Tests
# =============================================================================

class TestPfaffianSystem:
    """Independent 1-forms and the rank of their kernel."""

    def test_rank_is_dimension_minus_forms(self):
        assert hilbert_cartan().system.rank == 2

    def test_dependent_forms_rejected(self):
        dx = Form.differential(JET, "x")
        with pytest.raises(DependentForms):
            PfaffianSystem.create("doubled", [dx, dx.scale(2)])

    def test_text_lines(self):
        lines = hilbert_cartan().system.to_text()
        assert lines[0] == "-p*d(x) + d(y)"
        assert len(lines) == 3

    def test_kernel_fields_annihilate_forms(self):
        data = hilbert_cartan()
        for field in data.system.distribution:
            for form in data.system.forms:
                assert contract(form, field).is_zero()


# =============================================================================
# Derived Flag Tests
# =============================================================================

class TestDerivedFlag:
    """Growth vectors of D, D + [D, D], ..."""

    def test_hilbert_cartan_is_235(self):
        growth = derived_flag(hilbert_cartan().system, sampler=PointSampler(1))
        assert growth.ranks == (2, 3, 5)
        assert growth.is_235
        assert str(growth) == "(2,3,5)"

    def test_monge_normal_form_is_235(self):
        data = MongeData.create(monge_F(Fraction(3)), JET, "monge")
        assert derived_flag(data.system, sampler=PointSampler(2)).is_235

    def test_linear_equation_is_not_235(self):
        growth = derived_flag(linear_monge().system, sampler=PointSampler(3))
        assert not growth.is_235
        assert growth.final_rank < 5


# =============================================================================
# Ideal Membership Tests
# =============================================================================

class TestIdealMembership:
    """Span membership with coefficients and residuals."""

    def test_combination_is_contained(self):
        system = hilbert_cartan().system
        form = system.forms[0].scale(Q) + system.forms[2]
        membership = ideal_contains(system, form)
        assert membership.contained
        assert membership.coefficients == (Q, Q * 0, ONE)

    def test_coordinate_differential_is_not_contained(self):
        membership = ideal_contains(hilbert_cartan().system, Form.differential(JET, "x"))
        assert not membership.contained
        assert not membership.residual.is_zero()

    def test_span_equal_after_recombination(self):
        forms = hilbert_cartan().system.forms
        mixed = [forms[0] + forms[1], forms[1], forms[2].scale(Q)]
        assert span_equal(list(forms), mixed)

    def test_span_equal_detects_difference(self):
        assert not span_equal(list(hilbert_cartan().system.forms), list(linear_monge().system.forms))


# =============================================================================
# Equivalence Certificate Tests
# =============================================================================

class TestEquivalence:
    """Certificates m*(b) = G a with det G nonzero."""

    def test_identity_certificate(self):
        certificate = identity_certificate(hilbert_cartan().system)
        assert certificate.is_identity
        assert certificate.determinant == 1

    def test_recombined_system(self):
        system = hilbert_cartan().system
        scaled = system.recombined([[2, 0, 0], [0, 1, 0], [0, 0, 1]], "scaled")
        certificate = ideal_equivalent(system, scaled, CoordMap.identity(JET))
        assert certificate.determinant == 2
        assert not certificate.is_identity

    def test_payload_is_text(self):
        payload = identity_certificate(hilbert_cartan().system).to_payload()
        assert payload["determinant"] == "1"
        assert payload["matrix"][0] == ["1", "0", "0"]

    def test_inequivalent_systems(self):
        with pytest.raises(NotEquivalent):
            ideal_equivalent(hilbert_cartan().system, linear_monge().system, CoordMap.identity(JET))

    def test_map_must_start_on_source_chart(self):
        system = hilbert_cartan().system
        with pytest.raises(ChartMismatch):
            ideal_equivalent(system, system, CoordMap.identity(ROLLING))

    def test_composition_of_certificates(self):
        system = hilbert_cartan().system
        identity = CoordMap.identity(JET)
        scaled = system.recombined([[2, 0, 0], [0, 1, 0], [0, 0, 1]], "scaled")
        first = ideal_equivalent(system, scaled, identity)
        second = identity_certificate(scaled)
        composite = first.then(second, identity)
        assert composite.determinant == 2

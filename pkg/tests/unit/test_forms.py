"""
Unit tests for the exterior algebra.

These tests verify:
1. Wedge products, exterior derivatives and their identities
2. Vector fields, contraction and Lie brackets
3. Coordinate maps, pullbacks and declared inverses
4. Exact linear algebra over scalars
5. Seeded admissible-point sampling
"""

from fractions import Fraction

import pytest

from src.domain.exceptions import ChartMismatch, DegreeOverflow, DependentForms, UnknownSymbol
from src.service.algebra import ONE, Scalar, exp, sqrt
from src.service.forms import (
    Chart,
    CoordMap,
    Form,
    Guard,
    PointSampler,
    VectorField,
    contract,
    determinant,
    exterior_derivative,
    interior,
    inverse,
    kernel,
    lie_bracket,
    linear_combination,
    nullspace,
    numeric_pullback_defect,
    rank,
    solve,
    wedge_all,
)
from src.service.models.section3 import hat_forms, hat_map


# =============================================================================
# Test Fixtures
# =============================================================================

UVW = Chart.create("uvw", ("u", "v", "w"))
U, V, W = UVW.scalars()
DU, DV, DW = (Form.differential(UVW, n) for n in ("u", "v", "w"))

PLANE = Chart.create("xyp", ("x", "y", "p"))


def shift_map() -> CoordMap:
    """(u, v, w) -> (u + v, v, w) with its inverse declared."""
    forward = CoordMap.create("shift", UVW, UVW, {"u": U + V, "v": V, "w": W})
    backward = CoordMap.create("unshift", UVW, UVW, {"u": U - V, "v": V, "w": W})
    return forward.with_inverse(backward)


# =============================================================================
# Form Construction Tests
# =============================================================================

class TestFormConstruction:
    """Components, text and chart bookkeeping."""

    def test_one_form_text(self):
        form = Form.one_form(PLANE, {"y": 1, "x": -PLANE.scalar("p")})
        assert form.to_text() == "-p*d(x) + d(y)"

    def test_two_form_text(self):
        assert (DU ^ DV).to_text() == "d(u)^d(v)"

    def test_compound_coefficient_is_parenthesized(self):
        assert DU.scale(U + 1).to_text() == "(u + 1)*d(u)"

    def test_zero_components_are_dropped(self):
        form = Form.one_form(UVW, {"u": 0, "v": 1})
        assert form.components == {(1,): ONE}

    def test_component_sign_follows_permutation(self):
        form = DU ^ DW
        assert form.component((0, 2)) == 1
        assert form.component((2, 0)) == -1
        assert form.component((0, 0)).is_zero()

    def test_degree_above_dimension_rejected(self):
        with pytest.raises(DegreeOverflow):
            Form.zero(UVW, 4)

    def test_unknown_coordinate_rejected(self):
        with pytest.raises(UnknownSymbol):
            Form.differential(UVW, "x")

    def test_charts_must_match(self):
        with pytest.raises(ChartMismatch):
            Form.differential(PLANE, "x") + DU

    def test_chart_equality_ignores_guards(self):
        assert UVW.with_guards(Guard.nonzero(U)) == UVW


# =============================================================================
# Wedge and Exterior Derivative Tests
# =============================================================================

class TestWedge:
    """Graded antisymmetry of the wedge product."""

    def test_one_forms_anticommute(self):
        assert DU ^ DV == -(DV ^ DU)

    def test_square_of_one_form_vanishes(self):
        alpha = DU.scale(V) + DW
        assert (alpha ^ alpha).is_zero()

    def test_top_degree(self):
        assert wedge_all([DW, DV, DU]) == -(DU ^ DV ^ DW)

    def test_degree_overflow(self):
        with pytest.raises(DegreeOverflow):
            (DU ^ DV) ^ (DV ^ DW)

    def test_function_multiplies(self):
        assert Form.function(UVW, U) ^ DV == DV.scale(U)


class TestExteriorDerivative:
    """d on functions and forms of every degree."""

    def test_differential_of_function(self):
        df = Form.function(UVW, U**2 * V).d()
        assert df == DU.scale(2 * U * V) + DV.scale(U**2)

    def test_d_squared_on_function(self):
        f = Form.function(UVW, U**2 * V + exp(W) * V + sqrt(U))
        assert f.d().d().is_zero()

    def test_d_squared_on_one_form(self):
        alpha = DU.scale(V * W) + DV.scale(exp(U)) + DW.scale(U / V)
        assert alpha.d().d().is_zero()

    def test_derivative_of_one_form(self):
        assert DV.scale(U).d() == DU ^ DV

    def test_leibniz_rule(self):
        f = U * exp(W)
        alpha = DV.scale(U) + DW.scale(V**2)
        lhs = alpha.scale(f).d()
        rhs = (Form.function(UVW, f).d() ^ alpha) + alpha.d().scale(f)
        assert lhs == rhs

    def test_top_degree_overflows(self):
        with pytest.raises(DegreeOverflow):
            exterior_derivative(DU ^ DV ^ DW)

    def test_linear_combination(self):
        combination = linear_combination(UVW, 1, [(2, DU), (U, DV)])
        assert combination == DU.scale(2) + DV.scale(U)


# =============================================================================
# Vector Field Tests
# =============================================================================

class TestVectorFields:
    """Contraction, interior products and brackets."""

    def test_contract_with_partial(self):
        assert contract(DV.scale(U), VectorField.partial(UVW, "v")) == U

    def test_contract_requires_one_form(self):
        with pytest.raises(ValueError):
            contract(DU ^ DV, VectorField.partial(UVW, "u"))

    def test_interior_of_two_form(self):
        result = interior(DU ^ DV, VectorField.partial(UVW, "u"))
        assert result == DV

    def test_apply_is_directional_derivative(self):
        field = VectorField.from_mapping(UVW, {"u": 1, "v": U})
        assert field.apply(U * V) == V + U**2

    def test_lie_bracket(self):
        x = VectorField.partial(UVW, "u")
        y = VectorField.from_mapping(UVW, {"v": U})
        assert lie_bracket(x, y) == VectorField.partial(UVW, "v")

    def test_lie_bracket_antisymmetric(self):
        x = VectorField.from_mapping(UVW, {"u": V, "w": 1})
        y = VectorField.from_mapping(UVW, {"v": W * U})
        assert lie_bracket(x, y) == -lie_bracket(y, x)

    def test_kernel_of_contact_form(self):
        contact = DW - DU.scale(V)
        fields = kernel([contact])
        assert len(fields) == 2
        assert all(contract(contact, f).is_zero() for f in fields)


# =============================================================================
# Coordinate Map Tests
# =============================================================================

class TestCoordMap:
    """Pullbacks, composition and inverse certificates."""

    def test_identity_pullback(self):
        alpha = DU.scale(V) + DW.scale(U * W)
        assert CoordMap.identity(UVW).pullback(alpha) == alpha

    def test_pullback_of_differential(self):
        assert shift_map().pullback(DU) == DU + DV

    def test_pullback_of_function(self):
        pulled = shift_map().pullback(Form.function(UVW, U * W))
        assert pulled.as_scalar() == (U + V) * W

    def test_pullback_commutes_with_d(self):
        m = shift_map()
        alpha = DU.scale(W) + DV.scale(U**2)
        assert m.pullback(alpha.d()) == m.pullback(alpha).d()

    def test_jacobian(self):
        assert shift_map().jacobian[0] == (ONE, ONE, Scalar.of(0))

    def test_declared_inverse_verifies(self):
        m = shift_map()
        assert m.inverse_residuals() == {}
        assert m.verify_inverse()

    def test_wrong_inverse_reports_residuals(self):
        forward = CoordMap.create("shift", UVW, UVW, {"u": U + V, "v": V, "w": W})
        wrong = forward.with_inverse(forward)
        assert not wrong.verify_inverse()
        assert "uvw.u" in wrong.inverse_residuals()

    def test_compose(self):
        m = shift_map()
        twice = m.compose(m)
        assert twice.exprs[0] == U + 2 * V

    def test_pullback_needs_target_chart(self):
        with pytest.raises(ChartMismatch):
            shift_map().pullback(Form.differential(PLANE, "x"))

    def test_map_cannot_use_foreign_coordinates(self):
        with pytest.raises(ChartMismatch):
            CoordMap.create("bad", UVW, UVW, {"u": PLANE.scalar("x"), "v": V, "w": W})


class TestChainRuleOracle:
    """Symbolic pullbacks against central-difference Jacobians."""

    POINT = {UVW.coordinates[0]: Fraction(1, 2), UVW.coordinates[1]: Fraction(1, 3), UVW.coordinates[2]: Fraction(2)}

    def warp(self) -> CoordMap:
        return CoordMap.create("warp", UVW, UVW, {"u": U * exp(V), "v": V + W**2, "w": U * W})

    def test_one_form(self):
        alpha = DU.scale(W) + DV.scale(U * V)
        assert numeric_pullback_defect(self.warp(), alpha, self.POINT) < 1e-8

    def test_two_form(self):
        assert numeric_pullback_defect(self.warp(), (DU ^ DW).scale(V), self.POINT) < 1e-8

    def test_hat_map_first_form(self):
        m = hat_map(Fraction(3))
        form = hat_forms(Fraction(3)).system.forms[0]
        point = PointSampler(7).draw_on(m.source)
        assert numeric_pullback_defect(m, form, point) < 1e-8

    def test_functions_are_rejected(self):
        with pytest.raises(ValueError):
            numeric_pullback_defect(self.warp(), Form.function(UVW, U), self.POINT)

    def test_form_must_live_on_target(self):
        with pytest.raises(ChartMismatch):
            numeric_pullback_defect(self.warp(), Form.differential(PLANE, "x"), self.POINT)


# =============================================================================
# Linear Algebra Tests
# =============================================================================

class TestLinearAlgebra:
    """Exact elimination over canonical scalars."""

    def test_rank(self):
        assert rank([[1, 2], [2, 4]]) == 1
        assert rank([[U, 1], [1, U]]) == 2

    def test_determinant(self):
        assert determinant([[1, 2], [3, 4]]) == -2
        assert determinant([[U, 1], [1, U]]) == U**2 - 1

    def test_inverse(self):
        inv = inverse([[1, U], [0, 1]])
        assert inv[0][1] == -U
        assert inv[1][1] == 1

    def test_singular_inverse_raises(self):
        with pytest.raises(DependentForms):
            inverse([[1, 2], [2, 4]])

    def test_solve_consistent(self):
        solution = solve([[1, 1], [1, -1]], [U, V])
        assert solution.consistent
        assert solution.values == ((U + V) / 2, (U - V) / 2)

    def test_solve_inconsistent(self):
        solution = solve([[1, 1], [2, 2]], [1, 3])
        assert not solution.consistent

    def test_nullspace(self):
        basis = nullspace([[1, U, 0]])
        assert len(basis) == 2
        for vector in basis:
            assert (vector[0] + U * vector[1]).is_zero()


# =============================================================================
# Sampling Tests
# =============================================================================

class TestPointSampler:
    """Seeded grid draws that respect chart guards."""

    def test_same_seed_same_points(self):
        first = PointSampler(7).draw_many(5, UVW)
        second = PointSampler(7).draw_many(5, UVW)
        assert first == second

    def test_points_lie_on_grid(self):
        sampler = PointSampler(3)
        for point in sampler.draw_many(10, UVW):
            for value in point.values():
                assert value in sampler.grid
                assert Fraction(1, 3) <= value <= 3

    def test_guards_are_respected(self):
        guarded = UVW.with_guards(Guard.nonzero(U - 1), Guard.positive(V - 2))
        for point in PointSampler(11).draw_many(25, guarded):
            assert point[UVW.coordinate("u")] != 1
            assert point[UVW.coordinate("v")] > 2

    def test_positive_coordinates(self):
        guarded = UVW.with_guards(Guard.positive(V), Guard.positive(U - 2), Guard.nonzero(W))
        assert guarded.positive_coordinates == (UVW.coordinate("v"),)

    def test_even_roots_inside_positivity(self):
        guarded = UVW.with_guards(Guard.positive(V))
        with guarded.positivity():
            inside = sqrt(V**2 * (U + 1))
            assert (sqrt(V**2) - V).is_zero()
        assert inside == V * sqrt(U + 1)
        assert not (sqrt(V**2) - V).is_zero()

"""
Property tests for algebraic identities of the engine.

These tests verify:
1. Ring laws, printer/parser agreement and numeric evaluation of canonical scalars
2. d∘d = 0, the graded Leibniz rule, naturality and functoriality of pullback
3. The Jacobi identity for Lie brackets
4. Algebraic curvature identities on random metric 2-jets

Example counts scale with the PROPERTY_EXAMPLES environment variable.
"""

import os
from itertools import combinations

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.service.algebra import Scalar, differentiate, eval_numeric, exp, parse, substitute
from src.service.curvature import curvature_from_jet
from src.service.forms import Chart, CoordMap, Form, VectorField, lie_bracket


# =============================================================================
# Strategies
# =============================================================================

PROPERTIES = settings(max_examples=int(os.environ.get("PROPERTY_EXAMPLES", "25")), deadline=None)

CHART = Chart.create("prop", ("r1", "r2", "r3"))
R1, R2, R3 = CHART.scalars()
BASIS = tuple(Form.differential(CHART, c) for c in CHART.coordinates)

WIDE = Chart.create("prop_wide", ("u1", "u2", "u3", "u4", "u5"))
U = WIDE.scalars()

small = st.integers(min_value=-3, max_value=3)


@st.composite
def polynomials(draw, max_terms: int = 3, variables: tuple[Scalar, ...] = (R1, R2, R3)) -> Scalar:
    """Sums of small-coefficient monomials in the given variables, exponents up to 2."""
    total = Scalar.of(draw(small))
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        term = Scalar.of(draw(small))
        for v in variables:
            term = term * v ** draw(st.integers(min_value=0, max_value=2))
        total = total + term
    return total


@st.composite
def functions(draw) -> Scalar:
    """Polynomials, optionally times an exponential of a coordinate."""
    value = draw(polynomials())
    if draw(st.booleans()):
        value = value * exp(draw(st.sampled_from([R1, R2, -R3, R1 + R2])))
    return value


@st.composite
def one_forms(draw) -> Form:
    form = Form.zero(CHART, 1)
    for basis in BASIS:
        form = form + basis.scale(draw(polynomials(max_terms=2)))
    return form


@st.composite
def wide_forms(draw, degree: int) -> Form:
    """Forms on the five-dimensional chart with sparse polynomial coefficients."""
    indices = list(combinations(range(WIDE.dimension), degree))
    chosen = draw(st.lists(st.sampled_from(indices), min_size=1, max_size=3, unique=True))
    return Form.from_components(WIDE, degree, {i: draw(polynomials(max_terms=2, variables=U)) for i in chosen})


points = st.fixed_dictionaries(
    {c.name: st.fractions(min_value=-2, max_value=2, max_denominator=5) for c in CHART.coordinates}
)


@st.composite
def vector_fields(draw) -> VectorField:
    return VectorField.from_components(CHART, [draw(polynomials(max_terms=2)) for _ in range(3)])


# =============================================================================
# Scalar Properties
# =============================================================================

class TestScalarProperties:
    """Canonical scalars form a commutative ring with stable text."""

    @PROPERTIES
    @given(polynomials(), polynomials(), polynomials())
    def test_distributive(self, a, b, c):
        assert (a + b) * c == a * c + b * c

    @PROPERTIES
    @given(functions(), polynomials())
    def test_division_inverts_multiplication(self, a, b):
        assume(not b.is_zero())
        assert (a * b) / b == a

    @PROPERTIES
    @given(polynomials(), polynomials())
    def test_printed_text_parses_back(self, a, b):
        assume(not b.is_zero())
        value = a / b
        assert parse(str(value)) == value

    @PROPERTIES
    @given(functions())
    def test_mixed_partials_commute(self, f):
        x, y, z = CHART.coordinates
        assert differentiate(differentiate(f, x), y) == differentiate(differentiate(f, y), x)
        assert differentiate(differentiate(f, y), z) == differentiate(differentiate(f, z), y)

    @PROPERTIES
    @given(functions(), functions(), points)
    def test_evaluation_is_a_ring_homomorphism(self, a, b, point):
        left, right = eval_numeric(a, point), eval_numeric(b, point)
        scale = max(1.0, abs(left), abs(right)) ** 2
        assert eval_numeric(a + b, point) == pytest.approx(left + right, abs=1e-9 * scale)
        assert eval_numeric(a * b, point) == pytest.approx(left * right, abs=1e-9 * scale)

    @PROPERTIES
    @given(functions(), polynomials(), points)
    def test_expansions_that_cancel_evaluate_to_zero(self, f, g, point):
        expanded = f**2 + 2 * f * g + g**2
        difference = (f + g) ** 2 - expanded
        assert difference.is_zero()
        total = eval_numeric((f + g) ** 2, point)
        assert total == pytest.approx(eval_numeric(expanded, point), abs=1e-9 * max(1.0, abs(total)))


# =============================================================================
# Exterior Calculus Properties
# =============================================================================

class TestExteriorProperties:
    """Identities of d, wedge and pullback."""

    @PROPERTIES
    @given(functions())
    def test_d_squared_on_functions(self, f):
        assert Form.function(CHART, f).d().d().is_zero()

    @PROPERTIES
    @given(one_forms())
    def test_d_squared_on_one_forms(self, alpha):
        assert alpha.d().d().is_zero()

    @PROPERTIES
    @given(st.sampled_from([1, 2, 3]).flatmap(wide_forms))
    def test_d_squared_on_higher_degrees(self, form):
        assert form.d().d().is_zero()

    @PROPERTIES
    @given(functions(), one_forms())
    def test_leibniz(self, f, alpha):
        lhs = alpha.scale(f).d()
        rhs = (Form.function(CHART, f).d() ^ alpha) + alpha.d().scale(f)
        assert lhs == rhs

    @PROPERTIES
    @given(wide_forms(2), st.sampled_from([1, 2]).flatmap(wide_forms))
    def test_graded_leibniz(self, alpha, beta):
        lhs = (alpha ^ beta).d()
        rhs = (alpha.d() ^ beta) + (alpha ^ beta.d()).scale((-1) ** alpha.degree)
        assert lhs == rhs

    @PROPERTIES
    @given(one_forms(), one_forms())
    def test_wedge_anticommutes(self, alpha, beta):
        assert alpha ^ beta == -(beta ^ alpha)

    @PROPERTIES
    @given(one_forms(), polynomials(max_terms=2))
    def test_pullback_commutes_with_d(self, alpha, shift):
        m = CoordMap.create("shear", CHART, CHART, {"r1": R1 + shift, "r2": R2, "r3": R3 + R2})
        assert m.pullback(alpha.d()) == m.pullback(alpha).d()

    @PROPERTIES
    @given(one_forms(), polynomials(max_terms=2), polynomials(max_terms=2, variables=(R1, R3)))
    def test_pullback_of_composite(self, alpha, shift, lift):
        first = CoordMap.create("shear", CHART, CHART, {"r1": R1 + shift, "r2": R2, "r3": R3 + R2})
        second = CoordMap.create("lift", CHART, CHART, {"r1": R1, "r2": R2 + lift, "r3": R3})
        assert first.compose(second).pullback(alpha) == first.pullback(second.pullback(alpha))

    @PROPERTIES
    @given(one_forms(), polynomials(max_terms=2, variables=(R2, R3)))
    def test_declared_inverse_round_trip(self, alpha, shift):
        forward = CoordMap.create("shear", CHART, CHART, {"r1": R1 + shift, "r2": R2, "r3": R3 + R2})
        back_shift = substitute(shift, {"r3": R3 - R2})
        backward = CoordMap.create("unshear", CHART, CHART, {"r1": R1 - back_shift, "r2": R2, "r3": R3 - R2})
        forward = forward.with_inverse(backward)
        assert forward.verify_inverse()
        assert forward.pullback(backward.pullback(alpha)) == alpha


class TestBracketProperties:
    """Lie algebra of polynomial vector fields."""

    @PROPERTIES
    @given(vector_fields(), vector_fields())
    def test_antisymmetry(self, x, y):
        assert lie_bracket(x, y) == -lie_bracket(y, x)

    @PROPERTIES
    @given(vector_fields(), vector_fields(), vector_fields())
    def test_jacobi(self, x, y, z):
        total = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) + lie_bracket(
            z, lie_bracket(x, y)
        )
        assert total.is_zero()

    @PROPERTIES
    @given(vector_fields(), vector_fields(), functions())
    def test_bracket_is_commutator(self, x, y, f):
        assert lie_bracket(x, y).apply(f) == x.apply(y.apply(f)) - y.apply(x.apply(f))


# =============================================================================
# Curvature Properties
# =============================================================================

def random_jet(seed: int, n: int = 5) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Well-conditioned symmetric g with derivatives symmetric in their slots."""
    rng = np.random.default_rng(seed)
    a = rng.normal(scale=0.2, size=(n, n))
    g = np.diag(rng.choice([-1.0, 1.0], size=n)) + (a + a.T) / 2
    assume(np.linalg.cond(g) < 1e3)
    dg = rng.normal(size=(n, n, n))
    dg = (dg + np.einsum("kji->kij", dg)) / 2
    ddg = rng.normal(size=(n, n, n, n))
    ddg = (ddg + np.einsum("lkij->klij", ddg)) / 2
    ddg = (ddg + np.einsum("klji->klij", ddg)) / 2
    return g, dg, ddg


class TestCurvatureProperties:
    """Algebraic symmetries that hold for any metric 2-jet."""

    @PROPERTIES
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_first_bianchi(self, seed):
        assert curvature_from_jet(*random_jet(seed)).bianchi_residual() < 1e-9

    @PROPERTIES
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_pair_symmetry(self, seed):
        assert curvature_from_jet(*random_jet(seed)).pair_symmetry_residual() < 1e-9

    @PROPERTIES
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_weyl_is_trace_free(self, seed):
        assert curvature_from_jet(*random_jet(seed)).weyl_trace_residual() < 1e-9

    @PROPERTIES
    @given(st.integers(min_value=0, max_value=2**32 - 1), st.floats(min_value=0.5, max_value=4.0))
    def test_weyl_scales_with_constant_factor(self, seed, factor):
        g, dg, ddg = random_jet(seed)
        plain = curvature_from_jet(g, dg, ddg)
        scaled = curvature_from_jet(factor * g, factor * dg, factor * ddg)
        assert np.allclose(plain.weyl_mixed, scaled.weyl_mixed, atol=1e-8 * max(plain.weyl_norm, 1.0))

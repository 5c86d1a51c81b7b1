"""
Unit tests for the expression kernel.

These tests verify:
1. Canonical form: equal scalars compare equal after arithmetic
2. Exponential and radical generators reduce by their relations
3. Differentiation, substitution and numeric evaluation
4. The expression grammar parser and its error positions
"""

from fractions import Fraction

import pytest

from src.domain.exceptions import (
    DivisionByZero,
    DomainViolation,
    ExpressionSyntaxError,
    SubstitutionOutsideClass,
    UnknownSymbol,
)
from src.service.algebra import (
    ONE,
    ZERO,
    Scalar,
    assume_positive,
    cbrt,
    cosh,
    coordinate,
    differentiate,
    eval_numeric,
    exp,
    is_zero,
    parameter,
    parse,
    sinh,
    sqrt,
    substitute,
)


# =============================================================================
# Test Fixtures
# =============================================================================

X = Scalar.of(coordinate("x"))
Y = Scalar.of(coordinate("y"))
Z = Scalar.of(coordinate("z"))
ALPHA = Scalar.of(parameter("alpha"))


# =============================================================================
# Canonical Form Tests
# =============================================================================

class TestCanonicalForm:
    """Arithmetic always lands on the canonical num/den pair."""

    def test_common_factor_cancels(self):
        assert (X**2 - 1) / (X - 1) == X + 1

    def test_constructor_reduces_polynomial_ratio(self):
        value = Scalar(2 * X.num + 2, X.num**2 - 1)
        assert value.num == 2
        assert value.den == X.num - 1
        assert value == 2 / (X - 1)

    def test_denominator_content_moves_to_numerator(self):
        value = Scalar(X.num, 3 * X.num**2)
        assert 3 * value.num == 1
        assert value.den == X.num

    def test_parameter_polynomial(self):
        guard = ALPHA**2 - 1
        assert not guard.is_constant
        assert guard.num == ALPHA.num**2 - 1
        assert guard.den == 1

    def test_zero_difference_is_zero(self):
        value = (X + Y) ** 2 - (X**2 + 2 * X * Y + Y**2)
        assert value.is_zero()
        assert value == ZERO

    def test_rational_constants(self):
        value = Scalar.of(Fraction(1, 3)) + Fraction(1, 6)
        assert value.is_constant
        assert value.as_fraction() == Fraction(1, 2)

    def test_as_fraction_rejects_non_constant(self):
        with pytest.raises(ValueError):
            X.as_fraction()

    def test_division_by_zero_raises(self):
        with pytest.raises(DivisionByZero):
            X / (X - X)

    def test_negative_power_of_zero_raises(self):
        with pytest.raises(DivisionByZero):
            ZERO ** -1

    def test_equal_scalars_hash_equal(self):
        assert hash((X + 1) * (X - 1)) == hash(X**2 - 1)

    def test_booleans_are_not_scalars(self):
        with pytest.raises(TypeError):
            Scalar.of(True)

    def test_text_of_polynomial(self):
        assert str(X**2 - 1) == "x^2 - 1"

    def test_text_of_reciprocal(self):
        assert str(1 / X) == "1/x"


# =============================================================================
# Exponential Generator Tests
# =============================================================================

class TestExponentials:
    """exp of linear coordinate forms, with inverses and rescaling."""

    def test_exp_times_exp_of_negative_is_one(self):
        assert exp(X) * exp(-X) == ONE

    def test_square_of_exp_is_exp_of_double(self):
        assert exp(X) ** 2 == exp(2 * X)

    def test_half_exponent_squares_to_whole(self):
        assert is_zero(exp(X / 2) ** 2 - exp(X))

    def test_fractional_exponents_share_a_finer_generator(self):
        assert exp(X / 2) * exp(X / 3) == exp(5 * X / 6)
        assert exp(X / 2) / exp(X / 3) == exp(X / 6)

    def test_exp_of_sum_factors(self):
        assert exp(X + Y) == exp(X) * exp(Y)

    def test_exp_of_zero_is_one(self):
        assert exp(0) == ONE

    def test_hyperbolic_identity(self):
        assert cosh(X) ** 2 - sinh(X) ** 2 == ONE

    def test_parametric_direction(self):
        assert exp(ALPHA * X) * exp(-ALPHA * X) == ONE

    def test_nonlinear_argument_rejected(self):
        with pytest.raises(SubstitutionOutsideClass):
            exp(X**2)

    def test_constant_argument_rejected(self):
        with pytest.raises(SubstitutionOutsideClass):
            exp(ALPHA)


# =============================================================================
# Radical Generator Tests
# =============================================================================

class TestRadicals:
    """Real roots split into prime and polynomial radicals."""

    def test_perfect_square(self):
        assert sqrt(4) == 2

    def test_prime_radicals_multiply_out(self):
        assert sqrt(2) * sqrt(8) == 4

    def test_odd_root_of_negative(self):
        assert cbrt(-8) == -2

    def test_cube_root_extracts_whole_powers(self):
        assert cbrt(8 * X**3) == 2 * X

    def test_square_of_root(self):
        assert sqrt(X) ** 2 == X

    def test_denominator_is_rationalized(self):
        assert 1 / sqrt(X) == sqrt(X) / X

    def test_fractional_power(self):
        assert X ** Fraction(3, 2) == X * sqrt(X)

    def test_nested_root_rejected(self):
        with pytest.raises(SubstitutionOutsideClass):
            sqrt(sqrt(X) + 1)

    def test_square_root_of_square_is_kept_without_positivity(self):
        assert not is_zero(sqrt(X**2) - X)

    def test_positive_coordinates_leave_even_roots(self):
        with assume_positive(coordinate("x")):
            assert is_zero(sqrt(X**2) - X)
            assert sqrt(4 * X**3 * (Y**2 + 1)) == 2 * X * sqrt(X * (Y**2 + 1))
            assert sqrt(X**2 / Y**2) == X / sqrt(Y**2)

    def test_odd_roots_ignore_positivity(self):
        with assume_positive(coordinate("x")):
            assert cbrt(X**4) == X * cbrt(X)


# =============================================================================
# Calculus and Substitution Tests
# =============================================================================

class TestDifferentiate:
    """Partial derivatives along coordinates."""

    def test_polynomial(self):
        assert differentiate(X**3 + X * Y, coordinate("x")) == 3 * X**2 + Y

    def test_quotient(self):
        assert differentiate(1 / X, coordinate("x")) == -1 / X**2

    def test_exponential(self):
        assert differentiate(exp(ALPHA * X), coordinate("x")) == ALPHA * exp(ALPHA * X)

    def test_radical(self):
        assert differentiate(sqrt(X), coordinate("x")) == 1 / (2 * sqrt(X))

    def test_constant(self):
        assert differentiate(Scalar.of(7), coordinate("x")).is_zero()

    def test_parameter_is_not_a_direction(self):
        with pytest.raises(UnknownSymbol):
            differentiate(X * ALPHA, parameter("alpha"))


class TestSubstitute:
    """Simultaneous substitution with recanonicalization."""

    def test_coordinate_by_name(self):
        assert substitute(X**2 + Y, {"x": 2}) == Y + 4

    def test_simultaneous(self):
        assert substitute(X - Y, {"x": Y, "y": X}) == Y - X

    def test_parameter_inside_exponential(self):
        assert substitute(exp(ALPHA * X), {"alpha": 2}) == exp(2 * X)

    def test_coordinate_inside_radical(self):
        assert substitute(sqrt(X), {"x": 9}) == 3

    def test_vanishing_denominator_raises(self):
        with pytest.raises(DivisionByZero):
            substitute(1 / (X - 1), {"x": 1})

    def test_unknown_name_raises(self):
        with pytest.raises(UnknownSymbol):
            substitute(X, {"never_declared_name": 1})


class TestEvalNumeric:
    """Floating-point evaluation at rational points."""

    def test_polynomial_value(self):
        assert eval_numeric(X**2 + 1, {"x": Fraction(1, 2)}) == pytest.approx(1.25)

    def test_exponential_value(self):
        assert eval_numeric(exp(X), {"x": 1}) == pytest.approx(2.718281828459045)

    def test_extended_precision_agrees(self):
        value = sqrt(X) * exp(Y)
        point = {"x": 2, "y": Fraction(1, 3)}
        assert eval_numeric(value, point, "mpmath") == pytest.approx(eval_numeric(value, point), rel=1e-12)

    def test_missing_symbol_raises(self):
        with pytest.raises(DomainViolation):
            eval_numeric(X + Y, {"x": 1})

    def test_even_root_of_negative_raises(self):
        with pytest.raises(DomainViolation):
            eval_numeric(sqrt(X), {"x": -1})


# =============================================================================
# Parser Tests
# =============================================================================

class TestParse:
    """The textual expression grammar."""

    def test_arithmetic(self):
        assert parse("2*x^2 - x/3") == 2 * X**2 - X / 3

    def test_precedence_and_parentheses(self):
        assert parse("(x + 1)*(x - 1)") == X**2 - 1

    def test_unary_minus(self):
        assert parse("-x + -1") == -X - 1

    def test_functions(self):
        assert parse("exp(x)*exp(-x) + sqrt(4)") == 3

    def test_hyperbolic_functions(self):
        assert parse("cosh(y)^2 - sinh(y)^2") == ONE

    def test_rational_exponent(self):
        assert parse("x^(1/2)") == sqrt(X)

    def test_namespace_overrides_registry(self):
        assert parse("alpha^2 - 1", {"alpha": Scalar.of(3)}) == 8

    def test_round_trip_of_rendered_text(self):
        value = (X**2 - Y) / (Z + 1)
        assert parse(str(value)) == value

    def test_incomplete_expression_position(self):
        with pytest.raises(ExpressionSyntaxError) as exc_info:
            parse("x +")
        assert exc_info.value.position == 3

    def test_bad_character_position(self):
        with pytest.raises(ExpressionSyntaxError) as exc_info:
            parse("2 $ x")
        assert exc_info.value.position == 2

    def test_unclosed_parenthesis(self):
        with pytest.raises(ExpressionSyntaxError):
            parse("(x + 1")

    def test_symbolic_exponent_rejected(self):
        with pytest.raises(ExpressionSyntaxError):
            parse("x^y")

    def test_unknown_name(self):
        with pytest.raises(UnknownSymbol):
            parse("never_declared_name + 1")

"""Tests for the arithmetic expression grammar used by problem configs."""
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from laneps.expressions import DomainEvalError, ExpressionError, parse_expression

coeffs = st.floats(min_value=-5.0, max_value=5.0)


def ev(text, x=None, y=None):
    if y is not None:
        return parse_expression(text, ("x", "y"))(np.asarray(x), np.asarray(y))
    if x is not None:
        return parse_expression(text, ("x",))(np.asarray(x))
    return parse_expression(text, ())()


class TestGrammar:
    def test_literals_and_constants(self):
        assert ev("3") == 3.0
        assert ev("2.5e-3") == 2.5e-3
        assert ev(".5") == 0.5
        assert ev("pi") == math.pi

    def test_precedence(self):
        assert ev("2+3*4^2") == 50.0
        assert ev("(2+3)*4") == 20.0
        assert ev("2^3^2") == 512.0  # right-associative power
        assert ev("8/4/2") == 1.0  # left-associative division
        assert ev("-2^2") == -4.0  # unary minus binds looser than power
        assert ev("2*-3") == -6.0

    def test_variables_and_functions(self):
        x = np.linspace(0.1, 1.0, 7)
        assert np.allclose(ev("sin(x)^2 + cos(x)^2", x), 1.0, rtol=1e-15)
        assert np.allclose(ev("exp(log(x))", x), x, rtol=1e-14)
        assert np.allclose(ev("sqrt(x^2)", x), x, rtol=1e-15)
        assert np.allclose(ev("pow(x, 3)", x), x**3, rtol=1e-15)
        assert np.allclose(ev("sinh(x) / cosh(x)", x), np.tanh(x), rtol=1e-14)
        assert np.allclose(ev("abs(0 - x)", x), x, rtol=1e-15)

    def test_two_variable_expressions(self):
        x = np.array([0.5, 1.0])
        y = np.array([2.0, -1.0])
        assert np.allclose(ev("y^5 - x", x, y), y**5 - x, rtol=1e-15)

    @given(a=coeffs, b=coeffs, c=coeffs)
    def test_quadratic_matches_direct_evaluation(self, a, b, c):
        x = np.linspace(-2.0, 2.0, 9)
        expr = parse_expression(f"{a!r}*x^2 + {b!r}*x + {c!r}", ("x",))
        direct = a * x**2 + b * x + c
        assert np.max(np.abs(expr(x) - direct)) <= 1e-12 * max(1.0, np.max(np.abs(direct)))

    def test_evaluation_is_deterministic(self):
        x = np.linspace(0.0, 1.0, 11)
        first = ev("(8/(8-x^2))^2", x)
        second = ev("(8/(8-x^2))^2", x)
        assert np.all(first == second)


class TestParseErrors:
    @pytest.mark.parametrize(
        "text,column",
        [
            ("sin(", 5),
            ("2 +", 4),
            ("(1 + 2", 7),
            ("1 + * 2", 5),
        ],
    )
    def test_truncated_input_reports_the_position(self, text, column):
        with pytest.raises(ExpressionError) as err:
            parse_expression(text, ("x",))
        assert f"column {column}" in str(err.value)

    def test_unknown_identifier(self):
        with pytest.raises(ExpressionError, match="unknown identifier 'q'"):
            parse_expression("2*q", ("x",))

    def test_undeclared_variable(self):
        with pytest.raises(ExpressionError, match="unknown identifier 'y'"):
            parse_expression("x + y", ("x",))

    def test_function_arity(self):
        with pytest.raises(ExpressionError):
            parse_expression("pow(x)", ("x",))
        with pytest.raises(ExpressionError):
            parse_expression("sin(x, x)", ("x",))

    def test_trailing_garbage(self):
        with pytest.raises(ExpressionError):
            parse_expression("1 2", ("x",))
        with pytest.raises(ExpressionError):
            parse_expression("x !", ("x",))


class TestDomainErrors:
    def test_log_of_nonpositive_reports_the_point(self):
        expr = parse_expression("log(x)", ("x",))
        with pytest.raises(DomainEvalError) as err:
            expr(np.array([0.5, -0.25]))
        assert "-0.25" in str(err.value)

    def test_division_by_zero_reports_the_point(self):
        expr = parse_expression("1/(x-1)", ("x",))
        with pytest.raises(DomainEvalError) as err:
            expr(np.array([0.0, 1.0]))
        assert "x = 1" in str(err.value)

    def test_square_root_of_negative(self):
        expr = parse_expression("sqrt(x)", ("x",))
        with pytest.raises(DomainEvalError):
            expr(np.array([-0.01]))

    def test_fractional_power_of_negative_base(self):
        expr = parse_expression("x^0.5", ("x",))
        with pytest.raises(DomainEvalError):
            expr(np.array([-2.0]))

    def test_zero_to_a_negative_power(self):
        expr = parse_expression("x^(0-1)", ("x",))
        with pytest.raises(DomainEvalError):
            expr(np.array([0.0]))

    def test_valid_points_pass_the_same_checks(self):
        expr = parse_expression("log(x) + 1/x + sqrt(x)", ("x",))
        out = expr(np.array([0.5, 2.0]))
        assert np.all(np.isfinite(out))

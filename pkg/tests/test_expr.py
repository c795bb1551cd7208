"""
Tests for the expression front-end
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.append(str(Path(__file__).parent.parent / "src"))

from expr import as_expression, differentiate, evaluate, parse, tokenize
from utils.errors import DomainError, ParseError


class TestParser:
    """Grammar, precedence and error reporting"""

    def test_polynomial(self):
        """x^2 + x^3 at 0.5 is 0.375"""
        assert evaluate(parse("x^2 + x^3"), 0.5) == pytest.approx(0.375)

    def test_function_call(self):
        """sin(0) = 0"""
        assert parse("sin(x)").evaluate(0.0) == 0.0

    def test_trailing_operator_reports_offset(self):
        """'x +' fails at the end of input, offset 3"""
        with pytest.raises(ParseError) as info:
            parse("x +")
        assert info.value.position == 3

    def test_empty_input(self):
        """Blank text is rejected"""
        with pytest.raises(ParseError):
            parse("   ")

    def test_unknown_identifier(self):
        """Only x and the listed functions are names"""
        with pytest.raises(ParseError) as info:
            parse("y + 1")
        assert info.value.position == 0

    def test_implicit_multiplication_rejected(self):
        """'2x' is an error"""
        with pytest.raises(ParseError):
            parse("2x")

    def test_unary_minus_binds_looser_than_power(self):
        """-x^2 reads as -(x^2)"""
        assert parse("-x^2").evaluate(3.0) == -9.0

    def test_power_is_right_associative(self):
        """2^3^2 = 2^9"""
        assert parse("2^3^2").evaluate(0.0) == 512.0

    def test_division_and_precedence(self):
        """1/(1+x) - 2*x at x = 1"""
        assert parse("1/(1+x) - 2*x").evaluate(1.0) == pytest.approx(-1.5)

    def test_scientific_notation(self):
        """Numbers may carry exponents"""
        assert parse("1.5e-3*x").evaluate(2.0) == pytest.approx(3e-3)

    def test_tokens_carry_positions(self):
        """Tokenizer records offsets for diagnostics"""
        tokens = tokenize("x + sin(x)")
        assert [t.position for t in tokens if t.kind != "end"] == [0, 2, 4, 7, 8, 9]


class TestEvaluation:
    """Evaluation inside and outside the natural domain"""

    def test_linear_cubic(self):
        """2x + x^3 at 1 is 3"""
        assert parse("2*x + x^3").evaluate(1.0) == 3.0

    def test_division_by_zero(self):
        """1/x at 0 is a domain error naming the node"""
        with pytest.raises(DomainError) as info:
            parse("1/x").evaluate(0.0)
        assert "x" in info.value.node

    def test_exp_minus_one(self):
        """exp(x) - 1 vanishes at 0"""
        assert parse("exp(x)-1").evaluate(0.0) == 0.0

    def test_log_of_nonpositive(self):
        """log(x) at -1 is a domain error"""
        with pytest.raises(DomainError):
            parse("log(x)").evaluate(-1.0)

    def test_real_power_needs_positive_base(self):
        """x^0.5 at -1 is a domain error, x^2 at -1 is fine"""
        with pytest.raises(DomainError):
            parse("x^0.5").evaluate(-1.0)
        assert parse("x^2").evaluate(-1.0) == 1.0

    def test_evaluate_many(self):
        """Grid evaluation matches pointwise evaluation"""
        e = parse("sin(x)*exp(x)")
        xs = np.linspace(-1, 1, 7)
        np.testing.assert_allclose(e.evaluate_many(xs), [math.sin(x) * math.exp(x) for x in xs])


class TestRoundTrip:
    """Printed text re-parses to the same evaluator"""

    @pytest.mark.parametrize("text", [
        "x^2 + x^3",
        "-x^2 + 3*x",
        "sin(x)/(1+x^2)",
        "exp(-x) - sqrt(1+x)",
        "atan(2*x)*log(2+x)",
        "(1+x)^-2",
        "-(-x)",
    ])
    def test_print_then_parse(self, text):
        """to_text output evaluates identically on 100 random points"""
        e = parse(text)
        again = parse(e.to_text())
        rng = np.random.default_rng(7)
        for x in rng.uniform(-0.9, 0.9, 100):
            assert again.evaluate(x) == e.evaluate(x)


class TestDifferentiate:
    """Symbolic derivative"""

    @pytest.mark.parametrize("text,derivative", [
        ("x^3", lambda x: 3 * x ** 2),
        ("sin(x)*x", lambda x: math.cos(x) * x + math.sin(x)),
        ("1/(1+x)", lambda x: -1 / (1 + x) ** 2),
        ("exp(2*x)", lambda x: 2 * math.exp(2 * x)),
        ("sqrt(1+x)", lambda x: 0.5 / math.sqrt(1 + x)),
        ("atan(x)", lambda x: 1 / (1 + x * x)),
        ("log(1+x)", lambda x: 1 / (1 + x)),
        ("(1+x)^x", lambda x: (1 + x) ** x * (math.log(1 + x) + x / (1 + x))),
    ])
    def test_matches_calculus(self, text, derivative):
        """Derivative agrees with the hand-computed one"""
        d = differentiate(parse(text))
        for x in (-0.3, 0.1, 0.7):
            assert d.evaluate(x) == pytest.approx(derivative(x), rel=1e-12, abs=1e-14)

    def test_constant_derivative_is_zero(self):
        """d/dx 5 = 0"""
        assert as_expression("5").derivative().evaluate(1.0) == 0.0

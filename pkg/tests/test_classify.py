"""
Tests for germ classification, normal forms and the modulus reduction
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.append(str(Path(__file__).parent.parent / "src"))

from classify import (
    DEGENERATE,
    FLAT,
    HYPERBOLIC,
    REGULAR,
    ZERO_FIELD,
    belitskii_reduce,
    c0_class_of,
    cinf_sign,
    classify_germ,
    model_expression,
    modulus_from_residue,
    normal_form,
    normal_forms_table,
)
from jets import TruncatedSeries, pullback, taylor
from utils.config import Settings
from utils.errors import LeadingOrderError, NotFinitelyDeterminedError, UsageError, ZeroFieldError


class TestClassifyGerm:
    """Kind, order, leading coefficient and modulus"""

    def test_square_cube_germ(self):
        """x^2 + x^3 is degenerate of order 2 with modulus 1"""
        c = classify_germ("x^2 + x^3")
        assert c.kind == DEGENERATE
        assert (c.k, c.a) == (2, 1.0)
        assert c.d == pytest.approx(1.0)
        assert c.c0_class == "semi-stable-right"
        assert c.determinacy_c1 == 2
        assert c.determinacy_cinf == 3

    def test_pure_square_has_zero_modulus(self):
        """x^2 has d = 0"""
        assert classify_germ("x^2").d == pytest.approx(0.0, abs=1e-14)

    def test_cubic_modulus_after_reduction(self):
        """x^3 + x^4 reduces to x^3 - x^5"""
        c = classify_germ("x^3 + x^4")
        assert c.k == 3
        assert c.d == pytest.approx(-1.0)
        assert c.c0_class == "repelling"

    def test_hyperbolic(self):
        """2x + x^3 is hyperbolic with a = 2"""
        c = classify_germ("2*x + x^3")
        assert c.kind == HYPERBOLIC
        assert (c.k, c.a) == (1, 2.0)
        assert c.c0_class == "repelling"
        assert c.d is None

    def test_attracting_linear(self):
        """-x is attracting"""
        assert classify_germ("-x").c0_class == "attracting"

    def test_regular(self):
        """1 + x is regular"""
        c = classify_germ("1 + x")
        assert c.kind == REGULAR
        assert c.k == 0
        assert c.c0_class == "regular"

    def test_negative_square(self):
        """-x^2 is semi-stable-left with Cinf sign -1"""
        c = classify_germ("-x^2")
        assert c.c0_class == "semi-stable-left"
        assert c.sign == -1

    def test_transcendental_germ(self):
        """sin(x)^2 = x^2 - x^4/3 + ..., so d = 0"""
        c = classify_germ("sin(x)^2")
        assert c.k == 2
        assert c.a == pytest.approx(1.0)
        assert c.d == pytest.approx(0.0, abs=1e-12)

    def test_zero_field(self):
        """The literal zero field"""
        c = classify_germ("0")
        assert c.kind == ZERO_FIELD
        assert c.c0_class is None

    def test_flat_beyond_order(self):
        """x^20 looks flat through order 16"""
        c = classify_germ("x^20")
        assert c.kind == FLAT
        assert c.checked_order == 16
        assert c.c0_class is None

    def test_flat_with_sampling(self):
        """Sign sampling recovers the C0 class of a flat germ"""
        c = classify_germ("x^20", sample_flat=True)
        assert c.c0_class == "semi-stable-right"

    def test_max_order_floor(self):
        """max_order below 2 is a usage error"""
        with pytest.raises(UsageError):
            classify_germ("x^2", max_order=1)

    def test_to_dict_optional_keys(self):
        """d appears only for degenerate germs"""
        assert 'd' in classify_germ("x^2 + x^3").to_dict()
        assert 'd' not in classify_germ("2*x").to_dict()


class TestResidueOracle:
    """Reduction modulus agrees with -a^2 Res(1/f)"""

    def test_random_germs(self):
        """Random jets for k = 2..5"""
        rng = np.random.default_rng(3)
        for k in range(2, 6):
            for _ in range(5):
                c = np.zeros(2 * k + 2)
                c[k] = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
                c[k + 1:] = rng.uniform(-1.0, 1.0, size=k + 2)
                s = TruncatedSeries.from_coeffs(c)
                _, d, _ = belitskii_reduce(s, k)
                assert d == pytest.approx(modulus_from_residue(s, k), rel=1e-9, abs=1e-12)

    def test_change_reaches_normal_form(self):
        """Pulling back by the returned change kills the middle terms"""
        s = taylor("x^4 + x^5 - 2*x^6 + 0.5*x^7", 7)
        a, d, change = belitskii_reduce(s, 4)
        reduced = pullback(s, change)
        assert reduced.to_list()[:7] == pytest.approx([0, 0, 0, 0, a, 0, 0], abs=1e-12)
        assert reduced[7] == pytest.approx(d)

    def test_modulus_invariant_under_tangent_changes(self):
        """x -> x + c x^2 + e x^3 preserves d"""
        rng = np.random.default_rng(5)
        s = taylor("x^3 - x^4 + 0.3*x^5", 8)
        _, d, _ = belitskii_reduce(s, 3)
        for _ in range(5):
            c, e = rng.uniform(-1.0, 1.0, size=2)
            moved = pullback(s, TruncatedSeries.from_coeffs([0.0, 1.0, c, e]))
            assert belitskii_reduce(moved, 3)[1] == pytest.approx(d, rel=1e-9)

    def test_wrong_order_rejected(self):
        """Claimed k must carry the first coefficient"""
        with pytest.raises(LeadingOrderError):
            belitskii_reduce(taylor("x^2 + x^3", 5), 3)


class TestSignRules:
    """C0 and Cinf sign conventions"""

    @pytest.mark.parametrize("k,a,expected", [
        (0, 2.0, "regular"),
        (1, 1.0, "repelling"),
        (1, -1.0, "attracting"),
        (2, 1.0, "semi-stable-right"),
        (2, -1.0, "semi-stable-left"),
        (3, -0.5, "attracting"),
    ])
    def test_c0_class(self, k, a, expected):
        """Sign pattern table"""
        assert c0_class_of(k, a) == expected

    def test_stated_rule(self):
        """+1 for odd k, sign(a) for even k"""
        assert cinf_sign(3, -2.0) == 1
        assert cinf_sign(2, -2.0) == -1

    def test_orientation_rule(self):
        """+1 for even k, sign(a) for odd k"""
        assert cinf_sign(3, -2.0, "orientation") == -1
        assert cinf_sign(2, -2.0, "orientation") == 1

    def test_rule_from_settings(self):
        """Settings choose the rule used by classify_germ"""
        c = classify_germ("-x^3", settings=Settings(cinf_sign_rule="orientation"))
        assert c.sign == -1
        assert c.warnings == []

    def test_stated_rule_flags_reversed_orientation(self):
        """Odd k with a < 0: the +1 model runs the other way, so a warning says so"""
        c = classify_germ("-x^3")
        assert c.sign == 1
        assert c.c0_class == "attracting"
        assert len(c.warnings) == 1
        assert "orientation" in c.warnings[0]
        assert "attracting" in c.warnings[0]

    @pytest.mark.parametrize("text", ["x^3", "-x^2", "2*x^4", "x^3 + x^5"])
    def test_matching_orientation_has_no_warning(self, text):
        """No warning when the model keeps the germ's orientation"""
        assert classify_germ(text).warnings == []


class TestSignedZero:
    """Vanishing moduli are reported as +0.0"""

    @pytest.mark.parametrize("text", ["-x^3", "-x^2", "-2*x^4", "x^2", "-3*x^5"])
    def test_zero_moduli_are_positive(self, text):
        """No negative zero in d, the general modulus or the residue"""
        c = classify_germ(text)
        for value in (c.d, c.modulus_general, c.residue):
            assert value == 0.0
            assert math.copysign(1.0, value) == 1.0

    def test_document_carries_positive_zero(self):
        """Serialized d of -x^3 is 0.0, not -0.0"""
        doc = classify_germ("-x^3").to_dict()
        assert math.copysign(1.0, doc['d']) == 1.0


class TestNormalForms:
    """Model tables"""

    def test_square_cube_table(self):
        """All five models of x^2 + x^3"""
        table = normal_forms_table(classify_germ("x^2 + x^3"))
        assert table == {
            'c0': "x^2",
            'c1': "x^2",
            'c1_tti': "1*x^2",
            'cinf': "x^2 + 1*x^3",
            'cinf_tti': "1*x^2 + 1*x^3",
        }

    def test_hyperbolic_keeps_coefficient(self):
        """C1 and Cinf models of 2x + x^3 are 2x"""
        c = classify_germ("2*x + x^3")
        assert normal_form(c, "C1").to_text() == "2*x"
        assert normal_form(c, "Cinf").to_text() == "2*x"
        assert normal_form(c, "C0").to_text() == "x"

    def test_c1_odd_keeps_sign(self):
        """C1 model of -3x^3 is -x^3"""
        assert normal_form(classify_germ("-3*x^3"), "C1").to_text() == "-x^3"

    def test_model_text_reparses(self):
        """Model expression evaluates like the model"""
        nf = normal_form(classify_germ("x^3 + x^4"), "Cinf", tti=True)
        e = model_expression(nf)
        for x in (-0.4, 0.2, 0.9):
            assert e.evaluate(x) == pytest.approx(nf.evaluate(x))

    def test_zero_field_has_no_model(self):
        """ZeroField raises"""
        with pytest.raises(ZeroFieldError):
            normal_form(classify_germ("0"), "C1")

    def test_flat_has_no_model(self):
        """Flat raises"""
        with pytest.raises(NotFinitelyDeterminedError):
            normal_form(classify_germ("x^20"), "Cinf")

    def test_unknown_relation(self):
        """Relation must be C0, C1 or Cinf"""
        with pytest.raises(UsageError):
            normal_form(classify_germ("x^2"), "C2")

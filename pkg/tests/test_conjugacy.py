"""
Tests for time maps, conjugating maps and the homological equation
"""

import math
import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent / "src"))

from conjugacy import (
    NEGATIVE,
    POSITIVE,
    MonomialTimeMap,
    attracting_sides,
    c0_conjugacy,
    c1_conjugator,
    c1_limit_check,
    choose_pairing,
    get_builtin,
    normalized_time_map,
    rectify_regular,
    scale_conjugacy,
    side_signs,
    solve_homological,
    time_map,
)
from expr import parse
from utils.errors import ConjugacyError, JetConditionError, UsageError, ZeroFieldError


def square_cube_phi(x):
    return x / (1.0 + x * math.log(abs(x)) - x * math.log1p(x))


class TestTimeMaps:
    """Antiderivatives of 1/f on one side of 0"""

    def test_linear_field(self):
        """Time map of x from 1 is log"""
        tau = time_map("x", 1.0, POSITIVE)
        assert tau(0.5) == pytest.approx(-math.log(2.0), rel=1e-10)
        assert tau.invert(math.log(0.25)) == pytest.approx(0.25, rel=1e-10)

    def test_square_field(self):
        """Time map of x^2 from 1 is 1 - 1/x"""
        tau = time_map("x^2", 1.0, POSITIVE)
        assert tau(0.5) == pytest.approx(-1.0, rel=1e-10)
        assert tau(0.01) == pytest.approx(-99.0, rel=1e-10)

    def test_wrong_side(self):
        """A positive-side map rejects negative points"""
        with pytest.raises(ConjugacyError):
            time_map("x", 1.0, POSITIVE)(-0.5)

    def test_monomial_model(self):
        """Closed form for x^2 is -1/y and inverts back"""
        T = MonomialTimeMap(1.0, 2, POSITIVE)
        assert T(0.5) == pytest.approx(-2.0)
        assert T.invert(-4.0) == pytest.approx(0.25)

    def test_normalized_constant(self):
        """Normalized map of x^2 + x^3 is -1/x - log|x| + log(1+x)"""
        for side, x in ((POSITIVE, 0.1), (NEGATIVE, -0.1)):
            tau = normalized_time_map("x^2 + x^3", side, eps=0.5)
            expected = -1.0 / x - math.log(abs(x)) + math.log1p(x)
            assert tau(x) == pytest.approx(expected, rel=1e-8)
            assert tau.normalized


class TestC0Conjugacy:
    """Topological conjugacy by gluing time maps"""

    def test_linear_fields(self):
        """x and 2x are conjugate by x|x|"""
        w = c0_conjugacy("x", "2*x")
        for x in (-0.3, -0.05, 0.05, 0.3):
            assert w(x) == pytest.approx(x * abs(x), rel=1e-8)
        assert w.orientation == "preserving"
        assert w(0.0) == 0.0

    def test_reversing_pairing(self):
        """x^2 and -x^2 are conjugate by -x"""
        w = c0_conjugacy("x^2", "-x^2")
        assert w.orientation == "reversing"
        for x in (-0.3, 0.2):
            assert w(x) == pytest.approx(-x, rel=1e-8)

    def test_no_pairing(self):
        """A repelling point is not conjugate to a semi-stable one"""
        with pytest.raises(ConjugacyError):
            c0_conjugacy("x", "x^2")

    def test_fixed_point_mismatch(self):
        """Only one field fixing 0 is an error"""
        with pytest.raises(ConjugacyError):
            c0_conjugacy("1 + x", "x")

    def test_pairing_helpers(self):
        """Side signs and attracting sides of -x"""
        signs = side_signs(parse("-x"), 0.5)
        assert signs == {POSITIVE: -1, NEGATIVE: 1}
        attr = attracting_sides(signs)
        assert attr == {POSITIVE: True, NEGATIVE: True}
        assert choose_pairing(attr, attr) == {POSITIVE: POSITIVE, NEGATIVE: NEGATIVE}

    def test_monotone(self):
        """The glued witness is increasing"""
        assert c0_conjugacy("x", "2*x").check_monotone(n=20)


class TestSmoothConjugacy:
    """Rectification, scaling and the C1 conjugator"""

    def test_rectify(self):
        """1 + x rectifies to 1 by log(1 + x)"""
        w = rectify_regular("1 + x")
        assert w(0.5) == pytest.approx(math.log(1.5), rel=1e-10)
        assert w.smoothness_claim == "Cinf"

    def test_rectify_tti(self):
        """2 + x rectifies to 2 by 2 log(1 + x/2)"""
        w = rectify_regular("2 + x", "tti")
        assert w(0.4) == pytest.approx(2.0 * math.log(1.2), rel=1e-10)
        assert w.tangent_to_identity

    def test_rectify_needs_regular_point(self):
        """x vanishes at 0"""
        with pytest.raises(ConjugacyError):
            rectify_regular("x")

    def test_scale(self):
        """4x^3 -> x^3 by 2x"""
        w = scale_conjugacy(1.0, 4.0, 3)
        assert w(0.3) == pytest.approx(0.6)
        assert w.orientation == "preserving"

    def test_scale_even_negative(self):
        """x^2 -> -x^2 by -x"""
        w = scale_conjugacy(-1.0, 1.0, 2)
        assert w(0.5) == pytest.approx(-0.5)
        assert w.orientation == "reversing"

    def test_scale_hyperbolic_invariant(self):
        """x and 2x are not C1 conjugate"""
        with pytest.raises(ConjugacyError):
            scale_conjugacy(1.0, 2.0, 1)

    def test_scale_odd_opposite_signs(self):
        """x^3 and -x^3 have opposite stability"""
        with pytest.raises(ConjugacyError):
            scale_conjugacy(-1.0, 1.0, 3)

    def test_square_cube_witness(self):
        """C1 conjugator of x^2 + x^3 matches the closed form"""
        w = c1_conjugator("x^2 + x^3", tti=True)
        for x in (-0.2, -0.05, 0.05, 0.2):
            assert w(x) == pytest.approx(square_cube_phi(x), rel=1e-7)
        assert w.smoothness_claim == "C1"
        assert not w.downgraded

    def test_builtin_agrees(self):
        """Builtin square-cube is the same map"""
        w = get_builtin("builtin:square-cube")
        assert w(0.1) == pytest.approx(square_cube_phi(0.1))

    def test_hyperbolic(self):
        """2x + x^3 goes to 2x by x*sqrt(2/(2 + x^2))"""
        w = c1_conjugator("2*x + x^3")
        for x in (-0.3, 0.1, 0.3):
            assert w(x) == pytest.approx(x * math.sqrt(2.0 / (2.0 + x * x)), rel=1e-8)
        assert w.smoothness_claim == "C1"

    def test_regular_is_rectified(self):
        """Regular germs go through rectify_regular"""
        assert c1_conjugator("1 + x").source == "rectify:general"

    def test_zero_field(self):
        """No C1 model for the zero field"""
        with pytest.raises(ZeroFieldError):
            c1_conjugator("0")

    def test_limit_check_rejects_kink(self):
        """One-sided slopes 2 and 1 differ"""
        ok, reason = c1_limit_check({'right': [2.0, 2.0, 2.0], 'left': [1.0, 1.0, 1.0]}, False)
        assert not ok
        assert "differ" in reason

    def test_limit_check_rejects_drift(self):
        """Quotients moving faster at smaller h do not settle"""
        ok, _ = c1_limit_check({'right': [1.0, 1.1, 1.5], 'left': [1.0, 1.0, 1.0]}, False)
        assert not ok

    def test_limit_check_tti(self):
        """Tangent-to-identity needs the quotients to approach 1"""
        q = {'right': [1.1, 1.05, 1.02], 'left': [0.9, 0.95, 0.98]}
        assert c1_limit_check(q, True)[0]
        assert not c1_limit_check({'right': [1.1, 1.2, 1.2], 'left': [1.1, 1.2, 1.2]}, True)[0]

    def test_unknown_builtin(self):
        """Unknown names list the available maps"""
        with pytest.raises(UsageError):
            get_builtin("builtin:nope")


class TestHomological:
    """-X'f + Xf' = fg + f'k"""

    def test_linear(self):
        """f = x, g = x, k = 0 gives X = -x^2"""
        sol = solve_homological("x", "x", "0")
        for x in (-0.4, 0.1, 0.3):
            assert sol(x) == pytest.approx(-x * x, rel=1e-9)
        assert sol.residual_bound < 1e-8
        assert not sol.kernel_note
        assert sol.in_m2

    def test_cubic_k(self):
        """f = x^2, g = 0, k = x^3 gives X = -2x^3"""
        sol = solve_homological("x^2", "0", "x^3")
        assert sol(0.2) == pytest.approx(-2 * 0.2 ** 3, rel=1e-9)
        assert sol(-0.3) == pytest.approx(-2 * (-0.3) ** 3, rel=1e-9)
        assert sol.residual_bound < 1e-8

    def test_divergent_integral(self):
        """f = x^2, g = x needs base points and notes the kernel"""
        sol = solve_homological("x^2", "x", "0")
        assert sol.kernel_note
        assert sol(0.1) == pytest.approx(-0.01 * math.log(0.1 / 0.25), rel=1e-8)
        assert sol.residual_bound < 1e-6

    def test_g_must_vanish(self):
        """g(0) != 0 is rejected"""
        with pytest.raises(JetConditionError):
            solve_homological("x", "1 + x", "0")

    def test_k_must_vanish_to_second_order(self):
        """k = x is rejected"""
        with pytest.raises(JetConditionError):
            solve_homological("x", "x", "x")

    def test_zero_f(self):
        """f = 0 is rejected"""
        with pytest.raises(JetConditionError):
            solve_homological("0", "x", "x^2")

"""
Tests for unfolding families, equilibrium finding and parameter sweeps
"""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.append(str(Path(__file__).parent.parent / "src"))

from unfold import (
    build_unfolding,
    check_transversality,
    equilibria,
    grid_axes,
    instantiate,
    polynomial_text,
    sturm_count,
    sweep,
)
from classify import classify_germ
from expr import parse
from utils.config import Settings
from utils.errors import GridCapError, UsageError, ZeroFieldError


class TestFamilies:
    """Q, Q1, F and F1"""

    def test_q_schedule(self):
        """Q_3 unfolds x^3 along x and x^2"""
        family = build_unfolding("Q", 3)
        assert family.monomial_schedule == [1, 2]
        assert instantiate(family, [0.5, -1.0]).to_list() == [0.0, 0.5, -1.0, 1.0]

    def test_q1_adds_leading_direction(self):
        """Q1 also moves the x^k coefficient"""
        family = build_unfolding("Q1", 2, a=2.0)
        assert family.monomial_schedule == [1, 2]
        assert instantiate(family, [0.0, 1.0]).to_list() == [0.0, 0.0, 3.0]

    def test_f_schedule(self):
        """F_3 has parameters on x and 1 with d fixed"""
        family = build_unfolding("F", 3, d=0.5, sign=-1)
        assert family.monomial_schedule == [1, 0]
        assert instantiate(family, [0.0, 0.0]).to_list() == [0.0, 0.0, 0.0, -1.0, 0.0, 0.5]

    def test_sweep_d(self):
        """sweep_d adds a parameter on x^(2k-1)"""
        family = build_unfolding("F1", 2, a=1.0, d=0.0, sweep_d=True)
        assert family.monomial_schedule == [0, 3]
        assert family.param_count == 2

    @pytest.mark.parametrize("kwargs", [
        {'kind': "G", 'k': 2},
        {'kind': "Q", 'k': 1},
        {'kind': "Q1", 'k': 2},
        {'kind': "F1", 'k': 2, 'a': 0.0, 'd': 1.0},
        {'kind': "F", 'k': 2},
        {'kind': "F", 'k': 2, 'd': 0.0, 'sign': 2},
        {'kind': "Q", 'k': 2, 'sweep_d': True},
    ])
    def test_bad_requests(self, kwargs):
        """Malformed family requests are usage errors"""
        with pytest.raises(UsageError):
            build_unfolding(**kwargs)

    def test_parameter_count_checked(self):
        """instantiate needs one value per parameter"""
        with pytest.raises(UsageError):
            instantiate(build_unfolding("Q", 3), [1.0])

    def test_describe_reparses(self):
        """Base polynomial text is a valid expression"""
        family = build_unfolding("F", 2, d=-0.5)
        text = polynomial_text(family.base_coefficients())
        assert text == "1.0*x^2 - 0.5*x^3"
        assert parse(text).evaluate(2.0) == pytest.approx(0.0)

    @pytest.mark.parametrize("kind,k,extra", [
        ("Q", 3, {}),
        ("Q1", 4, {'a': -1.0}),
        ("F", 3, {'d': 1.0}),
        ("F1", 4, {'a': 2.0, 'd': 0.0, 'sweep_d': True}),
    ])
    def test_transversality(self, kind, k, extra):
        """Every family passes its finite transversality check"""
        report = check_transversality(build_unfolding(kind, k, **extra))
        assert report['ok']
        assert report['rank'] == report['directions']

    @pytest.mark.parametrize("kind,k,extra,a", [
        ("Q", 2, {}, 1.0),
        ("Q", 4, {}, 1.0),
        ("Q1", 3, {'a': -2.0}, -2.0),
        ("F", 2, {'d': 0.5}, 1.0),
        ("F", 3, {'d': -1.0, 'sign': -1}, -1.0),
        ("F1", 4, {'a': 3.0, 'd': 0.25, 'sweep_d': True}, 3.0),
    ])
    def test_zero_parameters_give_base_germ(self, kind, k, extra, a):
        """At lambda = 0 the family classifies like its base germ"""
        family = build_unfolding(kind, k, **extra)
        at_zero = instantiate(family, [0.0] * family.param_count)
        c = classify_germ(polynomial_text(at_zero.to_list()))
        base = classify_germ(polynomial_text(family.base_coefficients()))
        assert (c.kind, c.k) == ("Degenerate", k)
        assert c.a == pytest.approx(a, rel=1e-12)
        assert (c.kind, c.k, c.a) == (base.kind, base.k, base.a)


class TestEquilibria:
    """Real roots, multiplicities and stability"""

    def test_square(self):
        """x^2 has a semi-stable double root at 0"""
        report = equilibria([0.0, 0.0, 1.0], (-1.0, 1.0))
        assert report.count == 1
        e = report.equilibria[0]
        assert e.location == pytest.approx(0.0, abs=1e-12)
        assert (e.multiplicity, e.stability) == (2, "semi-stable")

    def test_cubic_three_roots(self):
        """x^3 - x/4 has roots -1/2, 0, 1/2"""
        report = equilibria([0.0, -0.25, 0.0, 1.0], (-1.0, 1.0))
        assert report.locations == pytest.approx([-0.5, 0.0, 0.5], abs=1e-10)
        assert [e.stability for e in report.equilibria] == ["repelling", "attracting", "repelling"]

    def test_no_roots(self):
        """x^2 + 1 has no real equilibria"""
        assert equilibria([1.0, 0.0, 1.0], (-2.0, 2.0)).count == 0

    def test_window_limits(self):
        """Roots outside the window are ignored"""
        report = equilibria([-9.0, 0.0, 1.0], (-2.0, 2.0))
        assert report.count == 0
        assert equilibria([-9.0, 0.0, 1.0], (-3.0, 3.0)).count == 2

    def test_triple_root(self):
        """-(x - 0.5)^3 is attracting with multiplicity 3"""
        c = -np.polynomial.polynomial.polyfromroots([0.5, 0.5, 0.5])
        report = equilibria(c, (-2.0, 2.0))
        assert report.count == 1
        assert report.equilibria[0].multiplicity == 3
        assert report.equilibria[0].stability == "attracting"

    def test_matches_sturm_count(self):
        """Root counts agree with Sturm sequences on random polynomials"""
        rng = np.random.default_rng(21)
        for _ in range(20):
            c = rng.uniform(-1.0, 1.0, size=6)
            report = equilibria(c, (-2.0, 2.0))
            assert report.count == sturm_count(c, -2.0, 2.0)

    def test_planted_roots_recovered(self):
        """Constructed real roots come back to 1e-10 and nothing else does"""
        rng = np.random.default_rng(33)
        for _ in range(40):
            n = int(rng.integers(1, 5))
            while True:
                roots = np.sort(rng.uniform(-1.5, 1.5, size=n))
                if n == 1 or np.min(np.diff(roots)) >= 0.3:
                    break
            c = np.polynomial.polynomial.polyfromroots(roots) * rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
            if n <= 4 and rng.random() < 0.5:
                # no real roots in this factor
                c = np.polynomial.polynomial.polymul(c, [rng.uniform(0.2, 1.0), 0.0, 1.0])
            report = equilibria(c, (-2.0, 2.0))
            assert report.count == n
            assert report.locations == pytest.approx(roots.tolist(), abs=1e-10)
            assert all(e.multiplicity == 1 for e in report.equilibria)

    def test_zero_polynomial(self):
        """Every point is an equilibrium of the zero field"""
        with pytest.raises(ZeroFieldError):
            equilibria([0.0, 0.0])

    def test_bad_window(self):
        """Window must be a proper interval"""
        with pytest.raises(UsageError):
            equilibria([0.0, 1.0], (1.0, -1.0))


class TestSweep:
    """Bifurcation tables over parameter grids"""

    def test_saddle_node(self):
        """F_2 with d = 0: two, one, then no equilibria"""
        family = build_unfolding("F", 2, d=0.0)
        table = sweep(family, grid_axes([(-1.0, 1.0, 3)]))
        assert table.counts == [2, 1, 0]

    def test_transcritical(self):
        """Q_2: x^2 + l x has two equilibria except at l = 0"""
        table = sweep(build_unfolding("Q", 2), [[-1.0, 0.0, 1.0]])
        assert table.counts == [2, 1, 2]

    def test_frame_columns(self):
        """Rows are padded to the widest node"""
        table = sweep(build_unfolding("F", 2, d=0.0), [[-1.0, 0.0, 1.0]])
        frame = table.to_frame()
        assert list(frame.columns) == [
            'lambda_1', 'n_equilibria',
            'root_1', 'multiplicity_1', 'stability_1',
            'root_2', 'multiplicity_2', 'stability_2',
        ]
        assert frame['n_equilibria'].tolist() == [2, 1, 0]

    def test_two_parameter_order(self):
        """Nodes come out in lexicographic order"""
        table = sweep(build_unfolding("Q", 3), [[-1.0, 1.0], [0.0, 0.5]])
        assert [r.params for r in table.rows] == [[-1.0, 0.0], [-1.0, 0.5], [1.0, 0.0], [1.0, 0.5]]

    def test_axis_mismatch(self):
        """One axis per parameter"""
        with pytest.raises(UsageError):
            sweep(build_unfolding("Q", 3), [[0.0]])

    def test_grid_cap(self):
        """Oversized grids are refused"""
        with pytest.raises(GridCapError):
            sweep(build_unfolding("Q", 2), [[0.0, 1.0, 2.0]], settings=Settings(grid_cap=2))

    def test_identically_zero_node_kept(self):
        """A node where the field vanishes is flagged and the sweep goes on"""
        table = sweep(build_unfolding("Q1", 2, a=1.0), [[0.0], [-1.0, 0.0, 1.0]])
        assert len(table.rows) == 3
        assert table.counts == [None, 1, 1]
        assert table.rows[0].identically_zero
        assert table.rows[0].params == [0.0, -1.0]
        assert not table.rows[1].identically_zero
        assert table.to_dict()['identically_zero_nodes'] == 1

        frame = table.to_frame()
        assert frame['n_equilibria'].isna().tolist() == [True, False, False]
        assert frame['n_equilibria'].iloc[1] == 1

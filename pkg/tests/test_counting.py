"""Closed-form count formulas and bound constants for the unit square well."""

import math

import pytest

from spectrace import (
    Region,
    RootConfig,
    StepPotential,
    bounds_report,
    eigenvalue_count_exact,
    frank_constant,
    seed_roots,
    tan_theta_root,
    well_counts,
)
from spectrace.stepwell import miss_piecewise


class TestTanThetaRoot:
    def test_zeroth_root(self):
        assert tan_theta_root(0) == 0.0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            tan_theta_root(-1)

    def test_known_values(self):
        assert abs(tan_theta_root(1) - 4.493409458) < 1e-8
        assert abs(tan_theta_root(2) - 7.725251837) < 1e-8

    def test_residual_and_interval(self):
        for n in range(1, 6):
            th = tan_theta_root(n)
            assert n * math.pi < th < (2 * n + 1) * math.pi / 2
            # pole-free residual; tan itself is fine this far from the pole
            assert abs(math.sin(th) - th * math.cos(th)) < 1e-10
            assert abs(math.tan(th) - th) < 1e-8


class TestWellCounts:
    # depth -> (eigenvalues, antibound states)
    TABLE = {
        5: (1, 0),
        10: (1, 0),
        22: (1, 2),
        30: (2, 1),
        60: (2, 1),
        100: (3, 2),
    }

    def test_count_table(self):
        for k_sq, (ne, na) in self.TABLE.items():
            w = well_counts(k_sq)
            assert (w.n_eigen, w.n_antibound) == (ne, na), k_sq

    def test_below_first_threshold_antibound_unknown(self):
        w = well_counts(1.0)
        assert w.n_eigen == 0
        assert w.n_antibound is None

    def test_first_threshold_edge(self):
        thr = (math.pi / 2) ** 2
        assert eigenvalue_count_exact(thr - 1e-9) == 0
        assert eigenvalue_count_exact(thr + 1e-9) == 1
        assert well_counts(thr + 1e-9).n_antibound == 0

    def test_antibound_jump_at_collision_depth(self):
        # two antibound states appear together when the depth passes
        # theta_n^2 + 1, where a pair splits off a double point
        for n in (1, 2):
            k_n = tan_theta_root(n) ** 2 + 1.0
            below = well_counts(k_n - 1e-9)
            above = well_counts(k_n + 1e-9)
            assert below.n_eigen == above.n_eigen == n
            assert below.n_antibound == n - 1
            assert above.n_antibound == n + 1

    def test_bad_depth_rejected(self):
        for bad in (0.0, -5.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                well_counts(bad)


class TestFrankConstant:
    def test_value(self):
        assert abs(frank_constant() - 2.38436418) < 1e-7

    def test_is_the_minimum(self):
        # independent oracle: dense grid over the objective
        def g(eps):
            return (math.expm1(eps) / (eps * eps)) ** 2

        grid = [0.5 + i * (2.5 / 50000) for i in range(50001)]
        assert abs(frank_constant() - min(map(g, grid))) < 1e-7


class TestBoundsReport:
    def test_depth_22_values(self):
        b = bounds_report(22.0)
        assert abs(b.frank - 1154.03226203) < 1e-6
        assert b.bargmann == 11.0
        assert b.count_formula == 1
        assert abs(b.interval_lo - 1.99300570666) < 1e-9
        assert b.interval_lo == b.interval_hi

    def test_zero_well(self):
        b = bounds_report(0.0)
        assert (b.frank, b.bargmann, b.count_formula) == (0.0, 0.0, 0)

    def test_bad_magnitude_rejected(self):
        for bad in (-1.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                bounds_report(bad)

    def test_count_formula_matches_exact_count(self):
        for k_sq in TestWellCounts.TABLE:
            b = bounds_report(float(k_sq))
            assert b.count_formula == eigenvalue_count_exact(k_sq)
            assert b.count_formula == math.floor(b.interval_lo)


def test_counts_agree_with_root_census():
    # classify the actual characteristic zeros of the depth-22 well and
    # compare with the closed-form counts
    pot = StepPotential(((1.0, -22.0),))
    fn = lambda lam: miss_piecewise(pot, lam)
    roots = seed_roots(fn, Region(-6 - 8j, 8 + 8j), RootConfig())
    n_eigen = sum(1 for r in roots if r.lam.real > 0)
    n_anti = sum(1 for r in roots if r.lam.real < 0 and abs(r.lam.imag) < 1e-9)
    w = well_counts(22.0)
    assert n_eigen == w.n_eigen
    assert n_anti == w.n_antibound

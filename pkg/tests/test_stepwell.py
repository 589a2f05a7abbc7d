"""Transfer-matrix layer: characteristic function, propagation, norm integrals.

Oracles are independent of the implementation: closed forms where they exist,
otherwise high-order ODE integration (scipy) of the same initial value
problem.
"""

import cmath

import numpy as np
import pytest
from scipy.integrate import quad, solve_ivp

from spectrace import (
    StepPotential,
    ZeroLambda,
    char_fn,
    miss_piecewise,
    norm_integral_step,
    transfer_step,
)


def shoot_ode(p, lam, rtol=1e-12):
    """Reference (phi, phi') at the support end via DOP853, segment by segment
    so the integrator never sees a jump."""
    y = np.array([0.0, 0.0, 1.0, 0.0])
    x = 0.0
    for length, v in p.segments:
        c = v + lam * lam

        def rhs(t, y, c=c):
            phi = y[0] + 1j * y[1]
            dd = c * phi
            return [y[2], y[3], dd.real, dd.imag]

        sol = solve_ivp(rhs, (x, x + length), y, method="DOP853",
                        rtol=rtol, atol=1e-14)
        y = sol.y[:, -1]
        x += length
    return (y[0] + 1j * y[1], y[2] + 1j * y[3])


def ode_miss(p, lam):
    phi, dphi = shoot_ode(p, lam)
    return dphi + lam * phi


def test_free_potential_is_exponential():
    for lam in (0.25, -1.3 + 0.8j, 2.0j, -4.0, 0.0):
        val, der = char_fn(0.0, lam)
        assert abs(val - cmath.exp(lam)) < 1e-12
        assert abs(der - cmath.exp(lam)) < 1e-10


def test_char_fn_array_matches_scalar():
    lams = np.array([0.3 + 0.1j, -2.0, 1.5j, -1.0 - 1.0j])
    vals, ders = char_fn(-7.0 + 0.5j, lams)
    for i, lam in enumerate(lams):
        v, d = char_fn(-7.0 + 0.5j, complex(lam))
        assert vals[i] == v and ders[i] == d


def test_char_fn_derivative_against_finite_difference():
    rng = np.random.default_rng(11)
    for _ in range(20):
        v = complex(rng.uniform(-30, 5), rng.uniform(-3, 3))
        lam = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        h = 1e-6
        _, der = char_fn(v, lam)
        fd = (char_fn(v, lam + h)[0] - char_fn(v, lam - h)[0]) / (2 * h)
        assert abs(der - fd) <= 1e-5 * max(1.0, abs(der))


def test_char_fn_smooth_across_series_switchover():
    # w = -v - lam^2 passes through 0 where the closed form gives 0/0;
    # values a hair on each side of the switch radius must agree smoothly
    v = -4.0
    lam0 = 2.0  # w = 0 exactly
    vals = [char_fn(v, lam0 + eps)[0]
            for eps in (-3e-5, -1e-5, 0.0, 1e-5, 3e-5)]
    diffs = np.abs(np.diff(vals))
    assert max(diffs) < 1e-3
    # second difference small: no kink
    assert abs(vals[0] - 2 * vals[2] + vals[4]) < 1e-7


def test_char_fn_matches_ode_oracle():
    rng = np.random.default_rng(5)
    for _ in range(8):
        v = complex(rng.uniform(-25, 3), rng.uniform(-4, 4))
        lam = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        got, _ = char_fn(v, lam)
        want = ode_miss(StepPotential(((1.0, v),)), lam)
        assert abs(got - want) < 1e-8 * max(1.0, abs(want))


def test_unit_well_miss_equals_char_fn():
    p = StepPotential(((1.0, -9.0 + 2.0j),))
    for lam in (0.7, -1.2 + 3.0j, 2.5j):
        m, dm = miss_piecewise(p, lam)
        val, der = char_fn(-9.0 + 2.0j, lam)
        assert m == val  # same closed form, same arithmetic
        assert abs(dm - der) < 1e-14 * max(1.0, abs(der))


class TestStepPotential:
    def test_validation(self):
        with pytest.raises(ValueError):
            StepPotential(())
        with pytest.raises(ValueError):
            StepPotential(((0.0, 1.0),))
        with pytest.raises(ValueError):
            StepPotential(((-1.0, 1.0),))

    def test_support_end(self):
        p = StepPotential(((0.5, 1.0), (1.5, -2.0j)))
        assert p.support_end == 2.0

    def test_json_round_trip(self):
        p = StepPotential(((0.5, 1.0 - 2.0j), (1.5, -2.0j)))
        assert StepPotential.from_json(p.to_json()) == p


def test_transfer_step_det_and_composition():
    rng = np.random.default_rng(23)
    for _ in range(10):
        v = complex(rng.uniform(-20, 5), rng.uniform(-5, 5))
        lam = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        ell = rng.uniform(0.1, 2.0)
        m = transfer_step(ell, v, lam)
        assert abs(m.det - 1.0) < 1e-10
        # half-step composition reproduces the whole step
        h = transfer_step(ell / 2, v, lam)
        hh = h @ h
        for a, b in zip((m.m11, m.m12, m.m21, m.m22),
                        (hh.m11, hh.m12, hh.m21, hh.m22)):
            assert abs(a - b) < 1e-10 * max(1.0, abs(a))


def test_multisegment_miss_against_ode_oracle():
    p = StepPotential(((0.4, -12.0), (0.3, 2.0 + 1.0j), (0.8, -5.0 - 3.0j)))
    rng = np.random.default_rng(17)
    for _ in range(6):
        lam = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        got, _ = miss_piecewise(p, lam)
        want = ode_miss(p, lam)
        assert abs(got - want) < 1e-8 * max(1.0, abs(want))


def test_miss_derivative_against_finite_difference():
    p = StepPotential(((0.4, -12.0), (0.6, 2.0 + 1.0j)))
    for lam in (1.1, -0.8 + 2.2j, -3.0j):
        _, der = miss_piecewise(p, lam)
        h = 1e-6
        fd = (miss_piecewise(p, lam + h)[0] - miss_piecewise(p, lam - h)[0]) / (2 * h)
        assert abs(der - fd) <= 1e-5 * max(1.0, abs(der))


def free_norm_closed_form(a, lam):
    # V = 0: phi = sinh(lam x)/lam, so the segment integral and the tail
    # have elementary antiderivatives
    seg = (cmath.sinh(2 * lam * a) / (4 * lam) - a / 2) / lam ** 2
    tail = (cmath.sinh(lam * a) / lam) ** 2 / (2 * lam)
    return seg + tail


def test_norm_integral_free_closed_form():
    p = StepPotential(((1.3, 0.0),))
    for lam in (0.9, 1.7 - 0.4j, -2.1 + 0.3j):
        got = norm_integral_step(p, lam)
        want = free_norm_closed_form(1.3, lam)
        assert abs(got - want) < 1e-10 * max(1.0, abs(want))


def test_norm_integral_against_quadrature():
    p = StepPotential(((0.5, -18.0), (0.5, -2.0 + 4.0j)))
    lam = 1.4 - 0.6j

    ys = {}

    def phi_sq(x):
        if x not in ys:
            # re-shoot up to x each call; slow but independent
            segs = []
            acc = 0.0
            for length, v in p.segments:
                if x <= acc + length:
                    segs.append((x - acc, v))
                    break
                segs.append((length, v))
                acc += length
            phi, _ = shoot_ode(StepPotential(tuple(segs)), lam) if segs and segs[0][0] > 0 else (0j, 1.0 + 0j)
            ys[x] = phi * phi
        return ys[x]

    re = quad(lambda x: phi_sq(x).real, 0, 1.0, limit=200)[0]
    im = quad(lambda x: phi_sq(x).imag, 0, 1.0, limit=200)[0]
    phi_a, _ = shoot_ode(p, lam)
    want = re + 1j * im + phi_a ** 2 / (2 * lam)
    got = norm_integral_step(p, lam)
    assert abs(got - want) < 1e-7 * max(1.0, abs(want))


def test_norm_integral_rejects_zero_lambda():
    p = StepPotential(((1.0, -22.0),))
    with pytest.raises(ZeroLambda):
        norm_integral_step(p, 0.0)

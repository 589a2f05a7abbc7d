"""Closed-form spectral counts and bounds for the unit square well.

The well is V = -k^2 on [0, 1]. Eigenvalue and antibound counts follow the
exact threshold formulas built on tan(theta) = theta roots; the bounds report
reproduces the printed comparison constants (Frank-type |V|^2 bound, Bargmann
bound, and the half-integer counting formula).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "WellCounts",
    "BoundsReport",
    "tan_theta_root",
    "eigenvalue_count_exact",
    "antibound_count_exact",
    "well_counts",
    "frank_constant",
    "bounds_report",
]


@dataclass(frozen=True)
class WellCounts:
    """Exact counts for depth k_sq; n_antibound is None (unknown) below the
    first threshold (pi/2)^2, where the closed-form count does not apply."""

    k_sq: float
    n_eigen: int
    n_antibound: int | None


@dataclass(frozen=True)
class BoundsReport:
    frank: float
    bargmann: float
    count_formula: int
    interval_lo: float
    interval_hi: float


def tan_theta_root(n: int) -> float:
    """n-th nonnegative solution of tan(theta) = theta.

    theta_0 = 0; for n >= 1 the root inside (n*pi, (2n+1)*pi/2) is found by
    bisection on the pole-free form g(theta) = sin(theta) - theta*cos(theta).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 0.0

    def g(th: float) -> float:
        return math.sin(th) - th * math.cos(th)

    lo = n * math.pi + 1e-9
    hi = (2 * n + 1) * math.pi / 2 - 1e-9
    glo = g(lo)
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def eigenvalue_count_exact(k_sq: float) -> int:
    """Number of eigenvalues of the depth-k_sq well: the smallest n with
    k_sq <= ((2n+1)*pi/2)^2."""
    k_sq = float(k_sq)
    if not (k_sq > 0 and math.isfinite(k_sq)):
        raise ValueError("k_sq must be positive and finite")
    n = 0
    while k_sq > ((2 * n + 1) * math.pi / 2) ** 2:
        n += 1
    return n


def antibound_count_exact(k_sq: float) -> int | None:
    """Number of antibound states, or None where the closed form is silent.

    For k_sq > (pi/2)^2 with n eigenvalues and K_n = tan_theta_root(n)^2 + 1:
    n - 1 antibounds below K_n, n + 1 at or above it. Below (pi/2)^2 the
    count is not determined by the formula; the root finder is the source of
    truth there.
    """
    k_sq = float(k_sq)
    if not (k_sq > 0 and math.isfinite(k_sq)):
        raise ValueError("k_sq must be positive and finite")
    if k_sq <= (math.pi / 2) ** 2:
        return None
    n = eigenvalue_count_exact(k_sq)
    k_n = tan_theta_root(n) ** 2 + 1.0
    return n - 1 if k_sq < k_n else n + 1


def well_counts(k_sq: float) -> WellCounts:
    return WellCounts(float(k_sq), eigenvalue_count_exact(k_sq),
                      antibound_count_exact(k_sq))


@lru_cache(maxsize=1)
def frank_constant() -> float:
    """min over eps > 0 of (e^eps - 1)^2 / eps^4, by golden-section search."""

    def g(eps: float) -> float:
        return (math.expm1(eps) / (eps * eps)) ** 2

    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    lo, hi = 1e-3, 20.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    g1, g2 = g(x1), g(x2)
    while hi - lo > 1e-9:
        if g1 < g2:
            hi, x2, g2 = x2, x1, g1
            x1 = hi - inv_phi * (hi - lo)
            g1 = g(x1)
        else:
            lo, x1, g1 = x1, x2, g2
            x2 = lo + inv_phi * (hi - lo)
            g2 = g(x2)
    return g(0.5 * (lo + hi))


def bounds_report(v_abs: float) -> BoundsReport:
    """Bound comparison for the constant well of magnitude v_abs on [0, 1].

    frank = C*v_abs^2 with the minimized constant C; bargmann = v_abs/2
    (= int x*V_ dx); count_formula = floor(sqrt(v_abs)/pi + 1/2). The interval
    bounds use min/max of the well magnitude, which coincide for a constant
    well, so interval_lo = interval_hi = sqrt(v_abs)/pi + 1/2 unfloored.
    """
    v_abs = float(v_abs)
    if not (v_abs >= 0 and math.isfinite(v_abs)):
        raise ValueError("v_abs must be nonnegative and finite")
    if v_abs == 0.0:
        return BoundsReport(0.0, 0.0, 0, 0.0, 0.0)
    half = math.sqrt(v_abs) / math.pi + 0.5
    return BoundsReport(
        frank=frank_constant() * v_abs * v_abs,
        bargmann=0.5 * v_abs,
        count_formula=math.floor(half),
        interval_lo=half,
        interval_hi=half,
    )

"""Numerical miss function for sampled compactly supported potentials.

Fixed-step RK4 integrates the complex ODE phi'' = (V(x) + lambda^2) phi from
phi(0) = 0, phi'(0) = 1 to the support end a, carrying the lambda-derivative
variational pair (and optionally a coupling-derivative pair) in the same
pass. The miss function m(lambda) = phi'(a) + lambda*phi(a) vanishes exactly
at the spectral points.

Fixed steps are required so that grid nodes (where piecewise-linear samples
may kink) are hit exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch, ZeroLambda
from .stepwell import StepPotential, _asarray

__all__ = [
    "SampledPotential",
    "ShotResult",
    "integrate_phi",
    "miss_sampled",
    "norm_integral_sampled",
]


@dataclass(frozen=True)
class SampledPotential:
    """Potential sampled at n uniform nodes x_i = i*a/(n-1), zero beyond a.

    Values between nodes are piecewise-linear; V may jump only at a itself.
    """

    a: float
    values: tuple[complex, ...]

    def __post_init__(self):
        a = float(self.a)
        if not (a > 0.0 and math.isfinite(a)):
            raise ValueError("support end a must be positive and finite")
        vals = tuple(complex(v) for v in self.values)
        if len(vals) < 2:
            raise ValueError("need at least 2 sample nodes")
        if not all(math.isfinite(v.real) and math.isfinite(v.imag) for v in vals):
            raise ValueError("sample values must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.a, self.n)

    def interp(self, x: np.ndarray) -> np.ndarray:
        vals = np.asarray(self.values)
        return (np.interp(x, self.nodes, vals.real)
                + 1j * np.interp(x, self.nodes, vals.imag))

    def to_json(self) -> dict:
        return {"a": self.a, "values": [[v.real, v.imag] for v in self.values]}

    @classmethod
    def from_json(cls, obj: dict) -> "SampledPotential":
        return cls(float(obj["a"]), tuple(complex(re, im) for re, im in obj["values"]))

    @classmethod
    def from_step(cls, p: StepPotential, n: int) -> "SampledPotential":
        """Sample a step potential at n uniform nodes (right-segment value at
        interior breakpoints)."""
        ends = np.cumsum([ell for ell, _ in p.segments])
        vals = np.asarray([v for _, v in p.segments])
        x = np.linspace(0.0, float(ends[-1]), n)
        idx = np.minimum(np.searchsorted(ends, x, side="right"), len(vals) - 1)
        return cls(float(ends[-1]), tuple(vals[idx]))


@dataclass(frozen=True)
class ShotResult:
    """Endpoint data of one shot: phi, phi' and their lambda-derivatives at a.

    When a forcing potential W was supplied, dfrc_* carry the derivative of
    (phi, phi') with respect to a scalar coefficient multiplying W in the
    potential (the coupling derivative used by continuation).
    """

    phi_a: complex
    dphi_a: complex
    dlam_phi_a: complex
    dlam_dphi_a: complex
    dfrc_phi_a: complex | None = None
    dfrc_dphi_a: complex | None = None


def _check_steps(p: SampledPotential, steps: int) -> None:
    m = p.n - 1
    if steps < m or steps % m != 0:
        raise GridMismatch(
            f"steps must be a positive multiple of n-1 = {m}, got {steps}")


def _march(p: SampledPotential, lam: np.ndarray, steps: int,
           forcing: SampledPotential | None = None, collect: bool = False):
    """RK4 over [0, a]; state rows (phi, phi', u, u', [w, w']) batched over lam.

    u is the lambda-derivative pair, w the forcing-coupling pair. Returns the
    final state and, when collect is set, phi at every grid node.
    """
    _check_steps(p, steps)
    if forcing is not None:
        if abs(forcing.a - p.a) > 1e-12 * max(1.0, p.a) or forcing.n != p.n:
            raise GridMismatch("forcing potential must share support and node count")
    h = p.a / steps
    x = np.linspace(0.0, p.a, steps + 1)
    v_node = p.interp(x)
    v_mid = p.interp(x[:-1] + 0.5 * h)
    if forcing is not None:
        g_node = forcing.interp(x)
        g_mid = forcing.interp(x[:-1] + 0.5 * h)

    k = lam.shape[0]
    rows = 6 if forcing is not None else 4
    y = np.zeros((rows, k), dtype=complex)
    y[1] = 1.0
    lam2 = lam * lam
    two_lam = 2.0 * lam

    def rhs(v, g, s):
        om = v + lam2
        out = np.empty_like(s)
        out[0] = s[1]
        out[1] = om * s[0]
        out[2] = s[3]
        out[3] = om * s[2] + two_lam * s[0]
        if rows == 6:
            out[4] = s[5]
            out[5] = om * s[4] + g * s[0]
        return out

    phis = np.empty((steps + 1, k), dtype=complex) if collect else None
    if collect:
        phis[0] = y[0]
    for j in range(steps):
        va, vm, vb = v_node[j], v_mid[j], v_node[j + 1]
        ga = gm = gb = 0.0
        if forcing is not None:
            ga, gm, gb = g_node[j], g_mid[j], g_node[j + 1]
        k1 = rhs(va, ga, y)
        k2 = rhs(vm, gm, y + (0.5 * h) * k1)
        k3 = rhs(vm, gm, y + (0.5 * h) * k2)
        k4 = rhs(vb, gb, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if collect:
            phis[j + 1] = y[0]
    return y, phis


def integrate_phi(p: SampledPotential, lam, steps: int,
                  forcing: SampledPotential | None = None) -> ShotResult:
    """Shoot phi(0) = 0, phi'(0) = 1 to x = a with variational equations.

    steps must be a multiple of n-1 (grid nodes hit exactly); global error
    O(h^4). lam may be a complex array, in which case the result fields are
    arrays of the same shape.

    Raises:
        GridMismatch: incompatible steps or forcing grid.
    """
    lam_a, scalar = _asarray(lam)
    y, _ = _march(p, lam_a, steps, forcing=forcing)
    fields = list(y[:4]) + (list(y[4:6]) if forcing is not None else [None, None])
    if scalar:
        fields = [complex(f[0]) if f is not None else None for f in fields]
    return ShotResult(*fields)


def miss_sampled(p: SampledPotential, lam, steps: int):
    """Miss function m = phi'(a) + lambda*phi(a) and dm/dlambda by shooting."""
    lam_a, scalar = _asarray(lam)
    y, _ = _march(p, lam_a, steps)
    m = y[1] + lam_a * y[0]
    dm = y[3] + y[0] + lam_a * y[2]
    if scalar:
        return complex(m[0]), complex(dm[0])
    return m, dm


def _simpson(y: np.ndarray, h: float) -> np.ndarray:
    """Composite Simpson along axis 0; odd interval counts close with the 3/8
    rule on the last three intervals (plain trapezoid when only 2 nodes)."""
    n = y.shape[0]
    if n < 2:
        raise ValueError("need at least two nodes")
    if n == 2:
        return 0.5 * h * (y[0] + y[1])
    total = np.zeros_like(y[0])
    m = n if n % 2 == 1 else n - 3
    if m >= 3:
        seg = y[:m]
        total = total + (h / 3.0) * (seg[0] + seg[-1]
                                     + 4.0 * seg[1:-1:2].sum(axis=0)
                                     + 2.0 * seg[2:-1:2].sum(axis=0))
    if n % 2 == 0:
        tail = y[-4:]
        total = total + (3.0 * h / 8.0) * (tail[0] + 3.0 * tail[1]
                                           + 3.0 * tail[2] + tail[3])
    return total


def norm_integral_sampled(p: SampledPotential, lam, steps: int):
    """int_0^inf phi^2 dx: Simpson on the integration grid plus the tail
    phi(a)^2/(2 lambda) (phi continued as a pure decaying exponential).

    Raises:
        ZeroLambda: |lambda| < 1e-12.
        GridMismatch: incompatible steps.
    """
    lam_a, scalar = _asarray(lam)
    if np.any(np.abs(lam_a) < 1e-12):
        raise ZeroLambda("norm integral tail requires |lambda| >= 1e-12")
    y, phis = _march(p, lam_a, steps, collect=True)
    total = _simpson(phis * phis, p.a / steps) + y[0] * y[0] / (2.0 * lam_a)
    if scalar:
        return complex(total[0])
    return total

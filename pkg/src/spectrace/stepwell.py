"""Closed-form spectral functions for piecewise-constant half-line potentials.

The square-well characteristic function in branch-free entire form, exact
transfer matrices for multi-step wells, and the analytic normalization
integral int phi^2 that feeds the collision criterion.

Everything is expressed through even entire functions of w = mu^2, so no
square-root branch of mu is ever chosen: S(w) = sin(sqrt w)/sqrt w,
C(w) = cos(sqrt w).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroLambda

__all__ = [
    "StepPotential",
    "EvenPair",
    "TransferMatrix",
    "even_pair",
    "char_fn",
    "transfer_step",
    "miss_piecewise",
    "norm_integral_step",
    "segment_square_integrals",
]

# Taylor switch for the entire helper functions; 8 terms hold truncation below
# 1e-15 at the seam |w| = 1e-4.
_SMALL_W = 1e-4
_NTERMS = 8

_S_COEF = [(-1.0) ** n / math.factorial(2 * n + 1) for n in range(_NTERMS)]
_C_COEF = [(-1.0) ** n / math.factorial(2 * n) for n in range(_NTERMS)]
# S'(w) = sum_{n>=1} n (-1)^n w^(n-1) / (2n+1)!
_DS_COEF = [n * (-1.0) ** n / math.factorial(2 * n + 1) for n in range(1, _NTERMS + 1)]
# (C(w)-1)/w and (S(w)-1)/w, used by the segment square integrals.
_VC_COEF = [(-1.0) ** n / math.factorial(2 * n) for n in range(1, _NTERMS + 1)]
_VS_COEF = [(-1.0) ** n / math.factorial(2 * n + 1) for n in range(1, _NTERMS + 1)]


def _poly(coef: list[float], w: np.ndarray) -> np.ndarray:
    acc = np.full_like(w, coef[-1])
    for c in coef[-2::-1]:
        acc = acc * w + c
    return acc


def _sc(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """S(w) and C(w) on a complex array, series below the switch."""
    S = np.empty_like(w)
    C = np.empty_like(w)
    small = np.abs(w) < _SMALL_W
    if small.any():
        ws = w[small]
        S[small] = _poly(_S_COEF, ws)
        C[small] = _poly(_C_COEF, ws)
    big = ~small
    if big.any():
        mu = np.sqrt(w[big])
        S[big] = np.sin(mu) / mu
        C[big] = np.cos(mu)
    return S, C


def _ds(w: np.ndarray) -> np.ndarray:
    """S'(w); away from the seam via S'(w) = (C(w) - S(w)) / (2w)."""
    out = np.empty_like(w)
    small = np.abs(w) < _SMALL_W
    if small.any():
        out[small] = _poly(_DS_COEF, w[small])
    big = ~small
    if big.any():
        wb = w[big]
        S, C = _sc(wb)
        out[big] = (C - S) / (2.0 * wb)
    return out


def _vc_vs(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(C(w)-1)/w and (S(w)-1)/w, entire; series below the switch."""
    vc = np.empty_like(w)
    vs = np.empty_like(w)
    small = np.abs(w) < _SMALL_W
    if small.any():
        ws = w[small]
        vc[small] = _poly(_VC_COEF, ws)
        vs[small] = _poly(_VS_COEF, ws)
    big = ~small
    if big.any():
        wb = w[big]
        S, C = _sc(wb)
        vc[big] = (C - 1.0) / wb
        vs[big] = (S - 1.0) / wb
    return vc, vs


def _asarray(lam) -> tuple[np.ndarray, bool]:
    arr = np.asarray(lam, dtype=complex)
    scalar = arr.ndim == 0
    return (arr.reshape(1) if scalar else arr), scalar


@dataclass(frozen=True)
class EvenPair:
    """Values of the entire functions S(w) = sin(sqrt w)/sqrt w and C(w) = cos(sqrt w)."""

    S: complex
    C: complex


def even_pair(w: complex) -> EvenPair:
    arr = np.asarray([w], dtype=complex)
    S, C = _sc(arr)
    return EvenPair(complex(S[0]), complex(C[0]))


@dataclass(frozen=True)
class StepPotential:
    """Piecewise-constant potential on [0, a], zero beyond a.

    segments: ordered (length, value) pairs; the support end a is the sum of
    lengths.
    """

    segments: tuple[tuple[float, complex], ...]

    def __post_init__(self):
        if not self.segments:
            raise ValueError("StepPotential needs at least one segment")
        segs = tuple((float(ell), complex(v)) for ell, v in self.segments)
        for ell, v in segs:
            if not (ell > 0.0) or not math.isfinite(ell):
                raise ValueError("segment lengths must be positive and finite")
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError("segment values must be finite")
        object.__setattr__(self, "segments", segs)

    @property
    def support_end(self) -> float:
        return sum(ell for ell, _ in self.segments)

    def to_json(self) -> dict:
        return {"segments": [[ell, [v.real, v.imag]] for ell, v in self.segments]}

    @classmethod
    def from_json(cls, obj: dict) -> "StepPotential":
        segs = tuple((float(ell), complex(re, im)) for ell, (re, im) in obj["segments"])
        return cls(segs)


@dataclass(frozen=True)
class TransferMatrix:
    """Exact 2x2 propagator of (phi, phi') across one constant segment."""

    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @property
    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def apply(self, phi: complex, dphi: complex) -> tuple[complex, complex]:
        return (self.m11 * phi + self.m12 * dphi,
                self.m21 * phi + self.m22 * dphi)

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        return TransferMatrix(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )


def char_fn(v, lam):
    """Characteristic function of the unit square well at depth v.

    Implemented as the entire function f(lambda) = lambda*S(w) + C(w) with
    w = -v - lambda^2; zeros with Re lambda > 0 are eigenvalues
    kappa = -lambda^2, Re lambda < 0 resonances, Re lambda = 0 spectral
    singularities.

    Returns:
        (value, derivative) as complex scalars, or arrays matching lam.
    """
    lam_a, scalar = _asarray(lam)
    v = complex(v)
    w = -v - lam_a * lam_a
    S, C = _sc(w)
    dS = _ds(w)
    val = lam_a * S + C
    # d/dlam with dw/dlam = -2 lam and C'(w) = -S(w)/2.
    der = S * (1.0 + lam_a) - 2.0 * lam_a * lam_a * dS
    if scalar:
        return complex(val[0]), complex(der[0])
    return val, der


def transfer_step(length: float, v: complex, lam: complex) -> TransferMatrix:
    """Propagator of phi'' = (v + lambda^2) phi over one segment."""
    if not length > 0:
        raise ValueError("length must be positive")
    omega = complex(v) + complex(lam) ** 2
    w = np.asarray([-omega * length * length], dtype=complex)
    S, C = _sc(w)
    s, c = complex(S[0]), complex(C[0])
    return TransferMatrix(c, length * s, omega * length * s, c)


def _propagate(segments, lam: np.ndarray, dom_coeffs=None, collect: bool = False):
    """March (phi, phi') = (0, 1) through all segments.

    dom_coeffs: optional per-segment values of d omega / d parameter; when
    given, the variational pair (d_phi, d_dphi) with respect to that
    parameter is propagated alongside. The lambda derivative corresponds to
    dom = 2*lam on every segment.

    collect=True additionally returns the (phi, phi', omega, length) tuple at
    the start of each segment, for the segment square integrals.
    """
    phi = np.zeros_like(lam)
    dphi = np.ones_like(lam)
    want_deriv = dom_coeffs is not None
    if want_deriv:
        p_phi = np.zeros_like(lam)
        p_dphi = np.zeros_like(lam)
    starts = [] if collect else None
    # trig of huge complex arguments overflows to inf/nan for overscaled
    # probe points; callers reject non-finite values, so keep it silent
    with np.errstate(over="ignore", invalid="ignore"):
        for k, (ell, v) in enumerate(segments):
            omega = v + lam * lam
            if collect:
                starts.append((phi, dphi, omega, ell))
            w = -omega * (ell * ell)
            S, C = _sc(w)
            m11 = C
            m12 = ell * S
            m21 = omega * ell * S
            m22 = C
            if want_deriv:
                dS = _ds(w)
                dom = dom_coeffs[k]
                # entry derivatives with respect to omega, times dom
                d11 = 0.5 * ell * ell * S * dom
                d12 = -(ell ** 3) * dS * dom
                d21 = (ell * S - omega * (ell ** 3) * dS) * dom
                d22 = d11
                n_p_phi = m11 * p_phi + m12 * p_dphi + d11 * phi + d12 * dphi
                n_p_dphi = m21 * p_phi + m22 * p_dphi + d21 * phi + d22 * dphi
                p_phi, p_dphi = n_p_phi, n_p_dphi
            phi, dphi = m11 * phi + m12 * dphi, m21 * phi + m22 * dphi
    out = [phi, dphi]
    if want_deriv:
        out += [p_phi, p_dphi]
    if collect:
        out.append(starts)
    return out


def miss_piecewise(p: StepPotential, lam):
    """Miss function m(lambda) = phi'(a) + lambda*phi(a) for a step potential.

    phi is the interior solution with phi(0) = 0, phi'(0) = 1; zeros of m are
    the spectral points. The derivative dm/dlambda is propagated analytically
    through the transfer matrices (exact for the entire function m).

    Returns:
        (value, derivative), scalars or arrays matching lam.
    """
    lam_a, scalar = _asarray(lam)
    dom = [2.0 * lam_a] * len(p.segments)
    phi, dphi, p_phi, p_dphi = _propagate(p.segments, lam_a, dom_coeffs=dom)
    m = dphi + lam_a * phi
    dm = p_dphi + phi + lam_a * p_phi
    if scalar:
        return complex(m[0]), complex(dm[0])
    return m, dm


def _segment_integral(phi0, dphi0, omega, ell):
    """Exact int phi^2 over one constant segment from the left endpoint data.

    For phi'' = omega*phi the integral has the closed form
        (ell/2)(1 + S(W)) phi0^2 - 2 ell^2 Vc(W) phi0 phi0' - 2 ell^3 Vs(W) phi0'^2
    with W = -4*omega*ell^2, Vc = (C-1)/w, Vs = (S-1)/w; all factors entire,
    so the omega -> 0 limit needs no special casing.
    """
    W = -4.0 * omega * (ell * ell)
    S, _ = _sc(W)
    vc, vs = _vc_vs(W)
    return ((0.5 * ell) * (1.0 + S) * phi0 * phi0
            - 2.0 * ell * ell * vc * phi0 * dphi0
            - 2.0 * ell ** 3 * vs * dphi0 * dphi0)


def segment_square_integrals(p: StepPotential, lam):
    """Per-segment int phi^2 and the endpoint value phi(a).

    Returns:
        (integrals, phi_a) where integrals is a list with one entry per
        segment (arrays if lam is an array).
    """
    lam_a, scalar = _asarray(lam)
    phi, dphi, starts = _propagate(p.segments, lam_a, collect=True)
    parts = [_segment_integral(ph, dph, om, ell) for ph, dph, om, ell in starts]
    if scalar:
        return [complex(q[0]) for q in parts], complex(phi[0])
    return parts, phi


def norm_integral_step(p: StepPotential, lam):
    """int_0^inf phi(x)^2 dx (square, not modulus square) for a step potential.

    The interior part is summed from exact per-segment formulas; the tail
    continues phi as b*exp(-lambda x) beyond a with b = phi(a)*exp(lambda a),
    contributing phi(a)^2 / (2 lambda). Vanishing of this integral at a root
    of m is the non-simplicity (collision) criterion.

    Raises:
        ZeroLambda: if |lambda| < 1e-12 (tail undefined).
    """
    lam_a, scalar = _asarray(lam)
    if np.any(np.abs(lam_a) < 1e-12):
        raise ZeroLambda("norm integral tail requires |lambda| >= 1e-12")
    phi, dphi, starts = _propagate(p.segments, lam_a, collect=True)
    total = np.zeros_like(lam_a)
    for ph, dph, om, ell in starts:
        total = total + _segment_integral(ph, dph, om, ell)
    total = total + phi * phi / (2.0 * lam_a)
    if scalar:
        return complex(total[0])
    return total

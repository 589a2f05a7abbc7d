"""Zero location for entire functions of one complex variable.

Newton refinement, argument-principle counting on rectangles via adaptive
phase accumulation, and recursive quadrisection to seed every root in a
region. An AnalyticFn is any callable lam -> (f(lam), f'(lam)) accepting
complex scalars and complex ndarrays alike.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BoundaryZero, DerivativeVanished, NoConvergence, Unresolved

__all__ = [
    "AnalyticFn",
    "Region",
    "RootConfig",
    "FoundRoot",
    "newton_refine",
    "winding_count",
    "seed_roots",
]

AnalyticFn = Callable[[complex], tuple[complex, complex]]

# Boundary-zero detection threshold for winding counts.
_BOUNDARY_TOL = 1e-13
# Hard budget on adaptive boundary samples.
_MAX_BOUNDARY_POINTS = 1_000_000
# Deterministic inflation ladder used when a zero sits on a box edge.
_INFLATIONS = (0.01, 0.023, 0.037, 0.052, 0.071)


def _check_finite(z: complex, what: str) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle in the lambda plane, corners lo and hi."""

    lo: complex
    hi: complex

    def __post_init__(self):
        lo = _check_finite(self.lo, "Region.lo")
        hi = _check_finite(self.hi, "Region.hi")
        if not (lo.real < hi.real and lo.imag < hi.imag):
            raise ValueError("Region needs lo.re < hi.re and lo.im < hi.im")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> float:
        return self.hi.real - self.lo.real

    @property
    def height(self) -> float:
        return self.hi.imag - self.lo.imag

    @property
    def center(self) -> complex:
        return 0.5 * (self.lo + self.hi)

    def inflate(self, factor: float) -> "Region":
        pad = factor * complex(self.width, self.height)
        return Region(self.lo - 0.5 * pad, self.hi + 0.5 * pad)

    def contains(self, lam: complex, pad: float = 0.0) -> bool:
        px = pad * self.width
        py = pad * self.height
        return (self.lo.real - px <= lam.real <= self.hi.real + px
                and self.lo.imag - py <= lam.imag <= self.hi.imag + py)

    def subdivide(self) -> tuple["Region", "Region", "Region", "Region"]:
        c = self.center
        return (
            Region(self.lo, c),
            Region(complex(c.real, self.lo.imag), complex(self.hi.real, c.imag)),
            Region(complex(self.lo.real, c.imag), complex(c.real, self.hi.imag)),
            Region(c, self.hi),
        )


@dataclass(frozen=True)
class RootConfig:
    newton_tol: float = 1e-12
    max_iter: int = 50
    min_separation: float = 1e-8
    max_depth: int = 12

    def __post_init__(self):
        if min(self.newton_tol, self.min_separation) <= 0 or min(self.max_iter, self.max_depth) <= 0:
            raise ValueError("RootConfig fields must be positive")


@dataclass(frozen=True)
class FoundRoot:
    """One root located by seed_roots.

    count is the winding multiplicity the root accounts for (> 1 for multiple
    roots, which are returned once and flagged); converged=False marks boxes
    whose Newton polish failed (the center is reported with its residual).
    """

    lam: complex
    count: int = 1
    converged: bool = True
    residual: float = 0.0

    @property
    def flagged(self) -> bool:
        return self.count > 1 or not self.converged


def newton_refine(f: AnalyticFn, seed: complex, cfg: RootConfig = RootConfig()) -> complex:
    """Polish a root of f by Newton iteration with a step-halving safeguard.

    Halves the step up to 8 times whenever |f| does not decrease; after 8
    halvings the last candidate is taken anyway so the iteration cannot stall
    on a flat spot.

    Raises:
        NoConvergence: max_iter exhausted with |f| above newton_tol.
        DerivativeVanished: |f'| < 1e-300 at an iterate.
    """
    lam = _check_finite(seed, "seed")
    fval, fder = f(lam)
    fabs = abs(fval)
    for _ in range(cfg.max_iter):
        if fabs <= cfg.newton_tol:
            return lam
        if abs(fder) < 1e-300:
            raise DerivativeVanished(f"|f'| vanished at {lam!r}")
        step = fval / fder
        cand = lam - step
        cval, cder = f(cand)
        halvings = 0
        while abs(cval) >= fabs and halvings < 8:
            step *= 0.5
            cand = lam - step
            cval, cder = f(cand)
            halvings += 1
        lam, fval, fder = cand, cval, cder
        fabs = abs(fval)
        if not (math.isfinite(fabs) and math.isfinite(abs(lam))):
            raise NoConvergence(f"iteration left the finite plane near {seed!r}")
    if fabs <= cfg.newton_tol:
        return lam
    raise NoConvergence(f"no root within {cfg.max_iter} iterations from {seed!r} (|f| = {fabs:.3g})")


def _boundary_points(region: Region, t: np.ndarray) -> np.ndarray:
    """Map parameters in [0, 4) to boundary points, counterclockwise."""
    lo, hi = region.lo, region.hi
    w, h = region.width, region.height
    t = np.asarray(t)
    pts = np.empty(t.shape, dtype=complex)
    side = np.floor(t).astype(int)
    frac = t - side
    m = side == 0
    pts[m] = lo + frac[m] * w
    m = side == 1
    pts[m] = complex(hi.real, lo.imag) + 1j * frac[m] * h
    m = side == 2
    pts[m] = hi - frac[m] * w
    m = side == 3
    pts[m] = complex(lo.real, hi.imag) - 1j * frac[m] * h
    return pts


def winding_count(f: AnalyticFn, region: Region) -> int:
    """Number of zeros of f inside region, counted with multiplicity.

    Accumulates the change of arg f along the boundary, inserting midpoints
    until every consecutive argument increment is below pi/2; the total must
    land within 0.25 of an integer.

    Raises:
        BoundaryZero: |f| < 1e-13 at a boundary sample.
        Unresolved: sampling exceeded 1e6 points or the total failed the
            integer check even at the tightened increment threshold.
    """
    t = np.linspace(0.0, 4.0, 65)[:-1]
    vals = np.asarray(f(_boundary_points(region, t))[0])
    if np.min(np.abs(vals)) < _BOUNDARY_TOL:
        raise BoundaryZero(f"zero on boundary of {region}")
    for threshold in (0.5 * math.pi, 0.25 * math.pi):
        while True:
            ratios = np.roll(vals, -1) / vals
            incs = np.angle(ratios)
            bad = np.abs(incs) >= threshold
            if not bad.any():
                break
            t_next = np.roll(t, -1).copy()
            t_next[-1] = t[0] + 4.0
            mids = np.mod(0.5 * (t[bad] + t_next[bad]), 4.0)
            if t.size + mids.size > _MAX_BOUNDARY_POINTS:
                raise Unresolved(f"boundary sampling budget exhausted on {region}")
            new_vals = np.asarray(f(_boundary_points(region, mids))[0])
            if np.min(np.abs(new_vals)) < _BOUNDARY_TOL:
                raise BoundaryZero(f"zero on boundary of {region}")
            t = np.concatenate([t, mids])
            vals = np.concatenate([vals, new_vals])
            order = np.argsort(t)
            t = t[order]
            vals = vals[order]
        total = float(np.sum(np.angle(np.roll(vals, -1) / vals))) / (2.0 * math.pi)
        count = round(total)
        if abs(total - count) <= 0.25:
            return count
    raise Unresolved(f"winding total {total:.3f} not near an integer on {region}")


def _count_inflated(f: AnalyticFn, region: Region) -> tuple[int, Region]:
    """winding_count with the standard inflation ladder on BoundaryZero."""
    try:
        return winding_count(f, region), region
    except BoundaryZero:
        for fac in _INFLATIONS:
            grown = region.inflate(fac)
            try:
                return winding_count(f, grown), grown
            except BoundaryZero:
                continue
        raise


def _grid_seeds(box: Region) -> list[complex]:
    # centroid first, then a 3x3 fallback grid
    seeds = [box.center]
    for fx in (0.25, 0.5, 0.75):
        for fy in (0.25, 0.5, 0.75):
            s = complex(box.lo.real + fx * box.width, box.lo.imag + fy * box.height)
            seeds.append(s)
    return seeds


def seed_roots(f: AnalyticFn, region: Region, cfg: RootConfig = RootConfig()) -> list[FoundRoot]:
    """Locate all roots of f in region by recursive quadrisection.

    Boxes with winding count 0 are dropped; count 1 boxes are polished by
    Newton from the centroid with 3x3 fallback seeds; higher counts are
    subdivided. Multiple roots are returned once, flagged with their count.
    Results are deduplicated (Newton stops produced by one multiple zero are
    clustered and recounted) and sorted by (re, im); distinct returned roots
    are separated by more than cfg.min_separation.
    """
    found: list[FoundRoot] = []
    stack: list[tuple[Region, int]] = [(region, 0)]
    while stack:
        box, depth = stack.pop()
        count, box = _count_inflated(f, box)
        if count <= 0:
            continue
        if count == 1 or depth >= cfg.max_depth:
            root = None
            for s in _grid_seeds(box):
                try:
                    cand = newton_refine(f, s, cfg)
                except (NoConvergence, DerivativeVanished):
                    continue
                # the winding certified zeros strictly inside this box, so
                # only absorb the final Newton step; a width-relative pad can
                # accept a neighbouring root and swallow the box's count
                eps = 1e-9 * (1.0 + abs(cand))
                if (box.lo.real - eps <= cand.real <= box.hi.real + eps
                        and box.lo.imag - eps <= cand.imag <= box.hi.imag + eps):
                    root = cand
                    break
            if root is not None:
                found.append(FoundRoot(root, count=count, residual=abs(f(root)[0])))
            elif count >= 2 or depth >= cfg.max_depth:
                # multiple root (or unpolishable box) at the recursion floor
                c = box.center
                found.append(FoundRoot(c, count=count, converged=False,
                                       residual=abs(f(c)[0])))
            else:
                # a simple root that escapes every seed: isolate it further
                stack.extend((sub, depth + 1) for sub in box.subdivide())
            continue
        stack.extend((sub, depth + 1) for sub in box.subdivide())

    # Dedupe. Newton stalls ~sqrt(newton_tol) away from a double zero, and a
    # zero sitting exactly on a cut line splits its winding silently between
    # the two siblings (boundary phase is constant there, so neither the
    # increment refinement nor the boundary-zero guard fires). Both effects
    # scatter one multiple zero into several "simple" stops wider apart than
    # min_separation: cluster by each stop's own final Newton step and
    # re-derive the multiplicity from a tight contour around the survivor.
    def radius(r: FoundRoot) -> float:
        if not r.converged:
            return cfg.min_separation
        val, der = f(r.lam)
        step = abs(val) / abs(der) if der != 0.0 else math.inf
        return cfg.min_separation + 4.0 * min(step, 1e-4 * (1.0 + abs(r.lam)))

    found.sort(key=lambda r: (r.lam.real, r.lam.imag))
    radii = [radius(r) for r in found]
    clusters: list[list[int]] = []
    for i, r in enumerate(found):
        for idx in clusters:
            if any(abs(r.lam - found[j].lam) <= max(radii[i], radii[j])
                   for j in idx):
                idx.append(i)
                break
        else:
            clusters.append([i])
    merged: list[FoundRoot] = []
    for idx in clusters:
        members = [found[i] for i in idx]
        rep = min(members, key=lambda r: (not r.converged, r.residual))
        if len(members) == 1:
            merged.append(rep)
            continue
        spread = max(abs(r.lam - rep.lam) for r in members)
        w = max(4.0 * spread, 8.0 * max(radii[i] for i in idx),
                4.0 * cfg.min_separation)
        probe = Region(rep.lam - w * (1 + 1j), rep.lam + w * (1 + 1j))
        try:
            n, _ = _count_inflated(f, probe)
            merged.append(FoundRoot(rep.lam, count=max(n, 1),
                                    converged=rep.converged,
                                    residual=rep.residual))
        except (BoundaryZero, Unresolved):
            merged.append(FoundRoot(rep.lam, count=max(r.count for r in members),
                                    converged=False, residual=rep.residual))
    merged.sort(key=lambda r: (r.lam.real, r.lam.imag))
    return merged

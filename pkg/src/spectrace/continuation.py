"""Continuation of spectral points along coupling paths.

A coupling model V0 + z*V1 defines a family of miss functions m(lambda; z).
trace() follows one root along a polygonal path in z with a
predictor-corrector scheme, classifying each accepted point and emitting
events (ClassChange, Collision, Terminated, Diverged). scan_real_well()
sweeps the depth of the unit square well and reports collision and
zero-crossing events refined in the depth parameter.

Everything tracks lambda; kappa = -lambda^2 is derived output only, so
classification transitions are plain sign changes of Re lambda and no
kappa-plane branch logic exists anywhere.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, partial

import numpy as np

from .errors import (
    DegenerateModel,
    DerivativeVanished,
    FreeOperatorOnPath,
    NoConvergence,
    NotARoot,
    NotSimple,
    SeedNotRoot,
    StepCollapse,
)
from .rootfind import AnalyticFn, FoundRoot, Region, RootConfig, newton_refine, seed_roots
from .shooting import SampledPotential, _march, _simpson, integrate_phi, miss_sampled, norm_integral_sampled
from .stepwell import (
    StepPotential,
    _asarray,
    _propagate,
    char_fn,
    miss_piecewise,
    norm_integral_step,
    segment_square_integrals,
)

__all__ = [
    "SpectralClass",
    "classify",
    "CouplingModel",
    "PathSpec",
    "TracePoint",
    "TraceEvent",
    "Trajectory",
    "TraceConfig",
    "trace",
    "kappa_rate",
    "branch_collision",
    "ScanSample",
    "ScanEvent",
    "EventLog",
    "scan_real_well",
]


class SpectralClass(str, Enum):
    EIGENVALUE = "Eigenvalue"
    ANTIBOUND = "Antibound"
    RESONANCE = "Resonance"
    SPECTRAL_SINGULARITY = "SpectralSingularity"


def classify(lam: complex, band: float = 1e-8) -> SpectralClass:
    """Spectral class of a characteristic root by the sign of Re lambda.

    Re > band: eigenvalue; Re < -band: resonance, reported as Antibound when
    |Im| <= band (real negative lambda); |Re| <= band: spectral singularity.
    """
    lam = complex(lam)
    if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
        raise ValueError("lambda must be finite")
    if abs(lam.real) <= band:
        return SpectralClass.SPECTRAL_SINGULARITY
    if lam.real > band:
        return SpectralClass.EIGENVALUE
    if abs(lam.imag) <= band:
        return SpectralClass.ANTIBOUND
    return SpectralClass.RESONANCE


def _value_at(p: StepPotential, x: float) -> complex:
    acc = 0.0
    for ell, v in p.segments:
        acc += ell
        if x < acc:
            return v
    return p.segments[-1][1]


def _merge_breakpoints(p0: StepPotential, p1: StepPotential):
    """Common refinement of two step potentials: (length, v0, v1) triples."""
    a = p0.support_end
    if abs(a - p1.support_end) > 1e-12 * max(1.0, a):
        raise ValueError("potentials must share the support end")
    cuts = [0.0]
    for p in (p0, p1):
        acc = 0.0
        for ell, _ in p.segments[:-1]:
            acc += ell
            cuts.append(acc)
    cuts.append(a)
    cuts.sort()
    merged = []
    lo = cuts[0]
    for hi in cuts[1:]:
        if hi - lo <= 1e-12 * max(1.0, a):
            continue
        mid = 0.5 * (lo + hi)
        merged.append((hi - lo, _value_at(p0, mid), _value_at(p1, mid)))
        lo = hi
    return tuple(merged)


@dataclass(frozen=True)
class CouplingModel:
    """Potential family V0 + z*V1 and its miss function m(lambda; z).

    V0 and V1 must be the same kind (both step or both sampled) on the same
    support; sampled pairs must share the node grid. rk_steps fixes the RK4
    step count for sampled potentials (default: at least 1000, rounded up to
    a multiple of n-1).
    """

    v0: StepPotential | SampledPotential
    v1: StepPotential | SampledPotential
    rk_steps: int | None = None

    def __post_init__(self):
        if isinstance(self.v0, StepPotential) != isinstance(self.v1, StepPotential):
            raise ValueError("V0 and V1 must be the same kind of potential")
        if isinstance(self.v0, SampledPotential):
            if abs(self.v0.a - self.v1.a) > 1e-12 * max(1.0, self.v0.a) or self.v0.n != self.v1.n:
                raise ValueError("sampled V0 and V1 must share the node grid")
        if self.rk_steps is not None and self.rk_steps <= 0:
            raise ValueError("rk_steps must be positive")

    @property
    def is_step(self) -> bool:
        return isinstance(self.v0, StepPotential)

    @cached_property
    def _merged(self):
        return _merge_breakpoints(self.v0, self.v1)

    @property
    def steps(self) -> int:
        if self.rk_steps is not None:
            return self.rk_steps
        m = self.v0.n - 1
        return m * max(1, -(-1000 // m))

    def potential_at(self, z: complex) -> StepPotential | SampledPotential:
        z = complex(z)
        if self.is_step:
            return StepPotential(tuple((ell, v0 + z * v1) for ell, v0, v1 in self._merged))
        vals = tuple(a + z * b for a, b in zip(self.v0.values, self.v1.values))
        return SampledPotential(self.v0.a, vals)

    def miss(self, z: complex, lam):
        if self.is_step:
            return miss_piecewise(self.potential_at(z), lam)
        return miss_sampled(self.potential_at(z), lam, self.steps)

    def analytic_fn(self, z: complex) -> AnalyticFn:
        pot = self.potential_at(z)
        if self.is_step:
            return partial(miss_piecewise, pot)
        steps = self.steps

        def fn(lam):
            return miss_sampled(pot, lam, steps)

        return fn

    def dm_dz(self, z: complex, lam):
        """Exact coupling derivative of the miss function at fixed lambda."""
        if self.is_step:
            lam_a, scalar = _asarray(lam)
            z = complex(z)
            segs = tuple((ell, v0 + z * v1) for ell, v0, v1 in self._merged)
            dom = [v1 for _, _, v1 in self._merged]
            phi, dphi, p_phi, p_dphi = _propagate(segs, lam_a, dom_coeffs=dom)
            out = p_dphi + lam_a * p_phi
            return complex(out[0]) if scalar else out
        sr = integrate_phi(self.potential_at(z), lam, self.steps, forcing=self.v1)
        return sr.dfrc_dphi_a + lam * sr.dfrc_phi_a

    def norm_integral(self, z: complex, lam):
        """int_0^inf phi^2 for the potential at coupling z (tail included)."""
        if self.is_step:
            return norm_integral_step(self.potential_at(z), lam)
        return norm_integral_sampled(self.potential_at(z), lam, self.steps)

    def coupling_integral(self, z: complex, lam):
        """int_0^a V1(x) phi(x)^2 dx (V1 vanishes beyond a, so no tail)."""
        if self.is_step:
            parts, _ = segment_square_integrals(self.potential_at(z), lam)
            total = 0.0
            for (_, _, v1), part in zip(self._merged, parts):
                total = total + v1 * part
            return total
        pot = self.potential_at(z)
        lam_a, scalar = _asarray(lam)
        _, phis = _march(pot, lam_a, self.steps, collect=True)
        x = np.linspace(0.0, pot.a, self.steps + 1)
        g = self.v1.interp(x)
        out = _simpson(g[:, None] * phis * phis, pot.a / self.steps)
        return complex(out[0]) if scalar else out


@dataclass(frozen=True)
class PathSpec:
    """Polygonal coupling path; a single vertex means a point path."""

    vertices: tuple[complex, ...]
    steps_per_edge: int = 200

    def __post_init__(self):
        verts = tuple(complex(v) for v in self.vertices)
        if not verts:
            raise ValueError("path needs at least one vertex")
        for v in verts:
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError("path vertices must be finite")
        for u, w in zip(verts, verts[1:]):
            if u == w:
                raise ValueError("consecutive path vertices must be distinct")
        if self.steps_per_edge < 1:
            raise ValueError("steps_per_edge must be >= 1")
        object.__setattr__(self, "vertices", verts)

    @property
    def n_edges(self) -> int:
        return len(self.vertices) - 1

    def z_at(self, t: float) -> complex:
        if self.n_edges == 0:
            return self.vertices[0]
        t = min(1.0, max(0.0, float(t)))
        x = t * self.n_edges
        e = min(int(x), self.n_edges - 1)
        s = x - e
        return self.vertices[e] + s * (self.vertices[e + 1] - self.vertices[e])

    def to_json(self) -> dict:
        return {"vertices": [[v.real, v.imag] for v in self.vertices],
                "steps_per_edge": self.steps_per_edge}

    @classmethod
    def from_json(cls, obj: dict) -> "PathSpec":
        return cls(tuple(complex(re, im) for re, im in obj["vertices"]),
                   int(obj.get("steps_per_edge", 200)))


@dataclass(frozen=True)
class TracePoint:
    t: float
    z: complex
    lam: complex
    cls: SpectralClass

    @property
    def kappa(self) -> complex:
        return -self.lam * self.lam


@dataclass(frozen=True)
class TraceEvent:
    t: float
    kind: str
    detail: dict


@dataclass
class Trajectory:
    points: list[TracePoint]
    events: list[TraceEvent]

    @property
    def final(self) -> TracePoint:
        return self.points[-1]


@dataclass(frozen=True)
class TraceConfig:
    band: float = 1e-8
    newton_tol: float = 1e-12
    collision_threshold: float = 1e-6
    max_step_halvings: int = 20
    divergence_radius: float = 1e3

    def __post_init__(self):
        if min(self.band, self.newton_tol, self.collision_threshold,
               self.divergence_radius) <= 0 or self.max_step_halvings < 1:
            raise ValueError("TraceConfig fields must be positive")

    @property
    def root_config(self) -> RootConfig:
        return RootConfig(newton_tol=self.newton_tol)


def _point_segment_distance(z: complex, a: complex, b: complex) -> float:
    d = b - a
    l2 = (d * d.conjugate()).real
    if l2 == 0.0:
        return abs(z - a)
    t = ((z - a) * d.conjugate()).real / l2
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * d))


def _polyline_distance(z: complex, vertices) -> float:
    if len(vertices) == 1:
        return abs(z - vertices[0])
    return min(_point_segment_distance(z, a, b) for a, b in zip(vertices, vertices[1:]))


def _free_operator_z(model: CouplingModel):
    """('always', None), ('point', z*), or ('none', None): where, if anywhere,
    V0 + z*V1 vanishes identically."""
    if model.is_step:
        pairs = [(v0, v1) for _, v0, v1 in model._merged]
    else:
        pairs = list(zip(model.v0.values, model.v1.values))
    scale = max([1.0] + [max(abs(a), abs(b)) for a, b in pairs])
    live = [(a, b) for a, b in pairs if max(abs(a), abs(b)) > 1e-14 * scale]
    if not live:
        return "always", None
    star = None
    for a, b in live:
        if abs(b) <= 1e-14 * scale:
            return "none", None
        cand = -a / b
        if star is None:
            star = cand
        elif abs(cand - star) > 1e-9 * (1.0 + abs(star)):
            return "none", None
    return "point", star


def _polish_double(model: CouplingModel, z0: complex, lam0: complex):
    """Newton on (m, dm/dlambda) = (0, 0) in the pair (lambda, z): locate the
    exact collision point from a nearby guess."""
    z, lam = complex(z0), complex(lam0)
    for _ in range(20):
        m, mp = model.miss(z, lam)
        if max(abs(m), abs(mp)) < 1e-11:
            return z, lam
        beta = model.dm_dz(z, lam)
        h = 1e-4 * (1.0 + abs(lam))
        _, mp_p = model.miss(z, lam + h)
        _, mp_m = model.miss(z, lam - h)
        mpp = (mp_p - mp_m) / (2.0 * h)
        mlz = (model.dm_dz(z, lam + h) - model.dm_dz(z, lam - h)) / (2.0 * h)
        det = mp * mlz - beta * mpp
        if abs(det) < 1e-300:
            raise DegenerateModel("double-root system is singular")
        lam += (-m * mlz + beta * mp) / det
        z += (-mp * mp + mpp * m) / det
    raise NoConvergence("double-root polish did not converge")


def branch_collision(model: CouplingModel, z_star: complex, lam_star: complex,
                     dz: complex) -> tuple[complex, complex]:
    """Puiseux branches of a colliding root pair for an outgoing step dz.

    Fits m ~ alpha*(lambda - lambda*)^2 + beta*(z - z*) at the double root and
    returns lambda* +/- sqrt(-beta*dz/alpha).

    Raises:
        NotARoot: lambda* is not a root at z* (|m| > 1e-6).
        DegenerateModel: |alpha| or |beta| < 1e-12 (higher-order contact).
    """
    z_star, lam_star, dz = complex(z_star), complex(lam_star), complex(dz)
    m, _ = model.miss(z_star, lam_star)
    if abs(m) > 1e-6:
        raise NotARoot(f"|m| = {abs(m):.3g} at the claimed collision point")
    h = 1e-4 * (1.0 + abs(lam_star))
    _, mp_p = model.miss(z_star, lam_star + h)
    _, mp_m = model.miss(z_star, lam_star - h)
    alpha = (mp_p - mp_m) / (4.0 * h)
    beta = model.dm_dz(z_star, lam_star)
    if abs(alpha) < 1e-12 or abs(beta) < 1e-12:
        raise DegenerateModel(
            f"local quadratic model degenerate: |alpha| = {abs(alpha):.3g}, |beta| = {abs(beta):.3g}")
    s = cmath.sqrt(-beta * dz / alpha)
    return lam_star + s, lam_star - s


def _order_branches(branches, lam_star, d_in):
    if d_in is None or abs(d_in) == 0.0:
        return sorted(branches, key=lambda b: (b.real, b.imag))
    u = d_in / abs(d_in)
    return sorted(branches, key=lambda b: -(u.conjugate() * (b - lam_star)).real)


def _refine_class_change(model, path, rcfg, band, t_a, lam_a, t_b, lam_b,
                         cls_a, cls_b):
    """All classification flips in (t_a, t_b], each bisected to 1e-6 in t.

    One accepted step can hop across more than one class region (an antibound
    leaving the real axis and crossing Re lambda = 0 within a single step),
    so walk forward flip by flip until the running class reaches cls_b.
    Returns a list of (t, lam, cls_from, cls_to).
    """
    out = []
    for _ in range(8):
        if cls_a is cls_b:
            break
        lo_t, lo_lam = t_a, lam_a
        hi_t, hi_lam = t_b, lam_b
        while hi_t - lo_t > 1e-6:
            t_m = 0.5 * (lo_t + hi_t)
            frac = (t_m - lo_t) / (hi_t - lo_t)
            seed = lo_lam + (hi_lam - lo_lam) * frac
            try:
                lam_m = newton_refine(model.analytic_fn(path.z_at(t_m)), seed, rcfg)
            except (NoConvergence, DerivativeVanished):
                break
            if classify(lam_m, band) is cls_a:
                lo_t, lo_lam = t_m, lam_m
            else:
                hi_t, hi_lam = t_m, lam_m
        cls_hi = classify(hi_lam, band)
        if cls_hi is cls_a:  # bisection stalled; close out with the endpoint
            out.append((t_b, lam_b, cls_a, cls_b))
            break
        out.append((hi_t, hi_lam, cls_a, cls_hi))
        t_a, lam_a, cls_a = hi_t, hi_lam, cls_hi
    return out


def trace(model: CouplingModel, path: PathSpec, seed: complex,
          cfg: TraceConfig = TraceConfig()) -> Trajectory:
    """Follow one root of m(lambda; z) along a polygonal coupling path.

    Predictor: first-order step with dlambda/dz = -(dm/dz)/(dm/dlambda), both
    derivatives exact. Corrector: Newton at the new z. Steps are halved (up to
    max_step_halvings) whenever the corrector fails, lands farther than 10x
    the predicted motion, or lands on a near-double root; persistent collapse
    at a collision switches to the local Puiseux model and continues on the
    branch aligned with the incoming direction (both branches logged).

    Events: ClassChange (t refined by bisection to 1e-6), Collision,
    Terminated (essential spectrum reached, trace stops), Diverged
    (|lambda| > divergence_radius, trace stops).

    Raises:
        SeedNotRoot: seed does not polish to a root at the path start.
        FreeOperatorOnPath: the potential vanishes identically somewhere on
            the path.
        StepCollapse: minimal step reached away from any collision; carries
            t, z, lambda and the partial trajectory.
    """
    kind, z_free = _free_operator_z(model)
    if kind == "always":
        raise FreeOperatorOnPath("potential vanishes identically at every coupling")
    if kind == "point" and _polyline_distance(z_free, path.vertices) <= 1e-9 * (1.0 + abs(z_free)):
        raise FreeOperatorOnPath(f"path passes through the free-operator point z = {z_free}")

    rcfg = cfg.root_config
    z0 = path.z_at(0.0)
    fn0 = model.analytic_fn(z0)
    try:
        lam = newton_refine(fn0, complex(seed), rcfg)
    except (NoConvergence, DerivativeVanished) as exc:
        raise SeedNotRoot(f"seed {seed} fails to polish at the path start: {exc}") from exc
    if abs(fn0(lam)[0]) > 1e-8:
        raise SeedNotRoot(f"seed {seed} polishes to residual above 1e-8")

    points = [TracePoint(0.0, z0, lam, classify(lam, cfg.band))]
    events: list[TraceEvent] = []
    traj = Trajectory(points, events)
    edges = path.n_edges
    if edges == 0:
        return traj
    base = 1.0 / path.steps_per_edge
    min_ds = base * 0.5 ** cfg.max_step_halvings

    def lam_detail(v: complex) -> dict:
        return {"re_lambda": v.real, "im_lambda": v.imag}

    for e in range(edges):
        za, zb = path.vertices[e], path.vertices[e + 1]
        s = 0.0
        ds = base
        while s < 1.0:
            ds = min(ds, 1.0 - s)
            z_cur = za + s * (zb - za)
            t_cur = (e + s) / edges
            if abs(lam) > cfg.divergence_radius:
                events.append(TraceEvent(t_cur, "Diverged", lam_detail(lam)))
                return traj
            _, mder = model.miss(z_cur, lam)
            at_collision = abs(mder) < cfg.collision_threshold
            accepted = False
            if not at_collision:
                beta = model.dm_dz(z_cur, lam)
                pred = -(beta / mder) * (zb - za) * ds
                if abs(lam + pred) > cfg.divergence_radius:
                    events.append(TraceEvent(
                        t_cur, "Diverged",
                        lam_detail(lam) | {"predicted_abs": abs(lam + pred)}))
                    return traj
                s_new = 1.0 if 1.0 - (s + ds) < 1e-12 else s + ds
                z_new = zb if s_new == 1.0 else za + s_new * (zb - za)
                fn_new = model.analytic_fn(z_new)
                lam_new = None
                try:
                    cand = newton_refine(fn_new, lam + pred, rcfg)
                    _, mder_new = fn_new(cand)
                    floor = 1e-9 * (1.0 + abs(lam))
                    if (abs(cand - lam) <= 10.0 * max(abs(pred), floor)
                            and abs(mder_new) >= cfg.collision_threshold):
                        lam_new = cand
                except (NoConvergence, DerivativeVanished):
                    lam_new = None
                if lam_new is not None:
                    t_new = (e + s_new) / edges
                    cls_new = classify(lam_new, cfg.band)
                    if cls_new is not points[-1].cls:
                        for t_ev, lam_ev, c_from, c_to in _refine_class_change(
                                model, path, rcfg, cfg.band,
                                t_cur, lam, t_new, lam_new, points[-1].cls, cls_new):
                            events.append(TraceEvent(t_ev, "ClassChange", {
                                "from": c_from.value, "to": c_to.value,
                            } | lam_detail(lam_ev)))
                    points.append(TracePoint(t_new, z_new, lam_new, cls_new))
                    if abs(lam_new) > cfg.divergence_radius:
                        events.append(TraceEvent(t_new, "Diverged", lam_detail(lam_new)))
                        return traj
                    lam = lam_new
                    s = s_new
                    ds = min(2.0 * ds, base)
                    accepted = True
            if accepted:
                continue
            if not at_collision and ds > min_ds:
                ds *= 0.5
                continue

            # the step has collapsed: collision, termination, or genuine stall
            outcome = _collapse(model, path, traj, cfg, rcfg, e, za, zb, s, lam, base)
            if outcome is None:
                if abs(lam.real) <= cfg.band:
                    events.append(TraceEvent(t_cur, "Terminated", lam_detail(lam)))
                    return traj
                raise StepCollapse(
                    f"continuation stalled at t = {t_cur:.6f}",
                    t=t_cur, z=z_cur, lam=lam, trajectory=traj)
            s, lam = outcome
            ds = base
    return traj


def _collapse(model, path, traj, cfg, rcfg, e, za, zb, s, lam, base):
    """Try to carry the trace through a root collision; None if this is not
    a collision the local model can handle."""
    edges = path.n_edges
    z_cur = za + s * (zb - za)
    try:
        z_star, lam_star = _polish_double(model, z_cur, lam)
    except (DegenerateModel, NoConvergence):
        return None
    if abs(lam_star - lam) > 0.1 * (1.0 + abs(lam)):
        return None
    edge = zb - za
    s_star = ((z_star - za) * edge.conjugate()).real / abs(edge) ** 2
    s_star = min(1.0, max(s, s_star))
    if abs(z_star - (za + s_star * edge)) > 1e-6 * (1.0 + abs(edge)):
        return None  # double root off the path: not an on-path collision
    t_star = (e + s_star) / edges

    detail = {
        "re_lambda": lam_star.real, "im_lambda": lam_star.imag,
        "re_z": z_star.real, "im_z": z_star.imag,
    }
    d_in = lam_star - traj.points[-1].lam
    if abs(d_in) < 1e-12 and len(traj.points) >= 2:
        d_in = traj.points[-1].lam - traj.points[-2].lam

    if s_star >= 1.0 - 1e-9:
        # collision sits on the edge vertex: land there, branch on the next edge
        traj.events.append(TraceEvent(t_star, "Collision", detail))
        cls = classify(lam_star, cfg.band)
        traj.points.append(TracePoint((e + 1.0) / edges, zb, lam_star, cls))
        return 1.0, lam_star

    s_out = min(1.0, s_star + base)
    z_out = zb if s_out == 1.0 else za + s_out * edge
    try:
        branches = branch_collision(model, z_star, lam_star, z_out - z_star)
    except (NotARoot, DegenerateModel):
        return None
    chosen = None
    fn_out = model.analytic_fn(z_out)
    for b in _order_branches(branches, lam_star, d_in):
        try:
            cand = newton_refine(fn_out, b, rcfg)
        except (NoConvergence, DerivativeVanished):
            continue
        chosen = cand
        break
    if chosen is None:
        return None
    detail["branches"] = [[b.real, b.imag] for b in branches]
    detail["re_lambda_out"] = chosen.real
    detail["im_lambda_out"] = chosen.imag
    traj.events.append(TraceEvent(t_star, "Collision", detail))
    cls = classify(chosen, cfg.band)
    t_out = (e + s_out) / edges
    if cls is not traj.points[-1].cls:
        traj.events.append(TraceEvent(t_out, "ClassChange", {
            "from": traj.points[-1].cls.value, "to": cls.value,
            "at_collision": True,
            "re_lambda": chosen.real, "im_lambda": chosen.imag}))
    traj.points.append(TracePoint(t_out, z_out, chosen, cls))
    return s_out, chosen


def kappa_rate(model: CouplingModel, z: complex, lam: complex,
               collision_threshold: float = 1e-6) -> complex:
    """dkappa/dz at a simple root: int V1 phi^2 / int phi^2 (tail included in
    the denominator; V1 is compactly supported so the numerator has none).

    Raises:
        NotARoot: |m| > 1e-8 at (z, lambda).
        NotSimple: |dm/dlambda| <= collision_threshold (colliding root).
    """
    z, lam = complex(z), complex(lam)
    m, mp = model.miss(z, lam)
    if abs(m) > 1e-8:
        raise NotARoot(f"|m| = {abs(m):.3g} at lambda = {lam}")
    if abs(mp) <= collision_threshold:
        raise NotSimple(f"|dm/dlambda| = {abs(mp):.3g}: root is not simple")
    return model.coupling_integral(z, lam) / model.norm_integral(z, lam)


@dataclass(frozen=True)
class ScanSample:
    """Roots found at one well depth; tracks[i] labels roots[i]'s track."""

    v: float
    roots: list[FoundRoot]
    tracks: list[int]


@dataclass(frozen=True)
class ScanEvent:
    v: float
    kind: str
    detail: dict


@dataclass
class EventLog:
    samples: list[ScanSample]
    events: list[ScanEvent]


def _match_tracks(prev: ScanSample, roots: list[FoundRoot], next_track: int):
    """Greedy nearest-lambda assignment; matches farther than 5x the median
    matched motion start new tracks."""
    tracks = [-1] * len(roots)
    if prev.roots and roots:
        pairs = []
        for i, r0 in enumerate(prev.roots):
            for j, r1 in enumerate(roots):
                pairs.append((abs(r1.lam - r0.lam), i, j))
        pairs.sort(key=lambda p: p[0])
        used_i: set[int] = set()
        used_j: set[int] = set()
        matched = []
        for d, i, j in pairs:
            if i in used_i or j in used_j:
                continue
            used_i.add(i)
            used_j.add(j)
            matched.append((d, i, j))
        med = float(np.median([d for d, _, _ in matched]))
        threshold = max(5.0 * med, 1e-9)
        for d, i, j in matched:
            if d <= threshold:
                tracks[j] = prev.tracks[i]
    for j in range(len(roots)):
        if tracks[j] < 0:
            tracks[j] = next_track
            next_track += 1
    return tracks, next_track


def _scan_polish(v: float, seed: complex, rcfg: RootConfig):
    try:
        return newton_refine(partial(char_fn, complex(v)), seed, rcfg)
    except (NoConvergence, DerivativeVanished):
        return None


def _refine_collision(fam, va, vb, seed, rcfg):
    """Bisect in v for the depth where the complex pair seeded at `seed`
    collapses onto the real axis; polish with the double-root system."""

    def still_complex(v: float):
        lam = _scan_polish(v, seed, rcfg)
        return None if lam is None else abs(lam.imag) > 1e-7

    if still_complex(va) is not True or still_complex(vb) is not False:
        return None
    lo, hi = va, vb
    while abs(hi - lo) > 1e-6:
        mid = 0.5 * (lo + hi)
        pm = still_complex(mid)
        if pm is None:
            break
        if pm:
            lo = mid
        else:
            hi = mid
    v_c = 0.5 * (lo + hi)
    lam_c = _scan_polish(v_c, seed, rcfg) or seed
    try:
        z_star, lam_star = _polish_double(fam, v_c, lam_c)
        if abs(z_star.imag) < 1e-6 and abs(z_star.real - v_c) < 1e-3:
            v_c, lam_c = z_star.real, lam_star
    except (DegenerateModel, NoConvergence):
        pass
    kap = -lam_c * lam_c
    return ScanEvent(float(v_c), "Collision", {
        "re_lambda": lam_c.real, "im_lambda": lam_c.imag,
        "re_kappa": kap.real, "im_kappa": kap.imag})


def _refine_crossing(va, vb, seed, rcfg):
    """Bisect in v for the depth where a real root's Re lambda changes sign."""
    lam_a = _scan_polish(va, seed, rcfg)
    lam_b = _scan_polish(vb, seed, rcfg)
    if lam_a is None or lam_b is None or lam_a.real * lam_b.real >= 0.0:
        return None
    sign_a = math.copysign(1.0, lam_a.real)
    lo, hi = va, vb
    cur = seed
    while abs(hi - lo) > 1e-6:
        mid = 0.5 * (lo + hi)
        lam_m = _scan_polish(mid, cur, rcfg)
        if lam_m is None:
            break
        cur = lam_m
        if math.copysign(1.0, lam_m.real) == sign_a:
            lo = mid
        else:
            hi = mid
    v_x = 0.5 * (lo + hi)
    lam_x = _scan_polish(v_x, cur, rcfg) or cur
    kap = -lam_x * lam_x
    return ScanEvent(float(v_x), "ZeroCrossing", {
        "re_lambda": lam_x.real, "im_lambda": lam_x.imag,
        "re_kappa": kap.real, "im_kappa": kap.imag})


def scan_real_well(v_from: float, v_to: float, samples: int, region: Region,
                   cfg: TraceConfig = TraceConfig()) -> EventLog:
    """Sweep the unit square well depth, tracking all roots in `region`.

    At each sampled depth the roots are located from scratch and matched to
    the previous sample by nearest-lambda assignment. Two event kinds are
    refined by bisection in v (to 1e-6) and a final double-root polish:
    Collision (a conjugate pair lands on the real axis) and ZeroCrossing
    (a real root's kappa crosses 0, i.e. Re lambda changes sign).

    Raises:
        FreeOperatorOnPath: 0 lies in [v_from, v_to].
    """
    v_from, v_to = float(v_from), float(v_to)
    if not (math.isfinite(v_from) and math.isfinite(v_to)) or v_from == v_to:
        raise ValueError("need finite, distinct v_from and v_to")
    if int(samples) < 2:
        raise ValueError("samples must be >= 2")
    if min(v_from, v_to) <= 0.0 <= max(v_from, v_to):
        raise FreeOperatorOnPath("depth range contains v = 0 (free operator)")
    rcfg = cfg.root_config
    fam = CouplingModel(StepPotential(((1.0, 0.0),)), StepPotential(((1.0, 1.0),)))
    out_samples: list[ScanSample] = []
    events: list[ScanEvent] = []
    next_track = 0
    prev: ScanSample | None = None
    for v in np.linspace(v_from, v_to, int(samples)):
        v = float(v)
        roots = seed_roots(partial(char_fn, complex(v)), region, rcfg)
        if prev is None:
            tracks = list(range(len(roots)))
            next_track = len(roots)
        else:
            tracks, next_track = _match_tracks(prev, roots, next_track)
        cur = ScanSample(v, roots, tracks)
        if prev is not None:
            new_lams = np.asarray([r.lam for r in roots]) if roots else None
            for r in prev.roots:
                if new_lams is None:
                    break
                nearest = complex(new_lams[np.argmin(np.abs(new_lams - r.lam))])
                if r.lam.imag > 1e-6 and abs(nearest.imag) <= 1e-6:
                    ev = _refine_collision(fam, prev.v, v, r.lam, rcfg)
                    if ev is not None:
                        events.append(ev)
                if (abs(r.lam.imag) <= 1e-6 and abs(nearest.imag) <= 1e-6
                        and r.lam.real * nearest.real < 0.0):
                    ev = _refine_crossing(prev.v, v, r.lam, rcfg)
                    if ev is not None:
                        events.append(ev)
        out_samples.append(cur)
        prev = cur
    # one physical event can be spotted from several tracks; keep one report
    unique: list[ScanEvent] = []
    for ev in events:
        if not any(ev.kind == u.kind and abs(ev.v - u.v) < 1e-5 for u in unique):
            unique.append(ev)
    return EventLog(out_samples, unique)

"""Command-line front end: find / trace / scan / count.

Jobs come from a JSON config (--config) with flag overrides; results go to
<prefix>.csv, <prefix>.events.json and <prefix>.report.json, plus a
<prefix>.png figure unless --no-plot is given. All floating-point output is
printed with 12 significant digits; the config echoed inside the report keeps
full precision so that re-ingesting it reproduces byte-identical CSV output.

Exit codes: 0 success, 2 configuration error (message names the offending
field), 3 numerical failure (message carries the error kind and the last
good state; a partial trace CSV is always accompanied by an error status
entry in the events JSON).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from functools import partial

from .continuation import (
    CouplingModel,
    PathSpec,
    TraceConfig,
    Trajectory,
    classify,
    scan_real_well,
    trace,
)
from .counting import bounds_report, well_counts
from .errors import ConfigError, NoConvergence, DerivativeVanished, SpectraceError, StepCollapse
from .rootfind import Region, RootConfig, newton_refine, seed_roots
from .shooting import SampledPotential, miss_sampled
from .stepwell import StepPotential, miss_piecewise

__all__ = ["run", "main", "JobConfig"]


# ---------------------------------------------------------------- formatting

def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _num(x, exact: bool) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return repr(float(x)) if exact else _fmt(x)


def _write_json_value(obj, out: list[str], ind: int, exact: bool) -> None:
    pad = "  " * ind
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for i, (k, v) in enumerate(items):
            out.append("  " * (ind + 1) + json.dumps(str(k)) + ": ")
            # the echoed input config keeps full float precision
            _write_json_value(v, out, ind + 1, exact or k == "config")
            out.append(",\n" if i + 1 < len(items) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not len(obj):
            out.append("[]")
            return
        plain = all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj)
        if plain and len(obj) <= 8:
            out.append("[" + ", ".join(_num(x, exact) for x in obj) + "]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append("  " * (ind + 1))
            _write_json_value(v, out, ind + 1, exact)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "]")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif obj is None:
        out.append("null")
    elif isinstance(obj, (int, float)):
        out.append(_num(obj, exact))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _dump_json(path: str, obj) -> None:
    out: list[str] = []
    _write_json_value(obj, out, 0, False)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("".join(out) + "\n")


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


# ------------------------------------------------------------ flag parsing

_VALUE_FLAGS = {"--config", "--out", "--well", "--region", "--steps", "--seed",
                "--path", "--from", "--to", "--samples"}


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Join '--flag -6,-20,...' into '--flag=-6,-20,...' so argparse does not
    mistake negative values for options."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok in _VALUE_FLAGS and i + 1 < len(argv)
                and argv[i + 1].startswith("-") and len(argv[i + 1]) > 1
                and (argv[i + 1][1].isdigit() or argv[i + 1][1] in ".-")):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _floats(text: str, fieldname: str, n: int) -> list[float]:
    parts = [p for p in text.split(",") if p != ""]
    if len(parts) != n:
        raise ConfigError(fieldname, f"expected {n} comma-separated numbers, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise ConfigError(fieldname, f"bad number in {text!r}") from exc


def _complex_flag(text: str, fieldname: str) -> complex:
    parts = [p for p in text.split(",") if p != ""]
    if len(parts) == 1:
        parts.append("0")
    if len(parts) != 2:
        raise ConfigError(fieldname, f"expected re,im, got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise ConfigError(fieldname, f"bad number in {text!r}") from exc


def _region_flag(text: str) -> Region:
    re0, im0, re1, im1 = _floats(text, "region", 4)
    try:
        return Region(complex(re0, im0), complex(re1, im1))
    except ValueError as exc:
        raise ConfigError("region", str(exc)) from exc


def _path_flag(text: str) -> list[complex]:
    verts = [_complex_flag(part, "path") for part in text.split(";") if part != ""]
    if not verts:
        raise ConfigError("path", "no vertices given")
    return verts


# ----------------------------------------------------------- config objects

def _potential_from_json(obj, fieldname: str):
    if not isinstance(obj, dict):
        raise ConfigError(fieldname, "expected a JSON object")
    try:
        if "segments" in obj:
            return StepPotential.from_json(obj)
        if "values" in obj:
            return SampledPotential.from_json(obj)
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError(fieldname, f"invalid potential: {exc}") from exc
    raise ConfigError(fieldname, "need 'segments' (step) or 'a' + 'values' (sampled)")


def _region_from_json(obj) -> Region:
    try:
        if isinstance(obj, list) and len(obj) == 4:
            return Region(complex(obj[0], obj[1]), complex(obj[2], obj[3]))
        if isinstance(obj, dict):
            return Region(complex(*obj["lo"]), complex(*obj["hi"]))
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError("region", str(exc)) from exc
    raise ConfigError("region", "expected [re0, im0, re1, im1] or {'lo': .., 'hi': ..}")


def _complex_from_json(obj, fieldname: str) -> complex:
    try:
        if isinstance(obj, (int, float)):
            return complex(obj)
        if isinstance(obj, list) and len(obj) == 2:
            return complex(obj[0], obj[1])
    except (ValueError, TypeError) as exc:
        raise ConfigError(fieldname, str(exc)) from exc
    raise ConfigError(fieldname, "expected a number or [re, im]")


_TRACE_KEYS = {"band", "newton_tol", "collision_threshold", "max_step_halvings",
               "divergence_radius"}
_ROOT_KEYS = {"newton_tol", "max_iter", "min_separation", "max_depth"}
_MODEL_KEYS = {"rk_steps"}


@dataclass
class JobConfig:
    """Fully resolved job: config file merged with flag overrides."""

    command: str
    out: str
    potential: StepPotential | SampledPotential | None = None
    perturbation: StepPotential | SampledPotential | None = None
    path: PathSpec | None = None
    region: Region | None = None
    seed_lambda: complex | None = None
    seed_kappa: complex | None = None
    v_from: float | None = None
    v_to: float | None = None
    samples: int = 201
    steps: int | None = None
    k_sq: float | None = None
    well: float | None = None
    no_plot: bool = False
    overrides: dict = field(default_factory=dict)

    def trace_config(self) -> TraceConfig:
        try:
            return TraceConfig(**{k: v for k, v in self.overrides.items() if k in _TRACE_KEYS})
        except (TypeError, ValueError) as exc:
            raise ConfigError("overrides", str(exc)) from exc

    def root_config(self) -> RootConfig:
        try:
            return RootConfig(**{k: v for k, v in self.overrides.items() if k in _ROOT_KEYS})
        except (TypeError, ValueError) as exc:
            raise ConfigError("overrides", str(exc)) from exc

    def echo(self) -> dict:
        d: dict = {"command": self.command}
        if self.potential is not None:
            d["potential"] = self.potential.to_json()
        if self.perturbation is not None:
            d["perturbation"] = self.perturbation.to_json()
        if self.path is not None:
            d["path"] = self.path.to_json()
        if self.region is not None:
            d["region"] = {"lo": _pair(self.region.lo), "hi": _pair(self.region.hi)}
        if self.seed_lambda is not None:
            d["seed_lambda"] = _pair(self.seed_lambda)
        if self.seed_kappa is not None:
            d["seed_kappa"] = _pair(self.seed_kappa)
        if self.v_from is not None:
            d["v_from"] = self.v_from
            d["v_to"] = self.v_to
            d["samples"] = self.samples
        if self.steps is not None:
            d["steps"] = self.steps
        if self.k_sq is not None:
            d["k_sq"] = self.k_sq
        if self.overrides:
            d["overrides"] = dict(self.overrides)
        d["no_plot"] = self.no_plot
        d["output_prefix"] = self.out
        return d


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config", "top-level JSON must be an object")
    # a report file carries its input under "config"; accept it directly
    if isinstance(data.get("config"), dict):
        data = data["config"]
    return data


def _resolve(ns: argparse.Namespace) -> JobConfig:
    data = _load_config_file(ns.config) if ns.config else {}
    command = ns.command
    if "command" in data and data["command"] != command:
        raise ConfigError("command", f"config file is for {data['command']!r}, not {command!r}")

    job = JobConfig(command=command, out="")

    if "potential" in data:
        job.potential = _potential_from_json(data["potential"], "potential")
    if "perturbation" in data:
        job.perturbation = _potential_from_json(data["perturbation"], "perturbation")
    if "path" in data:
        try:
            job.path = PathSpec.from_json(data["path"])
        except (ValueError, TypeError, KeyError) as exc:
            raise ConfigError("path", str(exc)) from exc
    if "region" in data:
        job.region = _region_from_json(data["region"])
    if "seed_lambda" in data:
        job.seed_lambda = _complex_from_json(data["seed_lambda"], "seed_lambda")
    if "seed_kappa" in data:
        job.seed_kappa = _complex_from_json(data["seed_kappa"], "seed_kappa")
    for key in ("v_from", "v_to", "well", "k_sq"):
        if key in data:
            try:
                setattr(job, key, float(data[key]))
            except (TypeError, ValueError) as exc:
                raise ConfigError(key, "expected a number") from exc
    for key in ("samples", "steps"):
        if key in data:
            try:
                setattr(job, key, int(data[key]))
            except (TypeError, ValueError) as exc:
                raise ConfigError(key, "expected an integer") from exc
    if "no_plot" in data:
        job.no_plot = bool(data["no_plot"])
    if "overrides" in data:
        if not isinstance(data["overrides"], dict):
            raise ConfigError("overrides", "expected an object")
        job.overrides = dict(data["overrides"])
    job.out = data.get("output_prefix") or ""

    # flags override config fields
    if getattr(ns, "well", None) is not None:
        job.well = ns.well
    if getattr(ns, "region", None) is not None:
        job.region = _region_flag(ns.region)
    if getattr(ns, "seed", None) is not None:
        job.seed_kappa = _complex_flag(ns.seed, "seed")
        job.seed_lambda = None
    if getattr(ns, "path", None) is not None:
        steps = job.path.steps_per_edge if job.path is not None else 200
        try:
            job.path = PathSpec(tuple(_path_flag(ns.path)), steps)
        except ValueError as exc:
            raise ConfigError("path", str(exc)) from exc
    if getattr(ns, "steps", None) is not None:
        job.steps = ns.steps
    if getattr(ns, "samples", None) is not None:
        job.samples = ns.samples
    if getattr(ns, "v_from", None) is not None:
        job.v_from = ns.v_from
    if getattr(ns, "v_to", None) is not None:
        job.v_to = ns.v_to
    if ns.out is not None:
        job.out = ns.out
    if not job.out:
        job.out = command
    if ns.no_plot:
        job.no_plot = True

    unknown = set(job.overrides) - (_TRACE_KEYS | _ROOT_KEYS | _MODEL_KEYS)
    if unknown:
        raise ConfigError("overrides", f"unknown keys: {sorted(unknown)}")

    _finish_resolution(job)
    return job


def _finish_resolution(job: JobConfig) -> None:
    """Command-specific required fields, --well sugar, steps plumbing."""
    cmd = job.command
    if cmd in ("find", "trace"):
        if job.potential is None:
            if job.well is None:
                raise ConfigError("potential", f"{cmd} needs a potential (or --well)")
            job.potential = StepPotential(((1.0, complex(job.well)),))
        if job.steps is not None and isinstance(job.potential, SampledPotential):
            if job.steps <= 0 or job.steps % (job.potential.n - 1):
                raise ConfigError("steps", f"must be a positive multiple of "
                                           f"{job.potential.n - 1} grid intervals")
            job.overrides.setdefault("rk_steps", job.steps)
    if cmd == "find":
        if job.region is None:
            raise ConfigError("region", "find needs a region")
    elif cmd == "trace":
        if job.perturbation is None:
            if isinstance(job.potential, StepPotential):
                job.perturbation = StepPotential(((job.potential.support_end, 1.0),))
            else:
                raise ConfigError("perturbation", "trace on a sampled potential needs one")
        if job.path is None:
            raise ConfigError("path", "trace needs a path")
        if job.seed_lambda is None and job.seed_kappa is None:
            raise ConfigError("seed", "trace needs seed_lambda or seed_kappa")
        if job.steps is not None and isinstance(job.potential, StepPotential):
            job.path = PathSpec(job.path.vertices, job.steps)
    elif cmd == "scan":
        if job.v_from is None or job.v_to is None:
            raise ConfigError("v_from", "scan needs --from and --to depths")
        if job.region is None:
            raise ConfigError("region", "scan needs a region")
        if job.samples < 2:
            raise ConfigError("samples", "need at least 2 samples")
    elif cmd == "count":
        if job.k_sq is None:
            if job.well is None:
                raise ConfigError("well", "count needs --well (depth of the unit well)")
            job.k_sq = abs(job.well)
        if not job.k_sq > 0:
            raise ConfigError("well", "well depth must be nonzero")


# ------------------------------------------------------------------ running

def _default_steps(p: SampledPotential) -> int:
    m = p.n - 1
    return m * max(1, -(-1000 // m))


def _analytic_fn(job: JobConfig):
    pot = job.potential
    if isinstance(pot, StepPotential):
        return partial(miss_piecewise, pot)
    steps = job.overrides.get("rk_steps") or _default_steps(pot)

    def fn(lam):
        return miss_sampled(pot, lam, steps)

    return fn


def _root_row(lam: complex, band: float) -> list[str]:
    kap = -lam * lam
    return [_fmt(lam.real), _fmt(lam.imag), _fmt(kap.real), _fmt(kap.imag),
            classify(lam, band).value]


def _maybe_figure(job: JobConfig, render) -> str | None:
    if job.no_plot:
        return None
    # imported lazily so --no-plot runs never pay the matplotlib cost
    from . import plotting

    return render(plotting, f"{job.out}.png")


def _run_find(job: JobConfig) -> None:
    tcfg = job.trace_config()
    rcfg = job.root_config()
    roots = seed_roots(_analytic_fn(job), job.region, rcfg)
    _write_csv(f"{job.out}.csv",
               ["re_lambda", "im_lambda", "re_kappa", "im_kappa", "class"],
               [_root_row(r.lam, tcfg.band) for r in roots])
    _dump_json(f"{job.out}.events.json", {"events": [], "status": "complete"})
    fig = _maybe_figure(job, lambda pl, path: pl.save_find_figure(
        path, [(r.lam, -r.lam * r.lam, classify(r.lam, tcfg.band).value) for r in roots]))
    _dump_json(f"{job.out}.report.json", {
        "command": "find",
        "config": job.echo(),
        "roots": [{
            "re_lambda": r.lam.real, "im_lambda": r.lam.imag,
            "re_kappa": (-r.lam * r.lam).real, "im_kappa": (-r.lam * r.lam).imag,
            "class": classify(r.lam, tcfg.band).value,
            "count": r.count, "converged": r.converged, "residual": r.residual,
        } for r in roots],
        "figure": fig,
    })


def _seed_lambda(job: JobConfig, model: CouplingModel, rcfg: RootConfig) -> complex:
    if job.seed_lambda is not None:
        return job.seed_lambda
    kap = job.seed_kappa
    root = (-kap) ** 0.5
    z0 = job.path.z_at(0.0)
    fn = model.analytic_fn(z0)
    best, best_res = None, math.inf
    for cand in (root, -root):
        try:
            lam = newton_refine(fn, cand, rcfg)
        except (NoConvergence, DerivativeVanished):
            continue
        res = abs(fn(lam)[0]) + abs(lam - cand)  # prefer the nearer square root
        if res < best_res:
            best, best_res = lam, res
    return best if best is not None else root


def _trace_rows(traj: Trajectory) -> list[list[str]]:
    events = sorted(traj.events, key=lambda ev: ev.t)
    rows = []
    k = 0
    for i, p in enumerate(points := traj.points):
        kinds = []
        limit = p.t + 1e-15 if i + 1 < len(points) else math.inf
        while k < len(events) and events[k].t <= limit:
            kinds.append(events[k].kind)
            k += 1
        kap = p.kappa
        rows.append([_fmt(p.t), _fmt(p.z.real), _fmt(p.z.imag),
                     _fmt(p.lam.real), _fmt(p.lam.imag),
                     _fmt(kap.real), _fmt(kap.imag), p.cls.value, ";".join(kinds)])
    return rows


_TRACE_HEADER = ["t", "re_z", "im_z", "re_lambda", "im_lambda",
                 "re_kappa", "im_kappa", "class", "event"]


def _write_trace_outputs(job: JobConfig, traj: Trajectory, status) -> None:
    _write_csv(f"{job.out}.csv", _TRACE_HEADER, _trace_rows(traj))
    _dump_json(f"{job.out}.events.json", {
        "events": [{"t": ev.t, "kind": ev.kind, "detail": ev.detail} for ev in traj.events],
        "status": status,
    })
    fig = _maybe_figure(job, lambda pl, path: pl.save_trace_figure(path, traj))
    last = traj.final
    _dump_json(f"{job.out}.report.json", {
        "command": "trace",
        "config": job.echo(),
        "status": status,
        "points": len(traj.points),
        "final": {
            "t": last.t, "re_z": last.z.real, "im_z": last.z.imag,
            "re_lambda": last.lam.real, "im_lambda": last.lam.imag,
            "re_kappa": last.kappa.real, "im_kappa": last.kappa.imag,
            "class": last.cls.value,
        },
        "events": [{"t": ev.t, "kind": ev.kind} for ev in traj.events],
        "figure": fig,
    })


def _run_trace(job: JobConfig) -> None:
    tcfg = job.trace_config()
    rcfg = job.root_config()
    model = CouplingModel(job.potential, job.perturbation,
                          rk_steps=job.overrides.get("rk_steps"))
    seed = _seed_lambda(job, model, rcfg)
    try:
        traj = trace(model, job.path, seed, tcfg)
    except StepCollapse as exc:
        if exc.trajectory is not None:
            _write_trace_outputs(job, exc.trajectory, {
                "error": "StepCollapse", "message": str(exc),
                "t": exc.t, "re_z": exc.z.real, "im_z": exc.z.imag,
                "re_lambda": exc.lam.real, "im_lambda": exc.lam.imag,
            })
        raise
    _write_trace_outputs(job, traj, "complete")


def _run_scan(job: JobConfig) -> None:
    tcfg = job.trace_config()
    log = scan_real_well(job.v_from, job.v_to, job.samples, job.region, tcfg)
    rows = []
    for sample in log.samples:
        for root, track in zip(sample.roots, sample.tracks):
            kap = -root.lam * root.lam
            rows.append([_fmt(sample.v), str(track),
                         _fmt(root.lam.real), _fmt(root.lam.imag),
                         _fmt(kap.real), _fmt(kap.imag),
                         classify(root.lam, tcfg.band).value])
    _write_csv(f"{job.out}.csv",
               ["v", "track", "re_lambda", "im_lambda", "re_kappa", "im_kappa", "class"],
               rows)
    events = [{"v": ev.v, "kind": ev.kind, "detail": ev.detail} for ev in log.events]
    _dump_json(f"{job.out}.events.json", {"events": events, "status": "complete"})
    fig = _maybe_figure(job, lambda pl, path: pl.save_scan_figure(path, log))
    _dump_json(f"{job.out}.report.json", {
        "command": "scan",
        "config": job.echo(),
        "samples": len(log.samples),
        "root_counts": [len(s.roots) for s in log.samples],
        "events": events,
        "figure": fig,
    })


def _run_count(job: JobConfig) -> None:
    wc = well_counts(job.k_sq)
    br = bounds_report(job.k_sq)
    fig = _maybe_figure(job, lambda pl, path: pl.save_count_figure(path, wc, br))
    _dump_json(f"{job.out}.report.json", {
        "command": "count",
        "config": job.echo(),
        "counts": {"k_sq": wc.k_sq, "n_eigen": wc.n_eigen,
                   "n_antibound": wc.n_antibound},
        "bounds": {"frank": br.frank, "bargmann": br.bargmann,
                   "count_formula": br.count_formula,
                   "interval_lo": br.interval_lo, "interval_hi": br.interval_hi},
        "figure": fig,
    })


# -------------------------------------------------------------------- entry

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectrace",
        description="Eigenvalues, resonances and their coupling trajectories "
                    "for half-line Schrodinger operators.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", metavar="FILE", help="JobConfig JSON file")
        sp.add_argument("--out", metavar="PREFIX", help="output file prefix")
        sp.add_argument("--no-plot", action="store_true", help="skip the .png figure")

    sp = sub.add_parser("find", help="locate all roots in a region")
    common(sp)
    sp.add_argument("--well", type=float, help="unit square well depth v")
    sp.add_argument("--region", help="re0,im0,re1,im1 rectangle in the lambda plane")
    sp.add_argument("--steps", type=int, help="RK4 steps (sampled potentials)")

    sp = sub.add_parser("trace", help="continue a root along a coupling path")
    common(sp)
    sp.add_argument("--well", type=float, help="unit square well depth v")
    sp.add_argument("--seed", help="re,im of kappa at the path start")
    sp.add_argument("--path", help="path vertices re,im;re,im;...")
    sp.add_argument("--steps", type=int, help="steps per path edge")

    sp = sub.add_parser("scan", help="sweep the unit well depth and log events")
    common(sp)
    sp.add_argument("--from", dest="v_from", type=float, help="starting depth")
    sp.add_argument("--to", dest="v_to", type=float, help="final depth")
    sp.add_argument("--samples", type=int, help="number of depth samples")
    sp.add_argument("--region", help="re0,im0,re1,im1 rectangle in the lambda plane")

    sp = sub.add_parser("count", help="closed-form counts and bounds for a well")
    common(sp)
    sp.add_argument("--well", type=float, help="well depth v (uses |v|)")
    return parser


_RUNNERS = {"find": _run_find, "trace": _run_trace, "scan": _run_scan,
            "count": _run_count}


def run(argv: list[str]) -> int:
    try:
        ns = _build_parser().parse_args(_merge_negative_values(list(argv)))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else (0 if exc.code is None else 2)
    try:
        job = _resolve(ns)
        _RUNNERS[job.command](job)
    except ConfigError as exc:
        print(f"spectrace: config error: {exc}", file=sys.stderr)
        return 2
    except StepCollapse as exc:
        print(f"spectrace: numerical failure: StepCollapse: {exc} "
              f"(last good state t = {_fmt(exc.t)}, z = {_fmt(exc.z.real)}"
              f"{exc.z.imag:+.12g}j, lambda = {_fmt(exc.lam.real)}"
              f"{exc.lam.imag:+.12g}j)", file=sys.stderr)
        return 3
    except SpectraceError as exc:
        print(f"spectrace: numerical failure: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 3
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

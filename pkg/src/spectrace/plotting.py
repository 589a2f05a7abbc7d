"""Figure rendering for find / trace / scan / count outputs.

Renders alongside the delimited output files; uses the Agg backend so runs
are headless-safe. Figures are diagnostic companions, the CSV/JSON files stay
the authoritative record.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_CLASS_COLORS = {
    "Eigenvalue": "tab:blue",
    "Antibound": "tab:orange",
    "Resonance": "tab:red",
    "SpectralSingularity": "tab:green",
}


def _scatter_by_class(ax, xs, ys, classes):
    seen = {}
    for x, y, c in zip(xs, ys, classes):
        seen.setdefault(c, ([], []))
        seen[c][0].append(x)
        seen[c][1].append(y)
    for cls, (x, y) in sorted(seen.items()):
        ax.scatter(x, y, s=28, color=_CLASS_COLORS.get(cls, "black"), label=cls)
    if seen:
        ax.legend(fontsize=8)


def save_find_figure(path: str, rows) -> str:
    """rows: (lam, kappa, class_name) triples."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    classes = [c for _, _, c in rows]
    _scatter_by_class(ax1, [l.real for l, _, _ in rows], [l.imag for l, _, _ in rows], classes)
    _scatter_by_class(ax2, [k.real for _, k, _ in rows], [k.imag for _, k, _ in rows], classes)
    for ax, name in ((ax1, r"$\lambda$ plane"), (ax2, r"$\kappa$ plane")):
        ax.axhline(0.0, color="0.8", lw=0.8, zorder=0)
        ax.axvline(0.0, color="0.8", lw=0.8, zorder=0)
        ax.set_title(name)
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def save_trace_figure(path: str, trajectory) -> str:
    pts = trajectory.points
    lam = [p.lam for p in pts]
    kap = [p.kappa for p in pts]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    ax1.plot([v.real for v in lam], [v.imag for v in lam], "-", lw=1.2, color="tab:blue")
    ax2.plot([v.real for v in kap], [v.imag for v in kap], "-", lw=1.2, color="tab:red")
    for ax, vals, name in ((ax1, lam, r"$\lambda(t)$"), (ax2, kap, r"$\kappa(t)$")):
        ax.scatter([vals[0].real], [vals[0].imag], marker="o", color="black", zorder=3, label="start")
        ax.scatter([vals[-1].real], [vals[-1].imag], marker="x", color="black", zorder=3, label="end")
        ax.axhline(0.0, color="0.8", lw=0.8, zorder=0)
        ax.axvline(0.0, color="0.8", lw=0.8, zorder=0)
        ax.set_title(name)
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
        ax.legend(fontsize=8)
    for ev in trajectory.events:
        lam_ev = ev.detail.get("re_lambda"), ev.detail.get("im_lambda")
        if lam_ev[0] is not None:
            ax1.scatter([lam_ev[0]], [lam_ev[1]], marker="*", s=70, color="tab:green", zorder=4)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def save_scan_figure(path: str, log) -> str:
    tracks: dict[int, list[tuple[float, complex]]] = {}
    for sample in log.samples:
        for root, track in zip(sample.roots, sample.tracks):
            tracks.setdefault(track, []).append((sample.v, root.lam))
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    for track in sorted(tracks):
        seq = tracks[track]
        vs = [v for v, _ in seq]
        ax1.plot(vs, [l.real for _, l in seq], "-", lw=1.0)
        ax2.plot(vs, [l.imag for _, l in seq], "-", lw=1.0)
    for ev in log.events:
        color = "tab:red" if ev.kind == "Collision" else "tab:green"
        for ax in (ax1, ax2):
            ax.axvline(ev.v, color=color, lw=0.9, ls="--")
    ax1.set_ylabel(r"Re $\lambda$")
    ax2.set_ylabel(r"Im $\lambda$")
    for ax in (ax1, ax2):
        ax.set_xlabel("well depth v")
        ax.axhline(0.0, color="0.8", lw=0.8, zorder=0)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def save_count_figure(path: str, counts, bounds) -> str:
    names = ["exact eigen", "count formula", "bargmann", "frank"]
    values = [counts.n_eigen, bounds.count_formula, bounds.bargmann, bounds.frank]
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.bar(names, values, color=["tab:blue", "tab:cyan", "tab:orange", "tab:red"])
    ax.set_title(f"discrete spectrum size vs bounds, k^2 = {counts.k_sq:g}")
    for i, v in enumerate(values):
        ax.text(i, v, f"{v:g}", ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path

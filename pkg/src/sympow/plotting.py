"""Matplotlib figures for verification reports and planar Newton polygons.

Everything renders off-screen (Agg) straight to files.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import SympowError  # noqa: E402
from .monomial import MonomialIdeal, multiplier_ideal_monomial, newton_polyhedron  # noqa: E402

STYLE = {
    "figure.dpi": 110,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
}


def verification_figures(report, directory) -> list:
    """Pass/fail counts per kind and per-case wall time; returns the written paths."""
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    counts = report.counts
    kinds = sorted(counts)
    paths = []
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6, 3.2))
        passed = [counts[k]["pass"] for k in kinds]
        failed = [counts[k]["fail"] for k in kinds]
        ax.bar(kinds, passed, color="#4c8c4a", label="pass")
        ax.bar(kinds, failed, bottom=passed, color="#c0392b", label="fail")
        ax.set_ylabel("cases")
        ax.set_title("verification verdicts by kind")
        ax.tick_params(axis="x", labelrotation=20)
        ax.legend(frameon=False)
        fig.tight_layout()
        path = out_dir / "verify_counts.png"
        fig.savefig(path)
        plt.close(fig)
        paths.append(path)

        fig, ax = plt.subplots(figsize=(6, 3.2))
        for i, k in enumerate(kinds):
            times = [max(r.seconds, 1e-6) for r in report.results if r.kind == k]
            colors = ["#4c8c4a" if r.verdict == "pass" else "#c0392b" for r in report.results if r.kind == k]
            ax.scatter([i] * len(times), times, s=10, c=colors, alpha=0.7)
        ax.set_xticks(range(len(kinds)), kinds, rotation=20)
        ax.set_yscale("log")
        ax.set_ylabel("seconds")
        ax.set_title("wall time per case")
        fig.tight_layout()
        path = out_dir / "verify_times.png"
        fig.savefig(path)
        plt.close(fig)
        paths.append(path)
    return paths


def _boundary(gens: list) -> list:
    """Vertices of the lower-left boundary of conv(gens) + R^2_{>=0}, by x."""
    pts = sorted(gens)
    hull: list = []
    for p in pts:
        if hull and p[1] >= hull[-1][1]:
            continue
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_polygon_figure(M: MonomialIdeal, t, path) -> Path:
    """Newton polygon of a 2-variable monomial ideal, its t-scaling and the
    exponents of the multiplier ideal J(M^t)."""
    if M.d != 2:
        raise SympowError("Newton polygon plots need exactly two variables")
    t = Fraction(t)
    newton_polyhedron(M)  # validates
    J = multiplier_ideal_monomial(M, t)
    gens = sorted(M.exponents)
    verts = _boundary(gens)
    span = max(max(a for e in gens for a in e) * max(t, 1), 1) + 1.5
    names = M.ring.variables
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 4.5))
        for scale, color, label in ((1, "#2c6fbb", "Newt(M)"), (t, "#e67e22", f"{t}*Newt(M)")):
            xs = [float(scale * v[0]) for v in verts]
            ys = [float(scale * v[1]) for v in verts]
            ax.plot([xs[0]] + xs + [float(span)], [float(span)] + ys + [ys[-1]], color=color, label=label)
            if scale == 1:
                ax.fill_between([xs[0]] + xs + [float(span)], [float(span)] + ys + [ys[-1]], float(span),
                                color=color, alpha=0.08)
        gx, gy = zip(*gens)
        ax.scatter(gx, gy, color="#2c6fbb", zorder=3, label="generators")
        pts = [(a, b) for a in range(int(span) + 1) for b in range(int(span) + 1) if J.contains_exponent((a, b))]
        if pts:
            jx, jy = zip(*pts)
            ax.scatter(jx, jy, marker="s", s=12, color="#27ae60", alpha=0.6, label=f"J(M^{t})")
        ax.set_xlim(-0.3, float(span))
        ax.set_ylim(-0.3, float(span))
        ax.set_xlabel(f"exponent of {names[0]}")
        ax.set_ylabel(f"exponent of {names[1]}")
        ax.set_aspect("equal")
        ax.set_title(f"{M}, t = {t}")
        ax.legend(frameon=False, loc="upper right", fontsize=7)
        fig.tight_layout()
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path)
        plt.close(fig)
    return path

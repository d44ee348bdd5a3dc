"""Summary figures rendered next to each experiment's CSV.

Everything here draws from ExperimentResult.diagnostics, not from the
raw rows, so the plots stay cheap even for paper-scale runs.  The Agg
backend is forced before pyplot loads; these are file renderers, never
interactive windows.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .experiments import ExperimentResult
from .stats import qq_points

__all__ = ["render_figures"]

_STYLE = {
    "p1_pi4": dict(color="tab:orange", marker="s", label="p=1 (pi/4 corrected)"),
    "p1": dict(color="tab:red", marker="v", label="p=1 (raw)"),
    "p2": dict(color="tab:blue", marker="o", label="p=2, fixed m"),
    "p2_mauto": dict(color="tab:green", marker="^", label="p=2, data-driven m"),
}


def render_figures(result: ExperimentResult, directory: str | Path) -> list[Path]:
    """Write the PNGs for one experiment; returns the paths created."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    name = result.schema.split("/", 1)[0]
    renderer = _RENDERERS[name]
    return renderer(result, directory, name)


def _finish(fig, path: Path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _aniso_angle(result: ExperimentResult, directory: Path, name: str) -> list[Path]:
    d = result.diagnostics
    thetas = np.asarray(d["thetas"])
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for est, errs in d["mean_error"].items():
        ax.plot(thetas, errs, **_STYLE[est])
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel("rotation angle (rad)")
    ax.set_ylabel("mean error vs contour proxy")
    ax.set_xticks(thetas)
    ax.set_xticklabels([f"{t / math.pi:.3g}π" if t else "0" for t in thetas])
    ax.legend(fontsize=8)
    path = directory / f"{name}_mean_error.png"
    _finish(fig, path)
    return [path]


def _convergence(result: ExperimentResult, directory: Path, name: str) -> list[Path]:
    d = result.diagnostics
    eps = np.asarray(d["epsilon"])
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for est, maes in d["mae"].items():
        ax.loglog(eps, maes, **_STYLE[est])
    ax.invert_xaxis()  # refinement runs right-to-left otherwise
    ax.set_xlabel("grid spacing")
    ax.set_ylabel("mean absolute error vs contour proxy")
    ax.legend(fontsize=8)
    path = directory / f"{name}_mae.png"
    _finish(fig, path)
    return [path]


def _clt(result: ExperimentResult, directory: Path, name: str) -> list[Path]:
    d = result.diagnostics
    levels = d["levels"]
    by_level: dict[float, list[float]] = {u: [] for u in levels}
    for row in result.rows:
        if row[2] == "p2":
            by_level[row[1]].append(row[4])
    fig, axes = plt.subplots(1, len(levels), figsize=(3.2 * len(levels), 3.4), squeeze=False)
    for ax, u in zip(axes[0], levels):
        pts = qq_points(np.asarray(by_level[u]))
        ax.plot(pts[:, 0], pts[:, 1], ".", ms=3, color="tab:blue")
        lo, hi = pts[:, 1].min(), pts[:, 1].max()
        mu, sd = np.mean(by_level[u]), np.std(by_level[u], ddof=1)
        qs = np.array([pts[0, 0], pts[-1, 0]])
        ax.plot(qs, mu + sd * qs, color="0.4", lw=0.8)
        ax.set_title(f"u = {u:g} (SW p = {d['sw_p'][levels.index(u)]:.3f})", fontsize=9)
        ax.set_xlabel("normal quantile")
    axes[0][0].set_ylabel("estimate")
    qq_path = directory / f"{name}_qq.png"
    _finish(fig, qq_path)

    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    ax.plot(levels, d["expected"], "k--", lw=1.0, label="closed form")
    ax.errorbar(
        levels, d["sample_mean"], yerr=d["sample_sd"],
        fmt="o", color="tab:green", ms=4, capsize=3, label="sample mean +/- sd",
    )
    ax.set_xlabel("level")
    ax.set_ylabel("perimeter")
    ax.legend(fontsize=8)
    mean_path = directory / f"{name}_means.png"
    _finish(fig, mean_path)
    return [qq_path, mean_path]


def _mselect(result: ExperimentResult, directory: Path, name: str) -> list[Path]:
    d = result.diagnostics
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(d["m_grid"], d["mape_by_m"], **_STYLE["p2"])
    ax.axhline(d["mape_p1"], ls=":", **{k: v for k, v in _STYLE["p1_pi4"].items() if k != "marker"})
    ax.axhline(d["mape_auto"], ls="--", **{k: v for k, v in _STYLE["p2_mauto"].items() if k != "marker"})
    ax.axvline(d["m_mode"], color="0.6", lw=0.8)
    ax.set_xscale("log")
    ax.set_xlabel("block side m")
    ax.set_ylabel("MAPE vs contour proxy (%)")
    ax.legend(fontsize=8)
    path = directory / f"{name}_mape.png"
    _finish(fig, path)
    return [path]


def _level_sweep(result: ExperimentResult, directory: Path, name: str) -> list[Path]:
    d = result.diagnostics
    levels = np.asarray(d["levels"])
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(levels, d["expected"], "k--", lw=1.0, label="closed form")
    ax.plot(levels, d["mean_proxy"], color="0.5", lw=1.0, label="contour proxy")
    for est, means in d["mean_estimate"].items():
        ax.plot(levels, means, ms=4, **_STYLE[est])
    ax.set_xlabel("level")
    ax.set_ylabel("mean perimeter")
    ax.legend(fontsize=8)
    path = directory / f"{name}_means.png"
    _finish(fig, path)
    return [path]


_RENDERERS = {
    "aniso-angle": _aniso_angle,
    "convergence": _convergence,
    "clt": _clt,
    "mselect": _mselect,
    "level-sweep": _level_sweep,
}

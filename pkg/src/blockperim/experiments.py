"""The simulation studies behind the estimator, run end to end.

Five named experiments cover the angle sweep for anisotropy bias, the
multigrid convergence schedule, the joint normality of estimates at
several levels, the data-driven block-size study, and a sweep over the
threshold level.  Each is a pure function of its config: rerunning
writes byte-identical CSV.  Replications draw from generator streams
keyed by (seed, replication index), so the worker pool size never
changes the numbers, only the wall time.

Estimates are always computed from the thresholded binary raster; the
real-valued samples are seen only by the proxy contour length and never
by the estimator itself.  Replications whose excursion has no boundary
at all yield a zero estimate with block size recorded as 0.
"""

from __future__ import annotations

import dataclasses
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateCovarianceError, NoExcursionBoundaryError
from .estimator import perimeter_hat, select_m
from .expected import MaternModel, expected_perimeter_affine, second_spectral_moment
from .grid import BinaryField, GridSpec, threshold
from .proxy import marching_squares_length
from .simulate import AnisotropyTransform, SimConfig, _embedding_for, sample_field
from .stats import mahalanobis_sq, shapiro_wilk

__all__ = [
    "EXPERIMENT_NAMES",
    "ExperimentConfig",
    "ExperimentResult",
    "preset",
    "build_config",
    "parse_config_file",
    "run_experiment",
    "run_aniso_angle",
    "run_convergence",
    "run_clt",
    "run_mselect",
    "run_level_sweep",
]

EXPERIMENT_NAMES = ("aniso-angle", "convergence", "clt", "mselect", "level-sweep")

QUARTER_PI = 0.25 * math.pi


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a named experiment needs; see :func:`preset` for defaults.

    ``grid`` is ignored by the convergence experiment, whose raster
    sizes come from the schedule M_n = floor(10 n^1.5) over the index
    range [n_min, n_max] (with eps_n = 2t/(M_n - 1) and block side n).
    """

    name: str
    scale: str = "desk"
    seed: int = 12345
    reps: int = 100
    t: float = 2.5
    grid: int = 256
    nu: float = 2.5
    sigma1: float = 1.0
    sigma2: float = 1.0
    theta: float = 0.0
    levels: tuple[float, ...] = (0.5,)
    thetas: tuple[float, ...] = ()
    m_fixed: int | None = None
    m_grid: tuple[int, ...] = ()
    n_min: int = 1
    n_max: int = 5
    workers: int = 0
    out: str | None = None

    def __post_init__(self) -> None:
        if self.name not in EXPERIMENT_NAMES:
            raise ValueError(f"unknown experiment {self.name!r}; choose from {EXPERIMENT_NAMES}")
        if self.scale not in ("desk", "paper"):
            raise ValueError(f"scale must be 'desk' or 'paper', got {self.scale!r}")
        if self.reps < 1:
            raise ValueError("replications must be >= 1")
        if not (1 <= self.n_min <= self.n_max):
            raise ValueError("schedule range must satisfy 1 <= n_min <= n_max")
        if len(set(self.levels)) != len(self.levels):
            raise ValueError("levels must be distinct")


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    """Rows (one per replication x level x estimator) plus side diagnostics."""

    schema: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    diagnostics: dict

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(f"# schema={self.schema}\n")
            fh.write(",".join(self.columns) + "\n")
            for row in self.rows:
                fh.write(",".join(_csv_token(x) for x in row) + "\n")


def _csv_token(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def preset(name: str, scale: str = "desk") -> ExperimentConfig:
    """Documented configurations for each experiment.

    Desk scale trims replication counts (and the CLT domain) to keep a
    laptop run in minutes; paper scale restores the published protocol.
    """
    if scale not in ("desk", "paper"):
        raise ValueError(f"scale must be 'desk' or 'paper', got {scale!r}")
    desk = scale == "desk"
    if name == "aniso-angle":
        # paper: 200 reps, 256^2 over [-2.5,2.5]^2, u=0.5, m=11; desk: 50 reps, 5 angles
        return ExperimentConfig(
            name=name, scale=scale, reps=50 if desk else 200, t=2.5, grid=256,
            sigma1=2.0, sigma2=0.5, levels=(0.5,), m_fixed=11,
            thetas=tuple(i * math.pi / 8 for i in range(5))
            if desk
            else tuple(i * math.pi / 16 for i in range(9)),
        )
    if name == "convergence":
        # paper: 500 reps of the n = 1..5 schedule; desk: 100 reps
        return ExperimentConfig(
            name=name, scale=scale, reps=100 if desk else 500, t=2.5,
            levels=(0.5,), n_min=1, n_max=5,
        )
    if name == "clt":
        # paper: [-15,15]^2 at 1024^2; desk: [-7.5,7.5]^2 at 512^2; both 200 reps
        return ExperimentConfig(
            name=name, scale=scale, reps=200, t=7.5 if desk else 15.0,
            grid=512 if desk else 1024, sigma1=2.0, sigma2=0.5,
            theta=math.pi / 4, levels=(0.0, 0.5, 1.0), m_fixed=7,
        )
    if name == "mselect":
        # paper: 1000 reps; desk: 300.  The [-2.5,2.5]^2 companion run is
        # the same config with t overridden.
        return ExperimentConfig(
            name=name, scale=scale, reps=300 if desk else 1000, t=10.0,
            grid=512, levels=(0.0,),
            m_grid=(2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 25, 30, 40),
        )
    if name == "level-sweep":
        step = 0.5 if desk else 0.25
        levels = tuple(float(u) for u in np.arange(-2.0, 2.0 + 1e-9, step))
        return ExperimentConfig(
            name=name, scale=scale, reps=100 if desk else 500, t=2.5,
            grid=512, levels=levels,
        )
    raise ValueError(f"unknown experiment {name!r}; choose from {EXPERIMENT_NAMES}")


# ---------------------------------------------------------------------------
# config files: flat "key = value" lines, '#' comments

def _float_tuple(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.replace(",", " ").split())


def _int_tuple(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.replace(",", " ").split())


_CASTERS: dict[str, Callable[[str], object]] = {
    "name": str, "scale": str, "seed": int, "reps": int, "t": float,
    "grid": int, "nu": float, "sigma1": float, "sigma2": float,
    "theta": float, "levels": _float_tuple, "thetas": _float_tuple,
    "m_fixed": int, "m_grid": _int_tuple, "n_min": int, "n_max": int,
    "workers": int, "out": str,
}


def parse_config_file(path: str | Path) -> dict[str, object]:
    """Read a flat key = value config file into typed values."""
    values: dict[str, object] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="ascii").splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, raw = body.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        caster = _CASTERS.get(key)
        if caster is None:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = caster(raw)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: bad value for {key!r}: {raw!r}") from exc
    return values


def build_config(
    name: str | None,
    scale: str | None,
    file_values: dict[str, object],
    cli_values: dict[str, object],
) -> ExperimentConfig:
    """Merge preset <- config file <- CLI flags (later wins per key)."""
    merged = dict(file_values)
    merged.update({k: v for k, v in cli_values.items() if v is not None})
    resolved_name = name or merged.get("name")
    if not resolved_name:
        raise ValueError("no experiment name given (flag --name or config key 'name')")
    resolved_scale = scale or merged.get("scale") or "desk"
    merged.pop("name", None)
    merged.pop("scale", None)
    cfg = preset(str(resolved_name), str(resolved_scale))
    return dataclasses.replace(cfg, **merged)


# ---------------------------------------------------------------------------
# shared machinery

def _worker_count(cfg: ExperimentConfig) -> int:
    cap = os.environ.get("EXCURSION_THREADS", "").strip()
    n = cfg.workers if cfg.workers > 0 else (os.cpu_count() or 1)
    if cap:
        try:
            n = min(n, int(cap))
        except ValueError:
            raise ValueError(f"EXCURSION_THREADS must be an integer, got {cap!r}") from None
    return max(1, n)


def _map_reps(fn: Callable[[int], tuple], count: int, workers: int) -> list[tuple]:
    """Apply fn to 0..count-1, results in replication order."""
    if workers <= 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))


def _auto_estimate(binary: BinaryField, level: float) -> tuple[int, float]:
    """p=2 estimate at the data-driven block size; (0, 0.0) if no boundary."""
    try:
        m = select_m(binary)
    except NoExcursionBoundaryError:
        return 0, 0.0
    return m, perimeter_hat(binary, m, 2, level).value


def _mean_abs(err: np.ndarray) -> float:
    return float(np.abs(err).mean())


def _masked_mape(values: np.ndarray, refs: np.ndarray) -> float:
    """MAPE in percent over entries with nonzero reference."""
    ok = refs != 0.0
    if not ok.any():
        return math.nan
    return float(np.mean(np.abs(values[ok] - refs[ok]) / np.abs(refs[ok])) * 100.0)


# ---------------------------------------------------------------------------
# the experiments

def run_aniso_angle(cfg: ExperimentConfig) -> ExperimentResult:
    """Mean estimator error against the proxy over a grid of angles."""
    if not cfg.thetas:
        raise ValueError("aniso-angle needs a nonempty 'thetas' grid")
    if cfg.m_fixed is None:
        raise ValueError("aniso-angle needs 'm_fixed'")
    if len(cfg.levels) != 1:
        raise ValueError("aniso-angle uses a single level")
    spec = GridSpec(cfg.t, cfg.grid)
    model = MaternModel(cfg.nu)
    u = cfg.levels[0]
    workers = _worker_count(cfg)

    rows: list[tuple] = []
    mean_proxy: list[float] = []
    mean_error: dict[str, list[float]] = {"p1_pi4": [], "p2": [], "p2_mauto": []}
    for ti, theta in enumerate(cfg.thetas):
        transform = AnisotropyTransform(cfg.sigma1, cfg.sigma2, theta)
        _embedding_for(spec, model, transform)  # share the spectrum across workers

        def one(rep: int, transform=transform, base=ti * cfg.reps) -> tuple:
            field = sample_field(SimConfig(spec, model, transform, cfg.seed, base + rep))
            ref = marching_squares_length(field, u)
            binary = threshold(field, u)
            p1 = QUARTER_PI * perimeter_hat(binary, 1, 1, u).value
            p2 = perimeter_hat(binary, cfg.m_fixed, 2, u).value
            m_auto, p2_auto = _auto_estimate(binary, u)
            return ref, p1, p2, m_auto, p2_auto

        results = _map_reps(one, cfg.reps, workers)
        refs = np.array([r[0] for r in results])
        by_est = {
            "p1_pi4": np.array([r[1] for r in results]),
            "p2": np.array([r[2] for r in results]),
            "p2_mauto": np.array([r[4] for r in results]),
        }
        for rep, (ref, p1, p2, m_auto, p2_auto) in enumerate(results):
            rows.append((theta, rep, u, "p1_pi4", 1, p1, ref, p1 - ref))
            rows.append((theta, rep, u, "p2", cfg.m_fixed, p2, ref, p2 - ref))
            rows.append((theta, rep, u, "p2_mauto", m_auto, p2_auto, ref, p2_auto - ref))
        mean_proxy.append(float(refs.mean()))
        for est, vals in by_est.items():
            mean_error[est].append(float((vals - refs).mean()))

    diagnostics = {
        "thetas": list(cfg.thetas),
        "mean_proxy": mean_proxy,
        "mean_error": mean_error,
    }
    return ExperimentResult(
        "aniso-angle/1",
        ("theta", "replication", "level", "estimator", "m", "estimate", "proxy", "error"),
        tuple(rows),
        diagnostics,
    )


def run_convergence(cfg: ExperimentConfig) -> ExperimentResult:
    """MAE against the proxy along the multigrid schedule."""
    if len(cfg.levels) != 1:
        raise ValueError("convergence uses a single level")
    model = MaternModel(cfg.nu)
    transform = AnisotropyTransform(cfg.sigma1, cfg.sigma2, cfg.theta)
    u = cfg.levels[0]
    workers = _worker_count(cfg)

    rows: list[tuple] = []
    schedule: list[tuple[int, int, float]] = []
    mae: dict[str, list[float]] = {"p1_pi4": [], "p2": [], "p2_mauto": []}
    for idx, n in enumerate(range(cfg.n_min, cfg.n_max + 1)):
        big_m = math.floor(10.0 * n**1.5)
        spec = GridSpec(cfg.t, big_m)
        schedule.append((n, big_m, spec.epsilon))
        _embedding_for(spec, model, transform)

        def one(rep: int, spec=spec, n=n, base=idx * cfg.reps) -> tuple:
            field = sample_field(SimConfig(spec, model, transform, cfg.seed, base + rep))
            ref = marching_squares_length(field, u)
            binary = threshold(field, u)
            p1 = QUARTER_PI * perimeter_hat(binary, 1, 1, u).value
            p2 = perimeter_hat(binary, n, 2, u).value
            m_auto, p2_auto = _auto_estimate(binary, u)
            return ref, p1, p2, m_auto, p2_auto

        results = _map_reps(one, cfg.reps, workers)
        refs = np.array([r[0] for r in results])
        for rep, (ref, p1, p2, m_auto, p2_auto) in enumerate(results):
            rows.append((n, big_m, spec.epsilon, rep, u, "p1_pi4", 1, p1, ref, p1 - ref))
            rows.append((n, big_m, spec.epsilon, rep, u, "p2", n, p2, ref, p2 - ref))
            rows.append(
                (n, big_m, spec.epsilon, rep, u, "p2_mauto", m_auto, p2_auto, ref, p2_auto - ref)
            )
        mae["p1_pi4"].append(_mean_abs(np.array([r[1] for r in results]) - refs))
        mae["p2"].append(_mean_abs(np.array([r[2] for r in results]) - refs))
        mae["p2_mauto"].append(_mean_abs(np.array([r[4] for r in results]) - refs))

    diagnostics = {
        "n": [s[0] for s in schedule],
        "M": [s[1] for s in schedule],
        "epsilon": [s[2] for s in schedule],
        "mae": mae,
    }
    return ExperimentResult(
        "convergence/1",
        ("n", "M", "epsilon", "replication", "level", "estimator", "m", "estimate", "proxy", "error"),
        tuple(rows),
        diagnostics,
    )


def run_clt(cfg: ExperimentConfig) -> ExperimentResult:
    """Joint behaviour of the p=2 estimates across levels, with normality
    diagnostics and the comparison to closed-form expectations."""
    if cfg.m_fixed is None:
        raise ValueError("clt needs 'm_fixed'")
    if len(cfg.levels) < 1:
        raise ValueError("clt needs at least one level")
    spec = GridSpec(cfg.t, cfg.grid)
    model = MaternModel(cfg.nu)
    transform = AnisotropyTransform(cfg.sigma1, cfg.sigma2, cfg.theta)
    lam2 = second_spectral_moment(model)
    expected = [
        expected_perimeter_affine(spec.area(), u, lam2, cfg.sigma1, cfg.sigma2)
        for u in cfg.levels
    ]
    workers = _worker_count(cfg)
    _embedding_for(spec, model, transform)

    def one(rep: int) -> tuple:
        field = sample_field(SimConfig(spec, model, transform, cfg.seed, rep))
        fixed = []
        auto = []
        for u in cfg.levels:
            binary = threshold(field, u)
            fixed.append(perimeter_hat(binary, cfg.m_fixed, 2, u).value)
            auto.append(_auto_estimate(binary, u))
        return fixed, auto

    results = _map_reps(one, cfg.reps, workers)
    rows: list[tuple] = []
    for rep, (fixed, auto) in enumerate(results):
        for j, u in enumerate(cfg.levels):
            rows.append((rep, u, "p2", cfg.m_fixed, fixed[j], expected[j], fixed[j] - expected[j]))
            m_auto, val = auto[j]
            rows.append((rep, u, "p2_mauto", m_auto, val, expected[j], val - expected[j]))

    fixed_matrix = np.array([r[0] for r in results])  # reps x k
    k = len(cfg.levels)
    sw = [shapiro_wilk(fixed_matrix[:, j]) for j in range(k)]
    diagnostics = {
        "levels": list(cfg.levels),
        "expected": expected,
        "sample_mean": [float(fixed_matrix[:, j].mean()) for j in range(k)],
        "sample_sd": [float(fixed_matrix[:, j].std(ddof=1)) for j in range(k)],
        "sw_w": [s[0] for s in sw],
        "sw_p": [s[1] for s in sw],
    }
    if cfg.reps > k:
        dists = mahalanobis_sq(fixed_matrix, np.array(expected))
        diagnostics["mahalanobis_sq"] = [float(d) for d in dists]
        diagnostics["mahalanobis_mean"] = float(dists.mean())
        diagnostics["pc_sw_p"] = _pc_pooled_sw(fixed_matrix)[1]
    return ExperimentResult(
        "clt/1",
        ("replication", "level", "estimator", "m", "estimate", "expected", "error"),
        tuple(rows),
        diagnostics,
    )


def _pc_pooled_sw(x: np.ndarray) -> tuple[float, float]:
    """Shapiro-Wilk on pooled standardized principal-component scores.

    Under joint normality the pooled scores are iid standard normal, so
    one test covers all components; this stands in for a packaged
    multivariate test.
    """
    centred = x - x.mean(axis=0)
    cov = np.cov(x, rowvar=False, ddof=1).reshape(x.shape[1], x.shape[1])
    vals, vecs = np.linalg.eigh(cov)
    if vals.min() <= 0.0:
        raise DegenerateCovarianceError("principal-component scores are degenerate")
    scores = (centred @ vecs) / np.sqrt(vals)
    return shapiro_wilk(scores.ravel())


def run_mselect(cfg: ExperimentConfig) -> ExperimentResult:
    """MAPE across a grid of block sizes versus the data-driven choice."""
    if not cfg.m_grid:
        raise ValueError("mselect needs a nonempty 'm_grid'")
    if len(cfg.levels) != 1:
        raise ValueError("mselect uses a single level")
    spec = GridSpec(cfg.t, cfg.grid)
    model = MaternModel(cfg.nu)
    transform = AnisotropyTransform(cfg.sigma1, cfg.sigma2, cfg.theta)
    u = cfg.levels[0]
    workers = _worker_count(cfg)
    _embedding_for(spec, model, transform)
    m_grid = tuple(sorted(set(cfg.m_grid)))
    bad = [m for m in m_grid if not 1 <= m <= cfg.grid - 1]
    if bad:
        raise ValueError(f"m_grid entries out of [1, {cfg.grid - 1}]: {bad}")

    def one(rep: int) -> tuple:
        field = sample_field(SimConfig(spec, model, transform, cfg.seed, rep))
        ref = marching_squares_length(field, u)
        binary = threshold(field, u)
        p1 = QUARTER_PI * perimeter_hat(binary, 1, 1, u).value
        m_auto, p2_auto = _auto_estimate(binary, u)
        grid_vals = [perimeter_hat(binary, m, 2, u).value for m in m_grid]
        return ref, p1, m_auto, p2_auto, grid_vals

    results = _map_reps(one, cfg.reps, workers)
    rows: list[tuple] = []
    for rep, (ref, p1, m_auto, p2_auto, grid_vals) in enumerate(results):
        rows.append((rep, u, "p1_pi4", 1, p1, ref, p1 - ref))
        rows.append((rep, u, "p2_mauto", m_auto, p2_auto, ref, p2_auto - ref))
        for m, val in zip(m_grid, grid_vals):
            rows.append((rep, u, "p2", m, val, ref, val - ref))

    refs = np.array([r[0] for r in results])
    p1s = np.array([r[1] for r in results])
    autos = np.array([r[3] for r in results])
    m_values = [r[2] for r in results]
    counts: dict[int, int] = {}
    for m in m_values:
        counts[m] = counts.get(m, 0) + 1
    grid_matrix = np.array([r[4] for r in results])  # reps x len(m_grid)
    diagnostics = {
        "m_grid": list(m_grid),
        "mape_by_m": [_masked_mape(grid_matrix[:, j], refs) for j in range(len(m_grid))],
        "mape_p1": _masked_mape(p1s, refs),
        "mape_auto": _masked_mape(autos, refs),
        "m_counts": dict(sorted(counts.items())),
        "m_mode": max(sorted(counts), key=counts.get),
        "n_nonzero_proxy": int((refs != 0.0).sum()),
    }
    return ExperimentResult(
        "mselect/1",
        ("replication", "level", "estimator", "m", "estimate", "proxy", "error"),
        tuple(rows),
        diagnostics,
    )


def run_level_sweep(cfg: ExperimentConfig) -> ExperimentResult:
    """Mean estimate and MAE as functions of the threshold level."""
    if len(cfg.levels) < 1:
        raise ValueError("level-sweep needs at least one level")
    spec = GridSpec(cfg.t, cfg.grid)
    model = MaternModel(cfg.nu)
    transform = AnisotropyTransform(cfg.sigma1, cfg.sigma2, cfg.theta)
    lam2 = second_spectral_moment(model)
    expected = [
        expected_perimeter_affine(spec.area(), u, lam2, cfg.sigma1, cfg.sigma2)
        for u in cfg.levels
    ]
    aniso = cfg.sigma1 != cfg.sigma2
    workers = _worker_count(cfg)
    _embedding_for(spec, model, transform)

    def one(rep: int) -> tuple:
        field = sample_field(SimConfig(spec, model, transform, cfg.seed, rep))
        per_level = []
        for u in cfg.levels:
            ref = marching_squares_length(field, u)
            binary = threshold(field, u)
            p1_raw = perimeter_hat(binary, 1, 1, u).value
            m_auto, p2_auto = _auto_estimate(binary, u)
            per_level.append((ref, p1_raw, m_auto, p2_auto))
        return tuple(per_level)

    results = _map_reps(one, cfg.reps, workers)
    rows: list[tuple] = []
    for rep, per_level in enumerate(results):
        for j, u in enumerate(cfg.levels):
            ref, p1_raw, m_auto, p2_auto = per_level[j]
            exp_u = expected[j]
            corrected = QUARTER_PI * p1_raw
            rows.append((rep, u, "p2_mauto", m_auto, p2_auto, ref, p2_auto - ref, exp_u))
            rows.append((rep, u, "p1_pi4", 1, corrected, ref, corrected - ref, exp_u))
            if aniso:
                rows.append((rep, u, "p1", 1, p1_raw, ref, p1_raw - ref, exp_u))

    estimators = ["p2_mauto", "p1_pi4"] + (["p1"] if aniso else [])
    mean_estimate: dict[str, list[float]] = {e: [] for e in estimators}
    mae: dict[str, list[float]] = {e: [] for e in estimators}
    mean_proxy: list[float] = []
    for j in range(len(cfg.levels)):
        refs = np.array([results[r][j][0] for r in range(cfg.reps)])
        mean_proxy.append(float(refs.mean()))
        series = {
            "p2_mauto": np.array([results[r][j][3] for r in range(cfg.reps)]),
            "p1_pi4": QUARTER_PI * np.array([results[r][j][1] for r in range(cfg.reps)]),
        }
        if aniso:
            series["p1"] = np.array([results[r][j][1] for r in range(cfg.reps)])
        for est in estimators:
            mean_estimate[est].append(float(series[est].mean()))
            mae[est].append(_mean_abs(series[est] - refs))

    diagnostics = {
        "levels": list(cfg.levels),
        "expected": expected,
        "mean_proxy": mean_proxy,
        "mean_estimate": mean_estimate,
        "mae": mae,
    }
    return ExperimentResult(
        "level-sweep/1",
        ("replication", "level", "estimator", "m", "estimate", "proxy", "error", "expected"),
        tuple(rows),
        diagnostics,
    )


_RUNNERS: dict[str, Callable[[ExperimentConfig], ExperimentResult]] = {
    "aniso-angle": run_aniso_angle,
    "convergence": run_convergence,
    "clt": run_clt,
    "mselect": run_mselect,
    "level-sweep": run_level_sweep,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Dispatch to the named experiment."""
    return _RUNNERS[cfg.name](cfg)

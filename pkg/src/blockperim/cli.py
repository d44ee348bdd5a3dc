"""Command-line front end.

Exit codes: 0 on success, 2 for bad input or configuration (including
argparse usage errors), 3 when a numerical routine fails (covariance
embedding, degenerate covariance, an excursion with no boundary).
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .estimator import perimeter_hat, select_m
from .expected import MaternModel, expected_perimeter_affine, second_spectral_moment
from .grid import BinaryField, GridSpec, ScalarField, read_grf1, read_pbm, threshold, write_grf1, write_pbm
from .proxy import marching_squares_length
from .simulate import AnisotropyTransform, SimConfig, sample_field
from .stats import shapiro_wilk
from .topology import count_holes, euler_characteristic, label_components

__all__ = ["main"]


def _read_raster(path: str) -> BinaryField | ScalarField:
    """Dispatch on the magic bytes: P1 bitmap or GRF1 scalar grid."""
    with open(path, "rb") as fh:
        magic = fh.read(2)
    if magic == b"P1":
        return read_pbm(path)
    if magic == b"GR":
        return read_grf1(path)
    raise ValueError(f"{path}: neither a P1 bitmap nor a GRF1 grid")


def _as_binary(field: BinaryField | ScalarField, level: float | None) -> BinaryField:
    if isinstance(field, BinaryField):
        if level is not None:
            raise ValueError("--level applies to scalar grids, not bitmaps")
        return field
    if level is None:
        raise ValueError("a scalar grid needs --level to threshold at")
    return threshold(field, level)


def _sim_config(args: argparse.Namespace) -> SimConfig:
    return SimConfig(
        GridSpec(args.t, args.grid),
        MaternModel(args.nu),
        AnisotropyTransform(args.sigma1, args.sigma2, args.theta),
        args.seed,
        args.replication,
    )


def _add_model_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--t", type=float, default=2.5, help="half-width of the square domain")
    sub.add_argument("--grid", type=int, default=256, help="pixels per side")
    sub.add_argument("--nu", type=float, default=2.5, help="Matern smoothness")
    sub.add_argument("--sigma1", type=float, default=1.0, help="first axis scaling")
    sub.add_argument("--sigma2", type=float, default=1.0, help="second axis scaling")
    sub.add_argument("--theta", type=float, default=0.0, help="rotation angle (rad)")


def _cmd_simulate(args: argparse.Namespace) -> int:
    field = sample_field(_sim_config(args))
    if args.level is not None:
        write_pbm(threshold(field, args.level), args.out)
    else:
        write_grf1(field, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_estimate(args: argparse.Namespace) -> int:
    binary = _as_binary(_read_raster(args.input), args.level)
    level = args.level if args.level is not None else math.nan
    if args.m == "auto":
        m = select_m(binary)
        chosen = "auto"
    else:
        try:
            m = int(args.m)
        except ValueError:
            raise ValueError(f"--m must be an integer or 'auto', got {args.m!r}") from None
        chosen = "fixed"
    est = perimeter_hat(binary, m, args.p, level)
    print(f"p={args.p} m={m} ({chosen}) estimate={est.value!r}")
    if args.p == 1:
        print(f"p=1 m={m} ({chosen}) estimate_pi4={0.25 * math.pi * est.value!r}")
    return 0


def _cmd_topology(args: argparse.Namespace) -> int:
    binary = _as_binary(_read_raster(args.input), args.level)
    fg = label_components(binary, connectivity=8)
    holes = count_holes(binary)
    print(f"components={fg.count} holes={holes} euler={euler_characteristic(binary)}")
    return 0


def _cmd_proxy(args: argparse.Namespace) -> int:
    field = _read_raster(args.input)
    if not isinstance(field, ScalarField):
        raise ValueError("the contour proxy needs a scalar grid, not a bitmap")
    print(f"length={marching_squares_length(field, args.level)!r}")
    return 0


def _cmd_expect(args: argparse.Namespace) -> int:
    lam2 = second_spectral_moment(MaternModel(args.nu))
    area = (2.0 * args.t) ** 2
    value = expected_perimeter_affine(area, args.level, lam2, args.sigma1, args.sigma2)
    print(f"lambda2={lam2!r} expected={value!r}")
    return 0


def _cmd_mselect(args: argparse.Namespace) -> int:
    binary = _as_binary(_read_raster(args.input), args.level)
    print(f"m={select_m(binary)}")
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    values = _read_column(args.input, args.column)
    if args.test == "sw":
        w, p = shapiro_wilk(np.asarray(values))
        print(f"n={len(values)} W={w!r} p={p!r}")
        return 0
    raise ValueError(f"unknown test {args.test!r}")


def _read_column(path: str, column: str | None) -> list[float]:
    lines = [ln for ln in Path(path).read_text(encoding="ascii").splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError(f"{path}: no data")
    if column is None:
        out = []
        for ln in lines:
            out.extend(float(tok) for tok in ln.replace(",", " ").split())
        return out
    header = [h.strip() for h in lines[0].split(",")]
    if column not in header:
        raise ValueError(f"{path}: no column {column!r} (header: {', '.join(header)})")
    idx = header.index(column)
    out = []
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != len(header):
            raise ValueError(f"{path}: ragged row {ln!r}")
        out.append(float(cells[idx]))
    return out


def _cmd_experiment(args: argparse.Namespace) -> int:
    from .experiments import build_config, parse_config_file, run_experiment

    if args.name and args.name_flag and args.name != args.name_flag:
        raise ValueError(
            f"conflicting experiment names {args.name!r} and {args.name_flag!r}"
        )
    file_values = parse_config_file(args.config) if args.config else {}
    cli_values = {
        "seed": args.seed, "reps": args.reps, "workers": args.workers,
        "t": args.t, "grid": args.grid, "out": args.out,
    }
    cfg = build_config(args.name or args.name_flag, args.scale, file_values, cli_values)
    result = run_experiment(cfg)
    out_dir = Path(cfg.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{cfg.name}_{cfg.scale}.csv"
    result.to_csv(csv_path)
    print(f"wrote {csv_path}")
    if not args.no_figures:
        from .figures import render_figures  # matplotlib stays unloaded otherwise

        for fig_path in render_figures(result, out_dir):
            print(f"wrote {fig_path}")
    _print_diagnostics(result.diagnostics)
    return 0


def _print_diagnostics(diagnostics: dict) -> None:
    for key, value in diagnostics.items():
        if isinstance(value, list) and len(value) > 13:
            print(f"{key}: [{len(value)} values]")
        elif isinstance(value, dict):
            inner = ", ".join(f"{k}: {_fmt(v)}" for k, v in value.items())
            print(f"{key}: {{{inner}}}")
        else:
            print(f"{key}: {_fmt(value)}")


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockperim",
        description="Perimeter estimation for excursion sets of Gaussian random fields.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sim = subs.add_parser("simulate", help="sample a stationary Gaussian field to a file")
    _add_model_flags(sim)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--replication", type=int, default=0)
    sim.add_argument("--level", type=float, default=None,
                     help="threshold and write a bitmap instead of the scalar grid")
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=_cmd_simulate)

    est = subs.add_parser("estimate", help="block perimeter estimate from a raster")
    est.add_argument("--input", required=True, help="P1 bitmap or GRF1 grid")
    est.add_argument("--level", type=float, default=None, help="threshold for scalar grids")
    est.add_argument("--p", type=int, default=2, help="norm exponent")
    est.add_argument("--m", default="auto", help="block side, or 'auto'")
    est.set_defaults(func=_cmd_estimate)

    topo = subs.add_parser("topology", help="component, hole, and Euler counts")
    topo.add_argument("--input", required=True)
    topo.add_argument("--level", type=float, default=None)
    topo.set_defaults(func=_cmd_topology)

    prox = subs.add_parser("proxy", help="interpolated contour length of a scalar grid")
    prox.add_argument("--input", required=True)
    prox.add_argument("--level", type=float, required=True)
    prox.set_defaults(func=_cmd_proxy)

    exp = subs.add_parser("expect", help="closed-form expected perimeter")
    _add_model_flags(exp)
    exp.add_argument("--level", type=float, required=True)
    exp.set_defaults(func=_cmd_expect)

    msel = subs.add_parser("mselect", help="data-driven block side for a raster")
    msel.add_argument("--input", required=True)
    msel.add_argument("--level", type=float, default=None)
    msel.set_defaults(func=_cmd_mselect)

    st = subs.add_parser("stats", help="normality test on a column of numbers")
    st.add_argument("--test", default="sw", choices=["sw"])
    st.add_argument("--input", required=True, help="CSV (with --column) or bare numbers")
    st.add_argument("--column", default=None)
    st.set_defaults(func=_cmd_stats)

    expt = subs.add_parser("experiment", help="run a named simulation study")
    expt.add_argument("name", nargs="?", default=None,
                      help="aniso-angle, convergence, clt, mselect, or level-sweep")
    expt.add_argument("--name", dest="name_flag", default=None,
                      help="alternative to the positional experiment name")
    expt.add_argument("--scale", choices=["desk", "paper"], default=None)
    expt.add_argument("--config", default=None, help="flat key = value override file")
    expt.add_argument("--seed", type=int, default=None)
    expt.add_argument("--reps", type=int, default=None)
    expt.add_argument("--workers", type=int, default=None)
    expt.add_argument("--t", type=float, default=None)
    expt.add_argument("--grid", type=int, default=None)
    expt.add_argument("--out", default=None, help="directory for the CSV and figures")
    expt.add_argument("--no-figures", action="store_true")
    expt.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

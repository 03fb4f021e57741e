"""Command-line surface: parameter sweeps, global-max scans, frontier curves.

Every command emits UTF-8 CSV on stdout (or to --out): `#`-prefixed metadata
lines first (tool version, command, seed, parameters; never timestamps),
then a header row, then data rows with 12 significant digits. Identical
invocations produce byte-identical output.

Exit codes: 0 success, 2 usage or value error, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from math import pi
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (exchange_symmetry_report, global_max_bell_closed,
                       global_max_bell_numeric, global_max_concurrence_closed,
                       global_max_concurrence_numeric)
from .dynamics import (build_sector_hamiltonian, initial_sector_state,
                       propagate_grid, reduced_state_closed_form)
from .frontier import (DEFAULT_SEED, mbvms_frontier, mems_frontier,
                       trajectory_sweep, werner_curve)
from .measures import bell_max, concurrence, linear_entropy
from .qcore import ConsistencyError, SectorState, partial_trace_field, photon_distribution

COMMANDS = ("evolve", "evolve2", "fig", "frontier", "symmetry", "global-max")
FIGURES = ("1", "2", "3a", "3b", "4a", "4b")

_FIG1_THETAS = (0.1, 0.35, 0.6, 0.85, 1.1, 1.35, pi / 2, 1.85, 2.2, 2.5, 2.8, 3.0)


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    v = float(x)
    if not np.isfinite(v):
        raise ConsistencyError("non-finite value in CSV output")
    return "%.12g" % v


def _emit(out_path, command, params, columns, rows, extra_meta=()):
    lines = [f"# cavitymems {__version__}", f"# command: {command}"]
    for key, val in params:
        lines.append(f"# {key}: {_fmt(val)}")
    for note in extra_meta:
        lines.append(f"# {note}")
    lines.append(",".join(columns))
    for row in rows:
        if len(row) != len(columns):
            raise ConsistencyError("row width does not match the column schema")
        lines.append(",".join(_fmt(x) for x in row))
    text = "\n".join(lines) + "\n"
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _floats_csv(raw: str) -> list[float]:
    try:
        values = [float(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"bad float list {raw!r}") from exc
    if not values:
        raise ValueError("empty value list")
    return values


# ---------------------------------------------------------------------------
# commands

def _cmd_evolve(args) -> None:
    rho = reduced_state_closed_form(args.chi, args.theta)
    row = [args.chi, args.theta]
    row += [rho[i, j].real for i in range(4) for j in range(4)]
    row += [rho[i, j].imag for i in range(4) for j in range(4)]
    row += [concurrence(rho), linear_entropy(rho), bell_max(rho)]
    cols = ["chi", "theta"]
    cols += [f"rho_re_{i}{j}" for i in range(4) for j in range(4)]
    cols += [f"rho_im_{i}{j}" for i in range(4) for j in range(4)]
    cols += ["concurrence", "linear_entropy", "bell_max"]
    _emit(args.out, "evolve", [("chi", args.chi), ("theta", args.theta),
                               ("seed", args.seed)], cols, [row])


def _cmd_evolve2(args) -> None:
    if args.horizon <= 0.0 or args.coarse_step <= 0.0:
        raise ValueError("horizon and coarse step must be positive")
    h = build_sector_hamiltonian(2, args.chi)
    us = np.arange(0.0, args.horizon + 0.5 * args.coarse_step, args.coarse_step)
    amps = propagate_grid(h, initial_sector_state(2), us)
    rows = []
    for k, u in enumerate(us):
        state = SectorState(2, amps[:, k])
        rho = partial_trace_field(state)
        pn = photon_distribution(state)
        rows.append([args.chi, u, concurrence(rho), linear_entropy(rho),
                     bell_max(rho), pn[0], pn[1], pn[2]])
    _emit(args.out, "evolve2",
          [("chi", args.chi), ("horizon", args.horizon),
           ("coarse_step", args.coarse_step), ("seed", args.seed)],
          ["chi", "u", "concurrence", "linear_entropy", "bell_max",
           "p0", "p1", "p2"], rows)


def _cmd_fig(args) -> None:
    fig = args.figure
    params = [("figure", fig), ("seed", args.seed)]
    if fig in ("1", "2"):
        thetas = _floats_csv(args.theta_list) if args.theta_list else list(_FIG1_THETAS)
        measure = "concurrence" if fig == "1" else "bell"
        curves = trajectory_sweep(thetas, measure=measure,
                                  chi_linear=args.chi_steps, chi_log=args.chi_steps,
                                  chi_max=args.chi_max)
        rows = []
        for curve in curves:
            theta = curve.meta["theta"]
            for chi, m, v in zip(curve.meta["chi"], curve.mixedness, curve.value):
                rows.append([theta, chi, m, v])
        params += [("measure", measure), ("chi_steps", args.chi_steps),
                   ("chi_max", args.chi_max)]
        _emit(args.out, "fig", params, ["theta", "chi", "M", "measure"], rows)
        return
    if fig in ("3a", "3b"):
        chis = np.geomspace(args.chi_min, args.chi_max, args.chi_steps)
        best = global_max_concurrence_closed if fig == "3a" else global_max_bell_closed
        rows = []
        for chi in chis:
            res = best(float(chi))
            rows.append([chi, res.value, res.argmax_phase])
        params += [("chi_min", args.chi_min), ("chi_max", args.chi_max),
                   ("chi_steps", args.chi_steps)]
        _emit(args.out, "fig", params, ["chi", "max_value", "argmax_phase"], rows)
        return
    # 4a / 4b: two-excitation numeric maxima
    chis = np.linspace(args.chi_min, args.chi_max, args.chi_steps)
    best = global_max_concurrence_numeric if fig == "4a" else global_max_bell_numeric
    rows = []
    for chi in chis:
        res = best(float(chi), n=2, horizon=args.horizon, coarse_step=args.coarse_step)
        rows.append([chi, res.value, res.argmax_phase])
    params += [("chi_min", args.chi_min), ("chi_max", args.chi_max),
               ("chi_steps", args.chi_steps), ("horizon", args.horizon),
               ("coarse_step", args.coarse_step)]
    _emit(args.out, "fig", params, ["chi", "max_value", "argmax_phase"], rows)


def _cmd_frontier(args) -> None:
    params = [("kind", args.kind), ("seed", args.seed)]
    if args.kind == "trajectory":
        if not args.theta_list:
            raise ValueError("frontier trajectory requires --theta-list")
        thetas = _floats_csv(args.theta_list)
        curves = trajectory_sweep(thetas, measure=args.measure,
                                  chi_linear=args.chi_steps, chi_log=args.chi_steps,
                                  chi_max=args.chi_max)
        rows = [[c.kind, c.meta["theta"], m, v]
                for c in curves for m, v in zip(c.mixedness, c.value)]
        params += [("measure", args.measure), ("chi_steps", args.chi_steps),
                   ("chi_max", args.chi_max)]
        _emit(args.out, "frontier", params,
              ["kind", "theta", "mixedness", "value"], rows)
        return
    if args.kind == "mems":
        curve = mems_frontier(samples=args.samples)
    elif args.kind == "werner":
        curve = werner_curve(samples=args.samples)
    else:
        grid = np.linspace(0.0, 0.9, args.entropy_steps)
        curve = mbvms_frontier(grid, restarts=args.restarts, seed=args.seed)
    rows = [[curve.kind, m, v] for m, v in zip(curve.mixedness, curve.value)]
    extra = []
    for key in ("samples", "restarts", "optimizer_tol", "note"):
        if key in curve.meta:
            extra.append(f"{key}: {curve.meta[key]}")
    _emit(args.out, "frontier", params, ["kind", "mixedness", "value"], rows, extra)


def _cmd_symmetry(args) -> None:
    chis = sorted(_floats_csv(args.chi_list))
    rows = []
    for chi in chis:
        rep = exchange_symmetry_report(chi)
        rows.append([rep.chi, rep.concurrence_max, rep.concurrence_max_swapped,
                     rep.bell_max, rep.bell_max_swapped,
                     rep.concurrence_symmetric, rep.bell_symmetric])
    _emit(args.out, "symmetry", [("chi_list", args.chi_list), ("seed", args.seed)],
          ["chi", "c_m_chi", "c_m_inv_chi", "bell_chi", "bell_inv_chi",
           "concurrence_symmetric", "bell_symmetric"], rows)


def _cmd_global_max(args) -> None:
    if args.chi is not None:
        chis = [args.chi]
    else:
        if args.chi_steps < 1:
            raise ValueError("chi steps must be >= 1")
        chis = list(np.linspace(args.chi_min, args.chi_max, args.chi_steps))
    n = args.excitation
    rows = []
    for measure, numeric, closed in (
            ("concurrence", global_max_concurrence_numeric, global_max_concurrence_closed),
            ("bell", global_max_bell_numeric, global_max_bell_closed)):
        for chi in chis:
            res = numeric(float(chi), n=n, horizon=args.horizon,
                          coarse_step=args.coarse_step)
            if n == 1:
                ref = closed(float(chi))
                rows.append([measure, chi, n, res.value, res.argmax_phase,
                             ref.value, ref.branch])
            else:
                rows.append([measure, chi, n, res.value, res.argmax_phase, "", ""])
    params = [("excitation", n), ("seed", args.seed)]
    if args.chi is not None:
        params.append(("chi", args.chi))
    else:
        params += [("chi_min", args.chi_min), ("chi_max", args.chi_max),
                   ("chi_steps", args.chi_steps)]
    if args.horizon is not None:
        params.append(("horizon", args.horizon))
    if args.coarse_step is not None:
        params.append(("coarse_step", args.coarse_step))
    _emit(args.out, "global-max", params,
          ["measure", "chi", "excitation", "value_numeric", "argmax_phase",
           "value_closed", "branch_closed"], rows)


# ---------------------------------------------------------------------------
# parser plumbing

def _add_common(p):
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="random seed recorded in the metadata header")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--config", default=None,
                   help="key=value file mirroring the flags; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavitymems",
        description="Entangled mixed states of two atoms in a resonant cavity: "
                    "sweeps, global maxima, and mixedness frontiers as CSV.",
        epilog="CSV schema: '#'-prefixed metadata lines, then a header row, "
               "then data rows (12 significant digits). See docs/cli.md.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="closed-form state and measures at one (chi, theta)")
    p.add_argument("--chi", type=float, required=True, help="coupling ratio, >= 0")
    p.add_argument("--theta", type=float, required=True,
                   help="collective pulse area in radians")
    _add_common(p)
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("evolve2", help="two-excitation trace over the pulse area u")
    p.add_argument("--chi", type=float, required=True)
    p.add_argument("--horizon", type=float, default=40.0, help="largest u")
    p.add_argument("--coarse-step", type=float, default=0.02, help="u grid step")
    _add_common(p)
    p.set_defaults(func=_cmd_evolve2)

    p = sub.add_parser("fig", help="emit the dataset behind a named figure")
    p.add_argument("figure", choices=FIGURES)
    p.add_argument("--theta-list", default=None,
                   help="comma-separated thetas for figures 1 and 2")
    p.add_argument("--chi-min", type=float, default=None)
    p.add_argument("--chi-max", type=float, default=None)
    p.add_argument("--chi-steps", type=int, default=None)
    p.add_argument("--horizon", type=float, default=400.0,
                   help="u horizon for figures 4a and 4b")
    p.add_argument("--coarse-step", type=float, default=0.005)
    _add_common(p)
    p.set_defaults(func=_cmd_fig)

    p = sub.add_parser("frontier", help="frontier curve points in the (M, value) plane")
    p.add_argument("kind", choices=("mems", "mbvms", "werner", "trajectory"))
    p.add_argument("--samples", type=int, default=200,
                   help="sample count for mems and werner curves")
    p.add_argument("--restarts", type=int, default=32,
                   help="random restarts for the mbvms optimizer")
    p.add_argument("--entropy-steps", type=int, default=19,
                   help="mixedness grid points for the mbvms optimizer")
    p.add_argument("--theta-list", help="comma-separated pulse areas (trajectory kind)")
    p.add_argument("--measure", choices=("concurrence", "bell"), default="concurrence",
                   help="measure traced by the trajectory kind")
    p.add_argument("--chi-steps", type=int, default=200,
                   help="points per chi half-grid for the trajectory kind")
    p.add_argument("--chi-max", type=float, default=40.0,
                   help="upper chi bound for the trajectory kind")
    _add_common(p)
    p.set_defaults(func=_cmd_frontier)

    p = sub.add_parser("symmetry", help="exchange-symmetry report per chi")
    p.add_argument("--chi-list", required=True, help="comma-separated chi values")
    _add_common(p)
    p.set_defaults(func=_cmd_symmetry)

    p = sub.add_parser("global-max", help="numeric and closed-form phase maxima")
    p.add_argument("--chi", type=float, default=None,
                   help="single chi (otherwise a grid is swept)")
    p.add_argument("--chi-min", type=float, default=0.1)
    p.add_argument("--chi-max", type=float, default=3.0)
    p.add_argument("--chi-steps", type=int, default=30)
    p.add_argument("--excitation", type=int, choices=(1, 2), default=1)
    p.add_argument("--horizon", type=float, default=None)
    p.add_argument("--coarse-step", type=float, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_global_max)

    return parser


def _extract_config_path(argv):
    for i, tok in enumerate(argv):
        if tok == "--config":
            if i + 1 >= len(argv):
                raise ValueError("--config needs a path")
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _config_argv(path):
    """Turn key=value lines into flag tokens, inserted before real flags."""
    tokens = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"bad config line {raw!r}, expected key=value")
        key, _, value = line.partition("=")
        key = key.strip().replace("_", "-")
        if key in ("config", ""):
            raise ValueError(f"config file cannot set {key or 'an empty key'!r}")
        tokens += [f"--{key}", value.strip()]
    return tokens


def _fig_defaults(args) -> None:
    # per-figure grid defaults, only filled when the flag was not given
    if args.command != "fig":
        return
    if args.figure in ("1", "2"):
        defaults = {"chi_min": 0.0, "chi_max": 40.0, "chi_steps": 200}
    elif args.figure in ("3a", "3b"):
        defaults = {"chi_min": 1.0 / 40.0, "chi_max": 40.0, "chi_steps": 321}
    else:
        defaults = {"chi_min": 0.02, "chi_max": 1.4, "chi_steps": 70}
    for key, val in defaults.items():
        if getattr(args, key) is None:
            setattr(args, key, val)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        config_path = _extract_config_path(argv)
        if config_path is not None:
            if not argv or argv[0] not in COMMANDS:
                raise ValueError("--config requires a leading command name")
            argv = [argv[0]] + _config_argv(config_path) + argv[1:]
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        _fig_defaults(args)
        args.func(args)
        return 0
    except ValueError as exc:
        print(f"cavitymems: error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"cavitymems: consistency failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())

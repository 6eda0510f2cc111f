"""Command-line front end.

Subcommands: ``single``, ``fig1``, ``grid``, ``table3``.  Exit codes:
0 success, 1 configuration error, 2 partial failure (NaN nodes in the
output), 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, RunConfig, parse_config, parse_grid, with_overrides
from .output import emit_sweep_outputs, emit_table3_outputs, write_trajectory_csv
from .sweep import run_fig1_cut, run_grid, run_single, run_three_level_table

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARTIAL = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    """argparse maps usage errors to exit code 2; we need 1 for those."""

    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="detjump",
        description=(
            "Population transfer driven by a smooth coupling pulse whose "
            "detuning flips sign at the pulse peak: numeric integration vs "
            "the closed-form stepwise model."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", metavar="PATH", help="key-value config file")
        p.add_argument("--out", metavar="DIR", default="out", help="output directory")
        p.add_argument("--workers", type=int, default=1, metavar="N",
                       help="process-pool size for sweep nodes")
        p.add_argument("--shape", choices=("gaussian", "sech", "lorentzian"))
        p.add_argument("--tau-jump", type=float, metavar="X", dest="tau_jump",
                       help="jump smoothing time in units of T (0 = ideal step)")
        p.add_argument("--tolerance", type=float, metavar="X",
                       help="integrator local error target")
        p.add_argument("--omega0", metavar="GRID", help="omega0*T grid spec")
        p.add_argument("--delta0", metavar="GRID", help="delta0*T grid spec")
        p.add_argument("--system", choices=("two_level", "three_level"))
        p.add_argument("--initial-state", type=int, dest="initial_state")
        p.add_argument("--no-plot", action="store_true",
                       help="skip matplotlib figure rendering")

    p_single = sub.add_parser("single", help="one (omega0, delta0) node")
    p_fig1 = sub.add_parser("fig1", help="omega0 cut at fixed delta0")
    p_grid = sub.add_parser("grid", help="full 2-D omega0 x delta0 sweep")
    p_table = sub.add_parser("table3", help="three-level transition table")
    for p in (p_single, p_fig1, p_grid, p_table):
        add_common(p)
    return parser


_COMMAND_GRID_DEFAULTS = {
    # (omega0, delta0) applied only when neither config nor flags set them
    "single": ("5", "5"),
    "fig1": ("0.1:10:0.1", "5"),
    "grid": ("0.1:10:0.1", "0.1:10:0.1"),
    "table3": ("8", "2"),
}


def _build_config(args) -> RunConfig:
    explicit = set()
    if args.config:
        config = parse_config(args.config)
        with open(args.config, "r", encoding="utf-8") as fh:
            for line in fh:
                key = line.split("#", 1)[0].split(":", 1)[0].strip()
                if key:
                    explicit.add(key)
    else:
        config = RunConfig()

    om_default, de_default = _COMMAND_GRID_DEFAULTS[args.command]
    overrides = {
        "shape": args.shape,
        "tau_jump": args.tau_jump,
        "tolerance": args.tolerance,
        "system": args.system,
        "initial_state": args.initial_state,
        "omega0": parse_grid(args.omega0) if args.omega0 else None,
        "delta0": parse_grid(args.delta0) if args.delta0 else None,
    }
    if args.command == "table3":
        requested = args.system or (config.system if "system" in explicit else None)
        if requested not in (None, "three_level"):
            raise ConfigError("table3 requires system: three_level")
        overrides["system"] = "three_level"
    if overrides["omega0"] is None and "omega0" not in explicit:
        overrides["omega0"] = parse_grid(om_default)
    if overrides["delta0"] is None and "delta0" not in explicit:
        overrides["delta0"] = parse_grid(de_default)
    return with_overrides(config, **overrides)


def _print_rows(result):
    n = result.state_count
    for row in result.rows:
        nums = " ".join(f"{p:.6f}" for p in row.p_numeric)
        anas = " ".join(f"{p:.6f}" for p in row.p_analytic)
        print(
            f"omega0T={row.omega0:g} delta0T={row.delta0:g}  "
            f"numeric=({nums})  model=({anas})  residual={row.residual:+.2e}"
        )


def _run(args) -> int:
    config = _build_config(args)
    partial = False

    if args.command == "table3":
        t3 = run_three_level_table(config)
        emit_table3_outputs(t3, args.out)
        for i, row in enumerate(t3.rows, start=1):
            nums = " ".join(f"{p:.6f}" for p in row.p_numeric)
            anas = " ".join(f"{p:.6f}" for p in row.p_analytic)
            print(f"from |{i}>: numeric=({nums})  model=({anas})  worst={row.residual:.4f}")
        print(f"chain-lift exactness residual: {t3.majorana_residual:.3e}")
        if not args.no_plot:
            from .plotting import render_table3

            render_table3(t3, f"{args.out}/table3.png")
        return EXIT_OK

    if args.command == "single":
        result, trajectory = run_single(config)
        emit_sweep_outputs(result, args.out, "single", kind="single")
        _print_rows(result)
        if trajectory is not None:
            write_trajectory_csv(trajectory, f"{args.out}/single_trajectory.csv")
            if not args.no_plot:
                from .plotting import render_trajectory

                render_trajectory(trajectory, f"{args.out}/single_trajectory.png")
        partial = result.n_failed > 0
        return EXIT_PARTIAL if partial else EXIT_OK

    runner = run_fig1_cut if args.command == "fig1" else run_grid
    result = runner(config, workers=args.workers)
    emit_sweep_outputs(result, args.out, args.command, kind=args.command)
    if not args.no_plot:
        from .plotting import render_fig1, render_grid

        if args.command == "fig1":
            render_fig1(result, f"{args.out}/fig1.png")
        else:
            render_grid(result, args.out, "grid")
    done = len(result.rows) - result.n_failed
    print(f"{args.command}: {done}/{len(result.rows)} nodes ok -> {args.out}")
    if result.n_failed:
        print(f"warning: {result.n_failed} nodes failed and were recorded as nan",
              file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

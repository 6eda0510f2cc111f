"""File emission: CSV, JSON-lines, gnuplot-ready matrices and scripts.

All data files are deterministic: rows follow grid order (omega0-major),
numbers render as ``%.16e`` (17 significant digits, exact round-trip), CSV
is RFC-4180-style with a header row, '.' decimal separator and LF endings.
Per-node wall times are inherently run-dependent and therefore go to a
separate ``*_timings.csv`` sidecar, never into the main data files.
"""

from __future__ import annotations

import csv
import json
import math
import os
from pathlib import Path

from .sweep import SweepResult, Table3Result

__all__ = [
    "transfer_index",
    "emit_sweep_outputs",
    "emit_table3_outputs",
    "write_trajectory_csv",
]

CONTOUR_LEVELS = (0.1, 0.3, 0.5, 0.7, 0.9)


def _fmt(x: float) -> str:
    if math.isnan(x):
        return "nan"
    return format(float(x), ".16e")


def _jsonable(x: float):
    return None if math.isnan(x) else float(x)


def transfer_index(result: SweepResult) -> int:
    """Column of the headline probability surface (0-based).

    Starting from an outer state this is the opposite outer state; starting
    from the chain middle it is the middle-state survival.
    """
    initial = result.config.initial_state
    dim = result.state_count
    if initial == 1:
        return dim - 1
    if initial == dim:
        return 0
    return 1


def _header(result: SweepResult) -> list[str]:
    n = result.state_count
    cols = ["omega0T", "delta0T"]
    cols += [f"p{i}_numeric" for i in range(1, n + 1)]
    cols += [f"p{i}_analytic" for i in range(1, n + 1)]
    cols.append("residual")
    return cols


def _row_values(row) -> list[float]:
    return [row.omega0, row.delta0, *row.p_numeric, *row.p_analytic, row.residual]


def _write_csv(path: Path, header: list[str], rows: list[list[float]]):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for values in rows:
            writer.writerow(_fmt(v) for v in values)


def _write_jsonl(path: Path, header: list[str], rows: list[list[float]]):
    with open(path, "w", encoding="utf-8") as fh:
        for values in rows:
            record = {key: _jsonable(v) for key, v in zip(header, values)}
            fh.write(json.dumps(record) + "\n")


def _write_matrix(path: Path, result: SweepResult, column: int):
    """splot block format: delta0 runs inside a block, blank line between
    omega0 blocks."""
    by_node = {(row.omega0, row.delta0): row for row in result.rows}
    with open(path, "w", encoding="utf-8") as fh:
        for i, om in enumerate(result.config.omega0):
            if i:
                fh.write("\n")
            for de in result.config.delta0:
                values = _row_values(by_node[(om, de)])
                fh.write(f"{_fmt(om)} {_fmt(de)} {_fmt(values[column])}\n")


def _write_timings(path: Path, result: SweepResult):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["omega0T", "delta0T", "wall_time_s"])
        for row in result.rows:
            writer.writerow([_fmt(row.omega0), _fmt(row.delta0), _fmt(row.wall_time)])


def _gnuplot_fig1(basename: str, overlay: bool) -> str:
    lines = [
        "# transfer probability along the cut; column 2 numeric, column 3 model",
        "set xlabel 'Omega0 * T'",
        "set ylabel 'transfer probability'",
        "set yrange [0:1]",
        "set key left top",
        "set terminal pngcairo size 800,600",
        f"set output 'gnuplot_{basename}.png'",
    ]
    plot = f"plot '{basename}_curves.dat' using 1:2 with lines lw 2 title 'numeric'"
    if overlay:
        plot += ", '' using 1:3 with lines dashtype 2 lw 2 title 'stepwise model'"
    lines.append(plot)
    return "\n".join(lines) + "\n"


def _gnuplot_grid(basename: str, surfaces: list[str]) -> str:
    levels = ", ".join(str(v) for v in CONTOUR_LEVELS)
    lines = [
        "# contour maps of the transfer-probability surfaces",
        "set view map",
        "unset surface",
        "set contour base",
        f"set cntrparam levels discrete {levels}",
        "set xlabel 'Omega0 * T'",
        "set ylabel 'Delta0 * T'",
        "set key outside",
        "set terminal pngcairo size 900,700",
    ]
    for name in surfaces:
        lines.append(f"set output 'gnuplot_{basename}_{name}.png'")
        lines.append(
            f"splot '{basename}_{name}.dat' using 1:2:3 with lines title '{name}'"
        )
    return "\n".join(lines) + "\n"


def emit_sweep_outputs(
    result: SweepResult,
    out_dir: str | os.PathLike,
    basename: str,
    kind: str,
) -> list[Path]:
    """Write every artifact selected by the run's ``outputs`` list.

    ``kind`` is 'single', 'fig1' or 'grid' and selects the plot-ready
    extras: a curves file for cuts, matrix files for grids, plus a gnuplot
    script for either.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    outputs = result.config.outputs
    overlay = "analytic_overlay" in outputs
    header = _header(result)
    rows = [_row_values(r) for r in result.rows]
    written: list[Path] = []

    def emit(path: Path, writer, *args):
        writer(path, *args)
        written.append(path)

    if "final_populations" in outputs:
        emit(out / f"{basename}.csv", _write_csv, header, rows)
        emit(out / f"{basename}.jsonl", _write_jsonl, header, rows)
        emit(out / f"{basename}_timings.csv", lambda p: _write_timings(p, result))

    target = transfer_index(result)
    num_col = 2 + target
    ana_col = 2 + result.state_count + target

    if kind == "fig1" and "final_populations" in outputs:
        curves = out / f"{basename}_curves.dat"
        with open(curves, "w", encoding="utf-8") as fh:
            for values in rows:
                cols = [values[0], values[num_col]]
                if overlay:
                    cols.append(values[ana_col])
                fh.write(" ".join(_fmt(v) for v in cols) + "\n")
        written.append(curves)
        script = out / f"{basename}.gp"
        script.write_text(_gnuplot_fig1(basename, overlay), encoding="utf-8")
        written.append(script)

    if kind == "grid":
        surfaces = [("numeric", num_col)]
        if overlay:
            surfaces.append(("analytic", ana_col))
        if "residual_map" in outputs:
            surfaces.append(("residual", len(header) - 1))
        for name, column in surfaces:
            emit(out / f"{basename}_{name}.dat", _write_matrix, result, column)
        script = out / f"{basename}.gp"
        script.write_text(
            _gnuplot_grid(basename, [name for name, _ in surfaces]), encoding="utf-8"
        )
        written.append(script)

    return written


def emit_table3_outputs(
    t3: Table3Result, out_dir: str | os.PathLike, basename: str = "table3"
) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    header = (
        ["initial_state"]
        + [f"p{i}_numeric" for i in (1, 2, 3)]
        + [f"p{i}_analytic" for i in (1, 2, 3)]
        + ["residual"]
    )
    rows = [
        [float(i + 1), *r.p_numeric, *r.p_analytic, r.residual]
        for i, r in enumerate(t3.rows)
    ]
    written = []
    csv_path = out / f"{basename}.csv"
    _write_csv(csv_path, header, rows)
    written.append(csv_path)
    jsonl_path = out / f"{basename}.jsonl"
    _write_jsonl(jsonl_path, header, rows)
    written.append(jsonl_path)

    meta = {
        "omega0T": t3.omega0,
        "delta0T": t3.delta0,
        "shape": t3.config.shape,
        "tolerance": t3.config.tolerance,
        "majorana_residual": t3.majorana_residual,
    }
    meta_path = out / f"{basename}_meta.json"
    meta_path.write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    written.append(meta_path)
    return written


def write_trajectory_csv(trajectory, path: str | os.PathLike) -> Path:
    """Time series of the state populations along one propagation."""
    path = Path(path)
    n = len(trajectory[0].populations)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t"] + [f"p{i}" for i in range(1, n + 1)])
        for point in trajectory:
            writer.writerow([_fmt(point.t)] + [_fmt(p) for p in point.populations])
    return path

"""Sweep execution: single runs, 1-D cuts, 2-D grids, three-level tables.

Grid nodes are independent pure functions of (omega0*T, delta0*T, config)
and may run on a process pool; results are merged back in grid order
(omega0-major), so the output is bitwise identical for any worker count.
A node that fails to integrate is recorded as NaN and the sweep continues.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .analytic import analytic_p2
from .config import ConfigError, RunConfig
from .integrator import IntegrationSpec, TrajectoryPoint
from .profiles import DetuningProfile, DriveProfile, PulseShape
from .three_level import (
    analytic_transition_table,
    majorana_exactness_residual,
    simulate_three_level,
)
from .two_level import simulate_final_populations

__all__ = [
    "SweepRow",
    "SweepResult",
    "Table3Result",
    "run_single",
    "run_fig1_cut",
    "run_grid",
    "run_three_level_table",
]

_NAN = float("nan")


@dataclass(frozen=True)
class SweepRow:
    omega0: float
    delta0: float
    p_numeric: tuple[float, ...]
    p_analytic: tuple[float, ...]
    residual: float
    wall_time: float

    @property
    def failed(self) -> bool:
        return any(math.isnan(p) for p in self.p_numeric)


@dataclass(frozen=True)
class SweepResult:
    config: RunConfig
    rows: tuple[SweepRow, ...]

    @property
    def n_failed(self) -> int:
        return sum(row.failed for row in self.rows)

    @property
    def state_count(self) -> int:
        return 2 if self.config.system == "two_level" else 3


@dataclass(frozen=True)
class Table3Result:
    """Numeric vs analytic transition table for all three initial states."""

    config: RunConfig
    omega0: float
    delta0: float
    rows: tuple[SweepRow, ...]  # one per initial state 1..3
    majorana_residual: float


def build_drive(config: RunConfig, omega0: float, delta0: float) -> DriveProfile:
    """Drive for one node; omega0/delta0 are the dimensionless products."""
    T = config.width
    return DriveProfile(
        shape=PulseShape(kind=config.shape, width=T),
        peak_rabi=omega0 / T,
        detuning=DetuningProfile(
            magnitude=delta0 / T, smoothing_time=config.tau_jump * T
        ),
    )


def integration_spec(config: RunConfig) -> IntegrationSpec:
    T = config.width
    return IntegrationSpec(
        t_start=config.window[0] * T,
        t_end=config.window[1] * T,
        tolerance=config.tolerance,
    )


def _analytic_populations(config: RunConfig, omega0: float, delta0: float) -> tuple[float, ...]:
    if config.system == "two_level":
        p2 = analytic_p2(omega0, delta0)
        row = (1.0 - p2, p2) if config.initial_state == 1 else (p2, 1.0 - p2)
        return row
    table = analytic_transition_table(omega0, delta0)
    return tuple(table[config.initial_state - 1])


def _residual(config, p_num: tuple[float, ...], p_ana: tuple[float, ...]) -> float:
    # two-level: signed transfer-probability gap; chain: worst state gap
    if config.system == "two_level":
        target = 1 if config.initial_state == 1 else 0
        return p_num[target] - p_ana[target]
    return max(abs(n - a) for n, a in zip(p_num, p_ana))


def _sweep_node(task: tuple[float, float, RunConfig]) -> SweepRow:
    omega0, delta0, config = task
    started = time.perf_counter()
    p_ana = _analytic_populations(config, omega0, delta0)
    drive = build_drive(config, omega0, delta0)
    spec = integration_spec(config)
    try:
        if config.system == "two_level":
            pops, _ = simulate_final_populations(
                drive, spec, config.initial_state, want_propagator=False
            )
        else:
            pops, _ = simulate_three_level(
                drive, spec, config.initial_state, want_propagator=False
            )
        p_num = tuple(float(p) for p in pops)
        residual = _residual(config, p_num, p_ana)
    except Exception:
        p_num = (_NAN,) * len(p_ana)
        residual = _NAN
    return SweepRow(
        omega0=omega0,
        delta0=delta0,
        p_numeric=p_num,
        p_analytic=p_ana,
        residual=residual,
        wall_time=time.perf_counter() - started,
    )


def _run_sweep(config: RunConfig, workers: int = 1) -> SweepResult:
    tasks = [(om, de, config) for om in config.omega0 for de in config.delta0]
    if workers > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(_sweep_node, tasks, chunksize=chunk))
    else:
        rows = tuple(_sweep_node(task) for task in tasks)
    return SweepResult(config=config, rows=rows)


def run_single(
    config: RunConfig,
) -> tuple[SweepResult, list[TrajectoryPoint] | None]:
    """One (omega0, delta0) node, optionally with the state trajectory."""
    if len(config.omega0) != 1 or len(config.delta0) != 1:
        raise ConfigError("single run needs exactly one omega0 and one delta0 value")
    result = _run_sweep(config, workers=1)

    trajectory = None
    if "trajectory" in config.outputs:
        from .integrator import basis_state, propagate
        from .three_level import hamiltonian_matrix_3
        from .two_level import jump_split_hamiltonians

        drive = build_drive(config, config.omega0[0], config.delta0[0])
        if config.system == "two_level":
            H, H_after = jump_split_hamiltonians(drive)
            dim = 2
        else:
            H, H_after = jump_split_hamiltonians(drive, matrix=hamiltonian_matrix_3)
            dim = 3
        _, trajectory = propagate(
            H,
            basis_state(dim, config.initial_state),
            integration_spec(config),
            H_after,
            want_trajectory=True,
        )
    return result, trajectory


def run_fig1_cut(config: RunConfig, workers: int = 1) -> SweepResult:
    """Sweep omega0 at a single fixed delta0."""
    if len(config.delta0) != 1:
        raise ConfigError(
            f"fig1 cut needs a single delta0 value, got {len(config.delta0)}"
        )
    return _run_sweep(config, workers)


def run_grid(config: RunConfig, workers: int = 1) -> SweepResult:
    """Full 2-D sweep over the omega0 x delta0 grid."""
    return _run_sweep(config, workers)


def run_three_level_table(config: RunConfig) -> Table3Result:
    """Numeric and analytic transition tables for every initial state."""
    if config.system != "three_level":
        raise ConfigError("table run requires system: three_level")
    if len(config.omega0) != 1 or len(config.delta0) != 1:
        raise ConfigError("table run needs exactly one omega0 and one delta0 value")
    omega0, delta0 = config.omega0[0], config.delta0[0]
    table = analytic_transition_table(omega0, delta0)
    drive = build_drive(config, omega0, delta0)
    spec = integration_spec(config)

    rows = []
    for initial in (1, 2, 3):
        started = time.perf_counter()
        pops, _ = simulate_three_level(drive, spec, initial, want_propagator=False)
        p_num = tuple(float(p) for p in pops)
        p_ana = tuple(table[initial - 1])
        rows.append(
            SweepRow(
                omega0=omega0,
                delta0=delta0,
                p_numeric=p_num,
                p_analytic=p_ana,
                residual=max(abs(n - a) for n, a in zip(p_num, p_ana)),
                wall_time=time.perf_counter() - started,
            )
        )
    residual = majorana_exactness_residual(drive, spec)
    return Table3Result(
        config=config,
        omega0=omega0,
        delta0=delta0,
        rows=tuple(rows),
        majorana_residual=residual,
    )

"""Schroedinger propagation of complex state vectors and adaptive quadrature.

The propagator integrates i dpsi/dt = H(t) psi (hbar = 1) with an explicit
Runge-Kutta scheme: adaptive DOP853 by default, or a fixed-step classic RK4
when ``IntegrationSpec.step`` is set.  A parameter discontinuity at t = 0 is
handled by splitting the window into segments that never straddle the jump;
the post-jump segment can use its own Hamiltonian callable so that an ideal
step profile is sampled on the correct side at t = 0 exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad, solve_ivp

__all__ = [
    "IntegrationError",
    "QuadratureError",
    "IntegrationSpec",
    "TrajectoryPoint",
    "basis_state",
    "populations",
    "propagate",
    "build_propagator",
    "quadrature",
]

_HERMITICITY_ATOL = 1e-12


class IntegrationError(RuntimeError):
    """Propagation failure; ``time`` holds where the integrator stopped."""

    def __init__(self, message: str, time: float | None = None):
        super().__init__(message)
        self.time = time


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class IntegrationSpec:
    """Window, step control and jump handling for one propagation.

    ``tolerance`` is the local error target of the adaptive scheme (it maps
    to rtol = tolerance, atol = tolerance / 100).  ``step`` switches to the
    fixed-step RK4 fallback with that step size.  A reversed window
    (t_start > t_end) integrates backward in time.
    """

    t_start: float = -20.0
    t_end: float = 20.0
    step: float | None = None
    tolerance: float = 1e-10
    split_at_zero: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.t_start) and math.isfinite(self.t_end)):
            raise ValueError("integration window must be finite")
        if self.t_start == self.t_end:
            raise ValueError("integration window is empty")
        if not (math.isfinite(self.tolerance) and self.tolerance > 0):
            raise ValueError(f"tolerance must be positive, got {self.tolerance!r}")
        if self.step is not None and not (math.isfinite(self.step) and self.step > 0):
            raise ValueError(f"step must be positive, got {self.step!r}")

    def segments(self) -> tuple[tuple[float, float], ...]:
        """Integration segments; the jump at t = 0 is never inside one."""
        a, b = self.t_start, self.t_end
        straddles = (a < 0.0 < b) or (b < 0.0 < a)
        if self.split_at_zero and straddles:
            return ((a, 0.0), (0.0, b))
        return ((a, b),)


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    state: np.ndarray
    populations: np.ndarray


def basis_state(dim: int, index: int) -> np.ndarray:
    """Unit vector |index> (1-based) of the given dimension."""
    if not 1 <= index <= dim:
        raise ValueError(f"basis index {index} outside 1..{dim}")
    psi = np.zeros(dim, dtype=complex)
    psi[index - 1] = 1.0
    return psi


def populations(psi: np.ndarray) -> np.ndarray:
    return np.abs(np.asarray(psi)) ** 2


def _check_hermitian(H: Callable[[float], np.ndarray], ts: Sequence[float], dim: int):
    for t in ts:
        m = np.asarray(H(t))
        if m.shape != (dim, dim):
            raise IntegrationError(
                f"Hamiltonian shape {m.shape} does not match state dimension {dim}",
                time=t,
            )
        if not np.all(np.isfinite(m)):
            raise IntegrationError(f"non-finite Hamiltonian sample at t={t}", time=t)
        scale = max(1.0, float(np.abs(m).max()))
        if np.abs(m - m.conj().T).max() > _HERMITICITY_ATOL * scale:
            raise IntegrationError(f"non-Hermitian Hamiltonian sample at t={t}", time=t)


def _probe_times(a: float, b: float) -> list[float]:
    return [a + x * (b - a) for x in (0.0, 0.25, 0.5, 0.75, 1.0)]


def _rk4_segment(H, y, a, b, h, collect):
    """Classic fixed-step RK4 from a to b (either direction)."""
    n = max(1, math.ceil(abs(b - a) / h))
    dt = (b - a) / n
    t = a
    for _ in range(n):
        k1 = -1j * (H(t) @ y)
        k2 = -1j * (H(t + 0.5 * dt) @ (y + 0.5 * dt * k1))
        k3 = -1j * (H(t + 0.5 * dt) @ (y + 0.5 * dt * k2))
        k4 = -1j * (H(t + dt) @ (y + dt * k3))
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += dt
        if collect is not None:
            collect.append((t, y))
    return y


def propagate(
    hamiltonian: Callable[[float], np.ndarray],
    psi0: np.ndarray,
    spec: IntegrationSpec,
    hamiltonian_after: Callable[[float], np.ndarray] | None = None,
    want_trajectory: bool = False,
) -> tuple[np.ndarray, list[TrajectoryPoint] | None]:
    """Propagate psi0 over the window of ``spec`` under H(t).

    ``hamiltonian_after``, when given, replaces ``hamiltonian`` on the t > 0
    side of the jump split.  Pass it whenever the drive has an ideal step so
    that the boundary sample at t = 0 uses the post-jump branch; smooth
    profiles need only the single callable.

    Returns the final state and, if requested, the accepted-step trajectory.
    """
    psi = np.asarray(psi0, dtype=complex).copy()
    if psi.ndim != 1:
        raise ValueError("psi0 must be a 1-D complex vector")
    dim = psi.shape[0]

    traj: list[TrajectoryPoint] | None = [] if want_trajectory else None
    if want_trajectory:
        traj.append(TrajectoryPoint(spec.t_start, psi.copy(), populations(psi)))

    for a, b in spec.segments():
        positive_side = (a + b) / 2.0 > 0.0
        H = hamiltonian_after if (positive_side and hamiltonian_after is not None) else hamiltonian
        _check_hermitian(H, _probe_times(a, b), dim)

        if spec.step is not None:
            collect = [] if want_trajectory else None
            psi = _rk4_segment(H, psi, a, b, spec.step, collect)
            if want_trajectory:
                for t, y in collect:
                    traj.append(TrajectoryPoint(t, y.copy(), populations(y)))
            continue

        sol = solve_ivp(
            lambda t, y: -1j * (H(t) @ y),
            (a, b),
            psi,
            method="DOP853",
            rtol=spec.tolerance,
            atol=spec.tolerance * 1e-2,
            dense_output=False,
        )
        if sol.status != 0:
            t_fail = float(sol.t[-1]) if sol.t.size else a
            raise IntegrationError(
                f"adaptive step failed at t={t_fail:.6g}: {sol.message}", time=t_fail
            )
        if want_trajectory:
            for k in range(1, sol.t.size):
                y = sol.y[:, k]
                traj.append(TrajectoryPoint(float(sol.t[k]), y.copy(), populations(y)))
        psi = sol.y[:, -1]

    return psi, traj


def build_propagator(
    hamiltonian: Callable[[float], np.ndarray],
    spec: IntegrationSpec,
    hamiltonian_after: Callable[[float], np.ndarray] | None = None,
) -> np.ndarray:
    """Exact-basis propagator U(t_end, t_start), one column per basis state."""
    dim = np.asarray(hamiltonian(spec.t_start)).shape[0]
    U = np.empty((dim, dim), dtype=complex)
    for i in range(dim):
        psi, _ = propagate(hamiltonian, basis_state(dim, i + 1), spec, hamiltonian_after)
        U[:, i] = psi
    return U


def quadrature(
    g: Callable[[float], float],
    t_a: float,
    t_b: float,
    tolerance: float = 1e-12,
) -> float:
    """Adaptive integral of a real function over [t_a, t_b]."""
    if not (math.isfinite(t_a) and math.isfinite(t_b)):
        raise ValueError("quadrature bounds must be finite")
    if not tolerance > 0:
        raise ValueError("quadrature tolerance must be positive")

    def checked(t: float) -> float:
        v = g(t)
        if not math.isfinite(v):
            raise QuadratureError(f"non-finite integrand sample at t={t}")
        return v

    result = quad(checked, t_a, t_b, epsabs=tolerance, epsrel=tolerance, limit=200, full_output=1)
    if len(result) > 3:  # QUADPACK appended a failure message
        raise QuadratureError(f"quadrature did not converge: {result[3]}")
    return float(result[0])

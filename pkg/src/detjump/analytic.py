"""Closed-form stepwise model: adiabatic evolution + one sudden basis kick.

Away from t = 0 the system follows its instantaneous eigenstates and only
accumulates the dynamical phases delta_-/delta_+ (half the time integral of
the gap on each side).  The detuning sign flip rotates the adiabatic basis
by delta_theta = theta(0-) - theta(0+) in one instant.  Chaining the three
pieces and the asymptotic basis rotations gives the full propagator in
Cayley-Klein form and the transfer probability cos^2(delta_theta), which
for the symmetric step reduces to Omega0^2 / (Omega0^2 + Delta0^2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .integrator import quadrature
from .profiles import DriveProfile
from .two_level import mixing_angle, rotation_matrix

__all__ = [
    "PhasePair",
    "JumpAngles",
    "CayleyKlein",
    "accumulate_phases",
    "jump_angles",
    "piecewise_propagator_adiabatic",
    "cayley_klein",
    "cayley_klein_from_propagator",
    "analytic_p2",
]

_FORM_AGREEMENT_TOL = 1e-12


@dataclass(frozen=True)
class PhasePair:
    """Dynamical phases: half the gap integral before / after the jump."""

    delta_minus: float
    delta_plus: float


@dataclass(frozen=True)
class JumpAngles:
    """Mixing angles on both sides of the jump and their difference."""

    theta_minus: float
    theta_plus: float

    @property
    def delta_theta(self) -> float:
        return self.theta_minus - self.theta_plus


@dataclass(frozen=True)
class CayleyKlein:
    """SU(2) propagator parameters: U = [[a, b], [-conj(b), conj(a)]]."""

    a: complex
    b: complex

    def norm_error(self) -> float:
        return abs(abs(self.a) ** 2 + abs(self.b) ** 2 - 1.0)

    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.a, self.b], [-self.b.conjugate(), self.a.conjugate()]]
        )


def accumulate_phases(
    drive: DriveProfile,
    t_start: float,
    t_end: float,
    tolerance: float = 1e-12,
) -> PhasePair:
    """Integrate the dressed-state gap over [t_start, 0] and [0, t_end]."""
    if not t_start < 0.0 < t_end:
        raise ValueError("phase window must contain the jump: t_start < 0 < t_end")
    half_minus = 0.5 * quadrature(drive.splitting, t_start, 0.0, tolerance)
    half_plus = 0.5 * quadrature(drive.splitting, 0.0, t_end, tolerance)
    return PhasePair(delta_minus=half_minus, delta_plus=half_plus)


def jump_angles(drive: DriveProfile) -> JumpAngles:
    """Mixing angles right before and after an ideal detuning step."""
    if drive.detuning.smoothing_time != 0.0:
        raise ValueError("jump angles are defined for the ideal step only")
    omega0 = drive.peak_rabi
    delta0 = drive.detuning.magnitude
    return JumpAngles(
        theta_minus=mixing_angle(omega0, +delta0),
        theta_plus=mixing_angle(omega0, -delta0),
    )


def piecewise_propagator_adiabatic(phases: PhasePair, angles: JumpAngles) -> np.ndarray:
    """Adiabatic-frame propagator: phase, sudden rotation, phase."""
    before = np.diag(
        [cmath.exp(1j * phases.delta_minus), cmath.exp(-1j * phases.delta_minus)]
    )
    after = np.diag(
        [cmath.exp(1j * phases.delta_plus), cmath.exp(-1j * phases.delta_plus)]
    )
    return after @ rotation_matrix(angles.delta_theta).astype(complex) @ before


def cayley_klein(phases: PhasePair, angles: JumpAngles) -> CayleyKlein:
    """Cayley-Klein parameters of the full diabatic-basis propagator.

    a = -exp(+i (delta_- - delta_+)) sin(delta_theta)
    b = -exp(-i (delta_- + delta_+)) cos(delta_theta)
    """
    dth = angles.delta_theta
    a = -cmath.exp(1j * (phases.delta_minus - phases.delta_plus)) * math.sin(dth)
    b = -cmath.exp(-1j * (phases.delta_minus + phases.delta_plus)) * math.cos(dth)
    return CayleyKlein(a=a, b=b)


def cayley_klein_from_propagator(U: np.ndarray) -> CayleyKlein:
    """Read (a, b) = (U11, U12) off a numeric 2x2 propagator.

    The matrix is first renormalized by sqrt(det U): the generators here are
    traceless so det U = 1 up to accumulated numeric error, and the lift to
    higher spin assumes exactly unit determinant.  The leftover sign freedom
    of the square root is irrelevant because the lift is quadratic.
    """
    U = np.asarray(U)
    if U.shape != (2, 2):
        raise ValueError(f"expected a 2x2 propagator, got shape {U.shape}")
    det = U[0, 0] * U[1, 1] - U[0, 1] * U[1, 0]
    root = cmath.sqrt(det)
    return CayleyKlein(a=complex(U[0, 0] / root), b=complex(U[0, 1] / root))


def analytic_p2(omega0: float, delta0: float) -> float:
    """Stepwise-model transfer probability for the symmetric step drive.

    Both closed forms are evaluated: cos^2(delta_theta) through the jump
    angles, and the ratio omega0^2 / (omega0^2 + delta0^2).  They must agree
    to 1e-12, which guards the angle branch choice.
    """
    if omega0 < 0:
        raise ValueError(f"omega0 must be >= 0, got {omega0!r}")
    if delta0 <= 0:
        raise ValueError(
            "delta0 must be positive: at exact resonance the jump is a no-op "
            "and the stepwise model does not apply"
        )
    theta_minus = mixing_angle(omega0, +delta0)
    theta_plus = mixing_angle(omega0, -delta0)
    from_angle = math.cos(theta_minus - theta_plus) ** 2
    from_ratio = omega0 * omega0 / (omega0 * omega0 + delta0 * delta0)
    if abs(from_angle - from_ratio) > _FORM_AGREEMENT_TOL:
        raise AssertionError(
            f"transfer-probability forms disagree: {from_angle!r} vs {from_ratio!r}"
        )
    return from_ratio

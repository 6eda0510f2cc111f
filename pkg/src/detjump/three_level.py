"""Three-state chain with SU(2) symmetry driven by the same fields.

The chain Hamiltonian is Omega(t) Jx - Delta(t) Jz in the spin-1
representation (note: no global 1/2, unlike the two-level case, which is
the spin-1/2 representation of the same generator).  Its propagator is
therefore an exact function of the two-level Cayley-Klein pair (a, b):

    U3 = [[a^2,            sqrt2 a b,         b^2          ],
          [-sqrt2 a b*,    |a|^2 - |b|^2,     sqrt2 a* b   ],
          [b*^2,           -sqrt2 a* b*,      a*^2         ]]

The (3,1) corner is +conj(b)^2; with a minus sign there the matrix is not
unitary (columns 1 and 3 lose orthogonality by 2 |a|^2 |b|^2), and it fails
the exactness cross-check against direct integration by O(1).
"""

from __future__ import annotations

import math

import numpy as np

from .analytic import CayleyKlein, cayley_klein_from_propagator
from .integrator import IntegrationSpec, basis_state, build_propagator, populations, propagate
from .profiles import DriveProfile
from .two_level import jump_split_hamiltonians

__all__ = [
    "hamiltonian_matrix_3",
    "hamiltonian_3",
    "majorana_u3",
    "analytic_transition_table",
    "simulate_three_level",
    "majorana_exactness_residual",
]

_SQRT2 = math.sqrt(2.0)
_CK_NORM_TOL = 1e-9


def hamiltonian_matrix_3(omega: float, delta: float) -> np.ndarray:
    """[[-delta, omega/sqrt2, 0], [omega/sqrt2, 0, omega/sqrt2], [0, omega/sqrt2, delta]]."""
    x = omega / _SQRT2
    return np.array(
        [[-delta, x, 0.0], [x, 0.0, x], [0.0, x, delta]], dtype=complex
    )


def hamiltonian_3(drive: DriveProfile, t: float) -> np.ndarray:
    """Instantaneous chain Hamiltonian of the drive."""
    return hamiltonian_matrix_3(drive.rabi(t), drive.detuning.value(t))


def majorana_u3(ck: CayleyKlein) -> np.ndarray:
    """Lift a two-level SU(2) propagator to the three-state chain."""
    err = ck.norm_error()
    if err > _CK_NORM_TOL:
        raise ValueError(
            f"|a|^2 + |b|^2 deviates from 1 by {err:.3e} (limit {_CK_NORM_TOL:.0e})"
        )
    a, b = ck.a, ck.b
    ac, bc = a.conjugate(), b.conjugate()
    return np.array(
        [
            [a * a, _SQRT2 * a * b, b * b],
            [-_SQRT2 * a * bc, abs(a) ** 2 - abs(b) ** 2, _SQRT2 * ac * b],
            [bc * bc, -_SQRT2 * ac * bc, ac * ac],
        ]
    )


def analytic_transition_table(omega0: float, delta0: float) -> np.ndarray:
    """Stepwise-model transition probabilities, rows = initial state 1..3.

    With s^2 = delta0^2 / (omega0^2 + delta0^2) and c^2 = 1 - s^2:
    row 1 = (s^4, 2 s^2 c^2, c^4), row 2 = (2 s^2 c^2, (s^2 - c^2)^2,
    2 s^2 c^2), row 3 = row 1 reversed.
    """
    if omega0 < 0:
        raise ValueError(f"omega0 must be >= 0, got {omega0!r}")
    if delta0 <= 0:
        raise ValueError(
            "delta0 must be positive: at exact resonance the jump is a no-op "
            "and the stepwise model does not apply"
        )
    denom = omega0 * omega0 + delta0 * delta0
    s2 = delta0 * delta0 / denom
    c2 = omega0 * omega0 / denom
    cross = 2.0 * s2 * c2
    return np.array(
        [
            [s2 * s2, cross, c2 * c2],
            [cross, (s2 - c2) ** 2, cross],
            [c2 * c2, cross, s2 * s2],
        ]
    )


def simulate_three_level(
    drive: DriveProfile,
    spec: IntegrationSpec,
    initial_state: int = 1,
    want_propagator: bool = True,
) -> tuple[np.ndarray, np.ndarray | None]:
    """Numeric final populations (P1, P2, P3) of the chain, plus U3."""
    H, H_after = jump_split_hamiltonians(drive, matrix=hamiltonian_matrix_3)
    psi0 = basis_state(3, initial_state)
    if want_propagator:
        U3 = build_propagator(H, spec, H_after)
        return populations(U3 @ psi0), U3
    psi, _ = propagate(H, psi0, spec, H_after)
    return populations(psi), None


def majorana_exactness_residual(drive: DriveProfile, spec: IntegrationSpec) -> float:
    """Elementwise gap between the integrated chain propagator and the lift.

    Both propagators are computed numerically and independently; the
    residual is limited only by integration error, for any drive, adiabatic
    or not.
    """
    H2, H2_after = jump_split_hamiltonians(drive)
    U2 = build_propagator(H2, spec, H2_after)
    lifted = majorana_u3(cayley_klein_from_propagator(U2))
    H3, H3_after = jump_split_hamiltonians(drive, matrix=hamiltonian_matrix_3)
    U3 = build_propagator(H3, spec, H3_after)
    return float(np.abs(U3 - lifted).max())

"""detjump: population transfer by a detuning sign jump.

Numeric time-dependent Schroedinger dynamics for a driven two-level system
and the SU(2)-symmetric three-state chain, the closed-form adiabatic-sudden
propagator, and sweep tooling that compares the two.
"""

from .analytic import (
    CayleyKlein,
    JumpAngles,
    PhasePair,
    accumulate_phases,
    analytic_p2,
    cayley_klein,
    cayley_klein_from_propagator,
    jump_angles,
    piecewise_propagator_adiabatic,
)
from .config import ConfigError, RunConfig, emit_config, parse_config, parse_grid
from .integrator import (
    IntegrationError,
    IntegrationSpec,
    QuadratureError,
    TrajectoryPoint,
    basis_state,
    build_propagator,
    populations,
    propagate,
    quadrature,
)
from .profiles import DetuningProfile, DriveProfile, PulseShape
from .sweep import (
    SweepResult,
    SweepRow,
    Table3Result,
    run_fig1_cut,
    run_grid,
    run_single,
    run_three_level_table,
)
from .three_level import (
    analytic_transition_table,
    hamiltonian_3,
    hamiltonian_matrix_3,
    majorana_exactness_residual,
    majorana_u3,
    simulate_three_level,
)
from .two_level import (
    AdiabaticSnapshot,
    adiabatic_snapshot,
    hamiltonian_2,
    hamiltonian_matrix,
    mixing_angle,
    rotation_matrix,
    simulate_final_populations,
)

__version__ = "0.1.0"

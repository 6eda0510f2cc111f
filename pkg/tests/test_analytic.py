import cmath
import math

import numpy as np
import pytest

from detjump import (
    CayleyKlein,
    JumpAngles,
    PhasePair,
    accumulate_phases,
    analytic_p2,
    cayley_klein,
    cayley_klein_from_propagator,
    jump_angles,
    piecewise_propagator_adiabatic,
    rotation_matrix,
)

SQ2H = math.sqrt(2.0) / 2.0


class TestAccumulatePhases:
    def test_bare_detuning(self, make_drive):
        phases = accumulate_phases(make_drive(0.0, 5.0), -20.0, 20.0)
        assert phases.delta_minus == pytest.approx(50.0, rel=1e-10)
        assert phases.delta_plus == pytest.approx(50.0, rel=1e-10)

    def test_symmetric_drive(self, make_drive):
        phases = accumulate_phases(make_drive(5.0, 5.0), -20.0, 20.0)
        assert phases.delta_minus == pytest.approx(phases.delta_plus, abs=1e-9)

    def test_against_trapezoid_oracle(self, make_drive):
        drive = make_drive(5.0, 5.0)
        ts = np.linspace(-20.0, 0.0, 1_000_001)
        oracle = 0.5 * float(np.trapezoid(np.hypot(5.0 * np.exp(-ts * ts / 2.0), 5.0), ts))
        phases = accumulate_phases(drive, -20.0, 20.0)
        assert abs(phases.delta_minus - oracle) / oracle <= 1e-6

    def test_window_must_contain_jump(self, make_drive):
        with pytest.raises(ValueError):
            accumulate_phases(make_drive(1.0, 1.0), 1.0, 20.0)
        with pytest.raises(ValueError):
            accumulate_phases(make_drive(1.0, 1.0), -20.0, -1.0)


class TestJumpAngles:
    def test_equal_fields(self, make_drive):
        angles = jump_angles(make_drive(5.0, 5.0))
        assert angles.theta_minus == pytest.approx(math.pi / 8, rel=1e-14)
        assert angles.theta_plus == pytest.approx(3 * math.pi / 8, rel=1e-14)
        assert angles.delta_theta == pytest.approx(-math.pi / 4, rel=1e-14)

    def test_strong_coupling_small_kick(self, make_drive):
        angles = jump_angles(make_drive(100.0, 1.0))
        assert abs(angles.delta_theta) <= 0.011

    def test_weak_coupling_full_kick(self, make_drive):
        angles = jump_angles(make_drive(1e-9, 1.0))
        assert angles.delta_theta == pytest.approx(-math.pi / 2, abs=1e-8)

    def test_requires_ideal_step(self, make_drive):
        with pytest.raises(ValueError):
            jump_angles(make_drive(5.0, 5.0, tau=0.1))


class TestPiecewisePropagator:
    def test_trivial_inputs_give_identity(self):
        U = piecewise_propagator_adiabatic(PhasePair(0.0, 0.0), JumpAngles(0.3, 0.3))
        assert np.abs(U - np.eye(2)).max() <= 1e-15

    def test_zero_kick_is_diagonal(self):
        U = piecewise_propagator_adiabatic(PhasePair(0.7, 1.9), JumpAngles(0.4, 0.4))
        total = 0.7 + 1.9
        expected = np.diag([cmath.exp(1j * total), cmath.exp(-1j * total)])
        assert np.abs(U - expected).max() <= 1e-15

    def test_unitary(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            dm, dp, tm, tp = rng.uniform(0.0, 6.0, 4)
            U = piecewise_propagator_adiabatic(PhasePair(dm, dp), JumpAngles(tm, tp))
            assert np.abs(U.conj().T @ U - np.eye(2)).max() <= 1e-14
            assert abs(abs(np.linalg.det(U)) - 1.0) <= 1e-14


class TestCayleyKlein:
    def test_pure_kick(self):
        ck = cayley_klein(PhasePair(0.0, 0.0), JumpAngles(0.0, math.pi / 4))
        assert ck.a == pytest.approx(SQ2H, abs=1e-15)
        assert ck.b == pytest.approx(-SQ2H, abs=1e-15)

    def test_balanced_moduli(self, make_drive):
        drive = make_drive(5.0, 5.0)
        ck = cayley_klein(accumulate_phases(drive, -20.0, 20.0), jump_angles(drive))
        assert abs(ck.a) ** 2 == pytest.approx(0.5, rel=1e-12)
        assert abs(ck.b) ** 2 == pytest.approx(0.5, rel=1e-12)

    def test_normalized(self):
        rng = np.random.default_rng(29)
        for _ in range(200):
            dm, dp = rng.uniform(0.0, 50.0, 2)
            tm, tp = rng.uniform(0.0, math.pi / 2, 2)
            ck = cayley_klein(PhasePair(dm, dp), JumpAngles(tm, tp))
            assert ck.norm_error() <= 1e-12

    def test_moduli_ignore_phases(self):
        angles = JumpAngles(0.9, 0.2)
        reference = cayley_klein(PhasePair(0.0, 0.0), angles)
        rng = np.random.default_rng(31)
        for _ in range(50):
            ck = cayley_klein(PhasePair(*rng.uniform(0.0, 40.0, 2)), angles)
            assert abs(ck.a) == pytest.approx(abs(reference.a), abs=1e-15)
            assert abs(ck.b) == pytest.approx(abs(reference.b), abs=1e-15)

    def test_matrix_matches_composed_propagator(self):
        # asymptotic rotations (identity before, quarter turn after) applied
        # to the adiabatic-frame product must reproduce the (a, b) matrix
        rng = np.random.default_rng(37)
        R_end = rotation_matrix(math.pi / 2).astype(complex)
        for _ in range(100):
            phases = PhasePair(*rng.uniform(0.0, 30.0, 2))
            om, de = rng.uniform(1e-3, 10.0, 2)
            angles = JumpAngles(
                0.5 * math.atan2(om, de), 0.5 * math.atan2(om, -de)
            )
            composed = R_end @ piecewise_propagator_adiabatic(phases, angles)
            ck = cayley_klein(phases, angles)
            assert np.abs(composed - ck.matrix()).max() <= 1e-12
            assert abs(composed[1, 0]) ** 2 == pytest.approx(
                analytic_p2(om, de), abs=1e-12
            )

    def test_extraction_from_propagator(self):
        ck = cayley_klein(PhasePair(1.3, 0.4), JumpAngles(0.8, 0.1))
        recovered = cayley_klein_from_propagator(ck.matrix())
        same = abs(recovered.a - ck.a) + abs(recovered.b - ck.b)
        negated = abs(recovered.a + ck.a) + abs(recovered.b + ck.b)
        assert min(same, negated) <= 1e-12

    def test_extraction_strips_global_phase(self):
        ck = cayley_klein(PhasePair(2.0, 0.7), JumpAngles(0.9, 0.3))
        tilted = cmath.exp(0.37j) * ck.matrix()
        recovered = cayley_klein_from_propagator(tilted)
        assert recovered.norm_error() <= 1e-12
        same = abs(recovered.a - ck.a) + abs(recovered.b - ck.b)
        negated = abs(recovered.a + ck.a) + abs(recovered.b + ck.b)
        assert min(same, negated) <= 1e-12

    def test_extraction_requires_2x2(self):
        with pytest.raises(ValueError):
            cayley_klein_from_propagator(np.eye(3))


class TestAnalyticP2:
    def test_reference_points(self):
        assert analytic_p2(5.0, 5.0) == 0.5
        assert analytic_p2(0.0, 3.0) == 0.0
        assert analytic_p2(10.0, 5.0) == pytest.approx(0.8, rel=1e-15)

    def test_angle_and_ratio_forms_agree(self):
        rng = np.random.default_rng(41)
        for _ in range(10_000):
            om, de = rng.uniform(0.0, 10.0, 2)
            if de <= 0.0:
                continue
            p2 = analytic_p2(om, de)
            assert p2 == pytest.approx(om * om / (om * om + de * de), abs=1e-12)
            kick = 2.0 * (math.pi / 4 - 0.5 * math.atan2(om, de))
            assert p2 == pytest.approx(math.cos(kick) ** 2, abs=1e-12)

    def test_resonance_rejected(self):
        with pytest.raises(ValueError):
            analytic_p2(5.0, 0.0)
        with pytest.raises(ValueError):
            analytic_p2(5.0, -1.0)
        with pytest.raises(ValueError):
            analytic_p2(-5.0, 1.0)

import math

import numpy as np
import pytest
from scipy.linalg import expm

from detjump import (
    CayleyKlein,
    IntegrationSpec,
    PhasePair,
    analytic_transition_table,
    cayley_klein,
    cayley_klein_from_propagator,
    hamiltonian_3,
    jump_angles,
    majorana_exactness_residual,
    majorana_u3,
    simulate_three_level,
)
from detjump.three_level import hamiltonian_matrix_3
from detjump.two_level import hamiltonian_matrix


def random_cayley_klein(rng):
    z = rng.normal(size=4)
    a, b = complex(z[0], z[1]), complex(z[2], z[3])
    norm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    return CayleyKlein(a / norm, b / norm)


class TestHamiltonian3:
    def test_uncoupled_ladder(self, make_drive):
        H = hamiltonian_matrix_3(0.0, 2.0)
        assert np.allclose(H, np.diag([-2.0, 0.0, 2.0]))
        drive = make_drive(0.0, 2.0)
        assert np.allclose(hamiltonian_3(drive, -1.0), np.diag([-2.0, 0.0, 2.0]))

    def test_traceless(self, make_drive):
        drive = make_drive(6.0, 3.0, shape="sech")
        for t in (-4.0, -0.5, 0.5, 2.0):
            assert abs(np.trace(hamiltonian_3(drive, t))) == 0.0

    def test_coupling_normalization(self):
        H = hamiltonian_matrix_3(2.0, 0.0)
        assert H[0, 1] == pytest.approx(math.sqrt(2.0), rel=1e-15)
        assert H[1, 2] == pytest.approx(math.sqrt(2.0), rel=1e-15)
        assert H[0, 2] == 0.0

    def test_ladder_spectrum_oracle(self):
        # brute-force eigensolve: the spectrum must be {-gap, 0, +gap}
        rng = np.random.default_rng(13)
        for _ in range(50):
            om, de = rng.uniform(0.0, 10.0, 2)
            gap = math.hypot(om, de)
            eigs = np.linalg.eigvalsh(hamiltonian_matrix_3(om, de))
            assert np.abs(np.sort(eigs) - np.array([-gap, 0.0, gap])).max() <= 1e-12


class TestMajoranaLift:
    def test_identity_lift(self):
        U3 = majorana_u3(CayleyKlein(1.0 + 0j, 0.0j))
        assert np.abs(U3 - np.eye(3)).max() <= 1e-15

    def test_full_swap_lift(self):
        # unitarity forces the (3,1) corner to +conj(b)^2
        U3 = majorana_u3(CayleyKlein(0.0j, 1.0 + 0j))
        expected = np.array([[0, 0, 1], [0, -1, 0], [1, 0, 0]], dtype=complex)
        assert np.abs(U3 - expected).max() <= 1e-15

    def test_unitary_for_random_pairs(self):
        rng = np.random.default_rng(19)
        for _ in range(1000):
            U3 = majorana_u3(random_cayley_klein(rng))
            assert np.abs(U3.conj().T @ U3 - np.eye(3)).max() <= 1e-12

    def test_middle_element_real(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            U3 = majorana_u3(random_cayley_klein(rng))
            assert abs(U3[1, 1].imag) <= 1e-12

    def test_corner_relation(self):
        rng = np.random.default_rng(33)
        ck = random_cayley_klein(rng)
        U3 = majorana_u3(ck)
        assert U3[0, 2] == pytest.approx(ck.b**2, abs=1e-15)
        assert U3[2, 0] == pytest.approx(ck.b.conjugate() ** 2, abs=1e-15)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            majorana_u3(CayleyKlein(1.0 + 0j, 1.0 + 0j))

    def test_matches_matrix_exponential_oracle(self):
        # same generator coefficients in both representations: the lift of
        # exp(-i H2 t) must equal exp(-i H3 t) exactly
        rng = np.random.default_rng(27)
        for _ in range(25):
            om, de, t = rng.uniform(0.2, 5.0, 3)
            U2 = expm(-1j * hamiltonian_matrix(om, de) * t)
            U3 = expm(-1j * hamiltonian_matrix_3(om, de) * t)
            lifted = majorana_u3(cayley_klein_from_propagator(U2))
            assert np.abs(U3 - lifted).max() <= 1e-12


class TestAnalyticTable:
    def test_balanced_rows(self):
        table = analytic_transition_table(5.0, 5.0)
        assert np.allclose(table[0], [0.25, 0.5, 0.25], atol=1e-15)
        assert np.allclose(table[1], [0.5, 0.0, 0.5], atol=1e-15)

    def test_strong_coupling_values(self):
        table = analytic_transition_table(10.0, 1.0)
        assert table[0, 2] == pytest.approx((100.0 / 101.0) ** 2, rel=1e-14)
        assert table[0, 1] == pytest.approx(2.0 * 100.0 / 101.0**2, rel=1e-14)
        assert table[0, 0] == pytest.approx((1.0 / 101.0) ** 2, rel=1e-14)

    def test_matches_lift_moduli(self, make_drive):
        rng = np.random.default_rng(43)
        for _ in range(100):
            om, de = rng.uniform(0.1, 10.0, 2)
            drive = make_drive(om, de)
            ck = cayley_klein(PhasePair(*rng.uniform(0.0, 20.0, 2)), jump_angles(drive))
            table = analytic_transition_table(om, de)
            assert np.abs(np.abs(majorana_u3(ck)) ** 2 - table).max() <= 1e-12

    def test_doubly_stochastic(self):
        rng = np.random.default_rng(47)
        for _ in range(200):
            om, de = rng.uniform(0.1, 10.0, 2)
            table = analytic_transition_table(om, de)
            assert np.abs(table.sum(axis=0) - 1.0).max() <= 1e-12
            assert np.abs(table.sum(axis=1) - 1.0).max() <= 1e-12

    def test_mirror_symmetry(self):
        rng = np.random.default_rng(53)
        for _ in range(100):
            om, de = rng.uniform(0.1, 10.0, 2)
            table = analytic_transition_table(om, de)
            assert np.abs(table[2] - table[0][::-1]).max() <= 1e-15

    def test_middle_state_protection(self):
        rng = np.random.default_rng(59)
        for _ in range(200):
            de = rng.uniform(0.1, 1.0)
            om = de * rng.uniform(10.0, 100.0)
            p22 = analytic_transition_table(om, de)[1, 1]
            assert p22 >= 1.0 - 4.0 * (de / om) ** 2 - 1e-9

    def test_resonance_rejected(self):
        with pytest.raises(ValueError):
            analytic_transition_table(5.0, 0.0)


class TestSimulate:
    def test_no_pulse_preserves_populations(self, make_drive, default_spec):
        for start in (1, 2, 3):
            pops, _ = simulate_three_level(
                make_drive(0.0, 5.0), default_spec, start, want_propagator=False
            )
            others = [p for i, p in enumerate(pops) if i != start - 1]
            assert max(others) <= 1e-12  # diagonal evolution moves nothing
            assert pops[start - 1] == pytest.approx(1.0, abs=10 * default_spec.tolerance)

    def test_adiabatic_middle_state_balanced(self, make_drive, default_spec):
        pops, _ = simulate_three_level(
            make_drive(5.0, 5.0), default_spec, 2, want_propagator=False
        )
        assert pops[1] == pytest.approx(0.0, abs=0.02)
        assert pops[0] == pytest.approx(pops[2], abs=1e-6)

    def test_nonadiabatic_outer_transfer(self, make_drive, default_spec):
        # converged value from the integrator itself (stable for tolerances
        # 1e-8 .. 1e-12); the stepwise table sits ~0.11 away at this point
        # because the chain is far from adiabatic at this small detuning
        pops, _ = simulate_three_level(
            make_drive(8.0, 2.0), default_spec, 1, want_propagator=False
        )
        assert pops[2] == pytest.approx(0.9958509, abs=1e-5)

    def test_propagator_unitary_and_consistent(self, make_drive, default_spec):
        pops, U3 = simulate_three_level(make_drive(6.0, 4.0), default_spec, 1)
        assert np.abs(U3.conj().T @ U3 - np.eye(3)).max() <= 1e-8
        assert pops.sum() == pytest.approx(1.0, abs=1e-8)
        assert np.abs(pops - np.abs(U3[:, 0]) ** 2).max() <= 1e-12


class TestMajoranaExactness:
    @pytest.mark.parametrize("om,de", [(5.0, 5.0), (0.8, 0.7)])
    def test_residual_small_for_any_drive(self, make_drive, default_spec, om, de):
        # structural identity between the representations: holds equally in
        # and out of the adiabatic regime
        residual = majorana_exactness_residual(make_drive(om, de), default_spec)
        assert residual <= 1e-6

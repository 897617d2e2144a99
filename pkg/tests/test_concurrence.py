import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.stats import unitary_group

from conftest import SPIN_BRANCHES, make_state
from entities.grid import PhasePoint, default_grid
from entities.wigner import SampledWigner, WignerMatrixField, omega_matrix
from features.concurrence import (TwoQubitDensity, bloch_vectors, concurrence_general, concurrence_pure_bloch,
                                  concurrence_sq_field, concurrence_sq_tabulated, concurrence_sq_trace,
                                  eof_from_concurrence, spin_flip, spin_parity_density, wigner_spin_flip)
from features.quantifiers import entropy_sp_closed
from utils.errors import ArgumentError, PreconditionError
from utils.numerics import integrate_2d


BELL = TwoQubitDensity.from_ket([1, 0, 0, 1])
PRODUCT = TwoQubitDensity.from_ket([1, 0, 0, 0])


def werner(p):
    return TwoQubitDensity(p * BELL.matrix + (1 - p) * np.eye(4) / 4)


def random_mixed(rng):
    ginibre = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    matrix = ginibre @ ginibre.conj().T
    return TwoQubitDensity(matrix / np.trace(matrix))


class TestTwoQubitDensity:
    def test_from_ket_normalises(self):
        rho = TwoQubitDensity.from_ket([3, 0, 0, 4])
        assert np.trace(rho.matrix) == pytest.approx(1.0)
        assert rho.purity() == pytest.approx(1.0)

    @pytest.mark.parametrize('matrix', [
        np.eye(4),
        np.diag([1.5, -0.5, 0, 0]),
        np.array([[0.5, 0.1, 0, 0], [0.3, 0.5, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
    ])
    def test_validate_rejects(self, matrix):
        with pytest.raises(ArgumentError):
            TwoQubitDensity(matrix).validate()

    def test_shape(self):
        with pytest.raises(ArgumentError):
            TwoQubitDensity(np.eye(2))

    def test_zero_ket(self):
        with pytest.raises(ArgumentError):
            TwoQubitDensity.from_ket([0, 0, 0, 0])

    def test_bloch_vectors_of_bell_state(self):
        a, b, t = bloch_vectors(BELL)
        assert_allclose(a, 0, atol=1e-15)
        assert_allclose(b, 0, atol=1e-15)
        assert_allclose(t, np.diag([1, -1, 1]), atol=1e-15)


class TestConcurrence:
    def test_reference_states(self):
        assert concurrence_general(BELL) == pytest.approx(1.0, abs=1e-10)
        assert concurrence_general(PRODUCT) == pytest.approx(0.0, abs=1e-10)
        assert concurrence_general(werner(0.8)) == pytest.approx(0.7, abs=1e-10)
        assert concurrence_general(werner(0.2)) == 0.0

    def test_bloch_route_matches(self, rng):
        for _ in range(200):
            rho = TwoQubitDensity.from_ket(rng.normal(size=4) + 1j * rng.normal(size=4))
            assert concurrence_pure_bloch(rho) == pytest.approx(concurrence_general(rho), abs=1e-8)

    def test_round_off_eigenvalues_are_dropped(self, rng):
        for _ in range(20):
            local = np.kron(unitary_group.rvs(2, random_state=rng), unitary_group.rvs(2, random_state=rng))
            rotated = TwoQubitDensity(local @ BELL.matrix @ local.conj().T)
            assert concurrence_general(rotated) == pytest.approx(1.0, abs=1e-10)

    def test_pure_states_to_round_off(self, rng):
        for _ in range(50):
            rho = TwoQubitDensity.from_ket(rng.normal(size=4) + 1j * rng.normal(size=4))
            assert concurrence_pure_bloch(rho) == pytest.approx(concurrence_general(rho), abs=1e-10)

    def test_bloch_route_needs_pure_state(self):
        with pytest.raises(PreconditionError):
            concurrence_pure_bloch(werner(0.5))

    def test_local_unitary_invariance(self, rng):
        for _ in range(20):
            rho = random_mixed(rng)
            local = np.kron(unitary_group.rvs(2, random_state=rng), unitary_group.rvs(2, random_state=rng))
            rotated = TwoQubitDensity(local @ rho.matrix @ local.conj().T)
            assert concurrence_general(rotated) == pytest.approx(concurrence_general(rho), abs=1e-8)

    def test_spin_flip_of_bell_state(self):
        assert_allclose(spin_flip(BELL.matrix), BELL.matrix, atol=1e-15)


class TestEntanglementOfFormation:
    def test_endpoints(self):
        assert eof_from_concurrence(0.0) == 0.0
        assert eof_from_concurrence(1.0) == pytest.approx(1.0, abs=1e-15)

    def test_monotone(self):
        values = eof_from_concurrence(np.linspace(0, 1, 201))
        assert np.all(np.diff(values) > 0)

    @pytest.mark.parametrize('value', [-0.1, 1.1, np.nan])
    def test_range(self, value):
        with pytest.raises(ArgumentError):
            eof_from_concurrence(value)


class TestConcurrenceField:
    def test_value_at_origin(self, state):
        assert concurrence_sq_field(state, PhasePoint(0.0, 0.0)) == pytest.approx(-1 / (4 * np.pi ** 2))
        assert concurrence_sq_tabulated(state, PhasePoint(0.0, 0.0)) == pytest.approx(1 / (4 * np.pi ** 2))

    @pytest.mark.parametrize('spin, r', SPIN_BRANCHES)
    @pytest.mark.parametrize('n', [1, 2, 3])
    def test_trace_route(self, n, spin, r, rng):
        st = make_state(n, spin, r, eps=2.0, kappa=0.5)
        points = PhasePoint(rng.uniform(-3, 3, 1000), rng.uniform(-3, 3, 1000))
        traced = concurrence_sq_trace(omega_matrix(st, points))
        assert np.max(np.abs(traced - concurrence_sq_field(st, points))) / st.eB < 1e-10

    def test_checked_evaluation(self, state):
        points = PhasePoint(np.linspace(-2, 2, 11), np.linspace(1, -1, 11))
        concurrence_sq_field(state, points, check=True)

    def test_same_for_all_branches(self):
        points = PhasePoint(np.linspace(-2, 2, 11), np.linspace(-1, 1, 11))
        reference = concurrence_sq_field(make_state(2, '+', 1), points)
        for spin, r in SPIN_BRANCHES:
            assert_allclose(concurrence_sq_field(make_state(2, spin, r), points), reference, atol=1e-15)

    @pytest.mark.parametrize('n', [1, 2])
    def test_integrates_to_zero(self, n):
        st = make_state(n)
        grid = default_grid(n, points=256)
        assert abs(integrate_2d(lambda p: concurrence_sq_field(st, p), grid)) < 1e-8
        assert abs(integrate_2d(lambda p: concurrence_sq_tabulated(st, p), grid)) < 1e-8

    def test_wigner_spin_flip_is_an_involution(self, state):
        omega = omega_matrix(state, PhasePoint(0.4, -0.9))
        assert_allclose(wigner_spin_flip(wigner_spin_flip(omega)), omega, atol=1e-15)


class TestSpinParityDensity:
    @pytest.mark.parametrize('spin, r', SPIN_BRANCHES)
    def test_is_a_density_matrix(self, spin, r):
        st = make_state(1, spin, r)
        rho = spin_parity_density(WignerMatrixField(st), default_grid(1, points=256))
        rho.validate()
        assert 1.0 - rho.purity() == pytest.approx(entropy_sp_closed(st), abs=1e-8)
        assert 0.0 <= concurrence_general(rho) <= 1.0

    def test_sampled_field(self, state):
        grid = default_grid(1, points=256)
        sampled = SampledWigner(state, grid)
        expected = spin_parity_density(WignerMatrixField(state), grid).matrix
        assert_allclose(spin_parity_density(sampled, grid).matrix, expected, atol=1e-15)
        # a different grid falls back to evaluating the field there
        other = default_grid(1, points=128)
        assert_allclose(spin_parity_density(sampled, other).matrix,
                        spin_parity_density(WignerMatrixField(state), other).matrix, atol=1e-15)

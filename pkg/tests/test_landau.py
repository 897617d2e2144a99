import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import SPIN_BRANCHES, make_state
from entities.landau import (LandauState, PhysParams, coefficients, energy, oscillator_energy,
                             s_coordinate, spinor, spinor_from_s, spinor_layout)
from utils.errors import ArgumentError
from utils.numerics import integrate_1d


class TestPhysParams:
    def test_from_dimensionless(self):
        params = PhysParams.from_dimensionless(2.0, 4.0, m=3.0)
        assert params.eB == pytest.approx(18.0)
        assert params.k_z == pytest.approx(6.0)
        assert params.eps == pytest.approx(2.0)
        assert params.kappa == pytest.approx(4.0)

    @pytest.mark.parametrize('kwargs', [dict(eB=0.0), dict(eB=1.0, m=0.0), dict(eB=np.nan), dict(eB=1.0, k_z=np.inf)])
    def test_validation(self, kwargs):
        with pytest.raises(ArgumentError):
            PhysParams(**kwargs)

    @pytest.mark.parametrize('eps, kappa', [(0.0, 1.0), (1.0, -0.5)])
    def test_dimensionless_validation(self, eps, kappa):
        with pytest.raises(ArgumentError):
            PhysParams.from_dimensionless(eps, kappa)


class TestLandauState:
    def test_energy_and_coefficients(self, state):
        assert state.energy == pytest.approx(2.0)
        a, b, eta = coefficients(state)
        assert a == pytest.approx(1 / 3)
        assert b == pytest.approx(np.sqrt(2) / 3)
        assert eta == pytest.approx(3 / 4)

    @pytest.mark.parametrize('eps', [0.1, 1.0, 10.0])
    @pytest.mark.parametrize('kappa', [0.0, 1.0, 100.0])
    @pytest.mark.parametrize('n', [1, 7, 20])
    def test_normalisation_identity(self, n, eps, kappa):
        a, b, eta = coefficients(make_state(n, eps=eps, kappa=kappa))
        assert eta * ((1 + a * a) + b * b) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize('n', [1, 2, 10])
    def test_degeneracy(self, n):
        params = PhysParams.from_dimensionless(1.5, 0.3)
        assert oscillator_energy(n - 1, '+', params) == pytest.approx(energy(n, params), rel=1e-14)
        assert oscillator_energy(n, '-', params) == pytest.approx(energy(n, params), rel=1e-14)

    def test_oscillator_energy_validation(self):
        params = PhysParams.from_dimensionless(1.0, 1.0)
        with pytest.raises(ArgumentError):
            oscillator_energy(-1, '+', params)
        with pytest.raises(ArgumentError):
            oscillator_energy(0, 'up', params)

    @pytest.mark.parametrize('kwargs', [dict(n=0), dict(n=1, r=3), dict(n=1, spin='up'), dict(n=True)])
    def test_validation(self, kwargs):
        params = PhysParams.from_dimensionless(1.0, 1.0)
        arguments = dict(n=1, r=1, spin='+', params=params)
        arguments.update(kwargs)
        with pytest.raises(ArgumentError):
            LandauState(**arguments)

    def test_label(self):
        assert make_state(3, '-', 2).label() == 'u-_3,2'

    @pytest.mark.parametrize('spin, r, leading', [('+', 1, 2), ('-', 1, 3), ('+', 2, 3), ('-', 2, 2)])
    def test_leading_order(self, spin, r, leading):
        st = make_state(3, spin, r)
        assert st.leading_order == leading
        assert st.other_order == 5 - leading


class TestSpinors:
    def test_layout_of_plus_one(self, state):
        layout = spinor_layout(state)
        assert layout[1] == (0.0, None)
        assert layout[0] == (1.0, 0)
        assert layout[3][0] == pytest.approx(-np.sqrt(2) / 3)
        assert layout[3][1] == 1

    @pytest.mark.parametrize('spin, r', SPIN_BRANCHES)
    @pytest.mark.parametrize('n', [1, 2, 5])
    def test_normalised(self, n, spin, r):
        st = make_state(n, spin, r, eps=2.0, kappa=0.5)
        norm = integrate_1d(lambda s: np.sum(np.abs(spinor_from_s(st, s)) ** 2, axis=-1), -20, 20, 4096)
        assert norm / np.sqrt(st.eB) == pytest.approx(1.0, abs=1e-8)

    def test_spin_states_orthogonal(self):
        up, down = make_state(2, '+', 1), make_state(2, '-', 1)
        overlap = integrate_1d(lambda s: np.sum(spinor_from_s(up, s).conj() * spinor_from_s(down, s), axis=-1),
                               -20, 20, 4096)
        assert abs(overlap) < 1e-10

    def test_s_coordinate_shifts_with_ky(self):
        params = PhysParams(eB=4.0, m=1.0, k_y=2.0)
        st1 = LandauState(1, 1, '+', params)
        st2 = LandauState(1, 2, '+', params)
        assert s_coordinate(0.0, st1) == pytest.approx(-1.0)
        assert s_coordinate(0.0, st2) == pytest.approx(1.0)

    def test_spinor_in_position(self, state):
        x = np.linspace(-2, 2, 7)
        assert_allclose(spinor(state, x), spinor_from_s(state, s_coordinate(x, state)))
        assert spinor(state, x).shape == (7, 4)

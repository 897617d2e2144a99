import numpy as np
import pytest
from numpy.testing import assert_allclose

from utils.errors import ArgumentError
from utils.specfun import hermite_fn, hermite_poly, laguerre, laguerre_deriv


class TestHermite:
    def test_low_order_polynomials(self):
        s = np.linspace(-3, 3, 13)
        assert_allclose(hermite_poly(0, s), np.ones_like(s))
        assert_allclose(hermite_poly(1, s), 2 * s)
        assert_allclose(hermite_poly(2, s), 4 * s ** 2 - 2)
        assert_allclose(hermite_poly(3, s), 8 * s ** 3 - 12 * s)

    def test_ground_state(self):
        s = np.linspace(-4, 4, 9)
        assert_allclose(hermite_fn(0, s, 1.0), np.pi ** -0.25 * np.exp(-s * s / 2))

    def test_matches_polynomial_form(self):
        s = np.linspace(-3, 3, 25)
        n = 5
        expected = hermite_poly(n, s) * np.exp(-s * s / 2) / np.sqrt(2 ** n * 120 * np.sqrt(np.pi))
        assert_allclose(hermite_fn(n, s, 1.0), expected, atol=1e-14)

    def test_orthonormality(self):
        s = np.linspace(-13.0, 13.0, 4096)
        weights = np.full(s.size, s[1] - s[0])
        weights[[0, -1]] *= 0.5
        table = np.array([hermite_fn(n, s, 1.0) for n in range(21)])
        gram = (table * weights) @ table.T
        assert np.max(np.abs(gram - np.eye(21))) < 1e-8

    def test_eB_scaling(self):
        s = np.linspace(-2, 2, 5)
        assert_allclose(hermite_fn(3, s, 16.0), 2.0 * hermite_fn(3, s, 1.0))

    def test_order_minus_one_is_zero(self):
        assert_allclose(hermite_fn(-1, np.linspace(-1, 1, 5), 1.0), np.zeros(5))

    def test_large_order_stays_finite(self):
        values = hermite_fn(200, np.linspace(-20, 20, 401), 1.0)
        assert np.all(np.isfinite(values))
        assert np.max(np.abs(values)) < 1.0

    def test_scalar_argument(self):
        assert np.ndim(hermite_fn(2, 0.5, 1.0)) == 0

    @pytest.mark.parametrize('n', [-2, 1.5, True])
    def test_invalid_order(self, n):
        with pytest.raises(ArgumentError):
            hermite_fn(n, 0.0, 1.0)

    @pytest.mark.parametrize('eB', [0.0, -1.0])
    def test_invalid_coupling(self, eB):
        with pytest.raises(ArgumentError):
            hermite_fn(1, 0.0, eB)


class TestLaguerre:
    def test_low_orders(self):
        t = np.linspace(0, 10, 21)
        assert_allclose(laguerre(0, t), np.ones_like(t))
        assert_allclose(laguerre(1, t), 1 - t)
        assert_allclose(laguerre(2, t), 1 - 2 * t + t * t / 2)

    def test_value_at_origin(self):
        for n in range(10):
            assert laguerre(n, 0.0) == pytest.approx(1.0)

    def test_derivative_low_orders(self):
        t = np.linspace(0, 5, 11)
        assert_allclose(laguerre_deriv(0, t), np.zeros_like(t))
        assert_allclose(laguerre_deriv(1, t), -np.ones_like(t))
        assert_allclose(laguerre_deriv(2, t), t - 2, atol=1e-14)

    def test_derivative_at_origin(self):
        for n in range(1, 15):
            assert laguerre_deriv(n, 0.0) == pytest.approx(-n)

    @pytest.mark.parametrize('n', [1, 5, 12, 20])
    def test_derivative_against_finite_difference(self, n):
        t = np.linspace(0.0, 50.0, 101)
        h = 1e-6
        finite = (laguerre(n, t + h) - laguerre(n, t - h)) / (2 * h)
        exact = laguerre_deriv(n, t)
        assert np.max(np.abs(exact - finite) / np.maximum(1.0, np.abs(exact))) < 1e-6

    def test_derivative_continuous_across_switch(self):
        below, above = laguerre_deriv(7, 1.0 - 1e-12), laguerre_deriv(7, 1.0)
        assert below == pytest.approx(above, rel=1e-9)

    def test_invalid_order(self):
        with pytest.raises(ArgumentError):
            laguerre(-1, 0.0)

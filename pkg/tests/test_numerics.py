import numpy as np
import pytest
from numpy.testing import assert_allclose

from entities.grid import PhasePoint, QuadratureGrid, default_grid, trapezoid_rule, turning_point
from utils.errors import ArgumentError, NumericalAccuracyError
from utils.numerics import integrate_1d, integrate_2d, pairwise_sum, resolution_residual, sample_2d, weighted_sum


def gaussian(p):
    return np.exp(-p.radius_sq)


class TestPhasePoint:
    def test_radius(self):
        assert PhasePoint(3.0, 4.0).radius_sq == pytest.approx(25.0)

    @pytest.mark.parametrize('s, k', [(np.nan, 0.0), (0.0, np.inf)])
    def test_rejects_non_finite(self, s, k):
        with pytest.raises(ArgumentError):
            PhasePoint(s, k)


class TestQuadratureGrid:
    def test_trapezoid_weights_sum_to_area(self):
        grid = QuadratureGrid(-2, 2, -1, 3, 33, 65)
        assert grid.weights().sum() == pytest.approx(16.0)

    def test_trapezoid_rule_is_shared(self):
        nodes, weights = trapezoid_rule(-2.0, 2.0, 33)
        assert_allclose(nodes, np.linspace(-2, 2, 33))
        assert weights[0] == weights[-1] == pytest.approx(0.5 * weights[1])
        assert weights.sum() == pytest.approx(4.0)
        s_nodes, s_weights = QuadratureGrid(-2, 2, -1, 3, 33, 65).axis('s')
        assert_allclose(s_nodes, nodes)
        assert_allclose(s_weights, weights)

    def test_points_layout(self):
        grid = QuadratureGrid(-1, 1, -2, 2, 17, 33)
        points = grid.points()
        assert points.s.shape == (17, 33)
        assert_allclose(points.s[:, 0], np.linspace(-1, 1, 17))
        assert_allclose(points.k[0], np.linspace(-2, 2, 33))

    def test_gauss_hermite_integrates_gaussian(self):
        grid = QuadratureGrid.gauss_hermite(40)
        assert integrate_2d(gaussian, grid) == pytest.approx(np.pi, rel=1e-12)

    def test_coarsened_and_refined(self):
        grid = QuadratureGrid(-1, 1, -1, 1, 65, 65)
        assert grid.coarsened().n_s == 33
        assert grid.refined().n_s == 129
        assert QuadratureGrid(-1, 1, -1, 1, 16, 16).coarsened().n_s == 16

    @pytest.mark.parametrize('kwargs', [
        dict(s_min=1, s_max=-1, k_min=-1, k_max=1),
        dict(s_min=-1, s_max=1, k_min=-1, k_max=1, n_s=8),
        dict(s_min=-1, s_max=1, k_min=-1, k_max=1, rule='simpson'),
        dict(s_min=-np.inf, s_max=1, k_min=-1, k_max=1),
    ])
    def test_validation(self, kwargs):
        with pytest.raises(ArgumentError):
            QuadratureGrid(**kwargs)

    def test_axis_name(self):
        with pytest.raises(ArgumentError):
            QuadratureGrid(-1, 1, -1, 1, 16, 16).axis('x')

    def test_default_grid(self):
        grid = default_grid(3, pad=6.0, points=128)
        assert grid.s_max == pytest.approx(turning_point(3) + 6.0)
        assert grid.k_min == pytest.approx(-grid.s_max)
        assert grid.n_s == grid.n_k == 128

    def test_default_grid_pad(self):
        with pytest.raises(ArgumentError):
            default_grid(1, pad=0.0)


class TestIntegration:
    def test_gaussian_1d(self):
        assert integrate_1d(lambda s: np.exp(-s * s), -10, 10, 401) == pytest.approx(np.sqrt(np.pi), rel=1e-12)

    def test_gaussian_2d(self):
        grid = default_grid(0, points=128)
        assert integrate_2d(gaussian, grid, check=True) == pytest.approx(np.pi, rel=1e-12)

    def test_under_resolved_grid_raises(self):
        grid = QuadratureGrid(-5, 5, -5, 5, 17, 17)
        with pytest.raises(NumericalAccuracyError) as error:
            integrate_2d(lambda p: np.cos(20 * p.s) * np.exp(-p.radius_sq), grid, check=True)
        assert error.value.residual > 1e-8

    def test_non_finite_integrand_reports_location(self):
        grid = QuadratureGrid(-1, 1, -1, 1, 17, 17)
        with pytest.raises(NumericalAccuracyError) as error:
            integrate_2d(lambda p: 1.0 / p.s, grid)
        assert error.value.location[0] == pytest.approx(0.0)

    def test_nan_in_1d(self):
        with pytest.raises(NumericalAccuracyError):
            integrate_1d(lambda s: np.log(s), -1, 1, 17)

    def test_too_few_nodes(self):
        with pytest.raises(ArgumentError):
            integrate_1d(np.sin, 0, 1, 8)

    def test_constant_integrand_broadcasts(self):
        grid = QuadratureGrid(0, 2, 0, 3, 16, 16)
        assert integrate_2d(lambda p: 1.0, grid) == pytest.approx(6.0)

    def test_matrix_valued_integrand(self):
        grid = default_grid(0, points=64)
        values = sample_2d(lambda p: gaussian(p)[..., None, None] * np.eye(2), grid)
        assert_allclose(weighted_sum(values, grid), np.pi * np.eye(2), rtol=1e-12)

    def test_resolution_residual_small_for_smooth(self):
        assert resolution_residual(gaussian, default_grid(0, points=128)) < 1e-12

    def test_pairwise_sum_is_order_stable(self, rng):
        values = rng.normal(size=(64, 64))
        assert pairwise_sum(values) == pairwise_sum(values.copy(order='F'))

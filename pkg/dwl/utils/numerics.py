"""
Quadrature helpers shared by the Wigner kernels and the quantifiers.
"""
import logging

import numpy as np

from entities.grid import MIN_POINTS, QuadratureGrid, trapezoid_rule
from utils.errors import ArgumentError, NumericalAccuracyError


logger = logging.getLogger(__name__)


def pairwise_sum(values) -> complex:
    """
    Sum of all entries in a fixed, input-independent order.

    numpy reduces a contiguous float buffer by pairwise (cascade) summation, so
    flattening to one contiguous array first makes the order depend on the size
    only.
    """
    values = np.ascontiguousarray(values).ravel()
    return values.sum()


def _check_finite(values, nodes=None):
    bad = ~np.isfinite(values)
    if not np.any(bad):
        return
    index = np.unravel_index(np.argmax(bad), np.shape(values))
    location = tuple(np.asarray(axis)[index] for axis in nodes) if nodes is not None else index
    raise NumericalAccuracyError(f"integrand: non-finite value at {location}", location=location)


def _real_if_close(total):
    if np.iscomplexobj(total) and abs(np.imag(total)) <= 1e-13 * max(1.0, abs(total)):
        return float(np.real(total))
    return total if np.iscomplexobj(total) else float(total)


def integrate_1d(f, lo: float, hi: float, n: int):
    """
    Trapezoid rule for f on [lo, hi] with n equally spaced nodes.
    """
    if n < MIN_POINTS:
        raise ArgumentError(f"n: need at least {MIN_POINTS} nodes, got {n}")
    if not hi > lo:
        raise ArgumentError(f"bounds: need hi > lo, got [{lo}, {hi}]")

    nodes, weights = trapezoid_rule(lo, hi, n)

    values = np.asarray(f(nodes))
    _check_finite(values, (nodes,))
    return _real_if_close(pairwise_sum(values * weights))


def sample_2d(f, grid: QuadratureGrid) -> np.ndarray:
    """
    Evaluate f on the whole mesh at once; f takes a PhasePoint of arrays.
    """
    points = grid.points()
    values = np.asarray(f(points))
    if values.shape[:2] != (grid.n_s, grid.n_k):
        values = np.broadcast_to(values, (grid.n_s, grid.n_k) + values.shape[2:])
    _check_finite(values, (points.s, points.k))
    return values


def weighted_sum(values, grid: QuadratureGrid):
    """
    Quadrature of already sampled values; trailing axes beyond the mesh are kept.
    """
    weights = grid.weights()
    values = np.asarray(values)
    if values.ndim == 2:
        return _real_if_close(pairwise_sum(values * weights))
    flat = np.moveaxis(values, (0, 1), (-2, -1))
    return np.sum(flat * weights, axis=(-2, -1))


def integrate_2d(f, grid: QuadratureGrid, check: bool = False, tolerance: float = 1e-8):
    """
    Weighted sum of f over the grid.

    When `check` is set the integral is repeated on the coarsened grid and a
    NumericalAccuracyError is raised if the two disagree by more than `tolerance`.
    """
    value = weighted_sum(sample_2d(f, grid), grid)
    if check:
        residual = resolution_residual(f, grid, value)
        if residual > tolerance:
            raise NumericalAccuracyError(
                f"grid: under-resolved, coarse/fine residual {residual:.3e} exceeds {tolerance:.1e}",
                residual=residual,
            )
    return value


def resolution_residual(f, grid: QuadratureGrid, fine_value=None) -> float:
    """
    |integral on grid - integral on the coarsened grid|.
    """
    if fine_value is None:
        fine_value = weighted_sum(sample_2d(f, grid), grid)
    coarse = grid.coarsened()
    coarse_value = weighted_sum(sample_2d(f, coarse), coarse)
    residual = float(np.max(np.abs(np.asarray(fine_value) - np.asarray(coarse_value))))
    logger.debug(f"Resolution residual {residual:.3e} ({grid.n_s}x{grid.n_k} vs {coarse.n_s}x{coarse.n_k})")
    return residual

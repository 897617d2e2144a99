"""
This entity represents the rectangular (s, k) grid every phase-space integral runs on.
"""
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import roots_hermite

from utils.errors import ArgumentError


RULES = ('trapezoid', 'gauss-hermite')
MIN_POINTS = 16
DEFAULT_POINTS = 512


@dataclass(frozen=True)
class PhasePoint:
    """
    Oscillator coordinate s and momentum k (in units of sqrt(eB)).

    Both fields may be arrays of a common shape, which is how whole grids are
    passed through the kernels.
    """
    s: Union[float, np.ndarray]
    k: Union[float, np.ndarray]

    def __post_init__(self):
        if not (np.all(np.isfinite(self.s)) and np.all(np.isfinite(self.k))):
            raise ArgumentError("PhasePoint: s and k must be finite")

    @property
    def radius_sq(self):
        return np.asarray(self.s) ** 2 + np.asarray(self.k) ** 2


def trapezoid_rule(lo: float, hi: float, n: int):
    """
    n equally spaced nodes on [lo, hi] and their trapezoid weights.
    """
    nodes = np.linspace(lo, hi, n)
    weights = np.full(n, (hi - lo) / (n - 1))
    weights[0] *= 0.5
    weights[-1] *= 0.5
    return nodes, weights


def _gauss_hermite_nodes(n):
    # Weights are rescaled by e^{x^2} so the rule integrates plain functions.
    nodes, weights = roots_hermite(n)
    positive = weights > 0
    scaled = np.zeros(n)
    scaled[positive] = np.exp(np.log(weights[positive]) + nodes[positive] ** 2)
    return nodes, scaled


@dataclass(frozen=True)
class QuadratureGrid:
    s_min: float
    s_max: float
    k_min: float
    k_max: float
    n_s: int = DEFAULT_POINTS
    n_k: int = DEFAULT_POINTS
    rule: str = 'trapezoid'

    def __post_init__(self):
        if self.rule not in RULES:
            raise ArgumentError(f"rule: expected one of {', '.join(RULES)}, got {self.rule!r}")
        if self.n_s < MIN_POINTS or self.n_k < MIN_POINTS:
            raise ArgumentError(f"n_s, n_k: need at least {MIN_POINTS} points per axis, got {self.n_s}, {self.n_k}")
        bounds = (self.s_min, self.s_max, self.k_min, self.k_max)
        if not np.all(np.isfinite(bounds)):
            raise ArgumentError(f"bounds: must be finite, got {bounds}")
        if not (self.s_max > self.s_min and self.k_max > self.k_min):
            raise ArgumentError(f"bounds: need s_max > s_min and k_max > k_min, got {bounds}")

    @classmethod
    def gauss_hermite(cls, n_s: int, n_k: int = None):
        """
        Gauss-Hermite grid over the whole plane; the bounds record the outermost nodes.
        """
        n_k = n_s if n_k is None else n_k
        s_nodes, _ = roots_hermite(n_s)
        k_nodes, _ = roots_hermite(n_k)
        return cls(s_nodes[0], s_nodes[-1], k_nodes[0], k_nodes[-1], n_s, n_k, 'gauss-hermite')

    def axis(self, which: str):
        """
        Nodes and weights along one axis ('s' or 'k').
        """
        if which == 's':
            lo, hi, n = self.s_min, self.s_max, self.n_s
        elif which == 'k':
            lo, hi, n = self.k_min, self.k_max, self.n_k
        else:
            raise ArgumentError(f"which: expected 's' or 'k', got {which!r}")

        if self.rule == 'gauss-hermite':
            return _gauss_hermite_nodes(n)
        return trapezoid_rule(lo, hi, n)

    def points(self) -> PhasePoint:
        """
        The full mesh as a PhasePoint of shape (n_s, n_k) arrays, s along axis 0.
        """
        s_nodes, _ = self.axis('s')
        k_nodes, _ = self.axis('k')
        s, k = np.meshgrid(s_nodes, k_nodes, indexing='ij')
        return PhasePoint(s, k)

    def weights(self) -> np.ndarray:
        _, s_weights = self.axis('s')
        _, k_weights = self.axis('k')
        return np.outer(s_weights, k_weights)

    def coarsened(self) -> 'QuadratureGrid':
        """
        Same region with roughly half the points per axis, for convergence checks.
        """
        n_s = max((self.n_s + 1) // 2, MIN_POINTS)
        n_k = max((self.n_k + 1) // 2, MIN_POINTS)
        if self.rule == 'gauss-hermite':
            return QuadratureGrid.gauss_hermite(n_s, n_k)
        return QuadratureGrid(self.s_min, self.s_max, self.k_min, self.k_max, n_s, n_k, self.rule)

    def refined(self) -> 'QuadratureGrid':
        """
        Same region with the spacing halved (every old node is kept).
        """
        if self.rule == 'gauss-hermite':
            return QuadratureGrid.gauss_hermite(2 * self.n_s, 2 * self.n_k)
        return QuadratureGrid(self.s_min, self.s_max, self.k_min, self.k_max,
                              2 * self.n_s - 1, 2 * self.n_k - 1, self.rule)


def turning_point(n: int) -> float:
    """
    Classical turning point sqrt(2(2n+1)) of the n-th oscillator level.
    """
    if n < 0:
        raise ArgumentError(f"n: level must be >= 0, got {n}")
    return float(np.sqrt(2.0 * (2 * n + 1)))


def default_grid(n_max: int, pad: float = 6.0, points: int = DEFAULT_POINTS) -> QuadratureGrid:
    """
    Square trapezoid grid of half-width sqrt(2(2 n_max + 1)) + pad.
    """
    if pad <= 0:
        raise ArgumentError(f"pad: must be positive, got {pad}")
    half_width = turning_point(n_max) + pad
    return QuadratureGrid(-half_width, half_width, -half_width, half_width, points, points)

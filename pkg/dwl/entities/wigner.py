"""
Phase-space kernels and the 4x4 Wigner matrices of Landau states.

Conventions:
    - Points are (s, k) with k in units of sqrt(eB); the phase-space measure is
      dx dk = ds dk / sqrt(eB).
    - W[f, g](s, k) = (1/pi) int dv e^{2ikv} f(s+v) g(s-v) for oscillator
      functions f, g in units of eB^{1/4}. With that:
          W[F_n, F_n]     = L_n (the Laguerre kernel)
          W[F_n, F_{n-1}] = K_n (the complex cross kernel), W[F_{n-1}, F_n] = conj(K_n)
      and Re K_n is the odd-in-s kernel M_n.
"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from entities.clifford import GAMMA0_DIAG
from entities.grid import MIN_POINTS, PhasePoint, QuadratureGrid, trapezoid_rule, turning_point
from entities.landau import LandauState, coefficients, spinor_layout
from utils.errors import ArgumentError
from utils.numerics import sample_2d
from utils.specfun import laguerre, laguerre_deriv


logger = logging.getLogger(__name__)

WEYL_POINTS = 2048
WEYL_MARGIN = 12.0
TAIL_RATIO = 1e-12


def _check_eB(eB):
    if not eB > 0:
        raise ArgumentError(f"eB: magnetic coupling must be positive, got {eB!r}")


def kernel_L(n: int, p: PhasePoint, eB: float):
    """
    L_n(s, k) = (-1)^n (sqrt(eB)/pi) e^{-(s^2+k^2)} L_n[2(s^2+k^2)], zero for n = -1.
    """
    _check_eB(eB)
    if not isinstance(n, (int, np.integer)) or n < -1:
        raise ArgumentError(f"n: order must be an integer >= -1, got {n!r}")

    r2 = p.radius_sq
    if n == -1:
        return np.zeros_like(r2)
    return (-1) ** n * np.sqrt(eB) / np.pi * np.exp(-r2) * laguerre(n, 2.0 * r2)


def kernel_cross(n: int, p: PhasePoint, eB: float):
    """
    K_n(s, k) = (-1)^n (1/pi) sqrt(eB/(8n)) e^{-(s^2+k^2)} 4 (s + ik) L_n'[2(s^2+k^2)].
    """
    _check_eB(eB)
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ArgumentError(f"n: order must be an integer >= 1, got {n!r}")

    s = np.asarray(p.s, dtype=float)
    k = np.asarray(p.k, dtype=float)
    r2 = p.radius_sq
    prefactor = (-1) ** n / np.pi * np.sqrt(eB / (8.0 * n))
    return prefactor * np.exp(-r2) * 4.0 * (s + 1j * k) * laguerre_deriv(n, 2.0 * r2)


def kernel_M(n: int, p: PhasePoint, eB: float):
    """
    M_n = Re K_n = (-1)^n (1/pi) sqrt(eB/(8n)) e^{-(s^2+k^2)} d/ds L_n[2(s^2+k^2)]; odd in s.
    """
    return np.real(kernel_cross(n, p, eB))


def kernel_M_imag(n: int, p: PhasePoint, eB: float):
    """
    Im K_n, odd in k.
    """
    return np.imag(kernel_cross(n, p, eB))


def _kernel_table(st: LandauState, p: PhasePoint):
    lower, upper = st.n - 1, st.n
    cross = kernel_cross(st.n, p, st.eB)
    return {
        (lower, lower): kernel_L(lower, p, st.eB),
        (upper, upper): kernel_L(upper, p, st.eB),
        (upper, lower): cross,
        (lower, upper): np.conj(cross),
    }


def omega_matrix(st: LandauState, p: PhasePoint) -> np.ndarray:
    """
    Exact Wigner matrix of u^{spin}_{n,r}, shape p.s.shape + (4, 4).

        omega_{xi lambda} = eta c_xi c_lambda g_lambda W[F_{a_xi}, F_{a_lambda}]

    with (c, a) the spinor layout and g = diag(1, 1, -1, -1).
    """
    _, _, eta = coefficients(st)
    layout = spinor_layout(st)
    table = _kernel_table(st, p)
    shape = np.shape(p.radius_sq)

    omega = np.zeros(shape + (4, 4), dtype=complex)
    for xi, (c_xi, a_xi) in enumerate(layout):
        if a_xi is None:
            continue
        for lam, (c_lam, a_lam) in enumerate(layout):
            if a_lam is None:
                continue
            omega[..., xi, lam] = eta * c_xi * c_lam * GAMMA0_DIAG[lam] * table[(a_xi, a_lam)]
    return omega


def tabulated_omega(st: LandauState, p: PhasePoint) -> np.ndarray:
    """
    Real part of omega_matrix: the closed-form matrices written with L_{n-1}, L_n and M_n only.
    """
    return np.real(omega_matrix(st, p))


def density(st: LandauState, p: PhasePoint):
    """
    rho = Tr[omega gamma_0] = eta [(1 + A^2) L_lead + B^2 L_other].
    """
    a, b, eta = coefficients(st)
    lead = kernel_L(st.leading_order, p, st.eB)
    other = kernel_L(st.other_order, p, st.eB)
    return eta * ((1.0 + a * a) * lead + b * b * other)


def weyl_transform(psi: Callable, p: PhasePoint, eB: float,
                   level: int = 0, half_width: float = None, points: int = WEYL_POINTS,
                   nodes: np.ndarray = None) -> np.ndarray:
    """
    Numerical Weyl transform of a 4-component wavefunction at a single point.

        omega_{xi lambda}(s, k) = (1/pi) int dv e^{2ikv} psi_xi(x+) psi-bar_lambda(x-)

    `psi` is a callable of the position x returning (..., 4) components normalised
    so that int |psi|^2 dx = 1; it is sampled at x+- = (s +- v)/sqrt(eB). The v
    nodes are `points` uniform nodes on [-half_width, half_width] unless given
    explicitly in `nodes`; half_width defaults to 12 + sqrt(2(2 level + 1)).
    """
    """
    NOTE:
        - Integration is a plain trapezoid over v. The integrand decays like a
          Gaussian, for which the trapezoid rule is spectrally accurate.
        - The integrand psi(x+) psi-bar(x-) must be negligible at both ends of
          the v range (below 1e-12 max|psi(x+)| max|psi(x-)|), otherwise an
          ArgumentError is raised. Far from the orbit both factors never peak
          together, so the default window serves every (s, k).
    """
    _check_eB(eB)
    s = float(p.s)
    k = float(p.k)

    if nodes is None:
        if half_width is None:
            half_width = WEYL_MARGIN + turning_point(level)
        nodes, weights = trapezoid_rule(-half_width, half_width, points)
    else:
        nodes = np.asarray(nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < MIN_POINTS:
            raise ArgumentError(f"nodes: need a 1-d grid of at least {MIN_POINTS} points, got shape {nodes.shape}")
        spacing = np.diff(nodes)
        if np.any(spacing <= 0) or not np.allclose(spacing, spacing[0], rtol=1e-9, atol=0.0):
            raise ArgumentError("nodes: v grid must be uniform and increasing")
        _, weights = trapezoid_rule(nodes[0], nodes[-1], nodes.size)

    root = np.sqrt(eB)
    forward = np.asarray(psi((s + nodes) / root), dtype=complex)
    backward = np.asarray(psi((s - nodes) / root), dtype=complex)
    if forward.shape != nodes.shape + (4,):
        raise ArgumentError(f"psi: expected values of shape ({nodes.size}, 4), got {forward.shape}")

    # psi-bar = psi^dagger gamma_0
    barred = np.conj(backward) * GAMMA0_DIAG

    scale = np.max(np.abs(forward)) * np.max(np.abs(backward))
    ends = [0, -1]
    tails = np.max(np.abs(forward[ends])[:, :, None] * np.abs(barred[ends])[:, None, :])
    if scale > 0 and tails > TAIL_RATIO * scale:
        raise ArgumentError(
            f"nodes: v grid does not cover the support of the integrand (tail/scale = {tails / scale:.2e})"
        )

    phase = np.exp(2j * k * nodes) * weights
    return np.einsum('v,vi,vj->ij', phase, forward, barred) / np.pi


@dataclass(frozen=True)
class WignerMatrixField:
    """
    Lazily evaluated Wigner matrix of one Landau state.
    """
    state: LandauState

    @property
    def eB(self) -> float:
        return self.state.eB

    def __call__(self, p: PhasePoint) -> np.ndarray:
        return omega_matrix(self.state, p)

    def density(self, p: PhasePoint):
        return density(self.state, p)


class MixtureField:
    """
    Convex combination sum_i w_i omega_i of Landau Wigner matrices sharing one eB.
    """
    def __init__(self, components: Sequence[Tuple[float, WignerMatrixField]]):
        self.components: List[Tuple[float, WignerMatrixField]] = []
        for weight, field in components:
            if isinstance(field, LandauState):
                field = WignerMatrixField(field)
            self.components.append((float(weight), field))

        if not self.components:
            raise ArgumentError("components: a mixture needs at least one state")
        weights = np.array([weight for weight, _ in self.components])
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
            raise ArgumentError(f"weights: must be non-negative and sum to 1, got {weights.tolist()}")
        couplings = {field.eB for _, field in self.components}
        if len(couplings) != 1:
            raise ArgumentError(f"components: all states must share one eB, got {sorted(couplings)}")

        self.eB = couplings.pop()

    def __call__(self, p: PhasePoint) -> np.ndarray:
        return sum(weight * field(p) for weight, field in self.components)

    def density(self, p: PhasePoint):
        return sum(weight * field.density(p) for weight, field in self.components)


class SampledWigner:
    """
    A Wigner matrix field together with its samples on one quadrature grid.

    omega is evaluated once here and every quantifier handed this object reuses
    it; only resolution checks go back to the field, on the coarsened grid.
    """
    def __init__(self, source, grid: QuadratureGrid):
        if isinstance(source, LandauState):
            source = WignerMatrixField(source)
        if not (callable(source) and hasattr(source, 'eB')):
            raise ArgumentError(f"source: expected a Landau state or a Wigner matrix field, "
                                f"got {type(source).__name__}")

        self.field = source
        self.grid = grid
        self.eB = source.eB
        self.omega = sample_2d(source, grid)
        # Tr[omega gamma_0]
        self.rho = np.real(np.einsum('...ii,i->...', self.omega, GAMMA0_DIAG))
        logger.debug(f"Sampled omega on a {grid.n_s}x{grid.n_k} grid")

    @property
    def state(self):
        return getattr(self.field, 'state', None)

    def __call__(self, p: PhasePoint) -> np.ndarray:
        return self.field(p)

    def density(self, p: PhasePoint):
        return self.field.density(p)

    def samples(self, grid: QuadratureGrid) -> np.ndarray:
        """
        omega on `grid`: the stored samples when the grid matches, a fresh evaluation otherwise.
        """
        if grid == self.grid:
            return self.omega
        return sample_2d(self.field, grid)

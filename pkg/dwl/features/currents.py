"""
Gordon-decomposed Dirac currents as momentum integrals of the Clifford components.
"""
import logging
from dataclasses import dataclass

import numpy as np

from entities.clifford import decompose, gamma, spin_operator
from entities.grid import PhasePoint, QuadratureGrid, default_grid, trapezoid_rule, turning_point
from entities.landau import LandauState, s_coordinate, spinor_from_s
from entities.wigner import omega_matrix
from utils.errors import ArgumentError
from utils.numerics import integrate_1d, sample_2d, weighted_sum


logger = logging.getLogger(__name__)

K_POINTS = 512
K_PAD = 6.0

# gamma_0 Sigma^z, whose trace against omega is the local spin density
_GAMMA0_SPIN_Z = gamma(0) @ spin_operator('z')


@dataclass(frozen=True)
class Currents:
    """
    Currents at one position x:
        j0, j       : 4 int dk V^mu split into charge and vector part
        j5          : 4 int dk A^mu
        tensor      : 4 int dk T^{mu nu}
        spin_z      : int dk Tr[gamma_0 Sigma^z omega]
    """
    x: float
    j0: float
    j: np.ndarray
    j5: np.ndarray
    tensor: np.ndarray
    spin_z: float


@dataclass(frozen=True)
class SpinExpectation:
    phase_space: float
    direct: float

    @property
    def residual(self) -> float:
        return abs(self.phase_space - self.direct)


def _k_nodes(st: LandauState, k_points: int, k_half_width: float):
    if k_points < 16:
        raise ArgumentError(f"k_points: need at least 16 nodes, got {k_points}")
    if k_half_width is None:
        k_half_width = turning_point(st.n) + K_PAD
    return trapezoid_rule(-k_half_width, k_half_width, k_points)


def currents(st: LandauState, x: float, k_points: int = K_POINTS,
             k_half_width: float = None) -> Currents:
    """
    Momentum-integrated Clifford components of the Wigner matrix at position x.
    """
    s = float(s_coordinate(x, st))
    nodes, weights = _k_nodes(st, k_points, k_half_width)
    omega = omega_matrix(st, PhasePoint(np.full_like(nodes, s), nodes))

    components = decompose(omega)
    vector = 4.0 * np.real(np.tensordot(weights, components.V, axes=(0, 0)))
    axial = 4.0 * np.real(np.tensordot(weights, components.A, axes=(0, 0)))
    tensor = 4.0 * np.real(np.tensordot(weights, components.T, axes=(0, 0)))
    spin_density = np.real(np.einsum('ij,kji->k', _GAMMA0_SPIN_Z, omega))

    return Currents(
        x=float(x),
        j0=float(vector[0]),
        j=vector[1:],
        j5=axial,
        tensor=tensor,
        spin_z=float(weights @ spin_density),
    )


def charge(st: LandauState, grid: QuadratureGrid = None) -> float:
    """
    int dx j0 = (1/sqrt(eB)) int ds dk Tr[gamma_0 omega].
    """
    grid = default_grid(st.n) if grid is None else grid
    sampled = sample_2d(lambda p: np.trace(gamma(0) @ omega_matrix(st, p), axis1=-2, axis2=-1), grid)
    return float(np.real(weighted_sum(sampled, grid))) / np.sqrt(st.eB)


def spin_expectation(st: LandauState, grid: QuadratureGrid = None, x_points: int = 4096,
                     omega: np.ndarray = None) -> SpinExpectation:
    """
    <Sigma^z> from the phase-space route (1/sqrt(eB)) int ds dk Tr[gamma_0 Sigma^z omega]
    and directly from int dx psi^dagger Sigma^z psi.

    `omega` may hold the Wigner matrix already sampled on `grid`.
    """
    grid = default_grid(st.n) if grid is None else grid
    if omega is None:
        omega = sample_2d(lambda p: omega_matrix(st, p), grid)
    elif np.shape(omega) != (grid.n_s, grid.n_k, 4, 4):
        raise ArgumentError(f"omega: expected samples of shape ({grid.n_s}, {grid.n_k}, 4, 4), got {np.shape(omega)}")

    local_spin = np.real(np.einsum('ij,...ji->...', _GAMMA0_SPIN_Z, omega))
    phase_space = float(weighted_sum(local_spin, grid)) / np.sqrt(st.eB)

    def spin_profile(s):
        psi = spinor_from_s(st, s)
        return np.real(np.einsum('...i,ij,...j->...', psi.conj(), spin_operator('z'), psi))

    half_width = turning_point(st.n) + K_PAD + 6.0
    direct = integrate_1d(spin_profile, -half_width, half_width, x_points) / np.sqrt(st.eB)

    result = SpinExpectation(phase_space=phase_space, direct=float(direct))
    logger.debug(f"<Sigma_z> {st.label()}: phase space {result.phase_space:.12f}, direct {result.direct:.12f}")
    return result

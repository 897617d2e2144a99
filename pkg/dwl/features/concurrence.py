"""
Two-qubit concurrence, entanglement of formation and the phase-space concurrence field.

The spin-parity structure of a Dirac 4-spinor is treated as two qubits, parity
first: index 2*p + s.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg
from scipy.special import entr

from entities.clifford import PAULI, PAULI_Y, gamma, pauli_kron
from entities.grid import PhasePoint, QuadratureGrid
from entities.landau import LandauState, coefficients
from entities.wigner import SampledWigner, kernel_cross, kernel_L, omega_matrix
from utils.errors import ArgumentError, NumericalAccuracyError, PreconditionError
from utils.numerics import weighted_sum


logger = logging.getLogger(__name__)

_SIGMA_YY = pauli_kron(PAULI_Y, PAULI_Y)
# gamma^2 gamma^0 with gamma^2 = -gamma_2
_FLIP_GAMMA = -gamma(2) @ gamma(0)

EIGEN_CLIP = 1e-12


@dataclass(frozen=True)
class TwoQubitDensity:
    """
    Density matrix of two qubits (parity ⊗ spin).
    """
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        if matrix.shape != (4, 4):
            raise ArgumentError(f"matrix: expected shape (4, 4), got {matrix.shape}")
        object.__setattr__(self, 'matrix', matrix)

    @classmethod
    def from_ket(cls, ket) -> 'TwoQubitDensity':
        ket = np.asarray(ket, dtype=complex).reshape(4)
        norm = np.linalg.norm(ket)
        if norm == 0:
            raise ArgumentError("ket: zero vector has no density matrix")
        ket = ket / norm
        return cls(np.outer(ket, ket.conj()))

    def validate(self, trace_tol: float = 1e-10, hermitian_tol: float = 1e-12,
                 eigen_tol: float = 1e-10) -> 'TwoQubitDensity':
        """
        Check unit trace, Hermiticity and positivity; returns self.
        """
        trace = np.trace(self.matrix)
        if abs(trace - 1.0) > trace_tol:
            raise ArgumentError(f"rho: trace must be 1, got {trace:.12g}")
        asymmetry = np.max(np.abs(self.matrix - self.matrix.conj().T))
        if asymmetry > hermitian_tol:
            raise ArgumentError(f"rho: not Hermitian, |rho - rho^dagger| = {asymmetry:.3e}")
        lowest = linalg.eigvalsh(self.matrix)[0]
        if lowest < -eigen_tol:
            raise ArgumentError(f"rho: not positive semidefinite, lowest eigenvalue {lowest:.3e}")
        return self

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def spin_flip(matrix) -> np.ndarray:
    """
    (sigma_y ⊗ sigma_y) M* (sigma_y ⊗ sigma_y).
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape[-2:] != (4, 4):
        raise ArgumentError(f"matrix: expected trailing shape (4, 4), got {matrix.shape}")
    return _SIGMA_YY @ np.conj(matrix) @ _SIGMA_YY


def wigner_spin_flip(omega) -> np.ndarray:
    """
    Qubit flip of a Wigner matrix, -(gamma^2 gamma^0) omega (gamma^2 gamma^0).
    """
    return -(_FLIP_GAMMA @ np.asarray(omega, dtype=complex) @ _FLIP_GAMMA)


def bloch_vectors(rho: TwoQubitDensity):
    """
    Local Bloch vectors a_i = Tr[(sigma_i ⊗ I) rho], b_i = Tr[(I ⊗ sigma_i) rho]
    and the correlation matrix t_ij = Tr[(sigma_i ⊗ sigma_j) rho].
    """
    identity = np.eye(2)
    axes = 'xyz'
    a = np.array([np.real(np.trace(pauli_kron(PAULI[i], identity) @ rho.matrix)) for i in axes])
    b = np.array([np.real(np.trace(pauli_kron(identity, PAULI[i]) @ rho.matrix)) for i in axes])
    t = np.array([[np.real(np.trace(pauli_kron(PAULI[i], PAULI[j]) @ rho.matrix)) for j in axes]
                  for i in axes])
    return a, b, t


def _clip_small(values):
    return np.where(values > EIGEN_CLIP, values, 0.0)


def concurrence_general(rho: TwoQubitDensity) -> float:
    """
    C = max(0, l1 - l2 - l3 - l4), l_i the decreasing square roots of the
    eigenvalues of sqrt(rho) rho~ sqrt(rho).
    """
    rho.validate()

    # sqrt(rho) from its own spectrum; eigenvalues below EIGEN_CLIP are round-off and set to 0
    values, vectors = linalg.eigh(rho.matrix)
    root = (vectors * np.sqrt(_clip_small(values))) @ vectors.conj().T

    product = root @ spin_flip(rho.matrix) @ root
    product = 0.5 * (product + product.conj().T)
    eigenvalues = linalg.eigvalsh(product)
    if eigenvalues[0] < -EIGEN_CLIP:
        logger.debug(f"Clipping flip-product eigenvalue {eigenvalues[0]:.3e}")
    lambdas = np.sort(np.sqrt(_clip_small(eigenvalues)))[::-1]

    return float(max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]))


def concurrence_pure_bloch(rho: TwoQubitDensity, purity_tol: float = 1e-8) -> float:
    """
    C = sqrt(1 - |a|^2) for a pure state; a mixed input raises PreconditionError.
    """
    rho.validate()
    purity = rho.purity()
    if abs(purity - 1.0) > purity_tol:
        raise PreconditionError(f"rho: Bloch formula needs a pure state, Tr[rho^2] = {purity:.10f}")

    a, b, _ = bloch_vectors(rho)
    logger.debug(f"Bloch lengths |a| = {np.linalg.norm(a):.12f}, |b| = {np.linalg.norm(b):.12f}")
    return float(np.sqrt(max(0.0, 1.0 - float(a @ a))))


def eof_from_concurrence(concurrence):
    """
    Entanglement of formation H2[(1 - sqrt(1 - C^2)) / 2], H2 the binary entropy in bits.
    """
    c = np.asarray(concurrence, dtype=float)
    if np.any(~np.isfinite(c)) or np.any(c < -1e-12) or np.any(c > 1 + 1e-12):
        raise ArgumentError(f"C: concurrence must lie in [0, 1], got {concurrence!r}")
    c = np.clip(c, 0.0, 1.0)

    lam = 0.5 * (1.0 - np.sqrt(1.0 - c * c))
    # entr(x) = -x ln x with entr(0) = 0
    value = (entr(lam) + entr(1.0 - lam)) / np.log(2.0)
    return float(value) if value.ndim == 0 else value


def concurrence_sq_trace(omega) -> np.ndarray:
    """
    -Tr[omega gamma^2 gamma^0 omega gamma^2 gamma^0] for any Wigner matrix (or stack of them).
    """
    omega = np.asarray(omega, dtype=complex)
    flipped = _FLIP_GAMMA @ omega
    return -np.real(np.einsum('...ij,...ji->...', flipped, flipped))


def concurrence_sq_field(st: LandauState, p: PhasePoint, check: bool = False,
                         atol: float = 1e-10) -> np.ndarray:
    """
    Pointwise squared concurrence of a Landau state,

        C^2 = 2 eta^2 B^2 [L_n L_{n-1} + Re(K_n^2)]
            = (n eB / E_n^2) [L_n L_{n-1} + M_n^2 - (Im K_n)^2],

    identical for all four (spin, r) states. With `check` the trace route is
    evaluated as well and must agree to `atol` (relative to eB).
    """
    _, b, eta = coefficients(st)
    cross = kernel_cross(st.n, p, st.eB)
    product = kernel_L(st.n, p, st.eB) * kernel_L(st.n - 1, p, st.eB)
    value = 2.0 * eta * eta * b * b * (product + np.real(cross * cross))

    if check:
        traced = concurrence_sq_trace(omega_matrix(st, p))
        mismatch = float(np.max(np.abs(traced - value)))
        if mismatch > atol * st.eB:
            raise NumericalAccuracyError(
                f"concurrence: trace route and closed form differ by {mismatch:.3e}",
                residual=mismatch,
            )
    return value


def concurrence_sq_tabulated(st: LandauState, p: PhasePoint) -> np.ndarray:
    """
    The closed form -2 eta^2 B^2 L_n L_{n-1} as usually tabulated. It has the
    opposite sign of the trace route in the L_n L_{n-1} term and no cross-kernel term.
    """
    _, b, eta = coefficients(st)
    return -2.0 * eta * eta * b * b * kernel_L(st.n, p, st.eB) * kernel_L(st.n - 1, p, st.eB)


def spin_parity_density(field, grid: QuadratureGrid) -> TwoQubitDensity:
    """
    Reduced spin-parity state gamma_0 <omega>, with <omega> the phase-space average
    (1/sqrt(eB)) int ds dk omega.
    """
    sampled = field.samples(grid) if isinstance(field, SampledWigner) else field(grid.points())
    average = weighted_sum(sampled, grid) / np.sqrt(field.eB)
    reduced = gamma(0) @ average
    reduced = 0.5 * (reduced + reduced.conj().T)
    return TwoQubitDensity(reduced / np.real(np.trace(reduced)))

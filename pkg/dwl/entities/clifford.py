"""
Dirac-representation gamma matrices and the Clifford decomposition of 4x4 matrices.

Every matrix is a plain numpy array of shape (4, 4) (or (..., 4, 4) for a whole
grid of matrices) with complex dtype. Index order of the 4-spinor is
parity ⊗ spin: component 2*p + s.

NOTE:
    - Metric signature is (+, -, -, -). Upper-index components V^mu, A^mu and
      T^{mu nu} are obtained by raising indices explicitly inside `decompose`.
"""
from dataclasses import dataclass, field
from typing import Dict, Union

import numpy as np

from utils.errors import ArgumentError


ComplexMatrix4 = np.ndarray

IDENTITY2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {'x': PAULI_X, 'y': PAULI_Y, 'z': PAULI_Z}

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
IDENTITY4 = np.eye(4, dtype=complex)


def pauli_kron(p: np.ndarray, s: np.ndarray) -> ComplexMatrix4:
    """
    Kronecker product with `p` acting on the parity doublet and `s` on the spin doublet.
    """
    p = np.asarray(p, dtype=complex)
    s = np.asarray(s, dtype=complex)
    if p.shape != (2, 2) or s.shape != (2, 2):
        raise ArgumentError(f"pauli_kron: expected two 2x2 matrices, got {p.shape} and {s.shape}")
    return np.kron(p, s)


BETA = pauli_kron(PAULI_Z, IDENTITY2)
ALPHA = tuple(pauli_kron(PAULI_X, PAULI[axis]) for axis in 'xyz')

# gamma_0 = beta, gamma_j = beta alpha_j
_GAMMA = (BETA,) + tuple(BETA @ alpha for alpha in ALPHA)
_GAMMA5 = 1j * _GAMMA[0] @ _GAMMA[1] @ _GAMMA[2] @ _GAMMA[3]

# diagonal of gamma_0 = diag(1, 1, -1, -1), the sign pattern of psi-bar = psi^dagger gamma_0
GAMMA0_DIAG = np.real(np.diag(_GAMMA[0])).copy()

_SIGMA = np.array([
    [0.5j * (_GAMMA[mu] @ _GAMMA[nu] - _GAMMA[nu] @ _GAMMA[mu]) for nu in range(4)]
    for mu in range(4)
])

# Upper-index versions used by the projections
_GAMMA_UP = np.array([METRIC[mu, mu] * _GAMMA[mu] for mu in range(4)])
_SIGMA_UP = np.array([
    [METRIC[mu, mu] * METRIC[nu, nu] * _SIGMA[mu, nu] for nu in range(4)]
    for mu in range(4)
])
_GAMMA5_GAMMA_UP = np.array([_GAMMA5 @ _GAMMA_UP[mu] for mu in range(4)])
_GAMMA_GAMMA5 = np.array([_GAMMA[mu] @ _GAMMA5 for mu in range(4)])


def _check_index(name, value):
    if not isinstance(value, (int, np.integer)) or not 0 <= value <= 3:
        raise ArgumentError(f"{name}: Lorentz index must be one of 0, 1, 2, 3, got {value!r}")


def gamma(mu: int) -> ComplexMatrix4:
    """
    Lower-index gamma matrix gamma_mu in the Dirac representation.
    """
    _check_index('mu', mu)
    return _GAMMA[mu].copy()


def gamma5() -> ComplexMatrix4:
    """
    gamma_5 = i gamma_0 gamma_1 gamma_2 gamma_3.
    """
    return _GAMMA5.copy()


def sigma(mu: int, nu: int) -> ComplexMatrix4:
    """
    sigma_{mu nu} = (i/2)[gamma_mu, gamma_nu].
    """
    _check_index('mu', mu)
    _check_index('nu', nu)
    return _SIGMA[mu, nu].copy()


def spin_operator(axis: str) -> ComplexMatrix4:
    """
    Sigma^k = diag(sigma_k, sigma_k), i.e. sigma_{23}, sigma_{31}, sigma_{12}.
    """
    pairs = {'x': (2, 3), 'y': (3, 1), 'z': (1, 2)}
    if axis not in pairs:
        raise ArgumentError(f"axis: expected one of x, y, z, got {axis!r}")
    return sigma(*pairs[axis])


@dataclass(frozen=True)
class CliffordComponents:
    """
    The 16 coefficients of a 4x4 matrix on {I, i g5, g_mu, g_mu g5, sigma_{mu nu}}.

    Fields may be scalars or arrays carrying a leading grid shape; V and A
    then have shape (..., 4) and T has shape (..., 4, 4).
    """
    S: Union[complex, np.ndarray]
    Pi: Union[complex, np.ndarray]
    V: np.ndarray
    A: np.ndarray
    T: np.ndarray = field(repr=False)

    def max_imag(self) -> float:
        """
        Largest imaginary part among all components.
        """
        parts = [np.abs(np.imag(self.S)), np.abs(np.imag(self.Pi)),
                 np.abs(np.imag(self.V)), np.abs(np.imag(self.A)), np.abs(np.imag(self.T))]
        return float(max(np.max(part) for part in parts))

    def euclidean_square(self) -> Union[complex, np.ndarray]:
        """
        S^2 + Pi^2 + sum_mu V_mu^2 + sum_mu A_mu^2 + 1/2 sum_{mu nu} T_{mu nu}^2,
        every index summed with a plus sign.
        """
        return (
            self.S ** 2
            + self.Pi ** 2
            + np.sum(self.V ** 2, axis=-1)
            + np.sum(self.A ** 2, axis=-1)
            + 0.5 * np.sum(self.T ** 2, axis=(-2, -1))
        )

    def as_dict(self) -> Dict[str, object]:
        """
        Real parts of the components keyed by name, for dumps.
        """
        out = {'S': np.real(self.S), 'Pi': np.real(self.Pi)}
        for mu in range(4):
            out[f'V{mu}'] = np.real(self.V[..., mu])
            out[f'A{mu}'] = np.real(self.A[..., mu])
        for mu in range(4):
            for nu in range(mu + 1, 4):
                out[f'T{mu}{nu}'] = np.real(self.T[..., mu, nu])
        return out


def decompose(matrix: ComplexMatrix4) -> CliffordComponents:
    """
    Clifford components of `matrix` (shape (4, 4) or (..., 4, 4)).

        S = Tr[M]/4, Pi = -i Tr[g5 M]/4, V^mu = Tr[g^mu M]/4,
        A^mu = Tr[g5 g^mu M]/4, T^{mu nu} = Tr[sigma^{mu nu} M]/4
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape[-2:] != (4, 4):
        raise ArgumentError(f"matrix: expected trailing shape (4, 4), got {matrix.shape}")

    S = 0.25 * np.trace(matrix, axis1=-2, axis2=-1)
    Pi = -0.25j * np.einsum('ij,...ji->...', _GAMMA5, matrix)
    V = 0.25 * np.einsum('mij,...ji->...m', _GAMMA_UP, matrix)
    A = 0.25 * np.einsum('mij,...ji->...m', _GAMMA5_GAMMA_UP, matrix)
    T = 0.25 * np.einsum('mnij,...ji->...mn', _SIGMA_UP, matrix)

    return CliffordComponents(S=S, Pi=Pi, V=V, A=A, T=T)


def reconstruct(components: CliffordComponents, atol: float = 1e-12) -> ComplexMatrix4:
    """
    Inverse of `decompose`:
        S + i g5 Pi + g_mu V^mu + g_mu g5 A^mu + 1/2 sigma_{mu nu} T^{mu nu}
    """
    T = np.asarray(components.T, dtype=complex)
    asymmetry = np.max(np.abs(T + np.swapaxes(T, -1, -2))) if T.size else 0.0
    if asymmetry > atol * (1.0 + np.max(np.abs(T))):
        raise ArgumentError(f"T: tensor component must be antisymmetric, |T + T^T| = {asymmetry:.3e}")

    S = np.asarray(components.S, dtype=complex)
    Pi = np.asarray(components.Pi, dtype=complex)
    V = np.asarray(components.V, dtype=complex)
    A = np.asarray(components.A, dtype=complex)

    matrix = S[..., None, None] * IDENTITY4
    matrix = matrix + 1j * Pi[..., None, None] * _GAMMA5
    matrix = matrix + np.einsum('...m,mij->...ij', V, np.array(_GAMMA))
    matrix = matrix + np.einsum('...m,mij->...ij', A, _GAMMA_GAMMA5)
    matrix = matrix + 0.5 * np.einsum('...mn,mnij->...ij', T, _SIGMA)
    return matrix


def basis_elements() -> Dict[str, ComplexMatrix4]:
    """
    The 16 generators {I, i g5, g_mu, g_mu g5, sigma_{mu nu} (mu < nu)} keyed by name.
    """
    elements = {'I': IDENTITY4.copy(), 'ig5': 1j * _GAMMA5}
    for mu in range(4):
        elements[f'g{mu}'] = _GAMMA[mu].copy()
        elements[f'g{mu}g5'] = _GAMMA_GAMMA5[mu].copy()
    for mu in range(4):
        for nu in range(mu + 1, 4):
            elements[f's{mu}{nu}'] = _SIGMA[mu, nu].copy()
    return elements


def anticommutator(a: ComplexMatrix4, b: ComplexMatrix4) -> ComplexMatrix4:
    return a @ b + b @ a


def spin_flip_operator() -> ComplexMatrix4:
    """
    sigma_y ⊗ sigma_y on parity ⊗ spin, equal to -i beta alpha_y.
    """
    return pauli_kron(PAULI_Y, PAULI_Y)


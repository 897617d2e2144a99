"""
This entity represents a Dirac fermion on a Landau level: parameters, spectrum and eigenspinors.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from utils.errors import ArgumentError
from utils.specfun import hermite_fn


SPINS = ('+', '-')
BRANCHES = (1, 2)

# Component layout of u^{spin}_{n,r}: (coefficient labels, Hermite order offsets).
# '1' is the unit entry, 'A'/'B' the coefficients with their sign, None an empty slot.
# An order offset of 1 means F_{n-1}, 0 means F_n.
_LAYOUTS = {
    ('+', 1): (('1', None, '+A', '-B'), (1, None, 1, 0)),
    ('-', 1): ((None, '1', '-B', '-A'), (None, 0, 1, 0)),
    ('-', 2): (('+A', '+B', '1', None), (1, 0, 1, None)),
    ('+', 2): (('+B', '-A', None, '1'), (1, 0, None, 0)),
}


@dataclass(frozen=True)
class PhysParams:
    """
    Mass m, magnetic coupling eB and the conserved momenta k_y, k_z.
    """
    eB: float
    m: float = 1.0
    k_y: float = 0.0
    k_z: float = 0.0

    def __post_init__(self):
        if not np.all(np.isfinite((self.eB, self.m, self.k_y, self.k_z))):
            raise ArgumentError(f"PhysParams: parameters must be finite, got {self}")
        if not self.m > 0:
            raise ArgumentError(f"m: mass must be positive, got {self.m}")
        if not self.eB > 0:
            raise ArgumentError(f"eB: magnetic coupling must be positive, got {self.eB}")

    @classmethod
    def from_dimensionless(cls, eps: float, kappa: float, m: float = 1.0) -> 'PhysParams':
        """
        Parameters with eB = eps m^2, k_z = m sqrt(kappa) and k_y = 0.
        """
        if not eps > 0:
            raise ArgumentError(f"eps: must be positive, got {eps}")
        if not kappa >= 0:
            raise ArgumentError(f"kappa: must be non-negative, got {kappa}")
        return cls(eB=eps * m * m, m=m, k_y=0.0, k_z=m * np.sqrt(kappa))

    @property
    def eps(self) -> float:
        return self.eB / self.m ** 2

    @property
    def kappa(self) -> float:
        return self.k_z ** 2 / self.m ** 2


@dataclass(frozen=True)
class LandauState:
    n: int
    r: int
    spin: str
    params: PhysParams

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool) or self.n < 1:
            raise ArgumentError(f"n: Landau index must be an integer >= 1, got {self.n!r}")
        if self.r not in BRANCHES:
            raise ArgumentError(f"r: parity branch must be 1 or 2, got {self.r!r}")
        if self.spin not in SPINS:
            raise ArgumentError(f"spin: must be '+' or '-', got {self.spin!r}")

    @property
    def eB(self) -> float:
        return self.params.eB

    @property
    def energy(self) -> float:
        return energy(self.n, self.params)

    @property
    def leading_order(self) -> int:
        """
        Hermite order carrying the (1 + A^2) weight: n-1 for (+,1) and (-,2), n otherwise.
        """
        return self.n - 1 if (self.spin, self.r) in (('+', 1), ('-', 2)) else self.n

    @property
    def other_order(self) -> int:
        return 2 * self.n - 1 - self.leading_order

    def label(self) -> str:
        return f"u{self.spin}_{self.n},{self.r}"


def s_coordinate(x, st: LandauState):
    """
    s_r = sqrt(eB) (x + (-1)^r k_y / eB).
    """
    p = st.params
    return np.sqrt(p.eB) * (np.asarray(x, dtype=float) + (-1) ** st.r * p.k_y / p.eB)


def energy(n: int, p: PhysParams) -> float:
    """
    E_n = sqrt(m^2 + k_z^2 + 2 n eB).
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ArgumentError(f"n: Landau index must be an integer >= 0, got {n!r}")
    return float(np.sqrt(p.m ** 2 + p.k_z ** 2 + 2 * n * p.eB))


def oscillator_energy(n_osc: int, spin: str, p: PhysParams) -> float:
    """
    Energy read off the reduced Hermite equation: oscillator level n_osc plus the
    Zeeman shift of the spin, E^2 = m^2 + k_z^2 + eB (2 n_osc + 1 +/- 1).

    (+, n_osc = n - 1) and (-, n_osc = n) both land on E_n.
    """
    if spin not in SPINS:
        raise ArgumentError(f"spin: must be '+' or '-', got {spin!r}")
    if n_osc < 0:
        raise ArgumentError(f"n_osc: oscillator level must be >= 0, got {n_osc}")
    zeta = 2 * n_osc + 1
    shift = 1 if spin == '+' else -1
    return float(np.sqrt(p.m ** 2 + p.k_z ** 2 + p.eB * (zeta + shift)))


def coefficients(st: LandauState) -> Tuple[float, float, float]:
    """
    (A_n, B_n, eta_n) = (k_z/(E+m), sqrt(2 n eB)/(E+m), (E+m)/(2E)).
    """
    p = st.params
    e = st.energy
    a = p.k_z / (e + p.m)
    b = np.sqrt(2 * st.n * p.eB) / (e + p.m)
    eta = (e + p.m) / (2 * e)
    return float(a), float(b), float(eta)


def spinor_layout(st: LandauState):
    """
    Per component: (coefficient, Hermite order), with (0.0, None) in empty slots.
    """
    a, b, _ = coefficients(st)
    values = {'1': 1.0, '+A': a, '-A': -a, '+B': b, '-B': -b}
    labels, offsets = _LAYOUTS[(st.spin, st.r)]
    return tuple(
        (0.0, None) if label is None else (values[label], st.n - offset)
        for label, offset in zip(labels, offsets)
    )


def spinor_from_s(st: LandauState, s) -> np.ndarray:
    """
    u^{spin}_{n,r} at oscillator coordinate s, shape s.shape + (4,), units (eB)^{1/4}.
    """
    s = np.asarray(s, dtype=float)
    _, _, eta = coefficients(st)
    hermite = {order: hermite_fn(order, s, st.eB) for order in (st.n - 1, st.n)}

    components = np.zeros(s.shape + (4,), dtype=complex)
    for index, (coefficient, order) in enumerate(spinor_layout(st)):
        if order is not None:
            components[..., index] = np.sqrt(eta) * coefficient * hermite[order]
    return components


def spinor(st: LandauState, x) -> np.ndarray:
    """
    u^{spin}_{n,r} at position x, without the plane-wave and time factors.
    """
    return spinor_from_s(st, s_coordinate(x, st))

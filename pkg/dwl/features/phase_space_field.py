"""
This class samples a dimensionless phase-space field of one Landau state on a square grid.
"""
import logging

import numpy as np
import pandas as pd

from entities.grid import QuadratureGrid, default_grid
from entities.landau import LandauState
from entities.wigner import density, omega_matrix
from features.concurrence import concurrence_sq_field, concurrence_sq_tabulated
from features.quantifiers import local_purity
from utils.config import QUANTITIES
from utils.errors import UsageError


logger = logging.getLogger(__name__)


class PhaseSpaceField:
    """
    Quantities and their scaling to dimensionless values:
        purity       local purity / eB
        concurrence  C^2 / eB
        density      rho / sqrt(eB)
        wigner       Re omega_{ij} / sqrt(eB)

    and the real-kernel closed forms as usually tabulated:
        purity-tabulated       local purity with M_n^2 in place of |K_n|^2, / eB
        concurrence-tabulated  -2 eta^2 B^2 L_n L_{n-1} / eB
    """
    QUANTITIES = QUANTITIES

    def __init__(self, state: LandauState, quantity: str, grid: QuadratureGrid = None, entry=(3, 3)):
        if quantity not in self.QUANTITIES:
            raise UsageError(f"quantity: expected one of {', '.join(self.QUANTITIES)}, got {quantity!r}")
        self.state = state
        self.quantity = quantity
        self.grid = default_grid(state.n) if grid is None else grid
        self.entry = entry

        self.values: np.ndarray = None

    def _evaluate(self, p):
        st = self.state
        if self.quantity == 'purity':
            return local_purity(st, p) / st.eB
        if self.quantity == 'concurrence':
            return concurrence_sq_field(st, p) / st.eB
        if self.quantity == 'purity-tabulated':
            return local_purity(st, p, tabulated=True) / st.eB
        if self.quantity == 'concurrence-tabulated':
            return concurrence_sq_tabulated(st, p) / st.eB
        if self.quantity == 'density':
            return density(st, p) / np.sqrt(st.eB)
        row, column = self.entry
        return np.real(omega_matrix(st, p)[..., row, column]) / np.sqrt(st.eB)

    def sample(self) -> np.ndarray:
        """
        Values on the grid, shape (n_s, n_k), s along axis 0.
        """
        logger.info(f"Sampling {self.quantity} of {self.state.label()} on a "
                    f"{self.grid.n_s}x{self.grid.n_k} grid...")
        self.values = np.asarray(self._evaluate(self.grid.points()), dtype=float)
        return self.values

    def to_frame(self) -> pd.DataFrame:
        """
        Rows (s, k, value), s-major.
        """
        if self.values is None:
            self.sample()
        points = self.grid.points()
        return pd.DataFrame({
            's': points.s.ravel(),
            'k': points.k.ravel(),
            'value': self.values.ravel(),
        })

    def to_payload(self):
        if self.values is None:
            self.sample()
        s_nodes, _ = self.grid.axis('s')
        k_nodes, _ = self.grid.axis('k')
        return {
            'state': self.state.label(),
            'quantity': self.quantity,
            's': s_nodes,
            'k': k_nodes,
            'values': self.values,
        }

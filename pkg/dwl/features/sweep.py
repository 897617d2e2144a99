"""
This class tabulates the mutual information and the relative entropies over Landau levels and regimes.
"""
import logging
from typing import List

import pandas as pd
from joblib import Parallel, delayed

from entities.grid import default_grid
from entities.landau import LandauState, PhysParams, coefficients
from entities.wigner import SampledWigner
from features.quantifiers import (entropy_sp_closed, entropy_sp_definition, entropy_xk, mutual_information,
                                  purity_trace)
from utils.errors import UsageError


logger = logging.getLogger(__name__)


def _sweep_row(n, params, r, spin, with_quadrature, grid_points, grid_pad, tolerance):
    """
    One table row; runs inside a worker.
    """
    st = LandauState(n=n, r=r, spin=spin, params=params)
    row = {
        'n': n,
        'eps': params.eps,
        'kappa': params.kappa,
        'M_closed': mutual_information(n, params.eps, params.kappa),
    }
    i_sp = entropy_sp_closed(st)

    if with_quadrature:
        sampled = SampledWigner(st, default_grid(n, pad=grid_pad, points=grid_points))
        i_xk = entropy_xk(sampled, tolerance=tolerance)
        purity = purity_trace(sampled, tolerance=tolerance)
        row['M_parts'] = i_xk + entropy_sp_definition(sampled) - (1.0 - purity)
        row['I_sp'] = i_sp
        row['I_xk'] = i_xk
        row['purity'] = purity
        return row

    # Closed forms: I_xk coincides with I_SP and a Landau state is pure
    a, b, eta = coefficients(st)
    row['I_sp'] = i_sp
    row['I_xk'] = i_sp
    row['purity'] = (eta * ((1.0 + a * a) + b * b)) ** 2
    return row


class Sweep:
    def __init__(self, param_sets: List[PhysParams], n_max: int, r: int = 1, spin: str = '+',
                 with_quadrature: bool = False, grid_points: int = 512, grid_pad: float = 6.0,
                 tolerance: float = 1e-8, workers: int = 1):
        self.param_sets = param_sets
        self.n_max = n_max
        self.r = r
        self.spin = spin
        self.with_quadrature = with_quadrature
        self.grid_points = grid_points
        self.grid_pad = grid_pad
        self.tolerance = tolerance
        self.workers = workers

        self.table: pd.DataFrame = None

    def validate(self):
        """
        Check the sweep ranges before any work is scheduled.
        """
        if self.n_max < 1:
            raise UsageError(f"n_max: must be >= 1, got {self.n_max}")
        if not self.param_sets:
            raise UsageError("eps, kappa: the sweep needs at least one (eps, kappa) pair")

    def run(self) -> pd.DataFrame:
        """
        One row per (eps, kappa, n), n running fastest.
        """
        self.validate()
        jobs = [(n, params) for params in self.param_sets for n in range(1, self.n_max + 1)]
        logger.info(f"Sweeping n=1..{self.n_max} over {len(self.param_sets)} regime(s) "
                    f"({len(jobs)} rows{', with quadrature' if self.with_quadrature else ''})...")

        rows = Parallel(n_jobs=self.workers)(
            delayed(_sweep_row)(n, params, self.r, self.spin, self.with_quadrature,
                                self.grid_points, self.grid_pad, self.tolerance)
            for n, params in jobs
        )

        columns = ['n', 'eps', 'kappa', 'M_closed']
        if self.with_quadrature:
            columns.append('M_parts')
        columns += ['I_sp', 'I_xk', 'purity']
        self.table = pd.DataFrame(rows, columns=columns)

        logger.info("Sweep finished successfully.")
        return self.table

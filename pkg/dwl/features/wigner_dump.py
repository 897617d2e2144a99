"""
This class dumps the analytic Wigner matrix next to the numerical Weyl transform at probe points.
"""
import logging

import numpy as np
from joblib import Parallel, delayed

from entities.grid import PhasePoint
from entities.landau import LandauState, spinor_from_s
from entities.wigner import omega_matrix, weyl_transform


logger = logging.getLogger(__name__)

DEFAULT_PROBES = [(float(s), float(k)) for s in np.linspace(-2.0, 2.0, 5) for k in np.linspace(-2.0, 2.0, 5)]


def _split(matrix):
    return {'re': np.real(matrix).tolist(), 'im': np.imag(matrix).tolist()}


def _probe(st: LandauState, s: float, k: float):
    point = PhasePoint(s, k)
    analytic = omega_matrix(st, point)
    # sampled in the orbit-centred coordinate so that k_y drops out
    oracle = weyl_transform(lambda x: spinor_from_s(st, np.sqrt(st.eB) * x), point, st.eB, level=st.n)
    return {
        's': s,
        'k': k,
        'analytic': _split(analytic),
        'oracle': _split(oracle),
        'max_abs_diff': float(np.max(np.abs(analytic - oracle))),
    }


class WignerDump:
    def __init__(self, state: LandauState, probes=None, workers: int = 1):
        self.state = state
        self.probes = list(probes) if probes else DEFAULT_PROBES
        self.workers = workers

        self.payload = None

    def run(self):
        """
        For each probe point: 16 analytic entries, 16 oracle entries and their largest difference.
        """
        logger.info(f"Dumping Wigner matrices of {self.state.label()} at {len(self.probes)} point(s)...")
        points = Parallel(n_jobs=self.workers)(
            delayed(_probe)(self.state, s, k) for s, k in self.probes
        )
        worst = max(point['max_abs_diff'] for point in points)
        self.payload = {
            'state': self.state.label(),
            'eps': self.state.params.eps,
            'kappa': self.state.params.kappa,
            'eB': self.state.eB,
            'max_abs_diff': worst,
            'points': points,
        }
        logger.info(f"Largest analytic/oracle difference {worst:.3e}.")
        return self.payload

import numpy as np
import pytest

from entities.grid import default_grid
from entities.landau import LandauState, PhysParams


SPIN_BRANCHES = [('+', 1), ('-', 1), ('+', 2), ('-', 2)]


def make_state(n=1, spin='+', r=1, eps=1.0, kappa=1.0):
    return LandauState(n=n, r=r, spin=spin, params=PhysParams.from_dimensionless(eps, kappa))


@pytest.fixture
def state():
    """
    u+_{1,1} at eps = kappa = 1: E = 2, A = 1/3, B = sqrt(2)/3, eta = 3/4.
    """
    return make_state()


@pytest.fixture
def small_grid():
    return default_grid(2, points=256)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)

import numpy as np
import pytest

from orthoreg import polar_project


def random_matrix(rng, n, scale=1.0):
    return rng.uniform(-scale, scale, (n, n))


def random_orthogonal(rng, n):
    """Orthogonal matrix via the projection of a generic random matrix."""
    while True:
        a = random_matrix(rng, n)
        if np.linalg.cond(a) < 1e6:
            return polar_project(a).matrix


def random_well_conditioned(rng, n, cond_cap=100.0):
    """Random matrix with moderate condition number (rejection sampled)."""
    while True:
        a = random_matrix(rng, n)
        if np.linalg.cond(a) <= cond_cap:
            return a


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)

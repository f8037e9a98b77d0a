import numpy as np
import pytest
from numba import njit

from levyopt import RandomSource, SearchSpace
from levyopt.testbed import Objective


@njit(cache=True)
def _constant(x, params):
    return params[0]


@njit(cache=True)
def _sphere(x, params):
    s = 0.0
    for v in x:
        s += v * v
    return s


def constant_objective(value=7.0, dim=3):
    space = SearchSpace(np.full(dim, -5.0), np.full(dim, 5.0))
    return Objective("const", _constant, space, np.array([value]))


def sphere_objective(dim=1, bound=10.0):
    space = SearchSpace(np.full(dim, -bound), np.full(dim, bound))
    return Objective("sphere", _sphere, space, known_best_value=0.0)


@pytest.fixture
def rng():
    return RandomSource(12345)

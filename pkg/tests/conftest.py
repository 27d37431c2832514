import functools

import numpy as np
import pytest

from orbitpart import catalog, pipeline
from orbitpart.testmap import random_points


@functools.lru_cache(maxsize=None)
def entry(key):
    return catalog.resolve(key)


@functools.lru_cache(maxsize=None)
def solved(key, seed, restarts=8):
    """Pipeline output for seeded standard-normal points (cached across tests)."""
    e = entry(key)
    pts = random_points(e.N_bound, e.d, seed)
    return pts, pipeline.run(e.rep, pts, rep_key=key, restarts=restarts, seed=seed)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

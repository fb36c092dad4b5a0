import functools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from dwell import QuarticPotential, critical_points, solve

settings.register_profile(
    "numerics",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numerics")


@functools.lru_cache(maxsize=96)
def _cached_solve(alpha, beta, gamma, n_basis, n_states, v0):
    pot = QuarticPotential.from_well_params(alpha, beta, gamma, v0)
    return solve(pot, n_basis=n_basis, n_states=n_states)


def well_solve(alpha, beta, gamma, n_basis=100, n_states=8, shift_min_to_zero=False):
    """Memoized solve of a double-well potential, optionally zero-shifted."""
    v0 = 0.0
    if shift_min_to_zero:
        raw = QuarticPotential.from_well_params(alpha, beta, gamma)
        v0 = -critical_points(raw).global_minimum[1]
    return _cached_solve(alpha, beta, gamma, n_basis, n_states, v0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)

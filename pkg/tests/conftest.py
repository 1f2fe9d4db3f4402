import itertools

import pytest
from hypothesis import HealthCheck, settings

from framekit.represent import Solver

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def solver():
    """Shared solver with an in-memory cache only."""
    return Solver(cache_dir=None)


def subsets(xs):
    xs = list(xs)
    return itertools.chain.from_iterable(itertools.combinations(xs, k) for k in range(len(xs) + 1))

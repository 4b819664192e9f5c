import random

import pytest

from frobstrat.algebra import get_field
from frobstrat.curve import CurveModel
from frobstrat.errors import NotSmooth

ALL_MINUS_ONE = (-1, -1, -1, -1, -1)


def random_curve(rng, p, g, m=1):
    F = get_field(p, m)
    while True:
        co = [rng.randrange(F.q) for _ in range(2 * g + 1)]
        try:
            return CurveModel(F, g, co)
        except NotSmooth:
            continue


@pytest.fixture(scope="session")
def X():
    return CurveModel.from_ints(3, 2, ALL_MINUS_ONE)


@pytest.fixture(scope="session")
def tower6(X):
    from frobstrat.tower import build_tower
    return build_tower(X, 6)


@pytest.fixture
def rng():
    return random.Random(20241019)

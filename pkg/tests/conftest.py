import random
from fractions import Fraction

import pytest


@pytest.fixture
def rng():
    return random.Random(12345)


def rational_points(rng, count, dim, denom=4, spread=3):
    pts = []
    for _ in range(count):
        pts.append(tuple(Fraction(rng.randint(-spread * denom, spread * denom), denom) for _ in range(dim)))
    return pts

import random
from fractions import Fraction

import pytest

from hullprob import Point, StochasticInstance, orient

# The worked 4-point instance used across the suite: every 3-subset triangle
# has area 58 and the full hull has area 116.
Q4_ROWS = [(0, 0), (12, 2), (14, 12), (2, 10)]


@pytest.fixture
def q4() -> StochasticInstance:
    half = Fraction(1, 2)
    return StochasticInstance.build([(x, y, half) for x, y in Q4_ROWS])


def random_points(rng: random.Random, n: int, limit: int = 40, step: int = 2,
                  den: int = 1):
    """n points in general position (distinct x, distinct y, no collinear
    triple) with coordinates step-multiples in [0, limit], divided by den."""
    pts: list[Point] = []
    attempts = 0
    while len(pts) < n:
        attempts += 1
        if attempts > 200_000:
            raise RuntimeError("point sampler stuck; loosen the grid")
        c = Point.of(
            Fraction(rng.randrange(0, limit + 1, step), den),
            Fraction(rng.randrange(0, limit + 1, step), den),
        )
        if any(c.x == p.x or c.y == p.y for p in pts):
            continue
        if any(
            orient(p, q, c) == 0
            for i, p in enumerate(pts)
            for q in pts[i + 1 :]
        ):
            continue
        pts.append(c)
    return pts


def random_probs(rng: random.Random, n: int, max_den: int = 8):
    out = []
    for _ in range(n):
        d = rng.randint(1, max_den)
        out.append(Fraction(rng.randint(1, d), d))
    return out


def random_instance(rng: random.Random, n: int, limit: int = 40, step: int = 2,
                    max_den: int = 8) -> StochasticInstance:
    pts = random_points(rng, n, limit=limit, step=step)
    return StochasticInstance(tuple(pts), tuple(random_probs(rng, n, max_den)))

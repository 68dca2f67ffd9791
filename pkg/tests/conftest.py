import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bottleneck_convex.geometry import PointSet

SQUARE_CENTER = PointSet([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
GRID3 = PointSet([(x, y) for y in range(3) for x in range(3)])


def few_interior(rng: random.Random, n: int, r: int) -> PointSet:
    """n - r parabola points plus r random points strictly above the parabola."""
    xs = rng.sample(range(-30, 31), n - r)
    pts = {(x, x * x) for x in xs}
    while len(pts) < n:
        pts.add((rng.randint(min(xs) + 1, max(xs) - 1), rng.randint(0, 900)))
    pts = list(pts)
    rng.shuffle(pts)
    return PointSet(pts)


def random_affine(rng: random.Random):
    """Invertible rational affine map (a, b, c, d, e, f): (x, y) -> (ax + by + e, cx + dy + f)."""
    while True:
        a, b, c, d = (Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4))
        if a * d - b * c != 0:
            return a, b, c, d, Fraction(rng.randint(-50, 50), rng.randint(1, 7)), Fraction(rng.randint(-50, 50))


@st.composite
def point_sets(draw, min_size=1, max_size=9, bound=20):
    pts = draw(st.lists(st.tuples(st.integers(-bound, bound), st.integers(-bound, bound)),
                        min_size=min_size, max_size=max_size, unique=True))
    return PointSet(pts)


@pytest.fixture
def square_center():
    return SQUARE_CENTER


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])

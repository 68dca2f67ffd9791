"""Seeded instance families."""

from __future__ import annotations

import random

from .geometry import PointSet, cross


def gen_random(n: int, seed: int, coord_bound: int = 100, general_position: bool = False,
               max_tries: int = 100_000) -> PointSet:
    """n distinct integer points uniform in [0, coord_bound]^2.

    With ``general_position`` a candidate is redrawn whenever it would be
    collinear with two points already chosen.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > (coord_bound + 1) ** 2:
        raise ValueError("more points requested than grid cells")
    rng = random.Random(seed)
    pts: list[tuple[int, int]] = []
    seen = set()
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > max_tries:
            raise ValueError(f"could not place {n} points after {max_tries} draws")
        p = (rng.randint(0, coord_bound), rng.randint(0, coord_bound))
        if p in seen:
            continue
        if general_position and any(
                cross(pts[i], pts[j], p) == 0
                for i in range(len(pts)) for j in range(i + 1, len(pts))):
            continue
        seen.add(p)
        pts.append(p)
    return PointSet(pts)


def gen_convex_position(n: int, seed: int = 0) -> PointSet:
    """n points (x, x^2) for distinct integers x, listed in a seeded shuffled order.

    Distinct slopes between points of a parabola keep every subset strictly
    convex.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    xs = rng.sample(range(-2 * n, 2 * n + 1), n)
    return PointSet((x, x * x) for x in xs)


def gen_grid(rows: int, cols: int | None = None) -> PointSet:
    cols = rows if cols is None else cols
    return PointSet((x, y) for y in range(rows) for x in range(cols))


def gen_few_interior(n: int, r: int, seed: int) -> PointSet:
    """n points: n - r on a parabola and r strictly inside their convex hull.

    Interior points are drawn between the lower hull (chords of consecutive
    parabola points) and the chord of the two extreme parabola points.
    """
    h = n - r
    if h < 3:
        raise ValueError("need at least three hull points")
    rng = random.Random(seed)
    xs = sorted(rng.sample(range(-3 * n, 3 * n + 1), h))
    pts = {(x, x * x) for x in xs}
    left, right = xs[0], xs[-1]
    while len(pts) < n:
        x = rng.randint(left + 1, right - 1)
        j = max(i for i in range(h - 1) if xs[i] <= x)
        # chords at x: lower hull edge and the top edge
        low = (xs[j] + xs[j + 1]) * x - xs[j] * xs[j + 1]
        top = (left + right) * x - left * right
        if top - low < 2:
            continue
        pts.add((x, rng.randint(low + 1, top - 1)))
    out = list(pts)
    rng.shuffle(out)
    return PointSet(out)

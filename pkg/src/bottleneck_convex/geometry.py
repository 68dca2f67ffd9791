"""Exact planar primitives over rationals.

Coordinates are :class:`fractions.Fraction`.  Every predicate is decided
exactly; :class:`PointSet` additionally keeps an integer copy of its
coordinates (scaled by the common denominator) so that the hot loops of the
solvers run on plain Python ints.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import DuplicatePoint


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(Fraction(x), Fraction(y))


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


class AngleClass(enum.Enum):
    LEFT_FACING = "left"
    STRAIGHT = "straight"
    RIGHT_FACING = "right"
    NOT_Y_MONOTONE = "not-y-monotone"


def cross(o, a, b):
    """Twice the signed area of triangle (o, a, b)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def orientation(p, q, r) -> Orientation:
    return Orientation(_sign(cross(p, q, r)))


class PointSet:
    """Immutable indexed sequence of pairwise distinct points."""

    def __init__(self, points: Iterable):
        pts = tuple(p if isinstance(p, Point) else Point.of(*p) for p in points)
        if len(set(pts)) != len(pts):
            seen = set()
            for i, p in enumerate(pts):
                if p in seen:
                    raise DuplicatePoint(f"point {i} {tuple(map(str, p))} repeats an earlier point")
                seen.add(p)
        self._points = pts

    @property
    def points(self) -> tuple[Point, ...]:
        return self._points

    def __len__(self) -> int:
        return len(self._points)

    def __getitem__(self, i) -> Point:
        return self._points[i]

    def __iter__(self):
        return iter(self._points)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self._points == other._points

    def __hash__(self) -> int:
        return hash(self._points)

    def __repr__(self) -> str:
        inner = ", ".join(f"({p.x}, {p.y})" for p in self._points)
        return f"PointSet([{inner}])"

    @cached_property
    def int_coords(self) -> tuple[tuple[int, int], ...]:
        """Coordinates multiplied by the lcm of all denominators.

        A positive homothety, so every orientation sign is unchanged.
        """
        den = 1
        for p in self._points:
            den = math.lcm(den, p.x.denominator, p.y.denominator)
        return tuple((int(p.x * den), int(p.y * den)) for p in self._points)

    def subset(self, indices: Iterable[int]) -> "PointSet":
        return PointSet(self._points[i] for i in indices)

    def transformed(self, a, b, c, d, e=0, f=0) -> "PointSet":
        """Image under (x, y) -> (a x + b y + e, c x + d y + f)."""
        a, b, c, d, e, f = map(Fraction, (a, b, c, d, e, f))
        if a * d - b * c == 0:
            raise ValueError("affine map is singular")
        return PointSet(Point(a * p.x + b * p.y + e, c * p.x + d * p.y + f)
                        for p in self._points)


def _hull_of(coords, idx: Sequence[int]) -> list[int]:
    # Andrew's monotone chain; strict turns only, so collinear boundary
    # points are dropped.
    pts = sorted(set(idx), key=lambda i: coords[i])
    if len(pts) <= 2:
        return pts
    lower: list[int] = []
    for i in pts:
        while len(lower) >= 2 and cross(coords[lower[-2]], coords[lower[-1]], coords[i]) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(pts):
        while len(upper) >= 2 and cross(coords[upper[-2]], coords[upper[-1]], coords[i]) <= 0:
            upper.pop()
        upper.append(i)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        # all points collinear collapse to the two extremes
        return [pts[0], pts[-1]]
    return hull


def convex_hull(s: PointSet, subset: Iterable[int] | None = None) -> list[int]:
    """Hull vertices of ``subset`` (default: all points) in counterclockwise order.

    Starts from the lexicographically smallest point.  Points in the relative
    interior of hull edges are excluded; an all-collinear input yields its two
    extremes.
    """
    idx = list(range(len(s))) if subset is None else list(subset)
    if not idx:
        raise ValueError("convex hull of an empty subset")
    return _hull_of(s.int_coords, idx)


def is_convex_position(s: PointSet, subset: Iterable[int] | None = None) -> bool:
    """True iff every point of ``subset`` is a strict vertex of its convex hull.

    Sets of at most two points are convex.
    """
    idx = list(range(len(s))) if subset is None else list(subset)
    if len(set(idx)) != len(idx):
        raise ValueError("subset lists an index twice")
    if len(idx) <= 2:
        return True
    return len(_hull_of(s.int_coords, idx)) == len(idx)


def interior_indices(s: PointSet) -> set[int]:
    """Indices that are not hull vertices (edge-interior points included)."""
    if len(s) == 0:
        return set()
    return set(range(len(s))) - set(convex_hull(s))


def classify_angle(p, q, r) -> AngleClass:
    """Classify the angle pqr.

    It is y-monotone when y(p) > y(q) > y(r).  Left-facing means q lies
    strictly on the smaller-x side of the line through p and r.
    """
    if not (p[1] > q[1] > r[1]):
        return AngleClass.NOT_Y_MONOTONE
    o = _sign(cross(p, r, q))
    if o == 0:
        return AngleClass.STRAIGHT
    # p -> r points downward, so its clockwise side is the smaller-x side
    return AngleClass.LEFT_FACING if o < 0 else AngleClass.RIGHT_FACING


class CanonicalOrder(NamedTuple):
    """Sweep order realising the shear x' = x + eps*y for infinitesimal eps > 0."""

    order: tuple[int, ...]
    rank: tuple[int, ...]

    def precedes(self, i: int, j: int) -> bool:
        return self.rank[i] < self.rank[j]


def canonical_key(p) -> tuple:
    return (p[0], p[1])


def canonical_x_order(s: PointSet) -> CanonicalOrder:
    order = tuple(sorted(range(len(s)), key=lambda i: canonical_key(s[i])))
    rank = [0] * len(s)
    for pos, i in enumerate(order):
        rank[i] = pos
    return CanonicalOrder(order, tuple(rank))


def has_collinear_triple(s: PointSet) -> bool:
    c = s.int_coords
    n = len(c)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if cross(c[i], c[j], c[k]) == 0:
                    return True
    return False

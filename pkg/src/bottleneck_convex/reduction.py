"""Hardness pipeline: DNMTS -> angle partition -> bottleneck convex subsets.

DNMTS (distinct numerical matching with target sums) asks to split three
sets A, B, C of n distinct positive integers into triples with a + b = c.
Each number becomes a point on one of the lines y = 0, 1, 2; matched triples
become collinear ("straight") y-monotone angles.  The gadget then adds, per
angle, one parabolic upper chain and one lower chain of 2n + 2 points each.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import Budget, BudgetExceeded, DuplicatePoint, InvalidMatching, default_budget
from .geometry import AngleClass, PointSet, _hull_of, classify_angle, cross
from .solution import Solution

log = logging.getLogger(__name__)

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class DnmtsInstance:
    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "B", tuple(self.B))
        object.__setattr__(self, "C", tuple(self.C))
        n = len(self.A)
        if n == 0 or len(self.B) != n or len(self.C) != n:
            raise ValueError("A, B and C must be nonempty and of equal length")
        for name, seq in (("A", self.A), ("B", self.B), ("C", self.C)):
            if len(set(seq)) != n:
                raise ValueError(f"{name} has repeated values")
            if any(not isinstance(v, int) or v <= 0 for v in seq):
                raise ValueError(f"{name} must hold positive integers")
        if sum(self.A) + sum(self.B) != sum(self.C):
            raise ValueError("sum(A) + sum(B) must equal sum(C)")

    @property
    def n(self) -> int:
        return len(self.A)


@dataclass(frozen=True)
class AnglePartitionInstance:
    """3n points, n on each of the lines y = 0, y = 1, y = 2."""

    points: PointSet
    n: int

    def __post_init__(self):
        for y in (0, 1, 2):
            if len(self.on_line(y)) != self.n:
                raise ValueError(f"line y = {y} must carry exactly {self.n} points")
        if len(self.points) != 3 * self.n:
            raise ValueError("points off the three lines")

    def on_line(self, y: int) -> list[int]:
        return [i for i, p in enumerate(self.points) if p.y == y]


@dataclass(frozen=True)
class GadgetInstance:
    points: PointSet
    k: int
    delta: Fraction
    n: int
    # per point: "base", "upper:i" or "lower:i" (chains numbered from 1)
    labels: tuple[str, ...]
    escalations: int = 0
    wedge_ok: bool = True

    def chain(self, kind: str, i: int) -> list[int]:
        tag = f"{kind}:{i}"
        return [j for j, lab in enumerate(self.labels) if lab == tag]

    def base(self) -> list[int]:
        return [j for j, lab in enumerate(self.labels) if lab == "base"]

    def sidecar(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "delta": str(self.delta),
            "escalations": self.escalations,
            "wedge_ok": self.wedge_ok,
            "labels": {str(j): lab for j, lab in enumerate(self.labels)},
        }


def dnmts_to_angle_partition(d: DnmtsInstance) -> AnglePartitionInstance:
    """a -> (2a, 0), b -> (2b, 2), c -> (c, 1).

    The matching maps (a, 0), (b, 2), (c/2, 1) stretched by 2 in x so that
    every coordinate is an integer; a horizontal stretch keeps every angle's
    class.
    """
    pts = [(2 * a, 0) for a in d.A] + [(2 * b, 2) for b in d.B] + [(c, 1) for c in d.C]
    if len(set(pts)) != len(pts):
        raise DuplicatePoint("two numbers map to the same point")
    return AnglePartitionInstance(PointSet(pts), d.n)


def _chain(i: int, n: int, delta: Fraction, upper: bool) -> list[tuple[Fraction, Fraction]]:
    m = 2 * n + 1
    out = []
    for j in range(m + 1):
        off = delta * j / m
        if upper:
            out.append((i * delta + off, delta * delta + 3 - off * off))
        else:
            out.append((i * delta + off, -delta * delta - 1 + off * off))
    return out


def _build(ap: AnglePartitionInstance, delta: Fraction, escalations: int) -> GadgetInstance:
    n = ap.n
    pts = list(ap.points)
    labels = ["base"] * len(pts)
    for i in range(1, n + 1):
        pts += _chain(i, n, delta, upper=True)
        labels += [f"upper:{i}"] * (2 * n + 2)
    for i in range(1, n + 1):
        pts += _chain(i, n, delta, upper=False)
        labels += [f"lower:{i}"] * (2 * n + 2)
    g = GadgetInstance(PointSet(pts), n, delta, n, tuple(labels), escalations)
    ok = wedge_violations(g) == 0
    return GadgetInstance(g.points, n, delta, n, g.labels, escalations, ok)


def angle_partition_to_bcs(ap: AnglePartitionInstance, max_escalations: int = 2) -> GadgetInstance:
    """Gadget instance with k = n and n(4n + 7) points.

    Delta = t^4 for t the largest base x-coordinate (at least 2).  Chain
    points are spaced uniformly in x.  When the wedge check fails, Delta is
    squared and the gadget rebuilt, at most ``max_escalations`` times.
    """
    t = max(Fraction(2), max(p.x for p in ap.points))
    delta = t ** 4
    g = _build(ap, delta, 0)
    while not g.wedge_ok and g.escalations < max_escalations:
        log.warning("wedge check failed at delta=%s; squaring delta", g.delta)
        g = _build(ap, g.delta * g.delta, g.escalations + 1)
    if not g.wedge_ok:
        log.warning("wedge check still fails after %d escalations", g.escalations)
    return g


def wedge_violations(g: GadgetInstance) -> int:
    """Number of (base line, chain point) pairs with the point not strictly right of the line.

    Lines run through two base points on different horizontal lines; "right"
    means the larger-x side.
    """
    coords = g.points.int_coords
    base = g.base()
    chains = [j for j, lab in enumerate(g.labels) if lab != "base"]
    bad = 0
    for u, v in itertools.combinations(base, 2):
        if coords[u][1] == coords[v][1]:
            continue
        hi, lo = (u, v) if coords[u][1] > coords[v][1] else (v, u)
        for w in chains:
            if cross(coords[hi], coords[lo], coords[w]) <= 0:
                bad += 1
    return bad


def dnmts_matching_to_angles(ap: AnglePartitionInstance, matching: Sequence[Triple]) -> list[Triple]:
    """Point-index angles (top, middle, bottom) for DNMTS triples (a, b, c)."""
    where = {(p.x, p.y): i for i, p in enumerate(ap.points)}
    out = []
    for a, b, c in matching:
        try:
            out.append((where[(2 * b, 2)], where[(c, 1)], where[(2 * a, 0)]))
        except KeyError as exc:
            raise InvalidMatching(f"triple {(a, b, c)} is not part of the instance") from exc
    return out


def check_angle_partition(points: PointSet, base: Sequence[int], angles: Sequence[Triple]) -> None:
    """Raise InvalidMatching unless ``angles`` partition ``base`` into non-right-facing angles."""
    used = [i for t in angles for i in t]
    if sorted(used) != sorted(base):
        raise InvalidMatching("angles do not partition the base points")
    for top, mid, bot in angles:
        cls = classify_angle(points[top], points[mid], points[bot])
        if cls not in (AngleClass.LEFT_FACING, AngleClass.STRAIGHT):
            raise InvalidMatching(f"angle {(top, mid, bot)} is {cls.value}")


def build_gadget_witness(g: GadgetInstance, angles: Sequence[Triple]) -> Solution:
    """n sets: the i-th angle (by middle x) with upper chain i and lower chain i.

    The result is not validated here.
    """
    base = g.base()
    check_angle_partition(g.points, base, angles)
    ordered = sorted(angles, key=lambda t: (g.points[t[1]].x, t))
    sets = []
    for i, angle in enumerate(ordered, start=1):
        sets.append(list(angle) + g.chain("upper", i) + g.chain("lower", i))
    return Solution.of(sets, "witness")


def brute_dnmts(d: DnmtsInstance, budget: Budget | None = None) -> Optional[list[Triple]]:
    """A perfect matching of triples (a, b, c) with a + b = c, or None."""
    b = default_budget(budget)
    if d.n > b.dnmts_n:
        raise BudgetExceeded(f"DNMTS search with n = {d.n} exceeds budget {b.dnmts_n}")
    c_left = set(d.C)
    b_used: set[int] = set()
    out: list[Triple] = []

    def rec(i: int) -> bool:
        if i == d.n:
            return True
        a = d.A[i]
        for bv in d.B:
            if bv in b_used or a + bv not in c_left:
                continue
            b_used.add(bv)
            c_left.discard(a + bv)
            out.append((a, bv, a + bv))
            if rec(i + 1):
                return True
            out.pop()
            c_left.add(a + bv)
            b_used.discard(bv)
        return False

    return list(out) if rec(0) else None


def brute_angle_partition(ap: AnglePartitionInstance, budget: Budget | None = None
                          ) -> Optional[list[Triple]]:
    """A partition into n non-right-facing y-monotone angles, or None."""
    b = default_budget(budget)
    if ap.n > b.angle_n:
        raise BudgetExceeded(f"angle partition search with n = {ap.n} exceeds budget {b.angle_n}")
    coords = ap.points.int_coords
    tops, mids, bots = ap.on_line(2), ap.on_line(1), ap.on_line(0)
    mid_used = [False] * len(mids)
    bot_used = [False] * len(bots)
    out: list[Triple] = []

    def rec(i: int) -> bool:
        if i == len(tops):
            return True
        t = coords[tops[i]]
        for mi, m in enumerate(mids):
            if mid_used[mi]:
                continue
            mid_used[mi] = True
            for bi, bo in enumerate(bots):
                # not right-facing: middle on or left of line top -> bottom
                if bot_used[bi] or cross(t, coords[bo], coords[m]) > 0:
                    continue
                bot_used[bi] = True
                out.append((tops[i], m, bo))
                if rec(i + 1):
                    return True
                out.pop()
                bot_used[bi] = False
            mid_used[mi] = False
        return False

    return list(out) if rec(0) else None


def gen_dnmts_yes(n: int, seed: int, bound: int = 12, max_tries: int = 10_000) -> DnmtsInstance:
    """A random DNMTS yes-instance with entries <= ``bound``."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        a = rng.sample(range(1, bound + 1), n)
        b = rng.sample(range(1, bound + 1), n)
        c = [x + y for x, y in zip(a, b)]
        if max(c) <= bound and len(set(c)) == n:
            rng.shuffle(c)
            return DnmtsInstance(tuple(a), tuple(b), tuple(c))
    raise ValueError(f"no yes-instance with n = {n} and entries <= {bound} found")


def chain_pair_convex_count(g: GadgetInstance, kind: str = "upper") -> int:
    """How many choices of 3 points from each of two different chains are jointly convex."""
    coords = g.points.int_coords
    found = 0
    for i, j in itertools.combinations(range(1, g.n + 1), 2):
        ci, cj = g.chain(kind, i), g.chain(kind, j)
        for ti in itertools.combinations(ci, 3):
            for tj in itertools.combinations(cj, 3):
                members = list(ti + tj)
                if len(_hull_of(coords, members)) == 6:
                    found += 1
    return found


def single_type_cover(g: GadgetInstance, max_points: int = 16) -> Optional[list[list[int]]]:
    """Exhaustive search for a cover of all chain points by at most two convex sets
    one of which avoids the lower (or the upper) chains entirely.

    Only meaningful for n <= 2, where at most two sets are allowed; returns
    the offending partition or None.
    """
    if g.n > 2:
        raise ValueError("exhaustive check is limited to n <= 2")
    coords = g.points.int_coords
    upper = [j for j, lab in enumerate(g.labels) if lab.startswith("upper")]
    lower = [j for j, lab in enumerate(g.labels) if lab.startswith("lower")]
    if len(upper) > max_points:
        raise ValueError("too many chain points for exhaustive enumeration")

    def convex(members):
        return len(members) <= 2 or len(_hull_of(coords, members)) == len(members)

    if g.n == 1:
        return None  # a single set covering everything touches both kinds
    for one_side, other in ((upper, lower), (lower, upper)):
        for mask in range(1, 1 << len(one_side)):
            part = [one_side[b] for b in range(len(one_side)) if mask >> b & 1]
            if not convex(part):
                continue
            rest = other + [one_side[b] for b in range(len(one_side)) if not mask >> b & 1]
            if convex(rest):
                return [part, rest]
    return None

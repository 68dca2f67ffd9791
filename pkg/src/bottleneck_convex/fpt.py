"""Solver parameterised by the number r of points inside the hull.

For a guessed level q the interior points are distributed over at most
min(k, r) convex seed groups.  Each seeded slot must still collect
q - |group| hull vertices and every unseeded slot q of them; a bipartite
flow between slots and hull vertices decides whether enough compatible hull
vertices exist.  Hull vertices of the whole set are always in convex position
with one another, so unseeded slots accept any of them.

Per-vertex compatibility is necessary but not sufficient for a seed with
several hull vertices (a single seed point may end up inside the triangle of
three compatible hull vertices).  Every flow assignment is therefore
re-validated; a rejected assignment is counted as a discrepancy and the
configuration is settled by an exact search over compatible vertex subsets.
The flow thus acts as a sound filter and the answer stays exact.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import Budget, BudgetExceeded, InfeasibleK, default_budget
from .geometry import PointSet, _hull_of, convex_hull, cross
from .solution import Solution


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class InteriorConfiguration:
    groups: tuple[tuple[int, ...], ...]
    # one entry per group: a Side for two-point groups restricted to one side
    # of their line, None otherwise
    sides: tuple[Optional[Side], ...]
    unused: tuple[int, ...]


@dataclass
class FlowNetwork:
    """Slots (demand each) on one side, hull vertices (capacity 1) on the other."""

    demands: list[int]
    hull: list[int]
    arcs: list[list[int]]  # arcs[slot] = hull indices, in increasing order

    def total_demand(self) -> int:
        return sum(self.demands)


@dataclass
class FptStats:
    configurations: int = 0
    flows: int = 0
    full_flows: int = 0
    discrepancies: int = 0
    repairs: int = 0


def _line_side(coords, group: Sequence[int], w: int) -> int:
    a, b = sorted(group, key=lambda i: coords[i])[0], sorted(group, key=lambda i: coords[i])[-1]
    c = cross(coords[a], coords[b], coords[w])
    return (c > 0) - (c < 0)


def _collinear(coords, group: Sequence[int]) -> bool:
    if len(group) < 2:
        return False
    a, b = group[0], group[1]
    return all(cross(coords[a], coords[b], coords[c]) == 0 for c in group[2:])


def compatible_hull_point(group: Sequence[int], side: Optional[Side], w: int, s: PointSet) -> bool:
    """Whether hull vertex ``w`` may join the seed ``group``.

    ``group + [w]`` must be in strictly convex position; for a collinear group
    with an assigned side, ``w`` must also lie strictly on that side of the
    group's line (directed from its first to its last point in (x, y) order).
    """
    if not group:
        return True
    coords = s.int_coords
    members = list(group) + [w]
    if len(members) > 2 and len(_hull_of(coords, members)) != len(members):
        return False
    if side is not None and _collinear(coords, list(group)):
        want = 1 if side is Side.LEFT else -1
        return _line_side(coords, group, w) == want
    return True


def max_flow(net: FlowNetwork) -> tuple[int, dict[int, list[int]]]:
    """Maximum integral flow by shortest augmenting paths (Edmonds-Karp).

    Nodes: source, slots, hull vertices, sink.  Arcs are scanned in (slot,
    hull index) order so the resulting assignment is deterministic.
    """
    m = len(net.demands)
    hull_pos = {h: j for j, h in enumerate(net.hull)}
    h_count = len(net.hull)
    source, sink = m + h_count, m + h_count + 1
    size = sink + 1
    cap: list[dict[int, int]] = [dict() for _ in range(size)]

    def add(u, v, c):
        cap[u][v] = cap[u].get(v, 0) + c
        cap[v].setdefault(u, 0)

    for i, d in enumerate(net.demands):
        if d > 0:
            add(source, i, d)
    for i, targets in enumerate(net.arcs):
        for h in targets:
            add(i, m + hull_pos[h], 1)
    for j in range(h_count):
        add(m + j, sink, 1)

    value = 0
    while True:
        prev = [-1] * size
        prev[source] = source
        queue = deque([source])
        while queue and prev[sink] == -1:
            u = queue.popleft()
            for v, c in cap[u].items():
                if c > 0 and prev[v] == -1:
                    prev[v] = u
                    queue.append(v)
        if prev[sink] == -1:
            break
        bottleneck = None
        v = sink
        while v != source:
            u = prev[v]
            bottleneck = cap[u][v] if bottleneck is None else min(bottleneck, cap[u][v])
            v = u
        v = sink
        while v != source:
            u = prev[v]
            cap[u][v] -= bottleneck
            cap[v][u] += bottleneck
            v = u
        value += bottleneck

    assignment: dict[int, list[int]] = {}
    for i, targets in enumerate(net.arcs):
        # residual capacity on the reverse arc is the flow carried
        used = [h for h in targets if cap[m + hull_pos[h]].get(i, 0) > 0]
        assignment[i] = sorted(used)
    return value, assignment


def interior_configurations(s: PointSet, interior: Sequence[int], k: int, q: int
                            ) -> Iterator[InteriorConfiguration]:
    """Assignments interior point -> {unused, slot 1..min(k, r)} with convex groups.

    Slots are labelled by first use, so each family of groups appears once.
    Groups larger than q or not in convex position are cut as soon as they
    arise.  A two-point group is emitted with a LEFT, a RIGHT and an
    unrestricted variant.
    """
    coords = s.int_coords
    r = len(interior)
    slots = min(k, r)
    groups: list[list[int]] = [[] for _ in range(slots)]
    unused: list[int] = []

    def convex(members):
        return len(members) <= 2 or len(_hull_of(coords, members)) == len(members)

    def rec(i: int, used: int):
        if i == r:
            gs = tuple(tuple(g) for g in groups[:used])
            choices: list[tuple[Optional[Side], ...]] = [()]
            for g in gs:
                opts = (None, Side.LEFT, Side.RIGHT) if len(g) == 2 else (None,)
                choices = [c + (o,) for c in choices for o in opts]
            for sides in choices:
                yield InteriorConfiguration(gs, sides, tuple(unused))
            return
        pt = interior[i]
        unused.append(pt)
        yield from rec(i + 1, used)
        unused.pop()
        for label in range(min(used + 1, slots)):
            g = groups[label]
            if len(g) >= q:
                continue
            g.append(pt)
            if convex(g):
                yield from rec(i + 1, max(used, label + 1))
            g.pop()

    yield from rec(0, 0)


def _build_network(s: PointSet, hull: list[int], config: InteriorConfiguration, k: int, q: int
                   ) -> FlowNetwork:
    demands, arcs = [], []
    for g, side in zip(config.groups, config.sides):
        demands.append(q - len(g))
        arcs.append([w for w in hull if compatible_hull_point(g, side, w, s)])
    for _ in range(k - len(config.groups)):
        demands.append(q)
        arcs.append(list(hull))
    return FlowNetwork(demands, list(hull), arcs)


def _repair(s: PointSet, config: InteriorConfiguration, net: FlowNetwork, k: int, q: int
            ) -> Optional[list[list[int]]]:
    """Exact search for disjoint hull subsets completing every seeded slot."""
    coords = s.int_coords
    seeded = len(config.groups)
    spare_needed = (k - seeded) * q
    taken: set[int] = set()
    chosen: list[list[int]] = []

    def fill(slot: int) -> bool:
        if slot == seeded:
            return len(net.hull) - len(taken) >= spare_needed
        base = list(config.groups[slot])
        cands = [w for w in net.arcs[slot] if w not in taken]
        need = net.demands[slot]
        pick: list[int] = []

        def extend(start: int) -> bool:
            if len(pick) == need:
                chosen.append(list(pick))
                taken.update(pick)
                if fill(slot + 1):
                    return True
                taken.difference_update(pick)
                chosen.pop()
                return False
            for j in range(start, len(cands) - (need - len(pick)) + 1):
                pick.append(cands[j])
                members = base + pick
                if len(members) <= 2 or len(_hull_of(coords, members)) == len(members):
                    if extend(j + 1):
                        return True
                pick.pop()
            return False

        return extend(0)

    if not fill(0):
        return None
    sets = [list(g) + extra for g, extra in zip(config.groups, chosen)]
    rest = [w for w in net.hull if w not in taken]
    for i in range(k - seeded):
        sets.append(rest[i * q:(i + 1) * q])
    return sets


def feasible(s: PointSet, k: int, q: int, budget: Budget | None = None,
             stats: FptStats | None = None, repair: bool = True) -> Optional[Solution]:
    """k disjoint convex sets of exactly q points each, or None."""
    if q < 1:
        raise ValueError("q must be positive")
    b = default_budget(budget)
    stats = stats if stats is not None else FptStats()
    n = len(s)
    if k * q > n:
        return None
    hull = sorted(convex_hull(s))
    hull_set = set(hull)
    interior = [i for i in range(n) if i not in hull_set]
    if len(interior) > b.fpt_r:
        raise BudgetExceeded(f"{len(interior)} interior points exceed the budget of {b.fpt_r}")
    coords = s.int_coords
    for config in interior_configurations(s, interior, k, q):
        stats.configurations += 1
        if len(hull) < k * q - sum(len(g) for g in config.groups):
            continue
        net = _build_network(s, hull, config, k, q)
        stats.flows += 1
        value, assignment = max_flow(net)
        if value < net.total_demand():
            continue
        stats.full_flows += 1
        sets = []
        for slot in range(len(net.demands)):
            g = list(config.groups[slot]) if slot < len(config.groups) else []
            sets.append(g + assignment[slot])
        if all(len(m) <= 2 or len(_hull_of(coords, m)) == len(m) for m in sets):
            return Solution.of(sets, "fpt")
        stats.discrepancies += 1
        if repair:
            fixed = _repair(s, config, net, k, q)
            if fixed is not None:
                stats.repairs += 1
                return Solution.of(fixed, "fpt")
    return None


def solve_fpt(s: PointSet, k: int, budget: Budget | None = None,
              stats: FptStats | None = None) -> Solution:
    """Optimal solution by binary search on q over ``feasible``."""
    n = len(s)
    if k < 1:
        raise ValueError("k must be positive")
    if k > n:
        sol = Solution.of([[i] for i in range(n)] + [[]] * (k - n), "fpt")
        raise InfeasibleK(f"k = {k} exceeds the number of points {n}", sol)
    stats = stats if stats is not None else FptStats()
    best = feasible(s, k, 1, budget, stats)
    if best is None:
        raise AssertionError("q = 1 must be feasible when k <= n")
    lo, hi = 1, n // k + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        sol = feasible(s, k, mid, budget, stats)
        if sol is None:
            hi = mid
        else:
            lo, best = mid, sol
    return best

"""Reference solvers: the exhaustive oracle and the k = 1 dynamic program."""

from __future__ import annotations

from functools import cmp_to_key

from .errors import Budget, BudgetExceeded, InfeasibleK, default_budget
from .geometry import PointSet, _hull_of, cross
from .solution import Solution


def brute_force_bottleneck(s: PointSet, k: int, budget: Budget | None = None) -> Solution:
    """Optimal solution by enumerating point -> {set 1..k, unused} assignments.

    Set labels are canonical (order of first use).  Branches are cut when a
    partial set stops being convex (convexity is hereditary) or when the
    remaining points cannot lift every set above the incumbent.  Among optimal
    assignments the first one in label order (sets before "unused") wins.
    """
    if k < 1:
        raise ValueError("k must be positive")
    b = default_budget(budget)
    n = len(s)
    if n > b.brute_n or k > b.brute_k:
        raise BudgetExceeded(
            f"exhaustive search over (k+1)^n = {k + 1}^{n} assignments exceeds budget "
            f"(n <= {b.brute_n}, k <= {b.brute_k})")
    coords = s.int_coords
    upper = n // k
    sets: list[list[int]] = [[] for _ in range(k)]
    best_value = -1
    best_sets: list[list[int]] = []

    def convex(members):
        return len(members) <= 2 or len(_hull_of(coords, members)) == len(members)

    def rec(i: int, used: int) -> bool:
        # returns True once the upper bound n // k has been attained
        nonlocal best_value, best_sets
        if i == n:
            value = min(len(x) for x in sets)
            if value > best_value:
                best_value = value
                best_sets = [list(x) for x in sets]
            return best_value >= upper
        target = best_value + 1
        deficit = 0
        for x in sets:
            if len(x) < target:
                deficit += target - len(x)
        if deficit > n - i:
            return False
        for label in range(min(used + 1, k)):
            members = sets[label]
            members.append(i)
            if convex(members) and rec(i + 1, max(used, label + 1)):
                members.pop()
                return True
            members.pop()
        return rec(i + 1, used)

    rec(0, 0)
    return Solution.of(best_sets, "brute")


def largest_convex_subset(s: PointSet) -> Solution:
    """Maximum subset in strictly convex position (Chvatal-Klincsek style DP).

    Each candidate polygon is charged to its lowest vertex (smallest (y, x)).
    The remaining points above that anchor are sorted by angle, and
    ``best[i][j]`` is the length of the longest counterclockwise convex chain
    anchor, ..., q_i, q_j with strictly increasing angles.  O(n^4) in the
    worst case, which is ample at the sizes this package targets.
    """
    n = len(s)
    if n == 0:
        raise InfeasibleK("no points", Solution.of([[]], "k1"))
    if n <= 2:
        return Solution.of([range(n)], "k1")
    coords = s.int_coords
    best_size, best_set = 2, [0, 1]

    order = sorted(range(n), key=lambda i: (coords[i][1], coords[i][0]))
    for pos, a in enumerate(order):
        pa = coords[a]
        rest = order[pos + 1:]
        if len(rest) + 1 <= best_size:
            break

        def by_angle(i, j):
            c = cross(pa, coords[i], coords[j])
            if c:
                return -1 if c > 0 else 1
            di = abs(coords[i][0] - pa[0]) + abs(coords[i][1] - pa[1])
            dj = abs(coords[j][0] - pa[0]) + abs(coords[j][1] - pa[1])
            return (di > dj) - (di < dj)

        q = sorted(rest, key=cmp_to_key(by_angle))
        m = len(q)
        pts = [coords[i] for i in q]
        best = [[0] * m for _ in range(m)]
        parent = [[-1] * m for _ in range(m)]
        for j in range(m):
            pj = pts[j]
            for i in range(j):
                pi = pts[i]
                if cross(pa, pi, pj) <= 0:
                    continue  # same ray from the anchor
                val, par = 3, -1
                for h in range(i):
                    bh = best[h][i]
                    if bh + 1 > val and cross(pts[h], pi, pj) > 0:
                        val, par = bh + 1, h
                best[i][j] = val
                parent[i][j] = par
                if val > best_size and cross(pi, pj, pa) > 0:
                    chain = [j, i]
                    h, cur = par, i
                    while h != -1:
                        chain.append(h)
                        h, cur = parent[h][cur], h
                    best_size = val
                    best_set = [a] + [q[c] for c in chain]
    return Solution.of([best_set], "k1")

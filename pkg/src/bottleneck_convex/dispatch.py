"""Solver selection."""

from __future__ import annotations

import logging

from .errors import Budget, InfeasibleK, default_budget
from .exact import brute_force_bottleneck, largest_convex_subset
from .fpt import solve_fpt
from .geometry import PointSet, interior_indices
from .slab import SlabSweep, solve_slab_dag
from .solution import Solution, trivial_solution

log = logging.getLogger(__name__)

ALGORITHMS = ("auto", "slab", "fpt", "brute", "k1")


def solve_auto(s: PointSet, k: int, budget: Budget | None = None) -> Solution:
    """Pick a solver by the shape of the instance.

    * n // k <= 2: consecutive singletons or pairs are optimal;
    * k = 1: the largest convex subset;
    * n // k == 3: one sweep deciding level 3;
    * few interior points and k >= 3: the flow solver;
    * otherwise the full sweep.
    """
    n = len(s)
    if k < 1:
        raise ValueError("k must be positive")
    if k > n:
        sol = Solution.of([[i] for i in range(n)] + [[]] * (k - n), "auto")
        raise InfeasibleK(f"k = {k} exceeds the number of points {n}", sol)
    b = default_budget(budget)
    upper = n // k
    if upper <= 2:
        return trivial_solution(n, k, upper, "trivial")
    if k == 1:
        return largest_convex_subset(s)
    if upper == 3:
        sweep = SlabSweep(s, k, cap=3)
        path = sweep.decide(3)
        return sweep.assemble(path) if path is not None else trivial_solution(n, k, 2, "slab")
    r = len(interior_indices(s))
    if r <= b.fpt_threshold and k >= 3:
        log.debug("dispatching to the flow solver (r = %d)", r)
        return solve_fpt(s, k, b)
    return solve_slab_dag(s, k)


def solve(s: PointSet, k: int, algorithm: str = "auto", budget: Budget | None = None) -> Solution:
    if algorithm == "auto":
        return solve_auto(s, k, budget)
    if algorithm == "slab":
        return solve_slab_dag(s, k)
    if algorithm == "fpt":
        return solve_fpt(s, k, budget)
    if algorithm == "brute":
        return brute_force_bottleneck(s, k, budget)
    if algorithm == "k1":
        if k != 1:
            raise ValueError("the k1 solver needs k = 1")
        return largest_convex_subset(s)
    raise ValueError(f"unknown algorithm {algorithm!r}")

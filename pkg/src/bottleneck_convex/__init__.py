"""Exact solvers for the bottleneck convex subsets problem.

Given n points and k, choose k pairwise disjoint subsets in strictly convex
position so that the smallest subset is as large as possible.
"""

from .dispatch import solve, solve_auto
from .errors import Budget, BudgetExceeded, DuplicatePoint, InfeasibleK, InvalidMatching
from .exact import brute_force_bottleneck, largest_convex_subset
from .fpt import solve_fpt
from .geometry import (AngleClass, Orientation, Point, PointSet, classify_angle, convex_hull,
                       interior_indices, is_convex_position, orientation)
from .slab import solve_slab_dag
from .solution import Solution, find_violation, is_valid

__all__ = [
    "AngleClass", "Budget", "BudgetExceeded", "DuplicatePoint", "InfeasibleK", "InvalidMatching",
    "Orientation", "Point", "PointSet", "Solution", "brute_force_bottleneck", "classify_angle",
    "convex_hull", "find_violation", "interior_indices", "is_convex_position", "is_valid",
    "largest_convex_subset", "orientation", "solve", "solve_auto", "solve_fpt", "solve_slab_dag",
]

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .geometry import PointSet, is_convex_position


@dataclass(frozen=True)
class Solution:
    """k pairwise disjoint index sets; ``value`` is the smallest set size."""

    sets: tuple[frozenset[int], ...]
    solver: str = field(default="", compare=False)

    @classmethod
    def of(cls, sets: Iterable[Iterable[int]], solver: str = "") -> "Solution":
        return cls(tuple(frozenset(s) for s in sets), solver)

    @property
    def k(self) -> int:
        return len(self.sets)

    @property
    def value(self) -> int:
        return min((len(s) for s in self.sets), default=0)

    def sorted_sets(self) -> list[list[int]]:
        return [sorted(s) for s in self.sets]

    def canonical(self) -> "Solution":
        """Same family with sets ordered by (size desc, members) for comparison."""
        key = lambda s: (-len(s), sorted(s))
        return Solution(tuple(sorted(self.sets, key=key)), self.solver)


@dataclass(frozen=True)
class Violation:
    constraint: str  # "count" | "index" | "disjointness" | "convexity"
    detail: str

    def __str__(self) -> str:
        return f"{self.constraint}: {self.detail}"


def find_violation(s: PointSet, sets, k: Optional[int] = None) -> Optional[Violation]:
    """First violated constraint of a candidate solution, or None when valid."""
    sets = [list(x) for x in sets]
    if k is not None and len(sets) != k:
        return Violation("count", f"expected {k} sets, got {len(sets)}")
    seen: dict[int, int] = {}
    for si, members in enumerate(sets):
        for i in members:
            if not isinstance(i, int) or not 0 <= i < len(s):
                return Violation("index", f"set {si} references point {i!r}")
    for si, members in enumerate(sets):
        if len(set(members)) != len(members):
            return Violation("disjointness", f"set {si} lists a point twice")
        for i in members:
            if i in seen:
                return Violation("disjointness", f"point {i} is in sets {seen[i]} and {si}")
            seen[i] = si
    for si, members in enumerate(sets):
        if not is_convex_position(s, members):
            return Violation("convexity", f"set {si} is not in strictly convex position")
    return None


def is_valid(s: PointSet, solution: Solution, k: Optional[int] = None) -> bool:
    return find_violation(s, solution.sets, k) is None


def trivial_solution(n: int, k: int, size: int, solver: str = "trivial") -> Solution:
    """k disjoint sets of ``size`` <= 2 consecutive indices each (any pair is convex)."""
    if size > 2:
        raise ValueError("trivial construction only covers sets of size <= 2")
    if size * k > n:
        raise ValueError(f"cannot fit {k} sets of size {size} into {n} points")
    return Solution.of((range(i * size, (i + 1) * size) for i in range(k)), solver)

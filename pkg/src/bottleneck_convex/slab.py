"""Fixed-k solver: a sweep over vertical slabs.

Points are processed in canonical order (x, then y, which is the order after
an infinitesimal shear).  Between consecutive points every selected polygon
that spans the slab is represented by its top and bottom segment; a state of
the sweep is the collection of these segment pairs together with the number
of points each polygon has absorbed so far.  Crossing a point moves to the
next slab by one of five moves:

* TURN   -- a top ends at the point and continues with a clockwise bend, or a
            bottom ends there and continues counterclockwise;
* CLOSE  -- the top and the bottom of one polygon meet at the point;
* OPEN   -- a new polygon starts with a top and a bottom at the point;
* SKIP   -- the point is not used.

Segments are pairs of canonical positions (not point indices); ``order``
maps a position back to its point.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

from .errors import InfeasibleK
from .geometry import PointSet, canonical_x_order, cross
from .solution import Solution, trivial_solution

log = logging.getLogger(__name__)

Segment = tuple[int, int]


class ActivePolygon(NamedTuple):
    top: Segment
    bottom: Segment
    count: int


@dataclass(frozen=True)
class SlabState:
    """Sweep state inside slab ``slab`` (between positions slab and slab+1).

    ``slab == -1`` is the empty state before the first point and
    ``slab == n - 1`` is a state after the last point.
    """

    slab: int
    active: tuple[ActivePolygon, ...] = ()
    completed: tuple[int, ...] = ()

    @property
    def opened(self) -> int:
        return len(self.active) + len(self.completed)

    @property
    def level(self) -> int:
        counts = [p.count for p in self.active] + list(self.completed)
        return min(counts, default=0)


class Move(enum.Enum):
    TURN = "turn"
    CLOSE = "close"
    OPEN = "open"
    SKIP = "skip"


class Transition(NamedTuple):
    move: Move
    point: int  # canonical position crossed
    before: Optional[ActivePolygon] = None
    after: Optional[ActivePolygon] = None


def slab_segments(s: PointSet, i: int) -> set[tuple[int, int]]:
    """Point-index pairs (left, right) of the segments crossing slab ``i``."""
    n = len(s)
    if not 0 <= i <= n - 2:
        raise ValueError(f"slab index {i} out of range for {n} points")
    order = canonical_x_order(s).order
    return {(order[a], order[b]) for a in range(i + 1) for b in range(i + 1, n)}


class SlabSweep:
    """Precomputed sweep context for one instance and one k."""

    def __init__(self, s: PointSet, k: int, cap: Optional[int] = None):
        if k < 1:
            raise ValueError("k must be positive")
        self.s = s
        self.k = k
        self.n = len(s)
        self.order = canonical_x_order(s).order
        coords = s.int_coords
        self.xy = [coords[i] for i in self.order]
        self.cap = cap if cap is not None else max(self.n // k, 1)
        n = self.n
        # below[a][b] / above[a][b]: positions strictly right / left of a -> b
        self.below = [[0] * n for _ in range(n)]
        self.above = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                lo = hi = 0
                for v in range(n):
                    c = cross(self.xy[a], self.xy[b], self.xy[v])
                    if c < 0:
                        lo |= 1 << v
                    elif c > 0:
                        hi |= 1 << v
                self.below[a][b], self.above[a][b] = lo, hi
                self.below[b][a], self.above[b][a] = hi, lo
        self.after = [((1 << n) - 1) ^ ((1 << (p + 1)) - 1) for p in range(n)]

    def _orient(self, a: int, b: int, c: int) -> int:
        v = cross(self.xy[a], self.xy[b], self.xy[c])
        return (v > 0) - (v < 0)

    def reach(self, poly: ActivePolygon, p: int) -> int:
        """Bitmask of positions after p that ``poly`` could still take as vertices.

        A convex polygon lies below the line of each top edge and above the
        line of each bottom edge; the segment right ends are vertices too.
        """
        (t0, t1), (b0, b1) = poly.top, poly.bottom
        m = (self.below[t0][t1] | (1 << t1)) & (self.above[b0][b1] | (1 << b1))
        return m & self.after[p] if p >= 0 else m

    def initial(self) -> SlabState:
        return SlabState(-1)

    def is_terminal(self, st: SlabState) -> bool:
        return st.slab == self.n - 1 and not st.active and len(st.completed) == self.k

    def successors(self, st: SlabState, min_close: int = 0) -> list[tuple[SlabState, Transition]]:
        """All states of the next slab compatible with ``st``.

        Polygons closing with fewer than ``min_close`` points are dropped.
        """
        n, cap = self.n, self.cap
        p = st.slab + 1
        if p >= n:
            return []
        nxt = p
        active = st.active
        touching = [i for i, poly in enumerate(active) if poly.top[1] == p or poly.bottom[1] == p]
        out: list[tuple[SlabState, Transition]] = []
        if len(touching) > 1:
            return out  # two polygons would share the point
        if touching:
            i = touching[0]
            poly = active[i]
            others = active[:i] + active[i + 1:]
            blocked = 0
            for q in others:
                blocked |= (1 << q.top[1]) | (1 << q.bottom[1])
            count = min(poly.count + 1, cap)
            top, bottom = poly.top, poly.bottom
            if top[1] == p and bottom[1] == p:
                # the final CCW turn bottom-left -> p -> top-left
                if count >= min_close and self._orient(bottom[0], p, top[0]) > 0:
                    completed = tuple(sorted(st.completed + (count,)))
                    out.append((SlabState(nxt, others, completed),
                                Transition(Move.CLOSE, p, poly, None)))
                return out
            if top[1] == p:
                # p must lie strictly above the bottom edge it passes over
                if self._orient(bottom[0], bottom[1], p) <= 0:
                    return out
                for b in _bits(self.below[top[0]][p] & self.after[p] & ~blocked):
                    new = ActivePolygon((p, b), bottom, count)
                    out.append((SlabState(nxt, _insert(others, new), st.completed),
                                Transition(Move.TURN, p, poly, new)))
                return out
            if self._orient(top[0], top[1], p) >= 0:
                return out
            for b in _bits(self.above[bottom[0]][p] & self.after[p] & ~blocked):
                new = ActivePolygon(top, (p, b), count)
                out.append((SlabState(nxt, _insert(others, new), st.completed),
                            Transition(Move.TURN, p, poly, new)))
            return out
        out.append((SlabState(nxt, active, st.completed), Transition(Move.SKIP, p)))
        if st.opened < self.k:
            free = self.after[p]
            for q in active:
                free &= ~((1 << q.top[1]) | (1 << q.bottom[1]))
            count = min(1, cap)
            for b in _bits(free):
                # top end a strictly above the ray p -> b
                for a in _bits(self.above[p][b] & free):
                    new = ActivePolygon((p, a), (p, b), count)
                    out.append((SlabState(nxt, _insert(active, new), st.completed),
                                Transition(Move.OPEN, p, None, new)))
        return out

    # -- search -------------------------------------------------------------

    def _viable(self, st: SlabState, q: int) -> bool:
        need = (self.k - st.opened) * q
        for poly in st.active:
            if poly.count < q:
                short = q - poly.count
                if short > self.reach(poly, st.slab).bit_count():
                    return False
                need += short
        return need <= self.n - 1 - st.slab

    def decide(self, q: int) -> Optional[list[Transition]]:
        """Transitions of one sweep reaching k closed polygons of >= q points each.

        Depth-first over reachable states with memoisation, so the search
        stops at the first complete sweep.  States whose open polygons cannot
        all reach q with the remaining points are not expanded, and a state is
        dropped when another state with the same segments and componentwise
        larger counts has been seen.
        """
        if q < 3:
            raise ValueError("the sweep only represents polygons with >= 3 points")
        if self.cap < q:
            raise ValueError("count cap below the target level")
        start = self.initial()
        parent: dict[SlabState, Optional[tuple[SlabState, Transition]]] = {start: None}
        frontier: dict[tuple, list[tuple[int, ...]]] = {}
        stack = [start]
        while stack:
            st = stack.pop()
            if self.is_terminal(st):
                return _path(parent, st)
            succ = self.successors(st, min_close=q)
            for nxt, tr in reversed(succ):
                if nxt in parent or not self._viable(nxt, q):
                    continue
                if _dominated(frontier, nxt):
                    continue
                parent[nxt] = (st, tr)
                stack.append(nxt)
        return None

    def assemble(self, path: list[Transition]) -> Solution:
        """Point-index sets of the polygons built along a sweep."""
        live: dict[tuple[Segment, Segment], list[int]] = {}
        done: list[list[int]] = []
        for tr in path:
            if tr.move is Move.OPEN:
                live[(tr.after.top, tr.after.bottom)] = [tr.point]
            elif tr.move is Move.TURN:
                pts = live.pop((tr.before.top, tr.before.bottom))
                pts.append(tr.point)
                live[(tr.after.top, tr.after.bottom)] = pts
            elif tr.move is Move.CLOSE:
                pts = live.pop((tr.before.top, tr.before.bottom))
                pts.append(tr.point)
                done.append(pts)
        if live:
            raise AssertionError("sweep ended with open polygons")
        return Solution.of(([self.order[p] for p in pts] for pts in done), "slab")

    def enumerate_optima(self, q: int, limit: int = 10_000) -> Iterator[Solution]:
        """Every sweep reaching level q, via a layered pass keeping all in-neighbours.

        These are all families of k disjoint convex sets whose smallest set has
        at least q points.  The count can be exponential; a warning is logged
        once ``limit`` solutions have been produced and iteration stops there.
        """
        layer = {self.initial(): []}
        preds: dict[SlabState, list[tuple[SlabState, Transition]]] = {}
        for _ in range(self.n):
            nxt_layer: dict[SlabState, list] = {}
            for st in layer:
                for nxt, tr in self.successors(st, min_close=q):
                    if not self._viable(nxt, q):
                        continue
                    nxt_layer.setdefault(nxt, []).append((st, tr))
            preds.update(nxt_layer)
            layer = nxt_layer
        produced = 0

        def walk(st, suffix):
            if st.slab == -1:
                yield list(reversed(suffix))
                return
            for prev, tr in preds.get(st, ()):
                suffix.append(tr)
                yield from walk(prev, suffix)
                suffix.pop()

        for st in layer:
            if not self.is_terminal(st):
                continue
            for path in walk(st, []):
                yield self.assemble(path)
                produced += 1
                if produced >= limit:
                    log.warning("stopped after %d optimal solutions; output may be much larger", produced)
                    return


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _insert(active: tuple[ActivePolygon, ...], new: ActivePolygon) -> tuple[ActivePolygon, ...]:
    return tuple(sorted(active + (new,)))


def _dominated(frontier: dict, st: SlabState) -> bool:
    key = (st.slab, tuple((p.top, p.bottom) for p in st.active), len(st.completed))
    counts = tuple(p.count for p in st.active)
    seen = frontier.setdefault(key, [])
    for c in seen:
        if all(a >= b for a, b in zip(c, counts)):
            return True
    seen[:] = [c for c in seen if not all(a <= b for a, b in zip(c, counts))]
    seen.append(counts)
    return False


def _path(parent, st) -> list[Transition]:
    path = []
    while parent[st] is not None:
        st, tr = parent[st]
        path.append(tr)
    path.reverse()
    return path


def successors(state: SlabState, s: PointSet, k: int, cap: Optional[int] = None):
    """Compatible next-slab states of ``state`` as (state, transition) pairs."""
    return SlabSweep(s, k, cap).successors(state)


def solve_slab_dag(s: PointSet, k: int, stop_at: Optional[int] = None) -> Solution:
    """Optimal solution for any k by sweeping slabs.

    The best level q >= 3 is found by binary search over the sweep's decision
    version (feasibility at q implies feasibility at q - 1).  Sets of one or
    two points are not polygons, so the answer is the larger of that level
    and the trivial value min(2, n // k).  ``stop_at`` caps the search level.
    """
    n = len(s)
    if k < 1:
        raise ValueError("k must be positive")
    if k > n:
        sol = Solution.of([[i] for i in range(n)] + [[]] * (k - n), "slab")
        raise InfeasibleK(f"k = {k} exceeds the number of points {n}", sol)
    upper = n // k
    if stop_at is not None:
        upper = min(upper, stop_at)
    best = trivial_solution(n, k, min(2, upper), "slab")
    if upper < 3:
        return best
    lo, hi = 2, upper + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        # capping counts at the target merges states that differ only above it
        sweep = SlabSweep(s, k, cap=mid)
        path = sweep.decide(mid)
        if path is None:
            hi = mid
        else:
            lo = mid
            best = sweep.assemble(path)
    return best


def sweep_value(s: PointSet, k: int) -> int:
    return solve_slab_dag(s, k).value

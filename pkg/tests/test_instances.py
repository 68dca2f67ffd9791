import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bottleneck_convex.errors import BudgetExceeded, InvalidMatching
from bottleneck_convex.geometry import (AngleClass, PointSet, classify_angle, cross,
                                        has_collinear_triple, interior_indices, is_convex_position)
from bottleneck_convex.instances import gen_convex_position, gen_few_interior, gen_grid, gen_random
from bottleneck_convex.reduction import (AnglePartitionInstance, DnmtsInstance,
                                         angle_partition_to_bcs, brute_angle_partition, brute_dnmts,
                                         build_gadget_witness, chain_pair_convex_count,
                                         check_angle_partition, dnmts_matching_to_angles,
                                         dnmts_to_angle_partition, gen_dnmts_yes, single_type_cover,
                                         wedge_violations)
from bottleneck_convex.solution import Solution, find_violation

D1 = DnmtsInstance((1,), (2,), (3,))
D2 = DnmtsInstance((1, 2), (3, 5), (4, 7))


def gadget(d, escalations=0):
    return angle_partition_to_bcs(dnmts_to_angle_partition(d), escalations)


# -- generators ---------------------------------------------------------------

def test_gen_random_deterministic():
    assert gen_random(5, 1, 100) == gen_random(5, 1, 100)
    assert gen_random(5, 1, 100) != gen_random(5, 2, 100)
    assert len(gen_random(1, 0)) == 1


def test_gen_random_general_position():
    s = gen_random(50, 3, 100, general_position=True)
    assert len(s) == 50 and not has_collinear_triple(s)
    assert all(0 <= p.x <= 100 and 0 <= p.y <= 100 for p in s)


def test_gen_random_rejects_impossible():
    with pytest.raises(ValueError):
        gen_random(10, 0, coord_bound=2)


@settings(max_examples=30)
@given(st.integers(3, 40), st.integers(0, 1000), st.data())
def test_convex_position_generator(n, seed, data):
    s = gen_convex_position(n, seed)
    assert len(s) == n and is_convex_position(s)
    sub = data.draw(st.lists(st.integers(0, n - 1), unique=True))
    assert is_convex_position(s, sub)


def test_parabola_points_convex():
    for n in range(3, 15):
        assert is_convex_position(PointSet((i, i * i) for i in range(1, n + 1)))


def test_grid_and_few_interior():
    assert len(gen_grid(3)) == 9 and len(gen_grid(2, 5)) == 10
    for seed in range(40):
        s = gen_few_interior(10, 3, seed)
        assert len(s) == 10 and len(interior_indices(s)) == 3


# -- DNMTS and angle partition ----------------------------------------------------

def test_dnmts_validation():
    with pytest.raises(ValueError):
        DnmtsInstance((1, 1), (3, 5), (4, 6))
    with pytest.raises(ValueError):
        DnmtsInstance((1, 2), (3, 5), (4, 8))
    with pytest.raises(ValueError):
        DnmtsInstance((0,), (3,), (3,))


def test_map_to_angle_partition():
    ap = dnmts_to_angle_partition(D2)
    assert list(ap.points) == [(2, 0), (4, 0), (6, 2), (10, 2), (4, 1), (7, 1)]
    assert classify_angle((6, 2), (4, 1), (2, 0)) is AngleClass.STRAIGHT
    assert classify_angle((6, 2), (7, 1), (4, 0)) is not AngleClass.STRAIGHT


def test_brute_dnmts_examples():
    assert sorted(brute_dnmts(D2)) == [(1, 3, 4), (2, 5, 7)]
    assert brute_dnmts(D1) == [(1, 2, 3)]
    assert sorted(brute_dnmts(DnmtsInstance((1, 2), (3, 5), (5, 6)))) == [(1, 5, 6), (2, 3, 5)]
    assert brute_dnmts(DnmtsInstance((1, 2), (4, 5), (3, 9))) is None


def test_brute_budgets():
    big = gen_dnmts_yes(9, 0, 60)
    with pytest.raises(BudgetExceeded):
        brute_dnmts(big)
    with pytest.raises(BudgetExceeded):
        brute_angle_partition(dnmts_to_angle_partition(gen_dnmts_yes(7, 0, 40)))


def test_angle_partition_examples():
    ap = dnmts_to_angle_partition(D2)
    angles = brute_angle_partition(ap)
    assert angles is not None
    assert all(classify_angle(*(ap.points[i] for i in a)) is AngleClass.STRAIGHT for a in angles)
    single = AnglePartitionInstance(PointSet([(0, 2), (0, 1), (0, 0)]), 1)
    assert brute_angle_partition(single) == [(0, 1, 2)]
    right = AnglePartitionInstance(PointSet([(0, 2), (5, 1), (0, 0)]), 1)
    assert brute_angle_partition(right) is None


def test_round_trip_soundness_random():
    rng = random.Random(4)
    for _ in range(150):
        n = rng.randint(1, 4)
        vals = rng.sample(range(1, 30), 3 * n)
        a, b, c = vals[:n], vals[n:2 * n], vals[2 * n:]
        # repair the sum constraint on the largest C entry
        c[-1] += sum(a) + sum(b) - sum(c)
        try:
            d = DnmtsInstance(tuple(a), tuple(b), tuple(c))
        except ValueError:
            continue
        ap = dnmts_to_angle_partition(d)
        assert (brute_dnmts(d) is None) == (brute_angle_partition(ap) is None)


def test_yes_generator():
    for seed in range(20):
        d = gen_dnmts_yes(3, seed, 12)
        assert brute_dnmts(d) is not None and max(d.C) <= 12


def test_left_facing_partition_cannot_balance():
    # partitions with a left-facing angle and no right-facing angle cannot balance
    rng = random.Random(12)
    for _ in range(40):
        n = rng.randint(2, 3)
        pts = set()
        while len(pts) < 3 * n:
            y = len(pts) // n
            pts.add((rng.randint(0, 20), y))
        ap = AnglePartitionInstance(PointSet(sorted(pts, key=lambda p: p[1])), n)
        tops, mids, bots = ap.on_line(2), ap.on_line(1), ap.on_line(0)
        for pm in itertools.permutations(mids):
            for pb in itertools.permutations(bots):
                classes = [classify_angle(ap.points[t], ap.points[m], ap.points[b])
                           for t, m, b in zip(tops, pm, pb)]
                if AngleClass.LEFT_FACING in classes and AngleClass.RIGHT_FACING not in classes:
                    lhs = sum(ap.points[m].x for m in pm)
                    rhs = sum(ap.points[t].x + ap.points[b].x for t, b in zip(tops, pb)) / Fraction(2)
                    assert lhs < rhs


# -- gadget ------------------------------------------------------------------

@pytest.mark.parametrize("d", [D1, D2, DnmtsInstance((1, 2, 3), (4, 5, 6), (5, 7, 9))])
def test_gadget_shape(d):
    g = gadget(d)
    n = d.n
    assert len(g.points) == n * (4 * n + 7) and g.k == n
    assert g.delta == max(Fraction(2), max(p.x for p in dnmts_to_angle_partition(d).points)) ** 4
    for i in range(1, n + 1):
        for kind in ("upper", "lower"):
            ch = g.chain(kind, i)
            assert len(ch) == 2 * n + 2
            for a, b, c in zip(ch, ch[1:], ch[2:]):
                turn = cross(g.points[a], g.points[b], g.points[c])
                assert turn < 0 if kind == "upper" else turn > 0
    up, lo = g.chain("upper", 1), g.chain("lower", 1)
    assert g.points[up[0]] == (g.delta, g.delta ** 2 + 3)
    assert g.points[up[-1]] == (2 * g.delta, 3)
    assert g.points[lo[0]] == (g.delta, -g.delta ** 2 - 1)
    assert g.points[lo[-1]] == (2 * g.delta, -1)


def naive_wedge_violations(g):
    base = [i for i, lab in enumerate(g.labels) if lab == "base"]
    chain = [i for i, lab in enumerate(g.labels) if lab != "base"]
    bad = 0
    for u, v in itertools.combinations(base, 2):
        pu, pv = g.points[u], g.points[v]
        if pu.y == pv.y:
            continue
        hi, lo = (pu, pv) if pu.y > pv.y else (pv, pu)
        for w in chain:
            x, y = g.points[w]
            # x-coordinate of the line at height y, then compare
            at = lo.x + (hi.x - lo.x) * (y - lo.y) / (hi.y - lo.y)
            bad += x <= at
    return bad


@pytest.mark.parametrize("d", [D1, D2])
def test_wedge_verifier_matches_naive(d):
    g = gadget(d)
    assert wedge_violations(g) == naive_wedge_violations(g)


def test_wedge_fails_at_t4():
    # the upper chain starts Delta^2 above the base but only Delta to the right,
    # so shallow lines through base points pass below it
    g = gadget(D1)
    assert not g.wedge_ok and wedge_violations(g) == 9
    line = ((4, 2), (2, 0))
    start = g.points[g.chain("upper", 1)[0]]
    assert start == (256, 65539) and cross(line[0], line[1], start) < 0


def test_escalation_is_reported():
    g = gadget(D1, escalations=2)
    assert g.escalations == 2 and not g.wedge_ok
    assert g.delta == Fraction(256) ** 4


def test_witness_shape():
    for d in (D1, D2):
        g = gadget(d)
        ap = dnmts_to_angle_partition(d)
        w = build_gadget_witness(g, dnmts_matching_to_angles(ap, brute_dnmts(d)))
        assert w.k == d.n and w.value == 4 * d.n + 7
        assert len(set().union(*w.sets)) == len(g.points)


def test_witness_is_not_strictly_convex():
    # each set carries a straight angle, three collinear points
    g = gadget(D1)
    w = build_gadget_witness(g, dnmts_matching_to_angles(dnmts_to_angle_partition(D1), [(1, 2, 3)]))
    v = find_violation(g.points, w.sets, 1)
    assert v is not None and v.constraint == "convexity"


def test_swapped_chains_fixture():
    g = gadget(D2)
    ap = dnmts_to_angle_partition(D2)
    w = build_gadget_witness(g, dnmts_matching_to_angles(ap, brute_dnmts(D2)))
    a0, a1 = ([i for i in sorted(x) if g.labels[i] == "base"] for x in w.sets)
    swapped = Solution.of([a0 + g.chain("upper", 2) + g.chain("lower", 2),
                           a1 + g.chain("upper", 1) + g.chain("lower", 1)])
    v = find_violation(g.points, swapped.sets, 2)
    assert str(v) == "convexity: set 0 is not in strictly convex position"


def test_witness_rejects_bad_matching():
    g = gadget(D2)
    with pytest.raises(InvalidMatching):
        build_gadget_witness(g, [(2, 5, 1), (3, 4, 0)])  # right-facing
    with pytest.raises(InvalidMatching):
        build_gadget_witness(g, [(2, 4, 0)])
    with pytest.raises(InvalidMatching):
        dnmts_matching_to_angles(dnmts_to_angle_partition(D2), [(1, 2, 3)])


def test_right_facing_rejected():
    ps = PointSet([(0, 2), (5, 1), (0, 0)])
    with pytest.raises(InvalidMatching):
        check_angle_partition(ps, [0, 1, 2], [(0, 1, 2)])


def test_chain_points_need_both_chain_kinds():
    # exhaustive: covering the chains with <= n convex sets forces every set
    # to touch an upper and a lower chain
    assert single_type_cover(gadget(D1)) is None
    assert single_type_cover(gadget(D2)) is None


def naive_convex(points):
    # every point outside each triangle of the others and no collinear triple
    for a, b, c in itertools.combinations(points, 3):
        if cross(a, b, c) == 0:
            return False
    for p in points:
        others = [q for q in points if q != p]
        for a, b, c in itertools.combinations(others, 3):
            s1, s2, s3 = cross(a, b, p), cross(b, c, p), cross(c, a, p)
            if (s1 > 0 and s2 > 0 and s3 > 0) or (s1 < 0 and s2 < 0 and s3 < 0):
                return False
    return True


def test_two_upper_chains():
    # no convex set takes three points of each of two upper chains, except
    # through the low endpoint ((i + 1) Delta, 3) of the right chain
    assert chain_pair_convex_count(gadget(D1)) == 0
    g = gadget(D2)
    found = []
    for a in itertools.combinations(g.chain("upper", 1), 3):
        for b in itertools.combinations(g.chain("upper", 2), 3):
            if naive_convex([g.points[i] for i in a + b]):
                found.append(a + b)
    assert len(found) == chain_pair_convex_count(g, "upper") == 3
    end = g.chain("upper", 2)[-1]
    assert g.points[end] == (3 * g.delta, 3) and all(end in f for f in found)
    assert chain_pair_convex_count(g, "lower") == 3


def test_sidecar():
    g = gadget(D2)
    meta = g.sidecar()
    assert meta["k"] == 2 and len(meta["labels"]) == 30
    assert sum(v == "base" for v in meta["labels"].values()) == 6

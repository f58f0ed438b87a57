"""Geometry kernel: dyadic scalars, interval unions, polygon clipping."""

import math
import random

import numpy as np
import pytest

from favard import (
    ConvexPolygon,
    Dyadic,
    DyadicPrecisionError,
    HalfPlane,
    Interval,
    IntervalUnion,
    polygon_area,
    polygon_clip_halfplane,
    union_inflate,
    union_insert,
    union_measure,
)
from favard.polygon import unit_square


# ---------------------------------------------------------------- dyadic


def test_dyadic_canonical_form():
    d = Dyadic(6, 3)  # 6/8 = 3/4
    assert (d.mantissa, d.exponent) == (3, 2)
    assert Dyadic(0, 7) == Dyadic(0)
    assert float(Dyadic(3, 2)) == 0.75


def test_dyadic_arithmetic_exact():
    a = Dyadic(1, 2)  # 1/4
    b = Dyadic(3, 1)  # 3/2
    assert float(a + b) == 1.75
    assert float(b - a) == 1.25
    assert float(a * b) == 0.375
    assert a < b and b > a and a == Dyadic(2, 3)


def test_dyadic_from_float_exact():
    for x in (0.1, 0.75, -3.5, 1 / 3, math.sqrt(2) - 1):
        d = Dyadic.from_float(x)
        assert float(d) == x


def test_dyadic_roundtrip_property():
    rng = random.Random(7)
    for _ in range(1000):
        a = Dyadic(rng.randrange(-999, 1000), rng.randrange(0, 40))
        b = Dyadic(rng.randrange(-999, 1000), rng.randrange(0, 40))
        assert (a + b) - b == a
        assert (a * b) == (b * a)
        assert a + b == b + a


def test_dyadic_exponent_limit():
    with pytest.raises(DyadicPrecisionError):
        Dyadic(3, 300)
    with pytest.raises(DyadicPrecisionError):
        Dyadic(1, 100) * Dyadic(1, 100)


def test_dyadic_floor():
    assert Dyadic(7, 2).floor() == 1
    assert Dyadic(-1, 2).floor() == -1
    assert Dyadic(8, 2).floor() == 2


def test_dyadic_hash_consistent_with_int_equality():
    assert Dyadic(5) == 5 and hash(Dyadic(5)) == hash(5)
    assert Dyadic(12, 2) == 3 and hash(Dyadic(12, 2)) == hash(3)
    d = {Dyadic(5): "a"}
    assert d[5] == "a"


# --------------------------------------------------------------- unions


def test_union_insert_examples():
    u = IntervalUnion.empty()
    u = union_insert(u, Interval(0, 1))
    assert u.parts == (Interval(0, 1),)

    u = union_insert(IntervalUnion((Interval(0, 1),)), Interval(0.5, 2))
    assert u.parts == (Interval(0, 2),)
    assert union_measure(u) == 2.0

    u = IntervalUnion((Interval(0, 1), Interval(3, 4)))
    u = union_insert(u, Interval(1, 3))
    assert u.parts == (Interval(0, 4),)


def test_union_degenerate_policy():
    # isolated degenerate intervals vanish; touching ones are absorbed
    u = union_insert(IntervalUnion.empty(), Interval(2, 2))
    assert len(u) == 0
    u = union_insert(IntervalUnion((Interval(0, 1),)), Interval(1, 1))
    assert u.parts == (Interval(0, 1),)


def test_union_insert_spanning_many_parts():
    u = IntervalUnion((Interval(0, 1), Interval(2, 3), Interval(4, 5)))
    assert union_insert(u, Interval(0.5, 4.5)).parts == (Interval(0, 5),)
    assert union_insert(u, Interval(1.2, 1.8)).parts == (
        Interval(0, 1), Interval(1.2, 1.8), Interval(2, 3), Interval(4, 5),
    )
    assert union_insert(u, Interval(3.5, 3.5)).parts == u.parts


def test_union_measure_examples():
    assert union_measure(IntervalUnion.empty()) == 0.0
    u = IntervalUnion((Interval(0, 1), Interval(2, 2.5)))
    assert union_measure(u) == 1.5


def test_union_measure_against_grid_oracle():
    # coverage counting on a 1e-6 grid is the independent measure
    rng = random.Random(12)
    intervals = []
    for _ in range(60):
        lo = rng.uniform(0, 0.9)
        intervals.append(Interval(lo, lo + rng.uniform(0, 0.1)))
    u = IntervalUnion.from_intervals(intervals)
    grid = np.arange(0.0, 1.0, 1e-6) + 5e-7
    covered = np.zeros(grid.size, dtype=bool)
    for it in intervals:
        covered |= (grid >= it.lo) & (grid <= it.hi)
    oracle = float(np.mean(covered))
    assert abs(union_measure(u) - oracle) < 1e-3


def test_union_order_invariance_property():
    rng = random.Random(99)
    for _ in range(1000):
        items = []
        for _ in range(rng.randrange(1, 12)):
            lo = rng.uniform(-5, 5)
            items.append(Interval(lo, lo + rng.uniform(0, 2)))
        u1 = IntervalUnion.empty()
        for it in items:
            u1 = union_insert(u1, it)
        shuffled = items[:]
        rng.shuffle(shuffled)
        u2 = IntervalUnion.empty()
        prev = 0.0
        for it in shuffled:
            u2 = union_insert(u2, it)
            m = union_measure(u2)
            assert m >= prev - 1e-12  # monotone under insertion
            prev = m
        assert u1.parts == u2.parts
        assert union_measure(u1) == pytest.approx(union_measure(u2), abs=1e-12)


def test_union_inflate_examples():
    u = IntervalUnion((Interval(0, 1),))
    assert union_inflate(u, 0.25).parts == (Interval(-0.25, 1.25),)

    u = IntervalUnion((Interval(0, 1), Interval(1.1, 2)))
    assert union_inflate(u, 0.1).parts == (Interval(-0.1, 2.1),)

    assert union_inflate(u, 0.0) == u
    with pytest.raises(ValueError):
        union_inflate(u, -0.5)


def test_union_inflate_semigroup():
    # dyadic radii keep float arithmetic exact, so set equality is exact
    rng = random.Random(5)
    for _ in range(200):
        items = []
        for _ in range(rng.randrange(1, 8)):
            lo = rng.randrange(-64, 64) / 16.0
            items.append(Interval(lo, lo + rng.randrange(0, 32) / 16.0))
        u = IntervalUnion.from_intervals(items)
        a, b = 0.25, 0.125
        assert union_inflate(u, a + b) == union_inflate(union_inflate(u, a), b)


# -------------------------------------------------------------- polygons


def test_polygon_clip_examples():
    sq = unit_square()
    clipped = polygon_clip_halfplane(sq, HalfPlane(1.0, 0.0, 0.5))  # x <= 0.5
    assert polygon_area(clipped) == pytest.approx(0.5, abs=1e-15)

    gone = polygon_clip_halfplane(sq, HalfPlane(1.0, 0.0, -1.0))  # x <= -1
    assert gone.is_empty() and polygon_area(gone) == 0.0


def test_polygon_triangle_halfplane_hand_value():
    # triangle (0,0),(1,0),(0,1) under y <= x keeps area 1/4 (hand integral)
    tri = ConvexPolygon([(0, 0), (1, 0), (0, 1)])
    clipped = polygon_clip_halfplane(tri, HalfPlane(-1.0, 1.0, 0.0))
    assert polygon_area(clipped) == pytest.approx(0.25, abs=1e-12)

    # Monte Carlo rejection cross-check
    rng = random.Random(3)
    hits = 0
    trials = 200_000
    for _ in range(trials):
        x, y = rng.random(), rng.random()
        if x + y <= 1 and y <= x:
            hits += 1
    assert polygon_area(clipped) == pytest.approx(hits / trials, abs=5e-3)


def test_polygon_area_examples():
    assert polygon_area(unit_square()) == 1.0
    assert polygon_area(ConvexPolygon([])) == 0.0


def test_polygon_clip_area_monotone_property():
    rng = random.Random(21)
    for _ in range(200):
        # random convex polygon: hull of a circle sample
        k = rng.randrange(3, 9)
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(k))
        poly = ConvexPolygon(
            [(math.cos(a), math.sin(a)) for a in angles]
        )
        area = polygon_area(poly)
        for _ in range(4):
            t = rng.uniform(0, 2 * math.pi)
            plane = HalfPlane(math.cos(t), math.sin(t), rng.uniform(-0.5, 1.0))
            poly = polygon_clip_halfplane(poly, plane)
            new_area = polygon_area(poly)
            assert new_area <= area + 1e-12
            area = new_area


def test_polygon_sliver_collapse():
    # nearly coincident cuts must not leave sliver vertices behind
    sq = unit_square()
    a = polygon_clip_halfplane(sq, HalfPlane(1.0, 0.0, 0.5))
    b = polygon_clip_halfplane(a, HalfPlane(1.0, 0.0, 0.5 + 1e-15))
    assert polygon_area(b) == pytest.approx(0.5, abs=1e-12)
    assert all(
        math.hypot(p[0] - q[0], p[1] - q[1]) > 1e-12
        for p, q in zip(b.vertices, b.vertices[1:])
    )

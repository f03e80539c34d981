from __future__ import annotations

import math
import random

import pytest

from tspn.disks import DiskInstance, disjoint_center_tour, overlapping_disks_tour
from tspn.geom import Disk, Line, Point, Polygon, Segment, tour_visits
from tspn.lines import lines_tour, three_line_opt
from tspn.oracle import discretized_opt, lower_bound, rectangle_lower_bound, two_disk_opt
from tspn.same_diameter import tspn_same_diameter


def equilateral():
    A, B, C = Point(0, 0), Point(1, 0), Point(0.5, math.sqrt(3) / 2)
    return [Line.through(B, C), Line.through(A, C), Line.through(A, B)]


def test_examples():
    assert discretized_opt([Disk(Point(1, 1), 1.0)]).length == 0.0
    res = discretized_opt([Disk(Point(0, 0), 1.0), Disk(Point(10, 0), 1.0)])
    assert res.length == pytest.approx(16.0, abs=1e-6)
    assert two_disk_opt(Disk(Point(0, 0), 1.0), Disk(Point(10, 0), 1.0)) == 16.0
    res = discretized_opt(equilateral())
    assert res.length == pytest.approx(1.5, abs=1e-4)
    assert res.clip_box is not None


def test_errors():
    with pytest.raises(ValueError, match="empty instance"):
        discretized_opt([])
    with pytest.raises(ValueError, match="oracle capped"):
        discretized_opt([Point(i, 0) for i in range(8)])


def test_points_match_exact_tsp():
    pts = [Point(0, 0), Point(3, 1), Point(1, 4), Point(-2, 2)]
    from tspn.point_tsp import exact_point_tour

    assert discretized_opt(pts).length == pytest.approx(exact_point_tour(pts).length, abs=1e-9)


def test_monotone_history_and_visits():
    rng = random.Random(51)
    for _ in range(4):
        regs = [Disk(Point(rng.uniform(0, 8), rng.uniform(0, 8)), 1.0) for _ in range(5)]
        res = discretized_opt(regs)
        assert all(b <= a + 1e-12 for a, b in zip(res.history, res.history[1:]))
        assert res.length <= res.history[-1] + 1e-9
        assert all(tour_visits(res.tour, r, 1e-6) for r in regs)


def test_non_convex_polygon_region():
    # a point in the notch of an L: inside the hull, at distance 0.5 from the region
    L = Polygon((Point(0, 0), Point(2, 0), Point(2, 1), Point(1, 1), Point(1, 2), Point(0, 2)))
    res = discretized_opt([L, Point(1.5, 1.5)])
    assert res.length == pytest.approx(1.0, abs=1e-4)
    assert discretized_opt([L, Point(3, 3)]).length == pytest.approx(2 * math.sqrt(5), abs=1e-4)


def test_algorithms_never_beat_oracle():
    rng = random.Random(52)
    for _ in range(4):
        ds = [Disk(Point(rng.uniform(0, 10), rng.uniform(0, 10)), 1.0) for _ in range(4)]
        opt = discretized_opt(ds).length
        assert overlapping_disks_tour(DiskInstance.from_disks(ds)).final_tour.length >= opt - 1e-4
        inst = DiskInstance.from_disks(ds)
        if inst.disjoint:
            assert disjoint_center_tour(inst).length >= opt - 1e-4
        assert tspn_same_diameter(ds).length >= opt - 1e-4
    for _ in range(4):
        lines = [Line(math.cos(t), math.sin(t), rng.uniform(-2, 2)) for t in (rng.uniform(0, math.pi) for _ in range(4))]
        assert lines_tour(lines).length >= discretized_opt(lines).length - 1e-4


def test_lower_bound_examples():
    disks = [Disk(Point(3 * i, 3 * j), 1.0) for i in range(13) for j in range(8)]
    assert len(disks) == 104
    assert lower_bound(disks) >= 25 * math.pi - 1e-9
    A, B, C = Point(0, 0), Point(1, 0), Point(0.5, math.sqrt(3) / 2)
    mid = lambda p, q: Point((p.x + q.x) / 2, (p.y + q.y) / 2)
    medians = [Line.through(A, mid(B, C)), Line.through(B, mid(A, C)), Line.through(C, mid(A, B))]
    assert lower_bound(equilateral() + medians) >= 1.5 - 1e-12
    assert lower_bound([Disk(Point(0, 0), 1.0)]) == 0.0


def test_rectangle_bound_two_points():
    assert rectangle_lower_bound([Point(0, 0), Point(3, 4)]) == pytest.approx(10.0, rel=1e-3)


def test_lower_bound_below_oracle():
    rng = random.Random(53)
    cases = [
        [Disk(Point(rng.uniform(0, 10), rng.uniform(0, 10)), 1.0) for _ in range(5)],
        [Segment(Point(x, y), Point(x + 1, y)) for x, y in ((rng.uniform(0, 5), rng.uniform(0, 5)) for _ in range(5))],
        equilateral() + [Line(1, 1, -3)],
    ]
    for regs in cases:
        assert lower_bound(regs) <= discretized_opt(regs).length + 1e-6


def test_three_line_closed_form_not_beaten():
    rng = random.Random(54)
    for _ in range(5):
        lines = [Line(math.cos(t), math.sin(t), rng.uniform(-2, 2)) for t in (rng.uniform(0, math.pi) for _ in range(3))]
        closed = three_line_opt(lines)[0]
        assert discretized_opt(lines).length >= closed - 1e-4

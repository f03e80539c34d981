from __future__ import annotations

import math
import random

import pytest

from tspn.disks import (
    DiskInstance,
    area_lower_bound,
    center_tour_bound,
    detour_bound,
    disjoint_center_tour,
    maximal_independent_set,
    overlapping_disks_tour,
)
from tspn.geom import Arc, Disk, Point, tour_visits
from tspn.oracle import discretized_opt


def disks(*centers, r=1.0):
    return [Disk(Point(x, y), r) for x, y in centers]


def random_overlapping(rng, n, box=6.0):
    return disks(*[(rng.uniform(0, box), rng.uniform(0, box)) for _ in range(n)])


def test_instance_flags():
    inst = DiskInstance.from_disks(disks((0, 0), (1.5, 0)))
    assert not inst.disjoint and inst.delta == 1.0
    assert DiskInstance.from_disks(disks((0, 0), (2, 0))).disjoint   # tangent counts as disjoint
    with pytest.raises(ValueError):
        DiskInstance.from_disks([Disk(Point(0, 0), 1.0), Disk(Point(5, 0), 2.0)])


def test_center_tour_examples():
    assert disjoint_center_tour(DiskInstance.from_disks(disks((0, 0)))).length == 0.0
    assert disjoint_center_tour(DiskInstance.from_disks(disks((0, 0), (10, 0)))).length == pytest.approx(20.0)
    inst = DiskInstance.from_disks(disks((0, 0), (10, 0), (5, 8)))
    t = disjoint_center_tour(inst)
    assert t.length == pytest.approx(10 + 2 * math.sqrt(89), abs=1e-9)
    opt = discretized_opt(inst.disks).length
    assert t.length / opt <= 1 + 8 / math.pi + 8 / opt
    with pytest.raises(ValueError, match="requires disjoint disks"):
        disjoint_center_tour(DiskInstance.from_disks(disks((0, 0), (1, 0))))


def test_area_lower_bound_examples():
    assert area_lower_bound(4, 1.0) == 0.0
    assert area_lower_bound(8, 1.0) == pytest.approx(math.pi)
    assert area_lower_bound(104, 1.0) == pytest.approx(25 * math.pi)
    assert area_lower_bound(8, 2.0) == pytest.approx(2 * math.pi)


def test_maximal_independent_set_examples():
    assert maximal_independent_set(disks((0, 0), (5, 0))) == [0, 1]
    assert maximal_independent_set(disks((0, 0), (1, 0))) == [0]
    assert maximal_independent_set(disks((0, 0), (1.5, 0), (3, 0))) == [0, 2]


def test_mis_is_maximal():
    rng = random.Random(9)
    for _ in range(50):
        ds = random_overlapping(rng, 10)
        kept = maximal_independent_set(ds)
        for i, d in enumerate(ds):
            if i not in kept:
                assert any(d.center.dist(ds[j].center) < 2.0 - 1e-9 for j in kept)


def test_single_disk_circle():
    tr = overlapping_disks_tour(DiskInstance.from_disks(disks((3, 4))))
    assert tr.final_tour.length == pytest.approx(2 * math.pi)
    assert tr.base_tour.length == 0.0


def test_two_disk_detour_length():
    tr = overlapping_disks_tour(DiskInstance.from_disks(disks((0, 0), (10, 0))))
    assert tr.base_tour.length == pytest.approx(20.0)
    assert tr.final_tour.length == pytest.approx(32 + 4 * math.pi, abs=1e-9)
    assert tr.final_tour.length <= detour_bound(20.0)
    assert tr.start_disk == 0


@pytest.mark.parametrize("xs", [(0, 10), (0, 10, 20), (0, 10, 25, 31)])
def test_per_disk_decomposition(xs):
    # each independent disk contributes 2(d + pi - 2) where the shares d sum to |T_I|
    tr = overlapping_disks_tour(DiskInstance.from_disks(disks(*[(x, 0) for x in xs])))
    expect = 2 * (tr.base_tour.length + len(xs) * (math.pi - 2))
    assert tr.final_tour.length == pytest.approx(expect, abs=1e-9)


def test_random_overlapping_instances():
    rng = random.Random(11)
    for _ in range(200):
        ds = random_overlapping(rng, rng.randint(1, 12))
        tr = overlapping_disks_tour(DiskInstance.from_disks(ds))
        assert all(tour_visits(tr.final_tour, d, 1e-9) for d in ds)
        assert tr.final_tour.length <= math.pi * tr.base_tour.length + 2 * math.pi + 1e-6
        assert set(tr.coverage) == set(tr.independent_set)
        for i in tr.independent_set:
            assert tr.coverage[i] == pytest.approx(2 * math.pi, abs=1e-9)
            # independently recount the sweep on that circle from the tour elements
            c = ds[i].center
            sweep = sum(abs(e.sweep) for e in tr.final_tour.elements
                        if isinstance(e, Arc) and e.center == c and e.radius == 1.0)
            assert sweep == pytest.approx(2 * math.pi, abs=1e-9)


def test_subset_optimum_monotone():
    rng = random.Random(12)
    for _ in range(4):
        ds = random_overlapping(rng, 5, box=8.0)
        kept = maximal_independent_set(ds)
        assert discretized_opt([ds[i] for i in kept]).length <= discretized_opt(ds).length + 1e-4


def test_scale_covariance():
    rng = random.Random(13)
    ds = random_overlapping(rng, 7)
    k = 2.5
    big = [Disk(Point(d.center.x * k, d.center.y * k), k) for d in ds]
    a = overlapping_disks_tour(DiskInstance.from_disks(ds))
    b = overlapping_disks_tour(DiskInstance.from_disks(big))
    assert b.final_tour.length == pytest.approx(k * a.final_tour.length, rel=1e-9)
    assert b.base_tour.length == pytest.approx(k * a.base_tour.length, rel=1e-9)


def test_center_tour_bound_formula():
    assert center_tour_bound(10.0) == pytest.approx((1 + 8 / math.pi) * 10 + 8)

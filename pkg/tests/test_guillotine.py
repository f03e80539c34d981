from __future__ import annotations

import math
import random

import pytest

from tspn.disks import DiskInstance, disjoint_center_tour
from tspn.geom import Disk, Point, Rectangle, Segment
from tspn.guillotine import (
    H,
    V,
    chargeable_length,
    check_m_guillotine,
    check_transform,
    dark_at,
    find_favorable_cut,
    guillotine_transform,
    m_disk_span,
    m_span,
    span_contained,
    span_from_endpoints,
    guillotine_bound,
)

UNIT = Rectangle(0.0, 1.0, 0.0, 1.0)


def hedge(x1, x2, y):
    return Segment(Point(x1, y), Point(x2, y))


def diamond(c: Point, r: float):
    pts = [Point(c.x + r, c.y), Point(c.x, c.y + r), Point(c.x - r, c.y), Point(c.x, c.y - r)]
    return [Segment(pts[i], pts[(i + 1) % 4]) for i in range(4)]


def random_disjoint(rng, n, box=12.0):
    out = []
    while len(out) < n:
        d = Disk(Point(rng.uniform(1, box - 1), rng.uniform(1, box - 1)), 1.0)
        if all(d.center.dist(e.center) >= 2.0 for e in out):
            out.append(d)
    return out


def center_edges(disks):
    t = disjoint_center_tour(DiskInstance.from_disks(disks))
    return list(t.elements)


# --------------------------------------------------------------------------- #
#  Spans                                                                      #
# --------------------------------------------------------------------------- #
def test_span_from_endpoints_examples():
    lo, hi = span_from_endpoints([0.1, 0.3, 0.4, 0.6, 0.8, 0.9], 3)
    assert (lo, hi) == (0.4, 0.6) and hi - lo == pytest.approx(0.2)
    assert span_from_endpoints([0.1, 0.3, 0.6, 0.9], 3) is None
    assert span_from_endpoints([0.1, 0.3, 0.5, 0.6, 0.9], 3) == (0.5, 0.5)


def test_m_span_on_vertical_cut():
    E = [hedge(0.2, 0.8, y) for y in (0.9, 0.8, 0.6, 0.4, 0.3, 0.1)]
    s = m_span(E, UNIT, (V, 0.5), 3)
    assert s.length == pytest.approx(0.2)
    assert {round(s.a.y, 12), round(s.b.y, 12)} == {0.4, 0.6}
    assert m_span(E[:4], UNIT, (V, 0.5), 3) is None


def test_m_disk_span_examples():
    D = [Disk(Point(0.1 + 0.2 * k, 0.5), 0.05) for k in range(5)]
    s = m_disk_span(D, UNIT, (H, 0.5), 2)
    assert {round(s.a.x, 12), round(s.b.x, 12)} == {0.35, 0.65}
    assert m_disk_span(D[:4], UNIT, (H, 0.5), 2) is None
    assert m_disk_span([], UNIT, (H, 0.5), 2) is None


# --------------------------------------------------------------------------- #
#  Darkness                                                                   #
# --------------------------------------------------------------------------- #
def test_chargeable_examples():
    assert chargeable_length([], [], UNIT, (H, 0.5), 1) == (0.0, 0.0)
    E = [hedge(0.0, 0.5, 0.8), hedge(0.2, 0.7, 0.2)]
    dark, _ = chargeable_length(E, [], UNIT, (H, 0.5), 1)
    assert dark == pytest.approx(0.3)
    D = [Disk(Point(0.5, 0.8), 0.2), Disk(Point(0.5, 0.2), 0.2)]
    _, ddark = chargeable_length([], D, UNIT, (H, 0.5), 1)
    assert ddark == pytest.approx(0.4)


def _mc_area(E, D, W, orientation, m, per_side, rng):
    """Stratified Monte-Carlo: one jittered sample per grid cell."""
    hits_e = hits_d = 0
    for i in range(per_side):
        for j in range(per_side):
            p = Point(W.x1 + W.w * (i + rng.random()) / per_side, W.y1 + W.h * (j + rng.random()) / per_side)
            de, dd = dark_at(E, D, W, p, orientation, m)
            hits_e += de
            hits_d += dd
    a = W.w * W.h / per_side ** 2
    return a * hits_e, a * hits_d


def _integral(E, D, W, orientation, m, steps=2000):
    lo, hi = (W.y1, W.y2) if orientation == H else (W.x1, W.x2)
    tot_e = tot_d = 0.0
    for k in range(steps):
        c = lo + (hi - lo) * (k + 0.5) / steps
        e, d = chargeable_length(E, D, W, (orientation, c), m)
        tot_e += e
        tot_d += d
    return tot_e * (hi - lo) / steps, tot_d * (hi - lo) / steps


def test_averaging_identity_monte_carlo():
    rng = random.Random(41)
    disks = [Disk(Point(x, y), 0.08) for x, y in ((0.2, 0.25), (0.5, 0.3), (0.75, 0.7), (0.3, 0.7), (0.6, 0.55))]
    E = center_edges(disks)
    for orientation in (H, V):
        ie, idk = _integral(E, disks, UNIT, orientation, 1)
        me, md = _mc_area(E, disks, UNIT, orientation, 1, 250, rng)
        assert me == pytest.approx(ie, rel=0.01)
        assert md == pytest.approx(idk, rel=0.01)


# --------------------------------------------------------------------------- #
#  Favorable cuts                                                             #
# --------------------------------------------------------------------------- #
def test_favorable_cut_single_disk():
    d = Disk(Point(0.5, 0.5), 0.1)
    E = [Segment(Point(0.35, 0.35), Point(0.65, 0.35)), Segment(Point(0.65, 0.35), Point(0.65, 0.65)),
         Segment(Point(0.65, 0.65), Point(0.35, 0.65)), Segment(Point(0.35, 0.65), Point(0.35, 0.35))]
    cert = find_favorable_cut(E, [d], UNIT, 1)
    assert cert.favorable
    assert cert.chargeable >= cert.cost - 1e-9


def test_favorable_cut_grid_snake():
    disks = [Disk(Point(0.2 + 0.3 * i, 0.2 + 0.3 * j), 0.1) for j in range(3) for i in range(3)]
    order = [0, 1, 2, 5, 4, 3, 6, 7, 8]
    pts = [disks[k].center for k in order]
    E = [Segment(pts[i], pts[(i + 1) % 9]) for i in range(9)]
    cert = find_favorable_cut(E, disks, UNIT, 1)
    assert cert.chargeable >= cert.cost - 1e-9


def test_favorable_cut_exists_dense_sweep():
    rng = random.Random(42)
    for _ in range(10):
        disks = [Disk(Point(x * 0.08 + 0.05, y * 0.08 + 0.05), 0.04)
                 for x, y in ((d.center.x, d.center.y) for d in random_disjoint(rng, 5, 12.0))]
        E = center_edges(disks)
        best = -math.inf
        for o in (H, V):
            for k in range(1, 400):
                c = k / 400
                cert_e, cert_d = chargeable_length(E, disks, UNIT, (o, c), 1)
                s = m_span(E, UNIT, (o, c), 1)
                ds = m_disk_span(disks, UNIT, (o, c), 1)
                cost = (s.length if s else 0.0) + (ds.length if ds else 0.0)
                best = max(best, cert_e + cert_d - cost)
        assert best >= -1e-9


# --------------------------------------------------------------------------- #
#  Transform and checker                                                      #
# --------------------------------------------------------------------------- #
def test_checker_trivial_window():
    assert check_m_guillotine([], [], UNIT, 1)


def test_checker_counterexample_diamonds():
    disks = [Disk(Point(0.25, 0.5), 0.15), Disk(Point(0.65, 0.5), 0.15)]
    E = diamond(disks[0].center, 0.15) + diamond(disks[1].center, 0.15)
    E.append(Segment(Point(0.4, 0.5), Point(0.5, 0.5)))
    assert not check_m_guillotine(E, disks, UNIT, 1)


def test_transform_fixes_counterexample():
    disks = [Disk(Point(0.25, 0.5), 0.15), Disk(Point(0.65, 0.5), 0.15)]
    E = diamond(disks[0].center, 0.15) + diamond(disks[1].center, 0.15)
    E.append(Segment(Point(0.4, 0.5), Point(0.5, 0.5)))
    out, log = guillotine_transform(E, disks, 1)
    assert check_transform(out, disks, log)
    assert log.added_length <= log.bound + 1e-6


def test_single_disk():
    d = Disk(Point(3.0, 4.0), 1.0)
    E = diamond(d.center, 1.0)
    out, log = guillotine_transform(E, [d], 1)
    assert check_transform(out, [d], log)
    assert log.added_length <= log.bound + 1e-6


def test_square_corners_m2():
    disks = [Disk(Point(x, y), 1.0) for x, y in ((0, 0), (6, 0), (6, 6), (0, 6))]
    E = center_edges(disks)
    L = sum(e.length for e in E)
    out, log = guillotine_transform(E, disks, 2)
    assert check_transform(out, disks, log)
    assert log.added_length <= (math.sqrt(2) + 16 / math.pi) / 2 * L + 8.0 + 1e-6
    assert log.bound == pytest.approx(guillotine_bound(L, 1.0, 2))


def test_transform_invariants_random():
    rng = random.Random(43)
    for _ in range(10):
        disks = random_disjoint(rng, rng.randint(2, 8))
        E = center_edges(disks)
        for m in (1, 2, 4):
            out, log = guillotine_transform(E, disks, m)
            assert check_transform(out, disks, log)
            assert log.added_length <= log.bound + 1e-6
            assert log.red_total <= log.red_ceiling + 1e-6
            assert log.blue_total <= log.blue_ceiling + 1e-6
            assert out.edges[:len(E)] == tuple(E)
            for e in out.edges[len(E):]:
                assert abs(e.a.x - e.b.x) <= 1e-9 or abs(e.a.y - e.b.y) <= 1e-9
            for c in log.connections:
                assert c.length <= 2 * disks[c.disk].radius + 1e-9


def test_spans_contained_after_transform():
    rng = random.Random(44)
    disks = random_disjoint(rng, 7)
    E = center_edges(disks)
    out, log = guillotine_transform(E, disks, 1)
    for rec in log.cuts:
        assert span_contained(rec.certificate.mSpan, out.edges, 1e-7)
        assert span_contained(rec.certificate.mDiskSpan, out.edges, 1e-7)


def test_added_length_shrinks_with_m():
    rng = random.Random(45)
    disks = random_disjoint(rng, 9, 10.0)
    E = center_edges(disks)
    added = {m: guillotine_transform(E, disks, m)[1].added_length for m in (1, 2, 4, 8)}
    for m in (2, 4, 8):
        assert added[m] <= 2.0 * added[1] / m + 1e-9


def test_transform_errors():
    d = [Disk(Point(0, 0), 1.0)]
    with pytest.raises(ValueError):
        guillotine_transform([hedge(0, 1, 0)], d, 0)
    with pytest.raises(ValueError):
        guillotine_transform([hedge(0, 1, 0), hedge(5, 6, 5)], d, 1)
    with pytest.raises(ValueError):
        guillotine_transform([hedge(5, 6, 5)], d, 1)

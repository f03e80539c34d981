"""Tours for equal-radius disks.

Disjoint disks are visited by a tour of their centers.  Overlapping disks are
handled through a maximal independent set ``I``: a tour of the centers of
``I`` is walked twice, once in each direction, and every time the walk meets
the boundary of a disk of ``I`` it detours clockwise along that boundary.
Over both passes the boundary of every disk of ``I`` is covered exactly once,
so every input disk is touched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .geom import TWO_PI, Arc, Disk, Point, Segment, Tour, polar
from .point_tsp import point_tour

DISJOINT_TOL = 1e-9


def disks_disjoint(d1: Disk, d2: Disk, tol: float = DISJOINT_TOL) -> bool:
    return d1.center.dist(d2.center) >= d1.radius + d2.radius - tol


@dataclass(frozen=True)
class DiskInstance:
    disks: Tuple[Disk, ...]
    delta: float
    disjoint: bool

    @classmethod
    def from_disks(cls, disks: Sequence[Disk]) -> "DiskInstance":
        disks = tuple(disks)
        if not disks:
            raise ValueError("empty instance")
        delta = disks[0].radius
        if delta <= 0:
            raise ValueError("disk radius must be positive")
        for d in disks:
            if abs(d.radius - delta) > 1e-9 * max(1.0, delta):
                raise ValueError("disks must share one radius")
        disjoint = all(
            disks_disjoint(disks[i], disks[j]) for i in range(len(disks)) for j in range(i + 1, len(disks))
        )
        return cls(disks, delta, disjoint)

    @property
    def n(self) -> int:
        return len(self.disks)


@dataclass(frozen=True)
class DetourTrace:
    independent_set: Tuple[int, ...]
    base_tour: Tour
    final_tour: Tour
    start_disk: int
    start_point: Point
    coverage: Dict[int, float] = field(default_factory=dict)  # disk index -> total |sweep| on its circle


# --------------------------------------------------------------------------- #
#  Analytic bounds                                                            #
# --------------------------------------------------------------------------- #
def area_lower_bound(n: int, delta: float = 1.0) -> float:
    """Lower bound on an optimal tour of n pairwise-disjoint radius-delta disks.

    Sweeping a radius-2*delta disk along the optimal tour covers every disk, so
    pi*delta^2*n <= 4*delta*L + 4*pi*delta^2."""
    return max(0.0, math.pi * delta * (n - 4) / 4.0)


def center_tour_bound(opt: float, delta: float = 1.0) -> float:
    """Ceiling on the center tour of disjoint disks (exact point tour)."""
    return (1.0 + 8.0 / math.pi) * opt + 8.0 * delta


def detour_bound(base_length: float, delta: float = 1.0) -> float:
    """Ceiling on the detour tour in terms of the independent-set center tour."""
    return math.pi * base_length + 2.0 * math.pi * delta


def overlapping_bound(opt: float, delta: float = 1.0) -> float:
    return (math.pi + 8.0) * opt + 8.0 * math.pi * delta + 2.0 * math.pi * delta


def near_unit_ratio(k: float) -> float:
    """Asymptotic center-tour ratio when radii differ by a factor up to k (reported only)."""
    return 1.0 + 8.0 * k * k / math.pi


# --------------------------------------------------------------------------- #
#  Algorithms                                                                 #
# --------------------------------------------------------------------------- #
def disjoint_center_tour(inst: DiskInstance, seed: int = 0) -> Tour:
    if not inst.disjoint:
        raise ValueError("requires disjoint disks")
    return point_tour([d.center for d in inst.disks], seed).tour


def maximal_independent_set(disks: Sequence[Disk]) -> List[int]:
    """Greedy in input order: keep a disk iff it misses every disk kept so far."""
    kept: List[int] = []
    for i, d in enumerate(disks):
        if all(disks_disjoint(d, disks[j]) for j in kept):
            kept.append(i)
    return kept


def _cw_sweep(p_angle: float, q_angle: float, full_if_equal: bool) -> float:
    """Signed (non-positive) sweep going clockwise from angle p to angle q."""
    off = (p_angle - q_angle) % TWO_PI
    if off < 1e-12 or off > TWO_PI - 1e-12:
        off = TWO_PI if full_if_equal else 0.0
    return -off


def _signed_area(pts: Sequence[Point]) -> float:
    return 0.5 * sum(p.x * q.y - q.x * p.y for p, q in zip(pts, list(pts[1:]) + [pts[0]]))


def overlapping_disks_tour(inst: DiskInstance, seed: int = 0) -> DetourTrace:
    disks = inst.disks
    if not disks:
        raise ValueError("empty instance")
    indep = maximal_independent_set(disks)
    d0 = indep[0]
    if len(indep) == 1:
        disk = disks[d0]
        final = Tour((Arc(disk.center, disk.radius, 0.0, -TWO_PI),))
        return DetourTrace(tuple(indep), Tour.point(disk.center), final, d0,
                           polar(disk.center, disk.radius, 0.0), {d0: TWO_PI})

    res = point_tour([disks[i].center for i in indep], seed)
    order = [indep[k] for k in res.order]
    rot = order.index(d0)
    order = order[rot:] + order[:rot]
    # walk the center tour clockwise
    if _signed_area([disks[i].center for i in order]) > 0:
        order = [order[0]] + order[:0:-1]
    k = len(order)
    centers = [disks[i].center for i in order]
    base = Tour.polygon(centers)

    def toward(i: int, j: int) -> Point:
        c, o = centers[i], centers[j]
        d = o - c
        r = disks[order[i]].radius
        return c + d * (r / d.norm())

    entry = [toward(i, (i - 1) % k) for i in range(k)]
    exit_ = [toward(i, (i + 1) % k) for i in range(k)]

    elements: list = []
    coverage = {i: 0.0 for i in order}

    def detour(i: int, frm: Point, to: Point, full_if_equal: bool) -> None:
        disk = disks[order[i]]
        a = (frm - disk.center).angle()
        b = (to - disk.center).angle()
        sweep = _cw_sweep(a, b, full_if_equal)
        coverage[order[i]] += abs(sweep)
        if sweep != 0.0:
            elements.append(Arc(disk.center, disk.radius, a, sweep))

    def straight(p: Point, q: Point) -> None:
        elements.append(Segment(p, q))

    # forward pass from s = exit point of D0
    for i in range(1, k):
        straight(exit_[i - 1], entry[i])
        detour(i, entry[i], exit_[i], True)
    straight(exit_[k - 1], entry[0])
    detour(0, entry[0], exit_[0], True)
    # around D0 once more, then the backward pass
    detour(0, exit_[0], entry[0], False)
    for i in range(k - 1, 0, -1):
        straight(entry[(i + 1) % k], exit_[i])
        detour(i, exit_[i], entry[i], False)
    straight(entry[1], exit_[0])

    final = Tour(tuple(elements))
    return DetourTrace(tuple(indep), base, final, d0, exit_[0], coverage)

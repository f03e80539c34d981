"""Seeded instance generators.

Every generator draws from its own ``random.Random(seed)``, so a
(family, n, params, seed) tuple always yields the same instance.
"""

from __future__ import annotations

import math
import random
from typing import Callable, Dict, List, Optional

from .disks import disks_disjoint
from .geom import Disk, Line, Point, Polygon, Region, Segment, convex_hull, region_diameter
from .io import Instance

DEFAULT_BOX = {
    "disjoint-unit-disks": 20.0,
    "unit-disks": 8.0,
    "parallel-segments": 5.0,
    "segments": 5.0,
    "convex-translates": 5.0,
    "connected-translates": 5.0,
    "same-diameter": 6.0,
    "lines": 4.0,
}

FAMILY_TAG = {
    "disjoint-unit-disks": "disjoint-unit-disks",
    "unit-disks": "unit-disks",
    "parallel-segments": "same-diameter",
    "segments": "same-diameter",
    "convex-translates": "same-diameter",
    "connected-translates": "same-diameter",
    "same-diameter": "same-diameter",
    "lines": "lines",
}

MAX_TRIES_PER_DISK = 2000


def _unit_segment(rng: random.Random, box: float, theta: Optional[float] = None) -> Segment:
    th = rng.uniform(0.0, math.pi) if theta is None else theta
    a = Point(rng.uniform(0.0, box), rng.uniform(0.0, box))
    return Segment(a, Point(a.x + math.cos(th), a.y + math.sin(th)))


def _unit_diameter(poly_pts: List[Point]) -> Polygon:
    poly = Polygon(tuple(poly_pts))
    d = region_diameter(poly)[0]
    return Polygon(tuple(Point(v.x / d, v.y / d) for v in poly.vertices))


def _convex_shape(rng: random.Random) -> Polygon:
    while True:
        pts = [Point(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(6)]
        h = convex_hull(pts)
        if isinstance(h, Polygon) and h.area > 0.3:
            return _unit_diameter(list(h.vertices))


def _connected_shape(rng: random.Random) -> Polygon:
    """A star-shaped, usually non-convex polygon."""
    k = 7
    angs = sorted(rng.uniform(0, 2 * math.pi) for _ in range(k))
    pts = [Point(r * math.cos(a), r * math.sin(a)) for a, r in zip(angs, [rng.uniform(0.3, 1.0) for _ in range(k)])]
    try:
        return _unit_diameter(pts)
    except ValueError:
        return _connected_shape(rng)


def _translate(poly: Polygon, dx: float, dy: float) -> Polygon:
    return Polygon(tuple(Point(v.x + dx, v.y + dy) for v in poly.vertices))


def _unit_triangle(rng: random.Random, box: float) -> Polygon:
    while True:
        a = Point(rng.uniform(0, box), rng.uniform(0, box))
        th = rng.uniform(0, 2 * math.pi)
        b = Point(a.x + math.cos(th), a.y + math.sin(th))
        # third vertex inside the lens of radius 1 around a and b keeps the diameter at |ab|
        t = rng.uniform(0.2, 0.8)
        h = rng.uniform(0.1, 0.8) * math.sqrt(1 - max(t, 1 - t) ** 2)
        c = Point(a.x + t * (b.x - a.x) - h * (b.y - a.y), a.y + t * (b.y - a.y) + h * (b.x - a.x))
        try:
            return Polygon((a, b, c))
        except ValueError:
            continue


def generate(family: str, n: int, params: Optional[Dict] = None, seed: int = 0) -> Instance:
    if n < 1:
        raise ValueError("n must be at least 1")
    if family not in FAMILY_TAG:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILY_TAG)}")
    params = dict(params or {})
    box = float(params.get("box", DEFAULT_BOX[family]))
    rng = random.Random(seed)
    regions: List[Region] = []
    if family == "disjoint-unit-disks":
        tries = 0
        while len(regions) < n:
            tries += 1
            if tries > MAX_TRIES_PER_DISK * n:
                raise ValueError(f"infeasible packing: {n} unit disks in a box of side {box}")
            d = Disk(Point(rng.uniform(1.0, box - 1.0), rng.uniform(1.0, box - 1.0)), 1.0)
            if all(disks_disjoint(d, e) for e in regions):
                regions.append(d)
    elif family == "unit-disks":
        regions = [Disk(Point(rng.uniform(0, box), rng.uniform(0, box)), 1.0) for _ in range(n)]
    elif family == "parallel-segments":
        regions = [_unit_segment(rng, box, 0.0) for _ in range(n)]
    elif family == "segments":
        regions = [_unit_segment(rng, box) for _ in range(n)]
    elif family in ("convex-translates", "connected-translates"):
        shape = _convex_shape(rng) if family == "convex-translates" else _connected_shape(rng)
        regions = [_translate(shape, rng.uniform(0, box), rng.uniform(0, box)) for _ in range(n)]
    elif family == "same-diameter":
        for _ in range(n):
            kind = rng.randrange(3)
            if kind == 0:
                regions.append(_unit_segment(rng, box))
            elif kind == 1:
                regions.append(Disk(Point(rng.uniform(0, box), rng.uniform(0, box)), 0.5))
            else:
                regions.append(_unit_triangle(rng, box))
    elif family == "lines":
        for _ in range(n):
            th = rng.uniform(0.0, math.pi)
            off = rng.uniform(-box / 2, box / 2)
            regions.append(Line(math.cos(th), math.sin(th), -off))
    name = f"{family}-n{n}-s{seed}"
    return Instance(FAMILY_TAG[family], tuple(regions), name, seed)

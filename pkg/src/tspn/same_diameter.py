"""Tours for connected regions of a common diameter.

Regions are split by the slope of a diameter into almost-horizontal
(type 1) and almost-vertical (type 2) ones.  Type 1 regions are stabbed by a
greedy set of vertical lines and toured according to how many lines the
cover needs; type 2 regions get the same treatment after a quarter turn.
The two tours are merged through their closest pair of points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import cvxpy as cp
import numpy as np

from .geom import (
    Arc,
    Disk,
    Line,
    Point,
    Polygon,
    Rectangle,
    Region,
    Segment,
    Tour,
    closest_point_in_region,
    map_region,
    rectangle_region_distance,
    region_diameter,
    rotate_region,
    tour_tour_distance,
    tour_visits,
    triangulate,
    x_projection,
)
from .point_tsp import point_tour

DIAM_TOL = 1e-6
SLOPE_TOL = 1e-9
STAB_TOL = 1e-9
GAP_TIE = 1e-9

PARALLEL_SEGMENT_RATIO = 3.0 * math.sqrt(2.0)
CONVEX_TRANSLATE_RATIO = math.sqrt(58.0)
CONNECTED_TRANSLATE_RATIO = math.sqrt(130.0)
GENERIC_RATIO = 33.0


@dataclass(frozen=True)
class ClassifiedInstance:
    type1: Tuple[int, ...]
    type2: Tuple[int, ...]
    regions: Tuple[Region, ...]   # rescaled to unit diameter
    delta: float                  # original common diameter


@dataclass(frozen=True)
class GreedyCover:
    lineXs: Tuple[float, ...]
    reps: Tuple[Tuple[int, Point], ...]
    assignment: Tuple[int, ...] = ()   # covering line per region


@dataclass(frozen=True)
class CaseTrace:
    caseTag: str
    tour: Tour
    rectangle: Optional[Rectangle] = None
    D: Optional[float] = None
    cover: Optional[GreedyCover] = None


# --------------------------------------------------------------------------- #
#  Classification                                                             #
# --------------------------------------------------------------------------- #
def common_diameter(regions: Sequence[Region]) -> float:
    if not regions:
        raise ValueError("empty instance")
    diams = []
    for r in regions:
        if isinstance(r, Line):
            raise ValueError("not same-diameter: unbounded region")
        diams.append(region_diameter(r)[0])
    hi = max(diams)
    if hi - min(diams) > DIAM_TOL * max(hi, 1e-300):
        raise ValueError("not same-diameter")
    return hi


def is_type1(r: Region) -> bool:
    seg = region_diameter(r)[1]
    d = seg.b - seg.a
    return abs(d.y) <= abs(d.x) + SLOPE_TOL * max(1.0, abs(d.x))


def classify(regions: Sequence[Region]) -> ClassifiedInstance:
    delta = common_diameter(regions)
    if delta <= 0:
        raise ValueError("not same-diameter: zero diameter")
    k = 1.0 / delta
    scaled = tuple(map_region(r, lambda p: Point(p.x * k, p.y * k), k) for r in regions)
    t1 = tuple(i for i, r in enumerate(scaled) if is_type1(r))
    t2 = tuple(i for i in range(len(scaled)) if i not in set(t1))
    return ClassifiedInstance(t1, t2, scaled, delta)


# --------------------------------------------------------------------------- #
#  Vertical chords and the greedy cover                                       #
# --------------------------------------------------------------------------- #
def vertical_chords(r: Region, x: float, tol: float = STAB_TOL) -> List[Tuple[float, float]]:
    """The y-intervals of ``r`` on the vertical line at ``x`` (closed, sorted)."""
    if isinstance(r, Point):
        return [(r.y, r.y)] if abs(r.x - x) <= tol else []
    if isinstance(r, Segment):
        a, b = r.a, r.b
        if abs(a.x - b.x) <= 1e-15:
            if abs(a.x - x) > tol:
                return []
            return [(min(a.y, b.y), max(a.y, b.y))]
        lo, hi = min(a.x, b.x), max(a.x, b.x)
        if x < lo - tol or x > hi + tol:
            return []
        t = min(1.0, max(0.0, (x - a.x) / (b.x - a.x)))
        y = a.y + t * (b.y - a.y)
        return [(y, y)]
    if isinstance(r, Disk):
        dx = abs(x - r.center.x)
        if dx > r.radius + tol:
            return []
        h = math.sqrt(max(0.0, r.radius * r.radius - dx * dx))
        return [(r.center.y - h, r.center.y + h)]
    if isinstance(r, Polygon):
        ys: List[float] = []
        for e in r.edges:
            a, b = e.a, e.b
            if abs(a.x - x) <= tol:
                ys.append(a.y)
            if abs(b.x - x) <= tol:
                ys.append(b.y)
            if (a.x - x) * (b.x - x) < 0:
                t = (x - a.x) / (b.x - a.x)
                ys.append(a.y + t * (b.y - a.y))
        if not ys:
            return []
        ys = sorted(set(ys))
        out: List[List[float]] = [[ys[0], ys[0]]]
        for y0, y1 in zip(ys, ys[1:]):
            if r.contains(Point(x, (y0 + y1) / 2.0), tol):
                out[-1][1] = y1
            else:
                out.append([y1, y1])
        return [(a, b) for a, b in out]
    raise TypeError(f"unsupported region {r!r}")


def topmost_on_line(r: Region, x: float) -> Point:
    chords = vertical_chords(r, x)
    if not chords:
        raise ValueError("region misses its covering line")
    return Point(x, max(b for _, b in chords))


def greedy_cover(regions: Sequence[Region]) -> GreedyCover:
    """Minimum set of vertical lines stabbing every x-projection."""
    if not regions:
        return GreedyCover((), (), ())
    iv = [x_projection(r) for r in regions]
    order = sorted(range(len(regions)), key=lambda i: (iv[i][1], iv[i][0]))
    xs: List[float] = []
    assign = [-1] * len(regions)
    for i in order:
        if xs and iv[i][0] <= xs[-1] + STAB_TOL:
            continue
        xs.append(iv[i][1])
    for i in range(len(regions)):
        for k, x in enumerate(xs):
            if iv[i][0] - STAB_TOL <= x <= iv[i][1] + STAB_TOL:
                assign[i] = k
                break
    reps = tuple((i, topmost_on_line(regions[i], xs[assign[i]])) for i in range(len(regions)))
    return GreedyCover(tuple(xs), reps, tuple(assign))


def min_stabbing_number(intervals: Sequence[Tuple[float, float]]) -> int:
    """Exhaustive minimum number of points stabbing all closed intervals."""
    if not intervals:
        return 0
    cands = sorted(set(hi for _, hi in intervals))
    for k in range(1, len(intervals) + 1):
        for combo in itertools.combinations(cands, k):
            if all(any(lo - STAB_TOL <= x <= hi + STAB_TOL for x in combo) for lo, hi in intervals):
                return k
    return len(intervals)


# --------------------------------------------------------------------------- #
#  Minimum touching rectangle                                                 #
# --------------------------------------------------------------------------- #
def _membership(p, r: Region) -> list:
    if isinstance(r, Point):
        return [p == np.array([r.x, r.y])]
    if isinstance(r, Segment):
        t = cp.Variable()
        a = np.array([r.a.x, r.a.y])
        d = np.array([r.b.x - r.a.x, r.b.y - r.a.y])
        return [p == a + t * d, t >= 0, t <= 1]
    if isinstance(r, Disk):
        return [cp.norm(p - np.array([r.center.x, r.center.y])) <= r.radius]
    if isinstance(r, Polygon):
        cons = []
        for e in r.edges:
            # counterclockwise: interior on the left of every edge
            nx, ny = -(e.b.y - e.a.y), e.b.x - e.a.x
            cons.append(nx * (p[0] - e.a.x) + ny * (p[1] - e.a.y) >= 0)
        return cons
    raise TypeError(f"unsupported region {r!r}")


def _touching_rect_convex(regions: Sequence[Region]) -> Tuple[float, List[Point]]:
    n = len(regions)
    x1, x2, y1, y2 = (cp.Variable() for _ in range(4))
    P = cp.Variable((n, 2))
    cons = [x1 <= x2, y1 <= y2,
            P[:, 0] >= x1, P[:, 0] <= x2, P[:, 1] >= y1, P[:, 1] <= y2]
    for i, r in enumerate(regions):
        cons += _membership(P[i], r)
    prob = cp.Problem(cp.Minimize(x2 - x1 + y2 - y1), cons)
    try:
        prob.solve(solver=cp.CLARABEL)
    except cp.error.SolverError:
        prob.solve()
    if P.value is None:
        raise RuntimeError("touching-rectangle program failed")
    pts = [closest_point_in_region(Point(float(P.value[i, 0]), float(P.value[i, 1])), regions[i])
           for i in range(n)]
    return _bbox_half_perimeter(pts), pts


def _bbox_half_perimeter(pts: Sequence[Point]) -> float:
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return max(xs) - min(xs) + max(ys) - min(ys)


def min_touching_rectangle(regions: Sequence[Region]) -> Rectangle:
    """Smallest-perimeter axis-aligned rectangle meeting every region.

    Convex regions give a second-order cone program (one touch point per
    region, constrained to the region and the rectangle).  Non-convex
    polygons are replaced by one triangle of a triangulation; the choice is
    improved by local search over triangles."""
    if not regions:
        raise ValueError("empty instance")
    regions = list(regions)
    nonconvex = [i for i, r in enumerate(regions) if isinstance(r, Polygon) and not r.is_convex]
    if not nonconvex:
        _, pts = _touching_rect_convex(regions)
    else:
        tris = {i: triangulate(regions[i]) for i in nonconvex}
        # start from the triangle nearest the relaxed (convex hull) touch point
        relaxed = list(regions)
        for i in nonconvex:
            relaxed[i] = Polygon(_hull_vertices(regions[i]))
        _, rp = _touching_rect_convex(relaxed)
        choice = {i: min(range(len(tris[i])), key=lambda k: _poly_dist(rp[i], tris[i][k])) for i in nonconvex}

        def solve(ch: Dict[int, int]) -> Tuple[float, List[Point]]:
            cur = list(regions)
            for i in nonconvex:
                cur[i] = tris[i][ch[i]]
            return _touching_rect_convex(cur)

        best, pts = solve(choice)
        improved = True
        rounds = 0
        while improved and rounds < 3:
            improved = False
            rounds += 1
            for i in nonconvex:
                for k in range(len(tris[i])):
                    if k == choice[i]:
                        continue
                    trial = dict(choice)
                    trial[i] = k
                    val, tp = solve(trial)
                    if val < best - 1e-12:
                        best, pts, choice, improved = val, tp, trial, True
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return Rectangle(min(xs), max(xs), min(ys), max(ys))


def _hull_vertices(poly: Polygon) -> Tuple[Point, ...]:
    from .geom import convex_hull

    h = convex_hull(poly.vertices)
    return h.vertices


def _poly_dist(p: Point, poly: Polygon) -> float:
    return p.dist(closest_point_in_region(p, poly))


def rectangle_touches_all(q: Rectangle, regions: Sequence[Region], tol: float = 1e-9) -> bool:
    return all(rectangle_region_distance(q, r) <= tol for r in regions)


# --------------------------------------------------------------------------- #
#  Tours built from rectangles                                                #
# --------------------------------------------------------------------------- #
def _polyline_tour(pts: Sequence[Point]) -> Tour:
    clean: List[Point] = []
    for p in pts:
        if not clean or p.dist(clean[-1]) > 0.0:
            clean.append(p)
    while len(clean) > 1 and clean[-1].dist(clean[0]) == 0.0:
        clean.pop()
    return Tour.polygon(clean)


def rectangle_tour(q: Rectangle, parts: int = 1) -> Tour:
    """Boundary of ``q`` plus doubled verticals splitting it into ``parts`` equal columns.

    Length is 2w + 2h + 2(parts-1)h."""
    pts = [Point(q.x1, q.y1)]
    for i in range(1, parts):
        x = q.x1 + q.w * i / parts
        pts += [Point(x, q.y1), Point(x, q.y2), Point(x, q.y1)]
    pts += [Point(q.x2, q.y1), Point(q.x2, q.y2), Point(q.x1, q.y2)]
    return _polyline_tour(pts)


def rectangle_tour_with_verticals(q: Rectangle, xs: Sequence[float]) -> Tour:
    pts = [Point(q.x1, q.y1)]
    for x in sorted(xs):
        pts += [Point(x, q.y1), Point(x, q.y2), Point(x, q.y1)]
    pts += [Point(q.x2, q.y1), Point(q.x2, q.y2), Point(q.x1, q.y2)]
    return _polyline_tour(pts)


def cauchy_bound(a: float, b: float, w: float, h: float) -> Tuple[float, float]:
    """Both sides of aw + bh <= sqrt(a^2+b^2) sqrt(w^2+h^2)."""
    return a * w + b * h, math.hypot(a, b) * math.hypot(w, h)


def _min_hitting_interval(sets: Sequence[Sequence[Tuple[float, float]]]) -> Tuple[float, float, List[float]]:
    """Shortest [lo, hi] meeting at least one interval of every set; returns the chosen y per set."""
    cands = sorted(set(v for s in sets for iv in s for v in iv))
    best = None
    for lo in cands:
        hi = lo
        picks = []
        ok = True
        for s in sets:
            opts = [max(a, lo) for a, b in s if b >= lo - 1e-12]
            if not opts:
                ok = False
                break
            y = min(opts)
            picks.append(y)
            hi = max(hi, y)
        if ok and (best is None or hi - lo < best[1] - best[0] - 1e-15):
            best = (lo, hi, picks)
    if best is None:
        raise ValueError("no hitting interval")
    return best


# --------------------------------------------------------------------------- #
#  Algorithm A                                                                #
# --------------------------------------------------------------------------- #
def reslide_second_line(regions: Sequence[Region], x1: float, x2: float) -> float:
    """Move the right covering line left as far as the cover allows."""
    missed = [x_projection(r)[0] for r in regions if not (x_projection(r)[0] - STAB_TOL <= x1 <= x_projection(r)[1] + STAB_TOL)]
    return max(missed) if missed else x2


def algorithm_a(regions: Sequence[Region], seed: int = 0) -> CaseTrace:
    """Tour for unit-diameter type-1 regions."""
    if not regions:
        return CaseTrace("C0", Tour.empty())
    cover = greedy_cover(regions)
    k = len(cover.lineXs)
    if k == 1:
        q = min_touching_rectangle(regions)
        return CaseTrace("C1", rectangle_tour(q, 3), q, None, cover)
    if k == 2:
        x1, x2 = cover.lineXs
        x2 = reslide_second_line(regions, x1, x2)
        D = x2 - x1
        if D >= 3.0 - GAP_TIE:
            on1 = [i for i, r in enumerate(regions) if vertical_chords(r, x1)]
            sets, who = [], []
            for i, r in enumerate(regions):
                x = x1 if i in on1 else x2
                sets.append(vertical_chords(r, x))
                who.append((i, x))
            lo, hi, ys = _min_hitting_interval(sets)
            reps = tuple((i, Point(x, y)) for (i, x), y in zip(who, ys))
            cover = GreedyCover((x1, x2), reps, tuple(0 if i in on1 else 1 for i in range(len(regions))))
            q = Rectangle(x1, x2, lo, hi)
            return CaseTrace("C2_1", rectangle_tour(q, 1), q, D, cover)
        q = min_touching_rectangle(regions)
        return CaseTrace("C2_2", rectangle_tour(q, 8), q, D, cover)
    res = point_tour([p for _, p in cover.reps], seed)
    return CaseTrace("C3", res.tour, None, None, cover)


# --------------------------------------------------------------------------- #
#  Combination and the full pipeline                                          #
# --------------------------------------------------------------------------- #
def _split_at(e, p: Point):
    if isinstance(e, Segment):
        return Segment(e.a, p), Segment(p, e.b)
    th = (p - e.center).angle()
    return e.split(th)


def _open_at(t: Tour, idx: int, p: Point) -> list:
    """Elements of ``t`` re-ordered as a closed walk starting and ending at ``p``."""
    if idx < 0 or not t.elements:
        return []
    els = list(t.elements)
    first, second = _split_at(els[idx], p)
    seq = [second] + els[idx + 1:] + els[:idx] + [first]
    return [e for e in seq if e.length > 0.0]


def combine_tours(t1: Tour, t2: Tour) -> Tour:
    """Merge two closed tours through a doubled shortest connecting segment."""
    if t2.is_empty:
        return t1
    if t1.is_empty:
        return t2
    d, p1, p2, i, j = tour_tour_distance(t1, t2)
    walk1 = _open_at(t1, i, p1)
    walk2 = _open_at(t2, j, p2)
    if d > 0.0:
        els = walk1 + [Segment(p1, p2)] + walk2 + [Segment(p2, p1)]
    else:
        els = walk1 + walk2
    if not els:
        return Tour.point(p1)
    # snap element endpoints so the closure check sees exact joins
    return Tour(tuple(_snap(els)))


def _snap(els: list) -> list:
    out = []
    for k, e in enumerate(els):
        if isinstance(e, Segment):
            nxt = els[(k + 1) % len(els)]
            out.append(Segment(e.a, nxt.start if isinstance(nxt, Arc) else nxt.a))
        else:
            out.append(e)
    return out


def parallel_segments(regions: Sequence[Region]) -> Optional[float]:
    """Common direction angle if every region is a segment and all are parallel."""
    if not regions or not all(isinstance(r, Segment) for r in regions):
        return None
    angs = []
    for s in regions:
        d = s.b - s.a
        if d.norm() == 0:
            return None
        angs.append(math.atan2(d.y, d.x) % math.pi)
    a0 = angs[0]
    for a in angs:
        off = abs(a - a0) % math.pi
        if min(off, math.pi - off) > 1e-9:
            return None
    return a0


def parallel_segments_tour(regions: Sequence[Segment], seed: int = 0) -> CaseTrace:
    """Unit horizontal segments: doubled vertical, touching rectangle, or representatives."""
    cover = greedy_cover(regions)
    k = len(cover.lineXs)
    if k == 1:
        lo = max(min(s.a.x, s.b.x) for s in regions)
        hi = min(max(s.a.x, s.b.x) for s in regions)
        x = min(max(cover.lineXs[0], lo), hi) if lo <= hi else cover.lineXs[0]
        ys = [s.a.y for s in regions]
        tour = _polyline_tour([Point(x, min(ys)), Point(x, max(ys))])
        return CaseTrace("C1", tour, None, None, cover)
    if k == 2:
        q = min_touching_rectangle(regions)
        tour = rectangle_tour(q, 1)
        missed = [i for i, s in enumerate(regions) if not tour_visits(tour, s)]
        if missed:
            xs = sorted(set(cover.lineXs[cover.assignment[i]] for i in missed))
            tour = rectangle_tour_with_verticals(q, xs)
        return CaseTrace("C2", tour, q, None, cover)
    res = point_tour([p for _, p in cover.reps], seed)
    return CaseTrace("C3", res.tour, None, None, cover)


def tspn_same_diameter(regions: Sequence[Region], seed: int = 0) -> Tour:
    """Constant-factor tour for connected regions sharing one diameter."""
    return same_diameter_trace(regions, seed)[0]


def same_diameter_trace(regions: Sequence[Region], seed: int = 0):
    """Tour plus the per-type case traces."""
    regions = list(regions)
    if not regions:
        raise ValueError("empty instance")
    delta = common_diameter(regions)
    if delta <= 0:
        tour = point_tour(list(regions), seed).tour
        return tour, []
    k = 1.0 / delta
    unit = [map_region(r, lambda p: Point(p.x * k, p.y * k), k) for r in regions]
    ang = parallel_segments(unit)
    if ang is not None:
        flat = [rotate_region(r, -ang) for r in unit]
        tr = parallel_segments_tour(flat, seed)
        tour = tr.tour.rotated(ang).scaled(delta)
        return tour, [tr]
    ci = classify(regions)
    t1 = [ci.regions[i] for i in ci.type1]
    t2 = [rotate_region(ci.regions[i], -math.pi / 2) for i in ci.type2]
    tr1 = algorithm_a(t1, seed)
    tr2 = algorithm_a(t2, seed)
    tour2 = tr2.tour.rotated(math.pi / 2) if not tr2.tour.is_empty else tr2.tour
    tour = combine_tours(tr1.tour, tour2)
    alt = boundary_tour(ci.regions)
    if alt is not None and alt.length < tour.length:
        tour = alt
    return tour.scaled(delta), [tr1, tr2]


def boundary_tour(regions: Sequence[Region], tol: float = 1e-9) -> Optional[Tour]:
    """Boundary of the min touching rectangle, if it meets every region.

    Whenever it does, its length 2(w+h) is at most twice the optimum: the
    optimal tour's bounding box also touches every region and has half
    perimeter at most the tour length.  With unit diameters this always
    applies once the perimeter drops below 2, which covers tiny optima
    where the doubled connection of the merge would dominate."""
    q = min_touching_rectangle(regions)
    if q.perimeter <= 1e-6:
        # the regions (nearly) share a point: a point tour is optimal if it reaches them all
        c = Tour.point(Point((q.x1 + q.x2) / 2, (q.y1 + q.y2) / 2))
        if all(tour_visits(c, r, tol) for r in regions):
            return c
    corners = [Point(q.x1, q.y1), Point(q.x2, q.y1), Point(q.x2, q.y2), Point(q.x1, q.y2)]
    pts = []
    for c in corners:
        if not pts or c.dist(pts[-1]) > 1e-12:
            pts.append(c)
    while len(pts) > 1 and pts[0].dist(pts[-1]) <= 1e-12:
        pts.pop()
    t = Tour.polygon(pts)
    if all(tour_visits(t, r, tol) for r in regions):
        return t
    return None

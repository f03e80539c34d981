"""Near-exact optima for tiny instances and lower bounds for larger ones.

The oracle samples points on every region, and for each cyclic visiting
order finds the best choice of one sample per region by dynamic
programming.  Samples are nested under doubling, so the discretized value
can only go down as the resolution grows.  The most promising orders are
then re-solved in continuous form: for a fixed order and convex regions the
shortest closed polyline is a second-order cone program.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import cvxpy as cp
import numpy as np

from .disks import area_lower_bound, disks_disjoint
from .geom import (
    Disk,
    Line,
    Point,
    Polygon,
    Rectangle,
    Region,
    Segment,
    Tour,
    closest_point_in_region,
    convex_hull,
    triangulate,
)
from .lines import three_line_opt

ORACLE_LIMIT = 7
K_START = 16
K_CAP = 64
TOL_STOP = 1e-4
POLISH_ORDERS = 12
LINE_CLIP_FACTOR = 3.0


@dataclass(frozen=True)
class OracleResult:
    length: float
    tour: Optional[Tour]
    kind: str                                  # exact-discretized | closed-form | lower-bound-only
    discretization: Tuple[int, int] = (0, 0)   # (k per region, refinement rounds)
    history: Tuple[float, ...] = ()
    order: Tuple[int, ...] = ()
    touch_points: Tuple[Point, ...] = ()
    clip_box: Optional[Rectangle] = None


# --------------------------------------------------------------------------- #
#  Sampling                                                                   #
# --------------------------------------------------------------------------- #
def line_clip_box(lines: Sequence[Line]) -> Rectangle:
    """Box around the arrangement, blown up by ``LINE_CLIP_FACTOR``."""
    pts = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            p = lines[i].intersection(lines[j])
            if p is not None:
                pts.append(p)
    if not pts:
        pts = [ln.foot(Point(0.0, 0.0)) for ln in lines]
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(max(xs) - min(xs), max(ys) - min(ys), 1.0) * LINE_CLIP_FACTOR / 2
    return Rectangle(cx - half, cx + half, cy - half, cy + half)


def clip_line(ln: Line, box: Rectangle) -> Segment:
    c = Point((box.x1 + box.x2) / 2, (box.y1 + box.y2) / 2)
    foot = ln.foot(c)
    d = ln.direction
    half = math.hypot(box.w, box.h) / 2
    return Segment(foot - d * half, foot + d * half)


def _segment_samples(a: Point, b: Point, k: int) -> np.ndarray:
    t = np.arange(k + 1) / k
    return np.column_stack([a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)])


def sample_region(r: Region, k: int) -> Tuple[np.ndarray, float]:
    """Samples of ``r`` and the largest gap between neighbouring samples.

    Sample sets are nested: the set for 2k contains the set for k."""
    if isinstance(r, Point):
        return np.array([[r.x, r.y]]), 0.0
    if isinstance(r, Segment):
        return _segment_samples(r.a, r.b, k), r.length / k
    if isinstance(r, Disk):
        th = 2 * math.pi * np.arange(k) / k
        pts = np.column_stack([r.center.x + r.radius * np.cos(th), r.center.y + r.radius * np.sin(th)])
        return pts, 2 * r.radius * math.sin(math.pi / k)
    if isinstance(r, Polygon):
        per = r.perimeter
        vs = r.vertices
        cum = [0.0]
        for e in r.edges:
            cum.append(cum[-1] + e.length)
        ts = sorted(set(list(np.arange(k) * per / k) + cum[:-1]))
        out = []
        for t in ts:
            i = min(len(vs) - 1, max(0, int(np.searchsorted(cum, t, side="right")) - 1))
            e = r.edges[i]
            f = 0.0 if e.length == 0 else (t - cum[i]) / e.length
            p = e.point_at(min(1.0, max(0.0, f)))
            out.append((p.x, p.y))
        gap = per / k
        if not r.is_convex:
            # interior grid at the same spacing, aligned to the bounding box
            xs = [v.x for v in vs]
            ys = [v.y for v in vs]
            step = max(max(xs) - min(xs), max(ys) - min(ys)) / max(2, k // 4)
            gx = np.arange(min(xs), max(xs) + 1e-12, step)
            gy = np.arange(min(ys), max(ys) + 1e-12, step)
            for x in gx:
                for y in gy:
                    if r.contains(Point(float(x), float(y)), 0.0):
                        out.append((float(x), float(y)))
        return np.array(out), gap
    raise TypeError(f"unsupported region {r!r}")


# --------------------------------------------------------------------------- #
#  Discrete DP over visiting orders                                           #
# --------------------------------------------------------------------------- #
def _pair_dist(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.hypot(a[:, None, 0] - b[None, :, 0], a[:, None, 1] - b[None, :, 1])


def _order_values(samples: List[np.ndarray]) -> Dict[Tuple[int, ...], float]:
    n = len(samples)
    D = {(i, j): _pair_dist(samples[i], samples[j]) for i in range(n) for j in range(n) if i != j}
    vals: Dict[Tuple[int, ...], float] = {}

    def walk(prefix: Tuple[int, ...], V: np.ndarray, left: List[int]) -> None:
        last = prefix[-1]
        if not left:
            if n >= 3 and prefix[1] > prefix[-1]:
                return
            close = V + D[(last, 0)].T          # (k0, k_last) + (k0, k_last)
            vals[prefix] = float(close.min())
            return
        for j in left:
            step = D[(last, j)]
            nv = (V[:, :, None] + step[None, :, :]).min(axis=1)
            walk(prefix + (j,), nv, [x for x in left if x != j])

    for j in range(1, n):
        walk((0, j), D[(0, j)].copy(), [x for x in range(1, n) if x != j])
    return vals


def _trace_order(samples: List[np.ndarray], order: Sequence[int]) -> Tuple[float, List[Point]]:
    n = len(order)
    best = (math.inf, [])
    s0 = samples[order[0]]
    for s in range(len(s0)):
        V = np.array([0.0])
        back = []
        prev = s0[s:s + 1]
        for t in range(1, n):
            cur = samples[order[t]]
            tot = V[:, None] + _pair_dist(prev, cur)
            arg = tot.argmin(axis=0)
            V = tot[arg, np.arange(len(cur))]
            back.append(arg)
            prev = cur
        close = V + _pair_dist(prev, s0[s:s + 1])[:, 0]
        j = int(close.argmin())
        if close[j] < best[0]:
            idx = [j]
            for arg in reversed(back[1:]):
                idx.append(int(arg[idx[-1]]))
            idx.reverse()
            pts = [Point(*s0[s])] + [Point(*samples[order[t + 1]][idx[t]]) for t in range(n - 1)]
            best = (float(close[j]), pts)
    return best


# --------------------------------------------------------------------------- #
#  Continuous polish                                                          #
# --------------------------------------------------------------------------- #
class _Polisher:
    """Shortest closed polyline through convex pieces in a given order.

    The visiting order enters only through a parameter matrix, so the cone
    program is compiled once per choice of convex pieces."""

    def __init__(self, pieces: Sequence[Region]):
        n = len(pieces)
        self.n = n
        self.P = cp.Variable((n, 2))
        self.M = cp.Parameter((n, n))
        cons = []
        for i, r in enumerate(pieces):
            cons += _member(self.P[i], r)
        obj = cp.sum(cp.norm(self.M @ self.P, 2, axis=1))
        self.prob = cp.Problem(cp.Minimize(obj), cons)

    def solve(self, order: Sequence[int]) -> Optional[List[Point]]:
        n = self.n
        M = np.zeros((n, n))
        for t in range(n):
            M[t, order[(t + 1) % n]] += 1.0
            M[t, order[t]] -= 1.0
        self.M.value = M
        try:
            self.prob.solve(solver=cp.CLARABEL)
        except cp.error.SolverError:
            return None
        if self.P.value is None:
            return None
        return [Point(float(self.P.value[i, 0]), float(self.P.value[i, 1])) for i in range(n)]


def _member(p, r: Region) -> list:
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
        out = []
        for e in r.edges:
            nx, ny = -(e.b.y - e.a.y), e.b.x - e.a.x
            out.append(nx * (p[0] - e.a.x) + ny * (p[1] - e.a.y) >= 0)
        return out
    if isinstance(r, Line):
        return [r.a * p[0] + r.b * p[1] + r.c == 0]
    raise TypeError(f"unsupported region {r!r}")


def _piece_for(r: Region, p: Point, tris: Dict[int, Tuple[Polygon, ...]], i: int) -> Tuple[Region, int]:
    if i not in tris:
        return r, -1
    k = min(range(len(tris[i])), key=lambda t: p.dist(closest_point_in_region(p, tris[i][t])))
    return tris[i][k], k


def _polyline_length(pts: Sequence[Point]) -> float:
    return math.fsum(pts[i].dist(pts[(i + 1) % len(pts)]) for i in range(len(pts)))


def _snap_into(pts: List[Point], regions: Sequence[Region]) -> List[Point]:
    return [closest_point_in_region(p, r) for p, r in zip(pts, regions)]


# --------------------------------------------------------------------------- #
#  Public API                                                                 #
# --------------------------------------------------------------------------- #
def discretized_opt(
    regions: Sequence[Region],
    k_start: int = K_START,
    tol_stop: float = TOL_STOP,
    k_cap: int = K_CAP,
    polish: bool = True,
) -> OracleResult:
    """Shortest tour visiting every region, up to discretization and polish error."""
    regions = list(regions)
    n = len(regions)
    if n == 0:
        raise ValueError("empty instance")
    if n > ORACLE_LIMIT:
        raise ValueError(f"oracle capped at {ORACLE_LIMIT} regions, got {n}")
    box = None
    if any(isinstance(r, Line) for r in regions):
        box = line_clip_box([r for r in regions if isinstance(r, Line)])
    sampled = [clip_line(r, box) if isinstance(r, Line) else r for r in regions]

    if n == 1:
        s, _ = sample_region(sampled[0], 1)
        p = Point(*s[0])
        return OracleResult(0.0, Tour.point(p), "exact-discretized", (1, 0), (0.0,), (0,), (p,), box)

    k = k_start
    history: List[float] = []
    rounds = 0
    while True:
        rounds += 1
        samples, gaps = zip(*(sample_region(r, k) for r in sampled))
        vals = _order_values(list(samples))
        best = min(vals.values())
        history.append(best)
        if len(history) >= 2 and history[-2] - best < tol_stop:
            break
        if 2 * k > k_cap:
            break
        k *= 2
    maxgap = max(gaps)
    ranked = sorted(vals, key=vals.get)
    slack = n * maxgap
    cands = [o for o in ranked if vals[o] - slack <= best]
    for o in ranked[:POLISH_ORDERS]:
        if o not in cands:
            cands.append(o)

    d_len, d_pts = _trace_order(list(samples), ranked[0])
    best_len, best_pts, best_order = d_len, d_pts, ranked[0]

    if polish:
        tris = {i: triangulate(r) for i, r in enumerate(regions) if isinstance(r, Polygon) and not r.is_convex}
        cache: Dict[Tuple[int, ...], _Polisher] = {}
        for o in cands:
            _, pts_o = _trace_order(list(samples), o) if tris else (None, None)
            choice = []
            pieces = []
            for i, r in enumerate(regions):
                if i in tris:
                    p_i = pts_o[o.index(i)]
                    piece, c = _piece_for(r, p_i, tris, i)
                else:
                    piece, c = r, -1
                pieces.append(piece)
                choice.append(c)
            key = tuple(choice)
            if key not in cache:
                cache[key] = _Polisher(pieces)
            sol = cache[key].solve(o)
            if sol is None:
                continue
            sol = _snap_into(sol, pieces)
            pts = [sol[i] for i in o]
            ln = _polyline_length(pts)
            if ln < best_len:
                best_len, best_pts, best_order = ln, pts, o
    tour = _points_tour(best_pts)
    return OracleResult(
        tour.length, tour, "exact-discretized", (k, rounds), tuple(history), tuple(best_order), tuple(best_pts), box
    )


def _points_tour(pts: Sequence[Point]) -> Tour:
    clean: List[Point] = []
    for p in pts:
        if not clean or p.dist(clean[-1]) > 0.0:
            clean.append(p)
    while len(clean) > 1 and clean[-1].dist(clean[0]) == 0.0:
        clean.pop()
    return Tour.polygon(clean)


def two_disk_opt(d1: Disk, d2: Disk) -> float:
    """Closed form for two equal or unequal disks: doubled gap between them."""
    return 2.0 * max(0.0, d1.center.dist(d2.center) - d1.radius - d2.radius)


# --------------------------------------------------------------------------- #
#  Lower bounds                                                               #
# --------------------------------------------------------------------------- #
def _extent(r: Region, u: Tuple[float, float]) -> Tuple[float, float]:
    ux, uy = u
    if isinstance(r, Point):
        v = r.x * ux + r.y * uy
        return v, v
    if isinstance(r, Segment):
        a, b = r.a.x * ux + r.a.y * uy, r.b.x * ux + r.b.y * uy
        return min(a, b), max(a, b)
    if isinstance(r, Disk):
        v = r.center.x * ux + r.center.y * uy
        return v - r.radius, v + r.radius
    if isinstance(r, Polygon):
        vals = [v.x * ux + v.y * uy for v in r.vertices]
        return min(vals), max(vals)
    raise TypeError(f"unsupported region {r!r}")


def rectangle_lower_bound(regions: Sequence[Region], angles: int = 64) -> float:
    """Twice the diagonal of a forced rectangle, best over sampled orientations.

    Along a direction u, every tour must reach max(lo) and min(hi) of the
    projections, so it touches all four sides of the rectangle spanned by
    those gaps in u and its perpendicular."""
    best = 0.0
    for t in range(angles):
        th = math.pi * t / (2 * angles)
        u = (math.cos(th), math.sin(th))
        v = (-math.sin(th), math.cos(th))
        eu = [_extent(r, u) for r in regions]
        ev = [_extent(r, v) for r in regions]
        gu = max(0.0, max(lo for lo, _ in eu) - min(hi for _, hi in eu))
        gv = max(0.0, max(lo for lo, _ in ev) - min(hi for _, hi in ev))
        best = max(best, 2.0 * math.hypot(gu, gv))
    return best


def lower_bound(regions: Sequence[Region]) -> float:
    regions = list(regions)
    if len(regions) <= 1:
        return 0.0
    best = 0.0
    if all(isinstance(r, Line) for r in regions):
        for combo in itertools.combinations(regions, 3):
            best = max(best, three_line_opt(list(combo))[0])
        return best
    if any(isinstance(r, Line) for r in regions):
        return 0.0
    if all(isinstance(r, Disk) for r in regions):
        rad = regions[0].radius
        same = all(abs(r.radius - rad) <= 1e-9 * max(1.0, rad) for r in regions)
        disjoint = all(disks_disjoint(regions[i], regions[j])
                       for i in range(len(regions)) for j in range(i + 1, len(regions)))
        if same and disjoint:
            best = max(best, area_lower_bound(len(regions), rad))
    best = max(best, rectangle_lower_bound(regions))
    return best


def hull_tour(points: Sequence[Point]) -> Tour:
    """Convex-hull tour of touch points (never longer than a tour through them)."""
    h = convex_hull(points)
    if isinstance(h, Point):
        return Tour.point(h)
    if isinstance(h, Segment):
        return Tour.polygon([h.a, h.b])
    return Tour.polygon(list(h.vertices))

"""Tours visiting infinite lines.

The approximate tour is the minimum touching circle: the smallest circle
meeting every line, found as the three-variable linear program

    min z  subject to  |a_i x + b_i y + c_i| <= z

with normalized line coefficients, solved by a seeded randomized incremental
(Seidel-style) method.  Exact optima for three lines (pedal triangle or
doubled altitude) and the triangle identities behind the pi/2 guarantee are
provided for checking.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .geom import Line, Point, Segment, Tour

LP_TOL = 1e-9
_BOX = 1e6

RIGHT_ANGLE_TOL = 1e-9


class InfeasibleLP(Exception):
    pass


# --------------------------------------------------------------------------- #
#  Small-dimensional LP                                                       #
# --------------------------------------------------------------------------- #
def _lex_box_optimum(objs: Sequence[np.ndarray], d: int, bound: float) -> np.ndarray:
    x = np.empty(d)
    for i in range(d):
        x[i] = -bound
        for o in objs:
            if o[i] > LP_TOL:
                x[i] = -bound
                break
            if o[i] < -LP_TOL:
                x[i] = bound
                break
    return x


def _solve(objs: List[np.ndarray], A: np.ndarray, b: np.ndarray, rng: random.Random, bound: float) -> np.ndarray:
    """Lexicographic minimum of ``objs`` over {x : A x <= b, |x_i| <= bound}."""
    d = A.shape[1] if A.ndim == 2 and A.size else len(objs[0])
    if d == 1:
        lo, hi = -bound, bound
        for a, bi in zip(A[:, 0], b):
            if abs(a) <= 1e-14:
                if bi < -LP_TOL:
                    raise InfeasibleLP()
                continue
            if a > 0:
                hi = min(hi, bi / a)
            else:
                lo = max(lo, bi / a)
        if lo > hi + LP_TOL * max(1.0, abs(lo)):
            raise InfeasibleLP()
        for o in objs:
            if o[0] > 1e-14:
                return np.array([lo])
            if o[0] < -1e-14:
                return np.array([hi])
        return np.array([lo])

    x = _lex_box_optimum(objs, d, bound)
    idx = list(range(len(b)))
    rng.shuffle(idx)
    done: List[int] = []
    for i in idx:
        a, bi = A[i], b[i]
        scale = max(1.0, float(np.abs(a).max()) * bound)
        if a @ x <= bi + LP_TOL * scale:
            done.append(i)
            continue
        j = int(np.argmax(np.abs(a)))
        if abs(a[j]) <= 1e-14:
            raise InfeasibleLP()
        keep = [k for k in range(d) if k != j]
        ratio = a[keep] / a[j]
        off = bi / a[j]
        # substitute x_j = off - ratio . x_keep
        sub_A = A[done][:, keep] - np.outer(A[done][:, j], ratio) if done else np.zeros((0, d - 1))
        sub_b = b[done] - A[done][:, j] * off if done else np.zeros(0)
        sub_objs = [o[keep] - o[j] * ratio for o in objs]
        # the original box on x_j becomes a general constraint
        box_rows = np.vstack([-ratio, ratio])
        box_b = np.array([bound - off, bound + off])
        sub_A = np.vstack([sub_A, box_rows]) if sub_A.size else box_rows
        sub_b = np.concatenate([sub_b, box_b])
        y = _solve(sub_objs, sub_A, sub_b, rng, bound)
        x = np.empty(d)
        x[keep] = y
        x[j] = off - ratio @ y
        done.append(i)
    return x


def lp_minimize(c: Sequence[float], A: np.ndarray, b: np.ndarray, seed: int = 0, bound: float = _BOX) -> np.ndarray:
    """Minimize c.x over A x <= b (inside a large box) by randomized incremental LP.

    Ties are broken lexicographically on the coordinates, so the optimum is unique."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    d = len(c)
    objs = [np.asarray(c, dtype=float)] + [np.eye(d)[i] for i in range(d)]
    return _solve(objs, A.reshape(-1, d), b, random.Random(seed), bound)


# --------------------------------------------------------------------------- #
#  Minimum touching circle                                                    #
# --------------------------------------------------------------------------- #
@dataclass(frozen=True)
class TouchingCircle:
    center: Point
    radius: float
    determiners: Tuple[int, ...]


def dedupe_lines(lines: Sequence[Line], tol: float = 1e-12) -> List[int]:
    keep: List[int] = []
    for i, ln in enumerate(lines):
        if not any(
            abs(ln.a - lines[j].a) <= tol and abs(ln.b - lines[j].b) <= tol and abs(ln.c - lines[j].c) <= tol
            for j in keep
        ):
            keep.append(i)
    return keep


def _touching_lp(lines: Sequence[Line], seed: int) -> Tuple[Point, float]:
    rows, rhs = [], []
    for ln in lines:
        rows.append((ln.a, ln.b, -1.0))
        rhs.append(-ln.c)
        rows.append((-ln.a, -ln.b, -1.0))
        rhs.append(ln.c)
    x = lp_minimize((0.0, 0.0, 1.0), np.array(rows), np.array(rhs), seed)
    z = max(0.0, float(x[2]))
    return Point(x[0], x[1]), z


def min_touching_circle(lines: Sequence[Line], seed: int = 0) -> TouchingCircle:
    """Smallest circle (possibly of radius 0) meeting every line."""
    if not lines:
        raise ValueError("empty instance")
    uniq = dedupe_lines(lines)
    center, z = _touching_lp([lines[i] for i in uniq], seed)
    tol = 1e-9 * max(1.0, z)
    tight = [i for i in uniq if lines[i].distance(center) >= z - tol]
    determiners: Tuple[int, ...] = tuple(tight[:1])
    found = False
    for size in (1, 2, 3):
        for combo in itertools.combinations(tight, size):
            _, zz = _touching_lp([lines[i] for i in combo], seed)
            if abs(zz - z) <= 1e-9 * max(1.0, z):
                determiners = combo
                found = True
                break
        if found:
            break
    return TouchingCircle(center, z, determiners)


def lines_tour(lines: Sequence[Line], seed: int = 0) -> Tour:
    tc = min_touching_circle(lines, seed)
    return Tour.circle(tc.center, tc.radius)


# --------------------------------------------------------------------------- #
#  Three lines: exact optimum and triangle facts                              #
# --------------------------------------------------------------------------- #
@dataclass(frozen=True)
class TriangleStats:
    r: float                     # inradius
    R: Optional[float]           # circumradius (None for a generalized triangle)
    s: Optional[float]           # semi-perimeter
    y: Optional[float]           # pedal-triangle perimeter, acute only
    h: Optional[float]           # altitude from the obtuse/right vertex, or strip width
    kind: str                    # acute | right | obtuse | generalized
    vertices: Tuple[Point, ...] = ()


def _triangle_vertices(lines: Sequence[Line]) -> Optional[Tuple[Point, Point, Point]]:
    l1, l2, l3 = lines
    A = l2.intersection(l3)
    B = l1.intersection(l3)
    C = l1.intersection(l2)
    if A is None or B is None or C is None:
        return None
    return A, B, C


def _altitude_foot(p: Point, q: Point, r: Point) -> Point:
    """Foot of the perpendicular from p onto line qr."""
    d = r - q
    t = (p - q).dot(d) / d.dot(d)
    return q + d * t


def _angles(A: Point, B: Point, C: Point) -> Tuple[float, float, float]:
    def ang(p: Point, q: Point, r: Point) -> float:
        u, v = q - p, r - p
        return math.atan2(abs(u.cross(v)), u.dot(v))

    return ang(A, B, C), ang(B, C, A), ang(C, A, B)


def _concurrent_point(lines: Sequence[Line]) -> Optional[Point]:
    pts = [p for p in (lines[0].intersection(lines[1]), lines[0].intersection(lines[2]),
                       lines[1].intersection(lines[2])) if p is not None]
    if len(pts) < 3:
        return None
    scale = max(1.0, max(abs(c) for p in pts for c in p.as_tuple()))
    if max(p.dist(q) for p in pts for q in pts) <= 1e-9 * scale:
        return pts[0]
    return None


def triangle_stats(lines: Sequence[Line]) -> TriangleStats:
    if len(lines) != 3:
        raise ValueError("need exactly 3 lines")
    if _concurrent_point(lines) is not None:
        raise ValueError("degenerate triangle: concurrent lines")
    verts = _triangle_vertices(lines)
    if verts is None:
        pairs = [(i, j) for i, j in ((0, 1), (0, 2), (1, 2)) if lines[i].is_parallel(lines[j])]
        if len(pairs) == 3:
            raise ValueError("degenerate triangle: all lines parallel")
        i, j = pairs[0]
        h = lines[i].distance(lines[j].point())
        return TriangleStats(r=h / 2.0, R=None, s=None, y=None, h=h, kind="generalized")
    A, B, C = verts
    a, b, c = B.dist(C), A.dist(C), A.dist(B)
    s = (a + b + c) / 2.0
    area = abs((B - A).cross(C - A)) / 2.0
    r = area / s
    R = a * b * c / (4.0 * area)
    angs = _angles(A, B, C)
    big = max(range(3), key=lambda k: angs[k])
    if abs(angs[big] - math.pi / 2) <= RIGHT_ANGLE_TOL:
        kind = "right"
    elif angs[big] > math.pi / 2:
        kind = "obtuse"
    else:
        kind = "acute"
    y = h = None
    if kind == "acute":
        fa = _altitude_foot(A, B, C)
        fb = _altitude_foot(B, A, C)
        fc = _altitude_foot(C, A, B)
        y = fa.dist(fb) + fb.dist(fc) + fc.dist(fa)
    else:
        P = (A, B, C)[big]
        Q, S = [v for k, v in enumerate((A, B, C)) if k != big]
        h = P.dist(_altitude_foot(P, Q, S))
    return TriangleStats(r=r, R=R, s=s, y=y, h=h, kind=kind, vertices=(A, B, C))


def three_line_opt(lines: Sequence[Line]) -> Tuple[float, Tour]:
    """Exact shortest tour visiting three lines."""
    if len(lines) != 3:
        raise ValueError("need exactly 3 lines")
    p = _concurrent_point(lines)
    if p is not None:
        return 0.0, Tour.point(p)
    l1, l2, l3 = lines
    par = [(i, j) for i, j in ((0, 1), (0, 2), (1, 2)) if lines[i].is_parallel(lines[j])]
    if len(par) == 3:
        # all parallel: doubled perpendicular across the extreme pair
        ref = lines[0]
        offs = [ref.signed_distance(ln.point()) for ln in lines]
        lo, hi = min(offs), max(offs)
        base = ref.point()
        n = ref.normal
        a, b = base + n * lo, base + n * hi
        return 2 * (hi - lo), Tour.polygon([a, b])
    if par:
        i, j = par[0]
        k = 3 - i - j
        li, lj, lk = lines[i], lines[j], lines[k]
        mid_c = (li.c + lj.c * (1.0 if li.a * lj.a + li.b * lj.b > 0 else -1.0)) / 2.0
        mid = Line(li.a, li.b, mid_c)
        x = mid.intersection(lk)
        a, b = li.foot(x), lj.foot(x)
        return 2 * a.dist(b), Tour.polygon([a, b])
    A, B, C = _triangle_vertices(lines)
    st = triangle_stats(lines)
    if st.kind == "acute":
        fa = _altitude_foot(A, B, C)
        fb = _altitude_foot(B, A, C)
        fc = _altitude_foot(C, A, B)
        return st.y, Tour.polygon([fa, fb, fc])
    angs = _angles(A, B, C)
    big = max(range(3), key=lambda k: angs[k])
    P = (A, B, C)[big]
    Q, S = [v for k, v in enumerate((A, B, C)) if k != big]
    foot = _altitude_foot(P, Q, S)
    return 2 * P.dist(foot), Tour.polygon([P, foot])


def lines_lower_bound(lines: Sequence[Line]) -> float:
    """Best three-line optimum over all triples (a lower bound for the full set)."""
    best = 0.0
    for combo in itertools.combinations(range(len(lines)), 3):
        best = max(best, three_line_opt([lines[i] for i in combo])[0])
    return best

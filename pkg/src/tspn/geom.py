"""Planar primitives for tours over neighborhoods.

Regions are points, segments, disks, simple polygons and infinite lines.
Tours are closed curves made of straight segments and circular arcs, with
lengths computed analytically.  All predicates use an absolute tolerance of
``EPS`` on inputs whose coordinates stay below roughly 1e3 in magnitude.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

EPS = 1e-9
TWO_PI = 2.0 * math.pi


# --------------------------------------------------------------------------- #
#  Basic value types                                                          #
# --------------------------------------------------------------------------- #
@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"non-finite coordinate ({self.x}, {self.y})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def dot(self, other: "Point") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)

    def rotated(self, theta: float, about: Optional["Point"] = None) -> "Point":
        ox, oy = (about.x, about.y) if about is not None else (0.0, 0.0)
        c, s = math.cos(theta), math.sin(theta)
        dx, dy = self.x - ox, self.y - oy
        return Point(ox + c * dx - s * dy, oy + s * dx + c * dy)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)


def polar(center: Point, radius: float, theta: float) -> Point:
    return Point(center.x + radius * math.cos(theta), center.y + radius * math.sin(theta))


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    @property
    def length(self) -> float:
        return self.a.dist(self.b)

    def point_at(self, t: float) -> Point:
        return Point(self.a.x + t * (self.b.x - self.a.x), self.a.y + t * (self.b.y - self.a.y))

    @property
    def start(self) -> Point:
        return self.a

    @property
    def end(self) -> Point:
        return self.b

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)

    def mapped(self, fn: Callable[[Point], Point]) -> "Segment":
        return Segment(fn(self.a), fn(self.b))


@dataclass(frozen=True)
class Arc:
    """Circular arc; ``sweep`` is signed (positive = counterclockwise)."""

    center: Point
    radius: float
    start_angle: float
    sweep: float

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError("negative arc radius")

    @property
    def length(self) -> float:
        return abs(self.sweep) * self.radius

    @property
    def start(self) -> Point:
        return polar(self.center, self.radius, self.start_angle)

    @property
    def end(self) -> Point:
        return polar(self.center, self.radius, self.start_angle + self.sweep)

    @property
    def is_full(self) -> bool:
        return abs(self.sweep) >= TWO_PI - 1e-12

    def contains_angle(self, theta: float, tol: float = 1e-12) -> bool:
        if self.is_full:
            return True
        if self.sweep >= 0:
            off = (theta - self.start_angle) % TWO_PI
            return off <= self.sweep + tol or off >= TWO_PI - tol
        off = (self.start_angle - theta) % TWO_PI
        return off <= -self.sweep + tol or off >= TWO_PI - tol

    def point_at(self, t: float) -> Point:
        return polar(self.center, self.radius, self.start_angle + t * self.sweep)

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.start_angle + self.sweep, -self.sweep)

    def split(self, theta: float) -> Tuple["Arc", "Arc"]:
        """Split at the point of angle ``theta`` (assumed on the arc)."""
        if self.sweep >= 0:
            off = (theta - self.start_angle) % TWO_PI
        else:
            off = -((self.start_angle - theta) % TWO_PI)
        if abs(off) > abs(self.sweep):
            off = self.sweep
        return (
            Arc(self.center, self.radius, self.start_angle, off),
            Arc(self.center, self.radius, self.start_angle + off, self.sweep - off),
        )


Element = Union[Segment, Arc]


@dataclass(frozen=True)
class Line:
    """Line ``a x + b y + c = 0`` stored with a^2 + b^2 = 1 and a canonical sign."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        a, b, c = float(self.a), float(self.b), float(self.c)
        if not all(math.isfinite(v) for v in (a, b, c)):
            raise ValueError("non-finite line coefficient")
        n = math.hypot(a, b)
        if n == 0.0:
            raise ValueError("line needs (a, b) != (0, 0)")
        a, b, c = a / n, b / n, c / n
        if a < 0 or (a == 0 and b < 0):
            a, b, c = -a, -b, -c
        object.__setattr__(self, "a", a + 0.0)
        object.__setattr__(self, "b", b + 0.0)
        object.__setattr__(self, "c", c + 0.0)

    @classmethod
    def through(cls, p: Point, q: Point) -> "Line":
        return cls(q.y - p.y, p.x - q.x, q.x * p.y - p.x * q.y)

    def signed_distance(self, p: Point) -> float:
        return self.a * p.x + self.b * p.y + self.c

    def distance(self, p: Point) -> float:
        return abs(self.signed_distance(p))

    @property
    def direction(self) -> Point:
        return Point(-self.b, self.a)

    @property
    def normal(self) -> Point:
        return Point(self.a, self.b)

    def foot(self, p: Point) -> Point:
        s = self.signed_distance(p)
        return Point(p.x - s * self.a, p.y - s * self.b)

    def point(self) -> Point:
        """The point of the line closest to the origin."""
        return Point(-self.c * self.a, -self.c * self.b)

    def is_parallel(self, other: "Line", tol: float = 1e-12) -> bool:
        return abs(self.a * other.b - self.b * other.a) <= tol

    def intersection(self, other: "Line") -> Optional[Point]:
        det = self.a * other.b - self.b * other.a
        if abs(det) <= 1e-15:
            return None
        x = (self.b * other.c - other.b * self.c) / det
        y = (other.a * self.c - self.a * other.c) / det
        return Point(x, y)

    def mapped(self, fn: Callable[[Point], Point]) -> "Line":
        p = self.point()
        return Line.through(fn(p), fn(p + self.direction))


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float

    def __post_init__(self) -> None:
        r = float(self.radius)
        if not math.isfinite(r) or r < 0:
            raise ValueError(f"invalid disk radius {self.radius}")
        object.__setattr__(self, "radius", r)


def _signed_area(pts: Sequence[Point]) -> float:
    s = 0.0
    for i, p in enumerate(pts):
        q = pts[(i + 1) % len(pts)]
        s += p.x * q.y - q.x * p.y
    return 0.5 * s


@dataclass(frozen=True)
class Polygon:
    """Simple polygon region (boundary plus interior), stored counterclockwise."""

    vertices: Tuple[Point, ...]

    def __post_init__(self) -> None:
        vs = tuple(self.vertices)
        if len(vs) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        area = _signed_area(vs)
        if abs(area) <= EPS:
            raise ValueError("polygon has zero area")
        if area < 0:
            vs = tuple(reversed(vs))
        object.__setattr__(self, "vertices", vs)
        if not _is_simple(vs):
            raise ValueError("polygon is not simple")

    @property
    def edges(self) -> Tuple[Segment, ...]:
        vs = self.vertices
        return tuple(Segment(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    @property
    def area(self) -> float:
        return _signed_area(self.vertices)

    @property
    def perimeter(self) -> float:
        return sum(e.length for e in self.edges)

    @property
    def is_convex(self) -> bool:
        vs = self.vertices
        k = len(vs)
        for i in range(k):
            o, a, b = vs[i], vs[(i + 1) % k], vs[(i + 2) % k]
            if (a - o).cross(b - a) < -EPS:
                return False
        return True

    def contains(self, p: Point, tol: float = EPS) -> bool:
        for e in self.edges:
            if point_segment_distance(p, e) <= tol:
                return True
        inside = False
        vs = self.vertices
        j = len(vs) - 1
        for i in range(len(vs)):
            vi, vj = vs[i], vs[j]
            if (vi.y > p.y) != (vj.y > p.y):
                xint = vj.x + (p.y - vj.y) * (vi.x - vj.x) / (vi.y - vj.y)
                if p.x < xint:
                    inside = not inside
            j = i
        return inside


def _is_simple(vs: Sequence[Point]) -> bool:
    k = len(vs)
    edges = [Segment(vs[i], vs[(i + 1) % k]) for i in range(k)]
    for i in range(k):
        # consecutive edges may not fold back onto each other
        prev, cur, nxt = vs[i - 1], vs[i], vs[(i + 1) % k]
        u, v = prev - cur, nxt - cur
        if abs(u.cross(v)) <= EPS * max(1.0, u.norm() * v.norm()) and u.dot(v) > 0:
            return False
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            if segment_segment_distance(edges[i], edges[j]) <= EPS:
                return False
    return True


Region = Union[Point, Segment, Disk, Polygon, Line]


@dataclass(frozen=True)
class Rectangle:
    x1: float
    x2: float
    y1: float
    y2: float

    def __post_init__(self) -> None:
        if self.x2 < self.x1 or self.y2 < self.y1:
            raise ValueError("rectangle needs x1 <= x2 and y1 <= y2")

    @property
    def w(self) -> float:
        return self.x2 - self.x1

    @property
    def h(self) -> float:
        return self.y2 - self.y1

    @property
    def diag(self) -> float:
        return math.hypot(self.w, self.h)

    @property
    def perimeter(self) -> float:
        return 2.0 * (self.w + self.h)

    @property
    def corners(self) -> Tuple[Point, Point, Point, Point]:
        return (
            Point(self.x1, self.y1),
            Point(self.x2, self.y1),
            Point(self.x2, self.y2),
            Point(self.x1, self.y2),
        )

    def contains(self, p: Point, tol: float = EPS) -> bool:
        return self.x1 - tol <= p.x <= self.x2 + tol and self.y1 - tol <= p.y <= self.y2 + tol

    def intersects(self, r: Region, tol: float = EPS) -> bool:
        return rectangle_region_distance(self, r) <= tol


# --------------------------------------------------------------------------- #
#  Tours                                                                      #
# --------------------------------------------------------------------------- #
@dataclass(frozen=True)
class Tour:
    """Closed curve.  A tour with no elements is either a single point
    (``anchor`` set, length 0) or empty (``anchor`` is None)."""

    elements: Tuple[Element, ...] = ()
    anchor: Optional[Point] = None

    def __post_init__(self) -> None:
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if not els:
            return
        scale = 1.0 + max(max(abs(e.start.x), abs(e.start.y)) for e in els)
        tol = 1e-7 * scale
        for i, e in enumerate(els):
            nxt = els[(i + 1) % len(els)]
            if e.end.dist(nxt.start) > tol:
                raise ValueError(f"tour element {i} does not connect to its successor")
        if self.anchor is None:
            object.__setattr__(self, "anchor", els[0].start)

    @classmethod
    def point(cls, p: Point) -> "Tour":
        return cls((), p)

    @classmethod
    def empty(cls) -> "Tour":
        return cls((), None)

    @classmethod
    def polygon(cls, pts: Sequence[Point]) -> "Tour":
        """Closed polyline through ``pts`` in order (2 points give a doubled segment)."""
        pts = list(pts)
        if not pts:
            return cls.empty()
        if len(pts) == 1:
            return cls.point(pts[0])
        return cls(tuple(Segment(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))))

    @classmethod
    def circle(cls, center: Point, radius: float, start: float = 0.0, ccw: bool = True) -> "Tour":
        if radius <= 0:
            return cls.point(center)
        return cls((Arc(center, radius, start, TWO_PI if ccw else -TWO_PI),))

    @property
    def is_empty(self) -> bool:
        return not self.elements and self.anchor is None

    @property
    def is_point(self) -> bool:
        return not self.elements and self.anchor is not None

    @property
    def length(self) -> float:
        return math.fsum(e.length for e in self.elements)

    @property
    def vertices(self) -> Tuple[Point, ...]:
        if not self.elements:
            return () if self.anchor is None else (self.anchor,)
        return tuple(e.start for e in self.elements)

    def mapped(self, fn: Callable[[Point], Point], theta: float = 0.0, k: float = 1.0) -> "Tour":
        """Apply a similarity ``fn`` (rotation by ``theta``, scale ``k`` > 0, any translation)."""
        out = []
        for e in self.elements:
            if isinstance(e, Segment):
                out.append(e.mapped(fn))
            else:
                out.append(Arc(fn(e.center), e.radius * k, e.start_angle + theta, e.sweep))
        anchor = fn(self.anchor) if self.anchor is not None else None
        return Tour(tuple(out), anchor)

    def rotated(self, theta: float, about: Optional[Point] = None) -> "Tour":
        return self.mapped(lambda p: p.rotated(theta, about), theta=theta)

    def scaled(self, k: float, about: Optional[Point] = None) -> "Tour":
        o = about or Point(0.0, 0.0)
        return self.mapped(lambda p: Point(o.x + k * (p.x - o.x), o.y + k * (p.y - o.y)), k=k)

    def translated(self, dx: float, dy: float) -> "Tour":
        return self.mapped(lambda p: Point(p.x + dx, p.y + dy))


def tour_length(t: Tour) -> float:
    return t.length


# --------------------------------------------------------------------------- #
#  Distances and closest pairs                                                #
# --------------------------------------------------------------------------- #
def closest_point_on_segment(p: Point, s: Segment) -> Point:
    d = s.b - s.a
    dd = d.dot(d)
    if dd == 0.0:
        return s.a
    t = max(0.0, min(1.0, (p - s.a).dot(d) / dd))
    return s.point_at(t)


def point_segment_distance(p: Point, s: Segment) -> float:
    return p.dist(closest_point_on_segment(p, s))


def _orient(a: Point, b: Point, c: Point) -> float:
    return (b - a).cross(c - a)


def segment_intersection(s1: Segment, s2: Segment) -> Optional[Point]:
    """A common point of two closed segments, or None."""
    d1, d2 = s1.b - s1.a, s2.b - s2.a
    den = d1.cross(d2)
    scale = max(1.0, d1.norm() * d2.norm())
    if abs(den) > 1e-14 * scale:
        t = (s2.a - s1.a).cross(d2) / den
        u = (s2.a - s1.a).cross(d1) / den
        if -1e-12 <= t <= 1 + 1e-12 and -1e-12 <= u <= 1 + 1e-12:
            return s1.point_at(min(1.0, max(0.0, t)))
        return None
    # parallel: overlap only if collinear
    for p, s in ((s1.a, s2), (s1.b, s2), (s2.a, s1), (s2.b, s1)):
        if point_segment_distance(p, s) <= 1e-12 * scale:
            return p
    return None


def closest_pair_segments(s1: Segment, s2: Segment) -> Tuple[float, Point, Point]:
    x = segment_intersection(s1, s2)
    if x is not None:
        return 0.0, x, x
    best = None
    for p, s, first in ((s1.a, s2, True), (s1.b, s2, True), (s2.a, s1, False), (s2.b, s1, False)):
        q = closest_point_on_segment(p, s)
        d = p.dist(q)
        if best is None or d < best[0]:
            best = (d, p, q) if first else (d, q, p)
    return best


def segment_segment_distance(s1: Segment, s2: Segment) -> float:
    return closest_pair_segments(s1, s2)[0]


def closest_point_on_arc(p: Point, arc: Arc) -> Point:
    v = p - arc.center
    if v.norm() > 0:
        th = v.angle()
        if arc.contains_angle(th):
            return polar(arc.center, arc.radius, th)
    a, b = arc.start, arc.end
    return a if p.dist(a) <= p.dist(b) else b


def _line_circle_params(s: Segment, c: Point, r: float) -> Tuple[float, ...]:
    d = s.b - s.a
    f = s.a - c
    A = d.dot(d)
    if A == 0.0:
        return (0.0,) if abs(f.norm() - r) <= EPS else ()
    B = 2 * f.dot(d)
    C = f.dot(f) - r * r
    disc = B * B - 4 * A * C
    if disc < 0:
        return ()
    sq = math.sqrt(disc)
    return tuple(t for t in ((-B - sq) / (2 * A), (-B + sq) / (2 * A)) if -1e-12 <= t <= 1 + 1e-12)


def closest_pair_segment_arc(s: Segment, arc: Arc) -> Tuple[float, Point, Point]:
    cands = []
    for t in _line_circle_params(s, arc.center, arc.radius):
        q = s.point_at(min(1.0, max(0.0, t)))
        if arc.contains_angle((q - arc.center).angle(), 1e-9):
            cands.append((0.0, q, q))
    if cands:
        return cands[0]
    for p in (s.a, s.b):
        q = closest_point_on_arc(p, arc)
        cands.append((p.dist(q), p, q))
    for q in (arc.start, arc.end):
        p = closest_point_on_segment(q, s)
        cands.append((p.dist(q), p, q))
    m = closest_point_on_segment(arc.center, s)
    if m.dist(arc.center) > 0:
        q = closest_point_on_arc(m, arc)
        cands.append((m.dist(q), m, q))
    return min(cands, key=lambda c: c[0])


def closest_pair_arcs(a1: Arc, a2: Arc) -> Tuple[float, Point, Point]:
    cands = []
    c1, c2 = a1.center, a2.center
    dcc = c1.dist(c2)
    if dcc > 0:
        # circle-circle intersections
        r1, r2 = a1.radius, a2.radius
        if abs(r1 - r2) <= dcc <= r1 + r2:
            a = (r1 * r1 - r2 * r2 + dcc * dcc) / (2 * dcc)
            hh = math.sqrt(max(0.0, r1 * r1 - a * a))
            u = (c2 - c1) * (1.0 / dcc)
            base = c1 + u * a
            for sgn in (1.0, -1.0):
                q = Point(base.x - sgn * hh * u.y, base.y + sgn * hh * u.x)
                if a1.contains_angle((q - c1).angle(), 1e-9) and a2.contains_angle((q - c2).angle(), 1e-9):
                    cands.append((0.0, q, q))
        if cands:
            return cands[0]
        u = (c2 - c1) * (1.0 / dcc)
        for sgn in (1.0, -1.0):
            th = math.atan2(sgn * u.y, sgn * u.x)
            if a1.contains_angle(th):
                p = polar(c1, a1.radius, th)
                q = closest_point_on_arc(p, a2)
                cands.append((p.dist(q), p, q))
            if a2.contains_angle(th):
                q = polar(c2, a2.radius, th)
                p = closest_point_on_arc(q, a1)
                cands.append((p.dist(q), p, q))
    for p in (a1.start, a1.end):
        q = closest_point_on_arc(p, a2)
        cands.append((p.dist(q), p, q))
    for q in (a2.start, a2.end):
        p = closest_point_on_arc(q, a1)
        cands.append((p.dist(q), p, q))
    return min(cands, key=lambda c: c[0])


def closest_pair_elements(e1: Element, e2: Element) -> Tuple[float, Point, Point]:
    if isinstance(e1, Segment) and isinstance(e2, Segment):
        return closest_pair_segments(e1, e2)
    if isinstance(e1, Segment):
        return closest_pair_segment_arc(e1, e2)
    if isinstance(e2, Segment):
        d, p, q = closest_pair_segment_arc(e2, e1)
        return d, q, p
    return closest_pair_arcs(e1, e2)


def closest_point_on_element(p: Point, e: Element) -> Point:
    if isinstance(e, Segment):
        return closest_point_on_segment(p, e)
    return closest_point_on_arc(p, e)


def point_region_distance(p: Point, r: Region) -> float:
    if isinstance(r, Point):
        return p.dist(r)
    if isinstance(r, Segment):
        return point_segment_distance(p, r)
    if isinstance(r, Disk):
        return max(0.0, p.dist(r.center) - r.radius)
    if isinstance(r, Polygon):
        if r.contains(p, 0.0):
            return 0.0
        return min(point_segment_distance(p, e) for e in r.edges)
    if isinstance(r, Line):
        return r.distance(p)
    raise TypeError(f"unknown region {r!r}")


def _arc_line_distance(arc: Arc, ln: Line) -> float:
    base = ln.signed_distance(arc.center)
    phi = math.atan2(ln.b, ln.a)
    vals = [ln.signed_distance(arc.start), ln.signed_distance(arc.end)]
    for th in (phi, phi + math.pi):
        if arc.contains_angle(th):
            vals.append(base + arc.radius * math.cos(th - phi))
    lo, hi = min(vals), max(vals)
    if lo <= 0.0 <= hi:
        return 0.0
    return min(abs(lo), abs(hi))


def element_region_distance(e: Element, r: Region) -> float:
    if isinstance(r, Point):
        return r.dist(closest_point_on_element(r, e))
    if isinstance(r, Segment):
        return closest_pair_elements(e, r)[0]
    if isinstance(r, Disk):
        return max(0.0, r.center.dist(closest_point_on_element(r.center, e)) - r.radius)
    if isinstance(r, Polygon):
        if r.contains(e.start, 0.0):
            return 0.0
        return min(closest_pair_elements(e, edge)[0] for edge in r.edges)
    if isinstance(r, Line):
        if isinstance(e, Segment):
            s1, s2 = r.signed_distance(e.a), r.signed_distance(e.b)
            if s1 * s2 <= 0.0:
                return 0.0
            return min(abs(s1), abs(s2))
        return _arc_line_distance(e, r)
    raise TypeError(f"unknown region {r!r}")


def tour_region_distance(t: Tour, r: Region) -> float:
    if not t.elements:
        if t.anchor is None:
            return math.inf
        return point_region_distance(t.anchor, r)
    return min(element_region_distance(e, r) for e in t.elements)


def tour_visits(t: Tour, r: Region, tol: float = EPS) -> bool:
    """True iff the closed curve ``t`` comes within ``tol`` of region ``r``."""
    return tour_region_distance(t, r) <= tol


def tour_tour_distance(t1: Tour, t2: Tour) -> Tuple[float, Point, Point, int, int]:
    """Closest pair between two tours as (distance, p1, p2, element index 1, element index 2).

    Element index -1 stands for a point tour."""
    els1 = t1.elements or (None,)
    els2 = t2.elements or (None,)
    best = None
    for i, e1 in enumerate(els1):
        for j, e2 in enumerate(els2):
            if e1 is None and e2 is None:
                cand = (t1.anchor.dist(t2.anchor), t1.anchor, t2.anchor)
            elif e1 is None:
                q = closest_point_on_element(t1.anchor, e2)
                cand = (t1.anchor.dist(q), t1.anchor, q)
            elif e2 is None:
                p = closest_point_on_element(t2.anchor, e1)
                cand = (p.dist(t2.anchor), p, t2.anchor)
            else:
                cand = closest_pair_elements(e1, e2)
            if best is None or cand[0] < best[0]:
                best = (cand[0], cand[1], cand[2], i if e1 is not None else -1, j if e2 is not None else -1)
    return best


def rectangle_region_distance(q: Rectangle, r: Region) -> float:
    if isinstance(r, Point):
        dx = max(q.x1 - r.x, 0.0, r.x - q.x2)
        dy = max(q.y1 - r.y, 0.0, r.y - q.y2)
        return math.hypot(dx, dy)
    if isinstance(r, Disk):
        return max(0.0, rectangle_region_distance(q, r.center) - r.radius)
    if isinstance(r, Line):
        vals = [r.signed_distance(c) for c in q.corners]
        if min(vals) <= 0.0 <= max(vals):
            return 0.0
        return min(abs(v) for v in vals)
    sides = [Segment(a, b) for a, b in zip(q.corners, q.corners[1:] + q.corners[:1])]
    if isinstance(r, Segment):
        if q.contains(r.a, 0.0):
            return 0.0
        return min(segment_segment_distance(r, s) for s in sides)
    if isinstance(r, Polygon):
        if q.contains(r.vertices[0], 0.0) or r.contains(Point(q.x1, q.y1), 0.0):
            return 0.0
        return min(segment_segment_distance(e, s) for e in r.edges for s in sides)
    raise TypeError(f"unknown region {r!r}")


# --------------------------------------------------------------------------- #
#  Region measurements and transforms                                         #
# --------------------------------------------------------------------------- #
def region_diameter(r: Region) -> Tuple[float, Segment]:
    """Diameter of a bounded region with one realizing segment."""
    if isinstance(r, Point):
        return 0.0, Segment(r, r)
    if isinstance(r, Segment):
        return r.length, r
    if isinstance(r, Disk):
        c, rad = r.center, r.radius
        return 2 * rad, Segment(Point(c.x - rad, c.y), Point(c.x + rad, c.y))
    if isinstance(r, Polygon):
        vs = r.vertices
        best, seg = -1.0, None
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                d = vs[i].dist(vs[j])
                if d > best:
                    best, seg = d, Segment(vs[i], vs[j])
        return best, seg
    if isinstance(r, Line):
        raise ValueError("diameter undefined for an unbounded region")
    raise TypeError(f"unknown region {r!r}")


def _projection(r: Region, axis: int) -> Tuple[float, float]:
    def coord(p: Point) -> float:
        return p.x if axis == 0 else p.y

    if isinstance(r, Point):
        return coord(r), coord(r)
    if isinstance(r, Segment):
        a, b = coord(r.a), coord(r.b)
        return min(a, b), max(a, b)
    if isinstance(r, Disk):
        c = coord(r.center)
        return c - r.radius, c + r.radius
    if isinstance(r, Polygon):
        cs = [coord(v) for v in r.vertices]
        return min(cs), max(cs)
    if isinstance(r, Line):
        raise ValueError("projection undefined for an unbounded region")
    raise TypeError(f"unknown region {r!r}")


def x_projection(r: Region) -> Tuple[float, float]:
    return _projection(r, 0)


def y_projection(r: Region) -> Tuple[float, float]:
    return _projection(r, 1)


def map_region(r: Region, fn: Callable[[Point], Point], k: float = 1.0) -> Region:
    """Image of ``r`` under a similarity ``fn`` with scale factor ``k``."""
    if isinstance(r, Point):
        return fn(r)
    if isinstance(r, Segment):
        return r.mapped(fn)
    if isinstance(r, Disk):
        return Disk(fn(r.center), r.radius * k)
    if isinstance(r, Polygon):
        return Polygon(tuple(fn(v) for v in r.vertices))
    if isinstance(r, Line):
        return r.mapped(fn)
    raise TypeError(f"unknown region {r!r}")


def rotate_region(r: Region, theta: float, about: Optional[Point] = None) -> Region:
    return map_region(r, lambda p: p.rotated(theta, about))


def scale_region(r: Region, k: float) -> Region:
    return map_region(r, lambda p: Point(p.x * k, p.y * k), k)


def is_convex_region(r: Region) -> bool:
    return not isinstance(r, Polygon) or r.is_convex


def bounding_box(regions: Iterable[Region]) -> Rectangle:
    xs, ys = [], []
    for r in regions:
        xs.extend(x_projection(r))
        ys.extend(y_projection(r))
    if not xs:
        raise ValueError("empty region list")
    return Rectangle(min(xs), max(xs), min(ys), max(ys))


def convex_hull(pts: Sequence[Point]) -> Union[Polygon, Segment, Point]:
    """Counterclockwise hull without collinear vertices.

    Degenerate inputs return a ``Point`` or ``Segment`` marker instead."""
    uniq = sorted(set((p.x, p.y) for p in pts))
    if not uniq:
        raise ValueError("empty point set")
    if len(uniq) == 1:
        return Point(*uniq[0])

    def half(seq):
        out = []
        for q in seq:
            while len(out) >= 2 and (out[-1][0] - out[-2][0]) * (q[1] - out[-2][1]) - (out[-1][1] - out[-2][1]) * (q[0] - out[-2][0]) <= 1e-12:
                out.pop()
            out.append(q)
        return out

    lower = half(uniq)
    upper = half(reversed(uniq))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return Segment(Point(*uniq[0]), Point(*uniq[-1]))
    vs = tuple(Point(x, y) for x, y in hull)
    if abs(_signed_area(vs)) <= EPS:
        # a sliver below the area tolerance: keep its longest chord
        a, b = max(itertools.combinations(vs, 2), key=lambda ab: ab[0].dist(ab[1]))
        return Segment(a, b)
    return Polygon(vs)


def closest_point_in_region(p: Point, r: Region) -> Point:
    """Nearest point of the (closed) region ``r`` to ``p``."""
    if isinstance(r, Point):
        return r
    if isinstance(r, Segment):
        return closest_point_on_segment(p, r)
    if isinstance(r, Disk):
        v = p - r.center
        d = v.norm()
        if d <= r.radius:
            return p
        return r.center + v * (r.radius / d)
    if isinstance(r, Polygon):
        if r.contains(p, 0.0):
            return p
        return min((closest_point_on_segment(p, e) for e in r.edges), key=p.dist)
    if isinstance(r, Line):
        return r.foot(p)
    raise TypeError(f"unknown region {r!r}")


def triangulate(poly: Polygon) -> Tuple[Polygon, ...]:
    """Ear-clipping triangulation of a simple polygon."""
    idx = list(range(len(poly.vertices)))
    vs = poly.vertices
    out = []

    def inside(p: Point, a: Point, b: Point, c: Point) -> bool:
        return _orient(a, b, p) >= 0 and _orient(b, c, p) >= 0 and _orient(c, a, p) >= 0

    guard = 0
    while len(idx) > 3:
        guard += 1
        if guard > 10 * len(vs) ** 2:
            raise ValueError("triangulation failed")
        m = len(idx)
        for k in range(m):
            i, j, l = idx[k - 1], idx[k], idx[(k + 1) % m]
            a, b, c = vs[i], vs[j], vs[l]
            o = _orient(a, b, c)
            if abs(o) <= 1e-15:
                idx.pop(k)          # collinear vertex, nothing to emit
                break
            if o < 0:
                continue
            if any(inside(vs[q], a, b, c) for q in idx if q not in (i, j, l)):
                continue
            out.append(Polygon((a, b, c)))
            idx.pop(k)
            break
        else:
            raise ValueError("triangulation failed")
    out.append(Polygon(tuple(vs[q] for q in idx)))
    return tuple(out)

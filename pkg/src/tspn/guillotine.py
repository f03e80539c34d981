"""m-guillotine structure for edge sets over disjoint equal disks.

A window is cut recursively by axis-parallel lines.  Each cut pays for its
m-span (between the m-th and m-th-from-last crossing endpoints) and its
m-disk-span (between the m-th and m-th-from-last disk chords); a cut is
favorable when its m-dark plus m-disk-dark length covers that cost.  The
transform keeps adding spans along favorable cuts until no window wholly
contains a disk, and logs every cut with its red (edge) and blue (disk)
charges.

Vertical cuts are handled by reflecting the plane across y = x and treating
them as horizontal ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .geom import Disk, Point, Rectangle, Segment, closest_point_on_segment, segment_intersection

TOL = 1e-12
FAVORABLE_TOL = 1e-9
SAMPLES_PER_GAP = 3
REFINED_SAMPLES = 16
MARGIN = 0.05

H = "horizontal"
V = "vertical"


class FavorableCutError(RuntimeError):
    """No favorable cut on the candidate grid; contradicts the averaging argument."""

    def __init__(self, window: Rectangle, best_margin: float, tried: int):
        super().__init__(
            f"favorable cut search failed in {window}: best chargeable-cost {best_margin:.3e} over {tried} cuts"
        )
        self.window = window
        self.best_margin = best_margin
        self.tried = tried


@dataclass(frozen=True)
class EdgeSet:
    edges: Tuple[Segment, ...]

    @property
    def totalLength(self) -> float:
        return math.fsum(e.length for e in self.edges)


@dataclass(frozen=True)
class CutCertificate:
    orientation: str
    coordinate: float
    mSpan: Optional[Segment]
    mDiskSpan: Optional[Segment]
    darkLength: float
    diskDarkLength: float
    chargeable: float
    cost: float
    progress: bool = False

    @property
    def favorable(self) -> bool:
        return self.chargeable >= self.cost - FAVORABLE_TOL


@dataclass(frozen=True)
class CutRecord:
    window: Rectangle
    certificate: CutCertificate
    red: float
    blue: float
    added: float
    depth: int


@dataclass(frozen=True)
class Connection:
    start: Point
    end: Point
    disk: int

    @property
    def length(self) -> float:
        return self.start.dist(self.end)


@dataclass
class ProofLog:
    m: int
    L: float
    delta: float
    n: int
    window: Rectangle
    cuts: List[CutRecord] = field(default_factory=list)
    connections: List[Connection] = field(default_factory=list)
    skipped: List[Tuple[int, Tuple[int, ...]]] = field(default_factory=list)   # (cut index, disks)
    extensions: List[Tuple[int, float]] = field(default_factory=list)          # (cut index, length)
    scale: float = 1.0

    @property
    def span_length(self) -> float:
        return math.fsum(c.added for c in self.cuts)

    @property
    def extension_length(self) -> float:
        return math.fsum(x for _, x in self.extensions)

    @property
    def added_length(self) -> float:
        return self.span_length + self.extension_length

    @property
    def red_total(self) -> float:
        return math.fsum(c.red for c in self.cuts)

    @property
    def blue_total(self) -> float:
        return math.fsum(c.blue for c in self.cuts)

    @property
    def bound(self) -> float:
        return guillotine_bound(self.L, self.delta, self.m)

    @property
    def red_ceiling(self) -> float:
        return math.sqrt(2.0) * self.L / self.m

    @property
    def blue_ceiling(self) -> float:
        return 4.0 * self.delta * self.n / self.m

    def to_dict(self) -> dict:
        def seg(s: Optional[Segment]):
            return None if s is None else [s.a.x, s.a.y, s.b.x, s.b.y]

        return {
            "m": self.m,
            "L": self.L,
            "delta": self.delta,
            "n": self.n,
            "added_length": self.added_length,
            "bound": self.bound,
            "red_total": self.red_total,
            "red_ceiling": self.red_ceiling,
            "blue_total": self.blue_total,
            "blue_ceiling": self.blue_ceiling,
            "cuts": [
                {
                    "orientation": c.certificate.orientation,
                    "coordinate": c.certificate.coordinate,
                    "window": [c.window.x1, c.window.x2, c.window.y1, c.window.y2],
                    "m_span": seg(c.certificate.mSpan),
                    "m_disk_span": seg(c.certificate.mDiskSpan),
                    "dark": c.certificate.darkLength,
                    "disk_dark": c.certificate.diskDarkLength,
                    "cost": c.certificate.cost,
                    "red": c.red,
                    "blue": c.blue,
                    "added": c.added,
                    "depth": c.depth,
                }
                for c in self.cuts
            ],
            "connections": [[c.start.x, c.start.y, c.end.x, c.end.y, c.disk] for c in self.connections],
            "skipped": [[i, list(d)] for i, d in self.skipped],
            "extensions": [[i, x] for i, x in self.extensions],
        }


def guillotine_bound(L: float, delta: float, m: int) -> float:
    """Ceiling on the length added by the transform."""
    return (math.sqrt(2.0) + 16.0 / math.pi) / m * L + 16.0 * delta / m


# --------------------------------------------------------------------------- #
#  Reflection helpers: every cut is evaluated as a horizontal one             #
# --------------------------------------------------------------------------- #
def _flip_p(p: Point) -> Point:
    return Point(p.y, p.x)


def _flip_seg(s: Segment) -> Segment:
    return Segment(_flip_p(s.a), _flip_p(s.b))


def _flip_rect(w: Rectangle) -> Rectangle:
    return Rectangle(w.y1, w.y2, w.x1, w.x2)


def _oriented(E: Sequence[Segment], D: Sequence[Disk], W: Rectangle, orientation: str):
    if orientation == H:
        return list(E), list(D), W
    if orientation != V:
        raise ValueError(f"bad orientation {orientation!r}")
    return [_flip_seg(e) for e in E], [Disk(_flip_p(d.center), d.radius) for d in D], _flip_rect(W)


def _back(s: Optional[Segment], orientation: str) -> Optional[Segment]:
    if s is None or orientation == H:
        return s
    return _flip_seg(s)


# --------------------------------------------------------------------------- #
#  Spans                                                                      #
# --------------------------------------------------------------------------- #
def _scale(W: Rectangle) -> float:
    return max(1.0, abs(W.x1), abs(W.x2), abs(W.y1), abs(W.y2))


def crossing_endpoints(E: Sequence[Segment], W: Rectangle, c: float) -> List[float]:
    """Endpoints p_1..p_xi (as x values, increasing) of y=c  ∩  E  ∩  int(W)."""
    tol = TOL * _scale(W)
    pieces: List[Tuple[float, float]] = []
    for e in E:
        a, b = e.a, e.b
        da, db = a.y - c, b.y - c
        if abs(da) <= tol and abs(db) <= tol:
            lo, hi = min(a.x, b.x), max(a.x, b.x)
            lo, hi = max(lo, W.x1), min(hi, W.x2)
            if hi > W.x1 + tol and lo < W.x2 - tol and hi >= lo:
                pieces.append((lo, hi))
            continue
        if da * db > 0 and min(abs(da), abs(db)) > tol:
            continue
        if abs(da) <= tol:
            x = a.x
        elif abs(db) <= tol:
            x = b.x
        else:
            x = a.x + (b.x - a.x) * (c - a.y) / (b.y - a.y)
        if W.x1 + tol < x < W.x2 - tol:
            pieces.append((x, x))
    if not pieces:
        return []
    pieces.sort()
    comps = [list(pieces[0])]
    for lo, hi in pieces[1:]:
        if lo <= comps[-1][1] + tol:
            comps[-1][1] = max(comps[-1][1], hi)
        else:
            comps.append([lo, hi])
    out: List[float] = []
    for lo, hi in comps:
        out.append(lo)
        if hi - lo > tol:
            out.append(hi)
    return out


def disk_chords(D: Sequence[Disk], W: Rectangle, c: float) -> List[Tuple[float, float, int]]:
    """Chords of y=c with the disks, clipped to W, sorted by x."""
    out = []
    for i, d in enumerate(D):
        dy = c - d.center.y
        if abs(dy) > d.radius:
            continue
        s = math.sqrt(max(0.0, d.radius * d.radius - dy * dy))
        lo, hi = max(d.center.x - s, W.x1), min(d.center.x + s, W.x2)
        if lo <= hi:
            out.append((lo, hi, i))
    out.sort()
    return out


def _m_span_h(E, W, c, m) -> Optional[Segment]:
    ps = crossing_endpoints(E, W, c)
    xi = len(ps)
    if xi <= 2 * (m - 1):
        return None
    return Segment(Point(ps[m - 1], c), Point(ps[xi - m], c))


def _m_disk_span_h(D, W, c, m) -> Tuple[Optional[Segment], Tuple[int, ...], Tuple[int, int]]:
    ch = disk_chords(D, W, c)
    xi = len(ch)
    if xi <= 2 * m:
        return None, (), (-1, -1)
    lo_disk, hi_disk = ch[m - 1], ch[xi - m]
    stabbed = tuple(k for _, _, k in ch[m:xi - m])
    return Segment(Point(lo_disk[1], c), Point(hi_disk[0], c)), stabbed, (lo_disk[2], hi_disk[2])


def m_span(E: Sequence[Segment], W: Rectangle, cut: Tuple[str, float], m: int) -> Optional[Segment]:
    orientation, c = cut
    E2, _, W2 = _oriented(E, [], W, orientation)
    return _back(_m_span_h(E2, W2, c, m), orientation)


def m_disk_span(D: Sequence[Disk], W: Rectangle, cut: Tuple[str, float], m: int) -> Optional[Segment]:
    orientation, c = cut
    _, D2, W2 = _oriented([], D, W, orientation)
    return _back(_m_disk_span_h(D2, W2, c, m)[0], orientation)


def span_from_endpoints(ps: Sequence[float], m: int) -> Optional[Tuple[float, float]]:
    """The m-span of a sorted endpoint list, as an interval of the cut coordinate."""
    xi = len(ps)
    if xi <= 2 * (m - 1):
        return None
    return ps[m - 1], ps[xi - m]


# --------------------------------------------------------------------------- #
#  Darkness                                                                   #
# --------------------------------------------------------------------------- #
def _clip_x_range(e: Segment, xmin, xmax, ymin, ymax) -> Optional[Tuple[float, float]]:
    """x-extent of the part of ``e`` inside the box (Liang-Barsky)."""
    x0, y0 = e.a.x, e.a.y
    dx, dy = e.b.x - x0, e.b.y - y0
    t0, t1 = 0.0, 1.0
    for p, q in ((-dx, x0 - xmin), (dx, xmax - x0), (-dy, y0 - ymin), (dy, ymax - y0)):
        if p == 0.0:
            if q < 0:
                return None
            continue
        r = q / p
        if p < 0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
        if t0 > t1:
            return None
    xa, xb = x0 + t0 * dx, x0 + t1 * dx
    return min(xa, xb), max(xa, xb)


def _disk_side_range(d: Disk, c: float, far: float, up: bool) -> Optional[Tuple[float, float]]:
    """x where the vertical chord of ``d`` meets the open band between c and far."""
    cy = d.center.y
    t = max(c - cy, cy - far) if up else max(cy - c, far - cy)
    if t < 0:
        half = d.radius
    elif t < d.radius:
        half = math.sqrt(d.radius * d.radius - t * t)
    else:
        return None
    return d.center.x - half, d.center.x + half


def _measure_both(above: List[Tuple[float, float]], below: List[Tuple[float, float]], lo: float, hi: float, m: int) -> float:
    """Length of {x in (lo,hi): #above intervals containing x >= m and #below >= m}."""
    ev = []
    for a, b in above:
        a, b = max(a, lo), min(b, hi)
        if b > a:
            ev.append((a, 0, 1))
            ev.append((b, 0, -1))
    for a, b in below:
        a, b = max(a, lo), min(b, hi)
        if b > a:
            ev.append((a, 1, 1))
            ev.append((b, 1, -1))
    if not ev:
        return 0.0
    ev.sort(key=lambda t: t[0])
    cnt = [0, 0]
    total = 0.0
    prev = ev[0][0]
    for x, side, delta in ev:
        if x > prev and cnt[0] >= m and cnt[1] >= m:
            total += x - prev
        cnt[side] += delta
        prev = x
    return total


def _dark_h(E, D, W, c, m) -> Tuple[float, float]:
    above = [r for r in (_clip_x_range(e, W.x1, W.x2, c, W.y2) for e in E) if r is not None and r[1] > r[0]]
    below = [r for r in (_clip_x_range(e, W.x1, W.x2, W.y1, c) for e in E) if r is not None and r[1] > r[0]]
    dark = _measure_both(above, below, W.x1, W.x2, m)
    dab = [r for r in (_disk_side_range(d, c, W.y2, True) for d in D) if r is not None]
    dbe = [r for r in (_disk_side_range(d, c, W.y1, False) for d in D) if r is not None]
    ddark = _measure_both(dab, dbe, W.x1, W.x2, m)
    return dark, ddark


def chargeable_length(E: Sequence[Segment], D: Sequence[Disk], W: Rectangle, cut: Tuple[str, float], m: int) -> Tuple[float, float]:
    """(m-dark length, m-disk-dark length) of the cut within W."""
    orientation, c = cut
    E2, D2, W2 = _oriented(E, D, W, orientation)
    return _dark_h(E2, D2, W2, c, m)


def dark_at(E: Sequence[Segment], D: Sequence[Disk], W: Rectangle, p: Point, orientation: str, m: int) -> Tuple[bool, bool]:
    """Whether p is m-dark / m-disk-dark with respect to a cut of the given orientation through p."""
    E2, D2, W2 = _oriented(E, D, W, orientation)
    q = p if orientation == H else _flip_p(p)
    x, c = q.x, q.y

    def hits(rng):
        return rng is not None and rng[0] < x < rng[1] or (rng is not None and rng[0] == rng[1] == x)

    up = sum(1 for e in E2 if _crosses_vertical(e, x, c, W2.y2))
    dn = sum(1 for e in E2 if _crosses_vertical(e, x, W2.y1, c))
    dup = sum(1 for d in D2 if hits(_disk_side_range(d, c, W2.y2, True)))
    ddn = sum(1 for d in D2 if hits(_disk_side_range(d, c, W2.y1, False)))
    return up >= m and dn >= m, dup >= m and ddn >= m


def _crosses_vertical(e: Segment, x: float, ylo: float, yhi: float) -> bool:
    a, b = e.a, e.b
    if (a.x - x) * (b.x - x) > 0 or a.x == b.x:
        return False
    y = a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)
    return ylo < y < yhi


# --------------------------------------------------------------------------- #
#  Candidate grid and favorable cuts                                          #
# --------------------------------------------------------------------------- #
def breakpoints(E: Sequence[Segment], D: Sequence[Disk], axis: int) -> List[float]:
    """Coordinates where the cost and chargeable functions change form."""
    def co(p: Point) -> float:
        return p.x if axis == 0 else p.y

    vals = set()
    for e in E:
        vals.add(co(e.a))
        vals.add(co(e.b))
    for i in range(len(E)):
        for j in range(i + 1, len(E)):
            x = segment_intersection(E[i], E[j])
            if x is not None:
                vals.add(co(x))
    for d in D:
        c = co(d.center)
        vals.update((c - d.radius, c, c + d.radius))
    return sorted(vals)


def candidate_grid(bps: Sequence[float], lo: float, hi: float, per_gap: int) -> List[float]:
    """Samples strictly between consecutive breakpoints (and the window ends)."""
    pts = sorted(set([lo, hi] + [b for b in bps if lo < b < hi]))
    out = []
    for a, b in zip(pts, pts[1:]):
        for k in range(1, per_gap + 1):
            out.append(a + (b - a) * k / (per_gap + 1))
    return out


def _whole_disks(D: Sequence[Disk], W: Rectangle) -> List[int]:
    tol = TOL * _scale(W)
    return [
        i for i, d in enumerate(D)
        if d.center.x - d.radius >= W.x1 - tol and d.center.x + d.radius <= W.x2 + tol
        and d.center.y - d.radius >= W.y1 - tol and d.center.y + d.radius <= W.y2 + tol
    ]


def certify_cut(E_span, E_dark, D, W, orientation: str, c: float, m: int, whole: Sequence[int] = ()) -> CutCertificate:
    E2, D2, W2 = _oriented(E_span, D, W, orientation)
    Ed, _, _ = _oriented(E_dark, [], W, orientation)
    span = _m_span_h(E2, W2, c, m)
    dspan = _m_disk_span_h(D2, W2, c, m)[0]
    dark, ddark = _dark_h(Ed, D2, W2, c, m)
    cost = (span.length if span else 0.0) + (dspan.length if dspan else 0.0)
    progress = any(abs(D2[i].center.y - c) < D2[i].radius for i in whole)
    return CutCertificate(orientation, c, _back(span, orientation), _back(dspan, orientation),
                          dark, ddark, dark + ddark, cost, progress)


def _ordered_candidates(W: Rectangle, gx: Sequence[float], gy: Sequence[float], D, whole) -> List[Tuple[str, float, bool]]:
    mx, my = (W.x1 + W.x2) / 2, (W.y1 + W.y2) / 2
    hs = [c for c in gy if W.y1 < c < W.y2]
    vs = [c for c in gx if W.x1 < c < W.x2]

    def prog_h(c):
        return any(abs(D[i].center.y - c) < D[i].radius for i in whole)

    def prog_v(c):
        return any(abs(D[i].center.x - c) < D[i].radius for i in whole)

    groups = [
        [(H, c, True) for c in sorted(hs, key=lambda c: abs(c - my)) if prog_h(c)],
        [(V, c, True) for c in sorted(vs, key=lambda c: abs(c - mx)) if prog_v(c)],
        [(H, c, False) for c in sorted(hs, key=lambda c: abs(c - my)) if not prog_h(c)],
        [(V, c, False) for c in sorted(vs, key=lambda c: abs(c - mx)) if not prog_v(c)],
    ]
    return [x for g in groups for x in g]


def find_favorable_cut(
    E: Sequence[Segment],
    D: Sequence[Disk],
    W: Rectangle,
    m: int,
    E_dark: Optional[Sequence[Segment]] = None,
    grid: Optional[Tuple[Sequence[float], Sequence[float]]] = None,
) -> CutCertificate:
    """First favorable cut in preference order (progress cuts first, horizontal before vertical)."""
    E = list(E)
    E_dark = E if E_dark is None else list(E_dark)
    whole = _whole_disks(D, W)
    best, tried = -math.inf, 0
    for per_gap in (SAMPLES_PER_GAP, REFINED_SAMPLES):
        if grid is not None and per_gap == SAMPLES_PER_GAP:
            gx, gy = grid
        else:
            gx = candidate_grid(breakpoints(E_dark, D, 0), W.x1, W.x2, per_gap)
            gy = candidate_grid(breakpoints(E_dark, D, 1), W.y1, W.y2, per_gap)
        for orientation, c, _ in _ordered_candidates(W, gx, gy, D, whole):
            cert = certify_cut(E, E_dark, D, W, orientation, c, m, whole)
            tried += 1
            best = max(best, cert.chargeable - cert.cost)
            if cert.favorable:
                return cert
    raise FavorableCutError(W, best, tried)


# --------------------------------------------------------------------------- #
#  Containment of spans in an edge set                                        #
# --------------------------------------------------------------------------- #
def _uncovered(span: Segment, E: Sequence[Segment], tol: float) -> List[Segment]:
    """Parts of an axis-parallel ``span`` not already covered by collinear edges of E."""
    if span.length <= tol:
        p = span.a
        on = any(closest_point_on_segment(p, e).dist(p) <= tol for e in E)
        return [] if on else [span]
    horiz = abs(span.a.y - span.b.y) <= tol
    if horiz:
        c = span.a.y
        lo, hi = sorted((span.a.x, span.b.x))
        cover = [tuple(sorted((e.a.x, e.b.x))) for e in E if abs(e.a.y - c) <= tol and abs(e.b.y - c) <= tol]
    else:
        c = span.a.x
        lo, hi = sorted((span.a.y, span.b.y))
        cover = [tuple(sorted((e.a.y, e.b.y))) for e in E if abs(e.a.x - c) <= tol and abs(e.b.x - c) <= tol]
    cover.sort()
    gaps = []
    cur = lo
    for a, b in cover:
        if b < cur - tol:
            continue
        if a > cur + tol:
            gaps.append((cur, min(a, hi)))
        cur = max(cur, b)
        if cur >= hi - tol:
            break
    if cur < hi - tol:
        gaps.append((cur, hi))
    out = []
    for a, b in gaps:
        if b - a > tol:
            out.append(Segment(Point(a, c), Point(b, c)) if horiz else Segment(Point(c, a), Point(c, b)))
    return out


def span_contained(span: Optional[Segment], E: Sequence[Segment], tol: float = 1e-9) -> bool:
    return span is None or not _uncovered(span, E, tol)


def is_m_good(E: Sequence[Segment], D: Sequence[Disk], W: Rectangle, cut: Tuple[str, float], m: int, tol: float = 1e-9) -> bool:
    return span_contained(m_span(E, W, cut, m), E, tol) and span_contained(m_disk_span(D, W, cut, m), E, tol)


# --------------------------------------------------------------------------- #
#  Transform                                                                  #
# --------------------------------------------------------------------------- #
def _split(W: Rectangle, orientation: str, c: float) -> Tuple[Rectangle, Rectangle]:
    if orientation == H:
        return Rectangle(W.x1, W.x2, W.y1, c), Rectangle(W.x1, W.x2, c, W.y2)
    return Rectangle(W.x1, c, W.y1, W.y2), Rectangle(c, W.x2, W.y1, W.y2)


def _connected(E: Sequence[Segment]) -> bool:
    n = len(E)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if segment_intersection(E[i], E[j]) is not None:
                parent[find(i)] = find(j)
    return len({find(i) for i in range(n)}) <= 1


def _closest_point_of_E_in_disk(p: Point, E: Sequence[Segment], d: Disk) -> Point:
    best, bq = math.inf, None
    for e in E:
        q = closest_point_on_segment(d.center, e)
        if q.dist(d.center) > d.radius + 1e-12:
            continue
        # the chord of e inside d, then the point of it nearest p
        dv = e.b - e.a
        L2 = dv.dot(dv)
        if L2 == 0.0:
            chord = Segment(e.a, e.a)
        else:
            f = e.a - d.center
            b = f.dot(dv)
            cc = f.dot(f) - d.radius * d.radius
            disc = max(0.0, b * b - L2 * cc)
            t0 = max(0.0, (-b - math.sqrt(disc)) / L2)
            t1 = min(1.0, (-b + math.sqrt(disc)) / L2)
            chord = Segment(e.point_at(t0), e.point_at(max(t0, t1)))
        r = closest_point_on_segment(p, chord)
        if p.dist(r) < best:
            best, bq = p.dist(r), r
    if bq is None:
        raise ValueError("disk does not meet the edge set")
    return bq


@dataclass(frozen=True)
class _Norm:
    s: float
    ox: float
    oy: float

    def fwd(self, p: Point) -> Point:
        return Point(MARGIN + (p.x - self.ox) * self.s, MARGIN + (p.y - self.oy) * self.s)

    def inv(self, p: Point) -> Point:
        return Point((p.x - MARGIN) / self.s + self.ox, (p.y - MARGIN) / self.s + self.oy)


def _normalizer(E: Sequence[Segment], D: Sequence[Disk]) -> _Norm:
    xs, ys = [], []
    for e in E:
        xs += [e.a.x, e.b.x]
        ys += [e.a.y, e.b.y]
    for d in D:
        xs += [d.center.x - d.radius, d.center.x + d.radius]
        ys += [d.center.y - d.radius, d.center.y + d.radius]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-12)
    return _Norm((1.0 - 2 * MARGIN) / span, min(xs), min(ys))


def guillotine_transform(E, D: Sequence[Disk], m: int) -> Tuple[EdgeSet, ProofLog]:
    """Add m-spans and m-disk-spans along favorable cuts until the m-guillotine property holds."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    edges = list(E.edges if isinstance(E, EdgeSet) else E)
    D = list(D)
    if not D:
        raise ValueError("no disks")
    if not edges:
        raise ValueError("empty edge set")
    delta = D[0].radius
    if any(abs(d.radius - delta) > 1e-9 * max(1.0, delta) for d in D):
        raise ValueError("disks must share one radius")
    if not _connected(edges):
        raise ValueError("edge set is not connected")

    nz = _normalizer(edges, D)
    En = [Segment(nz.fwd(e.a), nz.fwd(e.b)) for e in edges]
    Dn = [Disk(nz.fwd(d.center), d.radius * nz.s) for d in D]
    for d in Dn:
        if min(closest_point_on_segment(d.center, e).dist(d.center) for e in En) > d.radius * (1 + 1e-9):
            raise ValueError("every disk must meet the edge set")
    B = Rectangle(0.0, 1.0, 0.0, 1.0)
    L = math.fsum(e.length for e in En)
    log = ProofLog(m=m, L=L, delta=Dn[0].radius, n=len(Dn), window=B, scale=nz.s)
    grid = (candidate_grid(breakpoints(En, Dn, 0), 0.0, 1.0, SAMPLES_PER_GAP),
            candidate_grid(breakpoints(En, Dn, 1), 0.0, 1.0, SAMPLES_PER_GAP))
    cur: List[Segment] = list(En)
    stack = [(B, 0)]
    while stack:
        W, depth = stack.pop()
        if not _whole_disks(Dn, W):
            continue
        cert = find_favorable_cut(cur, Dn, W, m, E_dark=En, grid=grid)
        added = 0.0
        for span in (cert.mSpan, cert.mDiskSpan):
            if span is None:
                continue
            for piece in _uncovered(span, cur, 1e-12):
                cur.append(piece)
                added += piece.length
        idx = len(log.cuts)
        if cert.mDiskSpan is not None:
            _, D2, W2 = _oriented([], Dn, W, cert.orientation)
            _, stabbed, ends = _m_disk_span_h(D2, W2, cert.coordinate, m)
            if len(stabbed) <= 2:
                log.skipped.append((idx, stabbed))
            else:
                for p, k in ((cert.mDiskSpan.a, ends[0]), (cert.mDiskSpan.b, ends[1])):
                    q = _closest_point_of_E_in_disk(p, En, Dn[k])
                    log.connections.append(Connection(p, q, k))
        ch = cert.chargeable
        red = cert.cost * cert.darkLength / ch if ch > 0 else 0.0
        blue = cert.cost * cert.diskDarkLength / ch if ch > 0 else 0.0
        log.cuts.append(CutRecord(W, cert, red, blue, added, depth))
        w1, w2 = _split(W, cert.orientation, cert.coordinate)
        stack.append((w2, depth + 1))
        stack.append((w1, depth + 1))

    # later spans can end on an earlier cut line and shift its endpoints;
    # children are logged after parents, so one reverse pass restores m-goodness
    for idx in range(len(log.cuts) - 1, -1, -1):
        rec = log.cuts[idx]
        cut = (rec.certificate.orientation, rec.certificate.coordinate)
        extra = 0.0
        for _ in range(4 * len(cur) + 4):
            sp = [m_span(cur, rec.window, cut, m), m_disk_span(Dn, rec.window, cut, m)]
            pieces = [p for s in sp if s is not None for p in _uncovered(s, cur, 1e-12)]
            if not pieces:
                break
            for p in pieces:
                cur.append(p)
                extra += p.length
        if extra > 0:
            log.extensions.append((idx, extra))

    # report in caller coordinates
    k = 1.0 / nz.s
    out = [Segment(nz.inv(e.a), nz.inv(e.b)) for e in cur]
    out[:len(edges)] = edges
    final = ProofLog(
        m=m, L=L * k, delta=Dn[0].radius * k, n=len(Dn),
        window=Rectangle(nz.inv(Point(0, 0)).x, nz.inv(Point(1, 1)).x, nz.inv(Point(0, 0)).y, nz.inv(Point(1, 1)).y),
        scale=nz.s,
    )
    for rec in log.cuts:
        c = rec.certificate
        o = c.orientation
        coord = (c.coordinate - MARGIN) * k + (nz.oy if o == H else nz.ox)
        cert = CutCertificate(
            o, coord,
            _map_seg(c.mSpan, nz.inv), _map_seg(c.mDiskSpan, nz.inv),
            c.darkLength * k, c.diskDarkLength * k, c.chargeable * k, c.cost * k, c.progress,
        )
        W = rec.window
        lo, hi = nz.inv(Point(W.x1, W.y1)), nz.inv(Point(W.x2, W.y2))
        final.cuts.append(CutRecord(Rectangle(lo.x, hi.x, lo.y, hi.y), cert, rec.red * k, rec.blue * k, rec.added * k, rec.depth))
    final.connections = [Connection(nz.inv(c.start), nz.inv(c.end), c.disk) for c in log.connections]
    final.skipped = list(log.skipped)
    final.extensions = [(i, x * k) for i, x in log.extensions]
    return EdgeSet(tuple(out)), final


def _map_seg(s: Optional[Segment], fn) -> Optional[Segment]:
    return None if s is None else Segment(fn(s.a), fn(s.b))


# --------------------------------------------------------------------------- #
#  Checker                                                                    #
# --------------------------------------------------------------------------- #
def check_m_guillotine(
    E,
    D: Sequence[Disk],
    W: Rectangle,
    m: int,
    extra_cuts: Sequence[Tuple[str, float]] = (),
    per_gap: int = SAMPLES_PER_GAP,
) -> bool:
    """Recursive m-guillotine test; cut candidates are the breakpoint grid plus ``extra_cuts``."""
    edges = list(E.edges if isinstance(E, EdgeSet) else E)
    D = list(D)
    tol = 1e-9 * _scale(W)
    gx = sorted(set(candidate_grid(breakpoints(edges, D, 0), W.x1, W.x2, per_gap)))
    gy = sorted(set(candidate_grid(breakpoints(edges, D, 1), W.y1, W.y2, per_gap)))
    extra_h = [c for o, c in extra_cuts if o == H]
    extra_v = [c for o, c in extra_cuts if o == V]
    memo: Dict[Tuple[float, float, float, float], bool] = {}

    def rec(win: Rectangle) -> bool:
        key = (win.x1, win.x2, win.y1, win.y2)
        if key in memo:
            return memo[key]
        memo[key] = False          # guards against cycles; overwritten below
        if not _whole_disks(D, win):
            memo[key] = True
            return True
        cands = [(H, c) for c in extra_h if win.y1 + tol < c < win.y2 - tol]
        cands += [(V, c) for c in extra_v if win.x1 + tol < c < win.x2 - tol]
        cands += [(H, c) for c in gy if win.y1 < c < win.y2]
        cands += [(V, c) for c in gx if win.x1 < c < win.x2]
        for cut in cands:
            if not is_m_good(edges, D, win, cut, m, tol):
                continue
            a, b = _split(win, *cut)
            if rec(a) and rec(b):
                memo[key] = True
                return True
        return False

    return rec(W)


def check_transform(out: EdgeSet, D: Sequence[Disk], log: ProofLog) -> bool:
    """check_m_guillotine on the transform's output, seeded with the logged cuts."""
    extra = [(c.certificate.orientation, c.certificate.coordinate) for c in log.cuts]
    return check_m_guillotine(out, D, log.window, log.m, extra)

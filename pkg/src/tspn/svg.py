"""SVG rendering of instances and tours.

Arcs are emitted as native SVG elliptical-arc commands (never polylines).
Drawing happens inside a group that flips the y axis, so path data uses
the same coordinates as the instance.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union
from xml.sax.saxutils import escape

from .geom import Arc, Disk, Line, Point, Polygon, Rectangle, Region, Segment, Tour, bounding_box

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
REGION_FILL = "#cfd8e3"
MARGIN = 0.10


def _f(x: float) -> str:
    return f"{x:.6g}"


def _arc_cmds(a: Arc) -> List[str]:
    # full circles are drawn as two half arcs since a single SVG arc cannot close on itself
    pieces = [a] if abs(a.sweep) < math.pi * 1.999 else list(a.split(a.start_angle + a.sweep / 2))
    out = []
    for p in pieces:
        large = 1 if abs(p.sweep) > math.pi else 0
        sweep = 1 if p.sweep > 0 else 0
        e = p.end
        out.append(f"A {_f(p.radius)} {_f(p.radius)} 0 {large} {sweep} {_f(e.x)} {_f(e.y)}")
    return out


def tour_path(t: Tour) -> str:
    if not t.elements:
        return ""
    cmds = [f"M {_f(t.elements[0].start.x)} {_f(t.elements[0].start.y)}"]
    for e in t.elements:
        if isinstance(e, Segment):
            cmds.append(f"L {_f(e.b.x)} {_f(e.b.y)}")
        else:
            cmds.extend(_arc_cmds(e))
    return " ".join(cmds) + " Z"


def _view_box(regions: Sequence[Region], tours: Sequence[Tour]) -> Rectangle:
    pts: List[Point] = []
    bounded = [r for r in regions if not isinstance(r, Line)]
    if bounded:
        b = bounding_box(bounded)
        pts += [Point(b.x1, b.y1), Point(b.x2, b.y2)]
    lines = [r for r in regions if isinstance(r, Line)]
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            q = lines[i].intersection(lines[j])
            if q is not None:
                pts.append(q)
    for ln in lines:
        pts.append(ln.foot(Point(0.0, 0.0)))
    for t in tours:
        pts += list(t.vertices)
        for e in t.elements:
            if isinstance(e, Arc):
                pts += [Point(e.center.x - e.radius, e.center.y - e.radius), Point(e.center.x + e.radius, e.center.y + e.radius)]
        if t.anchor is not None:
            pts.append(t.anchor)
    if not pts:
        pts = [Point(0.0, 0.0), Point(1.0, 1.0)]
    x1, x2 = min(p.x for p in pts), max(p.x for p in pts)
    y1, y2 = min(p.y for p in pts), max(p.y for p in pts)
    pad = MARGIN * max(x2 - x1, y2 - y1, 1.0)
    return Rectangle(x1 - pad, x2 + pad, y1 - pad, y2 + pad)


def _region_svg(r: Region, box: Rectangle, stroke: float) -> str:
    if isinstance(r, Point):
        return f'<circle cx="{_f(r.x)}" cy="{_f(r.y)}" r="{_f(2 * stroke)}" fill="#333"/>'
    if isinstance(r, Segment):
        return (f'<line x1="{_f(r.a.x)}" y1="{_f(r.a.y)}" x2="{_f(r.b.x)}" y2="{_f(r.b.y)}" '
                f'stroke="#555" stroke-width="{_f(1.5 * stroke)}"/>')
    if isinstance(r, Disk):
        return (f'<circle cx="{_f(r.center.x)}" cy="{_f(r.center.y)}" r="{_f(r.radius)}" '
                f'fill="{REGION_FILL}" stroke="#555" stroke-width="{_f(stroke)}"/>')
    if isinstance(r, Polygon):
        pts = " ".join(f"{_f(v.x)},{_f(v.y)}" for v in r.vertices)
        return f'<polygon points="{pts}" fill="{REGION_FILL}" stroke="#555" stroke-width="{_f(stroke)}"/>'
    # a line is clipped to the view box diagonal's reach
    reach = math.hypot(box.w, box.h)
    c = r.foot(Point((box.x1 + box.x2) / 2, (box.y1 + box.y2) / 2))
    d = r.direction
    a, b = c + d * reach, c - d * reach
    return (f'<line x1="{_f(a.x)}" y1="{_f(a.y)}" x2="{_f(b.x)}" y2="{_f(b.y)}" '
            f'stroke="#777" stroke-width="{_f(stroke)}" stroke-dasharray="{_f(4 * stroke)}"/>')


def render_svg(regions: Sequence[Region], tours: Sequence[Union[Tour, Tuple[Tour, str]]] = (),
               width: int = 640, title: Optional[str] = None) -> str:
    labelled = [(t, f"tour {i}") if isinstance(t, Tour) else t for i, t in enumerate(tours)]
    box = _view_box(regions, [t for t, _ in labelled])
    stroke = max(box.w, box.h) / 400.0
    font = max(box.w, box.h) / 32.0
    legend = 1.6 * font * len(labelled)
    height = max(1, int(round(width * (box.h + legend) / box.w)))
    # viewBox is in instance units; the y axis is flipped by the inner group
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="{_f(box.x1)} {_f(-box.y2)} {_f(box.w)} {_f(box.h + legend)}">',
        f'<rect x="{_f(box.x1)}" y="{_f(-box.y2)}" width="{_f(box.w)}" height="{_f(box.h + legend)}" fill="white"/>',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append('<g transform="scale(1,-1)">')
    for r in regions:
        out.append(_region_svg(r, box, stroke))
    for i, (t, _) in enumerate(labelled):
        col = PALETTE[i % len(PALETTE)]
        if t.elements:
            out.append(f'<path d="{tour_path(t)}" fill="none" stroke="{col}" stroke-width="{_f(2 * stroke)}"/>')
        elif t.anchor is not None:
            out.append(f'<circle cx="{_f(t.anchor.x)}" cy="{_f(t.anchor.y)}" r="{_f(4 * stroke)}" fill="{col}"/>')
    out.append("</g>")
    for i, (t, label) in enumerate(labelled):
        y = -box.y1 + 1.6 * font * (i + 0.8)
        col = PALETTE[i % len(PALETTE)]
        x = box.x1 + font * 0.5
        out.append(f'<rect x="{_f(x)}" y="{_f(y - 0.4 * font)}" width="{_f(font)}" height="{_f(0.3 * font)}" fill="{col}"/>')
        out.append(f'<text x="{_f(x + 1.5 * font)}" y="{_f(y)}" font-family="sans-serif" font-size="{_f(font)}">'
                   f'{escape(label)} (length {t.length:.4f})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path: Union[str, Path], regions: Sequence[Region], tours: Iterable = (), **kw) -> None:
    Path(path).write_text(render_svg(regions, list(tours), **kw), encoding="utf-8")

"""JSON instance and tour files.

Floats are written with ``repr`` so every value survives a round trip
bit-for-bit.  Regions are normalized on load (lines to unit normals,
polygons to counterclockwise order), and serializing the loaded instance
reproduces that canonical form exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple, Union

from .disks import disks_disjoint
from .geom import Arc, Disk, Line, Point, Polygon, Region, Segment, Tour

FAMILIES = ("disjoint-unit-disks", "unit-disks", "same-diameter", "lines", "mixed")
UNIT_TOL = 1e-9


class InstanceError(ValueError):
    """Malformed or inconsistent instance/tour data; the message names the field."""


@dataclass(frozen=True)
class Instance:
    family: str
    regions: Tuple[Region, ...]
    name: str = "instance"
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "regions", tuple(self.regions))

    @property
    def n(self) -> int:
        return len(self.regions)


# --------------------------------------------------------------------------- #
#  Regions                                                                    #
# --------------------------------------------------------------------------- #
def region_to_dict(r: Region) -> dict:
    if isinstance(r, Point):
        return {"type": "point", "x": r.x, "y": r.y}
    if isinstance(r, Segment):
        return {"type": "segment", "ax": r.a.x, "ay": r.a.y, "bx": r.b.x, "by": r.b.y}
    if isinstance(r, Disk):
        return {"type": "disk", "cx": r.center.x, "cy": r.center.y, "r": r.radius}
    if isinstance(r, Polygon):
        return {"type": "polygon", "vertices": [[v.x, v.y] for v in r.vertices]}
    if isinstance(r, Line):
        return {"type": "line", "a": r.a, "b": r.b, "c": r.c}
    raise TypeError(f"unknown region {r!r}")


def _num(d: dict, key: str, where: str) -> float:
    if key not in d:
        raise InstanceError(f"{where}.{key}: missing")
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InstanceError(f"{where}.{key}: expected a number, got {v!r}")
    v = float(v)
    if not math.isfinite(v):
        raise InstanceError(f"{where}.{key}: not finite")
    return v


def region_from_dict(d: Any, where: str = "region") -> Region:
    if not isinstance(d, dict):
        raise InstanceError(f"{where}: expected an object")
    kind = d.get("type")
    try:
        if kind == "point":
            return Point(_num(d, "x", where), _num(d, "y", where))
        if kind == "segment":
            return Segment(Point(_num(d, "ax", where), _num(d, "ay", where)),
                           Point(_num(d, "bx", where), _num(d, "by", where)))
        if kind == "disk":
            return Disk(Point(_num(d, "cx", where), _num(d, "cy", where)), _num(d, "r", where))
        if kind == "polygon":
            vs = d.get("vertices")
            if not isinstance(vs, list):
                raise InstanceError(f"{where}.vertices: expected a list")
            pts = []
            for k, v in enumerate(vs):
                if not (isinstance(v, list) and len(v) == 2):
                    raise InstanceError(f"{where}.vertices[{k}]: expected [x, y]")
                pts.append(Point(_num({"x": v[0]}, "x", f"{where}.vertices[{k}]"),
                                 _num({"y": v[1]}, "y", f"{where}.vertices[{k}]")))
            if len(pts) < 3:
                raise InstanceError(f"{where}.vertices: a polygon needs at least 3 vertices, got {len(pts)}")
            return Polygon(tuple(pts))
        if kind == "line":
            return Line(_num(d, "a", where), _num(d, "b", where), _num(d, "c", where))
    except InstanceError:
        raise
    except ValueError as e:
        raise InstanceError(f"{where}: {e}") from e
    raise InstanceError(f"{where}.type: unknown region type {kind!r}")


# --------------------------------------------------------------------------- #
#  Validation                                                                 #
# --------------------------------------------------------------------------- #
def validate_family(family: str, regions: Sequence[Region]) -> None:
    if family not in FAMILIES:
        raise InstanceError(f"family: unknown tag {family!r}")
    if family in ("disjoint-unit-disks", "unit-disks"):
        for i, r in enumerate(regions):
            if not isinstance(r, Disk) or abs(r.radius - 1.0) > UNIT_TOL:
                raise InstanceError(f"regions[{i}]: family {family} needs unit disks")
        if family == "disjoint-unit-disks":
            for i in range(len(regions)):
                for j in range(i + 1, len(regions)):
                    if not disks_disjoint(regions[i], regions[j]):
                        raise InstanceError(f"regions[{i}], regions[{j}]: disks overlap")
    elif family == "lines":
        for i, r in enumerate(regions):
            if not isinstance(r, Line):
                raise InstanceError(f"regions[{i}]: family lines needs lines")
    elif family == "same-diameter":
        from .same_diameter import common_diameter

        try:
            common_diameter(regions)
        except ValueError as e:
            raise InstanceError(f"regions: {e}") from e


def instance_to_dict(inst: Instance) -> dict:
    return {
        "name": inst.name,
        "family": inst.family,
        "seed": inst.seed,
        "regions": [region_to_dict(r) for r in inst.regions],
    }


def instance_from_dict(d: Any) -> Instance:
    if not isinstance(d, dict):
        raise InstanceError("top level: expected an object")
    family = d.get("family", "mixed")
    if not isinstance(family, str):
        raise InstanceError("family: expected a string")
    name = d.get("name", "instance")
    if not isinstance(name, str):
        raise InstanceError("name: expected a string")
    seed = d.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise InstanceError("seed: expected an integer or null")
    regs = d.get("regions")
    if not isinstance(regs, list):
        raise InstanceError("regions: expected a list")
    regions = tuple(region_from_dict(r, f"regions[{i}]") for i, r in enumerate(regs))
    validate_family(family, regions)
    return Instance(family, regions, name, seed)


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=1) + "\n"


def loads_instance(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceError(f"line {e.lineno}: {e.msg}") from e
    return instance_from_dict(data)


def parse_instance(path: Union[str, Path]) -> Instance:
    return loads_instance(Path(path).read_text(encoding="utf-8"))


def serialize_instance(inst: Instance, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_instance(inst), encoding="utf-8")


# --------------------------------------------------------------------------- #
#  Tours                                                                      #
# --------------------------------------------------------------------------- #
def tour_to_dict(t: Tour) -> dict:
    els = []
    for e in t.elements:
        if isinstance(e, Segment):
            els.append({"seg": {"ax": e.a.x, "ay": e.a.y, "bx": e.b.x, "by": e.b.y}})
        else:
            els.append({"arc": {"cx": e.center.x, "cy": e.center.y, "r": e.radius,
                                "start": e.start_angle, "sweep": e.sweep}})
    anchor = None if t.anchor is None else [t.anchor.x, t.anchor.y]
    return {"elements": els, "anchor": anchor, "length": t.length}


def tour_from_dict(d: Any) -> Tour:
    if not isinstance(d, dict) or not isinstance(d.get("elements"), list):
        raise InstanceError("tour: expected an object with an elements list")
    els: List = []
    for k, e in enumerate(d["elements"]):
        where = f"elements[{k}]"
        if isinstance(e, dict) and "seg" in e:
            s = e["seg"]
            w = where + ".seg"
            els.append(Segment(Point(_num(s, "ax", w), _num(s, "ay", w)), Point(_num(s, "bx", w), _num(s, "by", w))))
        elif isinstance(e, dict) and "arc" in e:
            a = e["arc"]
            w = where + ".arc"
            els.append(Arc(Point(_num(a, "cx", w), _num(a, "cy", w)), _num(a, "r", w),
                           _num(a, "start", w), _num(a, "sweep", w)))
        else:
            raise InstanceError(f"{where}: expected a seg or arc record")
    anchor = d.get("anchor")
    ap = None
    if anchor is not None:
        if not (isinstance(anchor, list) and len(anchor) == 2):
            raise InstanceError("anchor: expected [x, y] or null")
        ap = Point(float(anchor[0]), float(anchor[1]))
    try:
        return Tour(tuple(els), ap)
    except ValueError as e:
        raise InstanceError(f"tour: {e}") from e


def dumps_tour(t: Tour) -> str:
    return json.dumps(tour_to_dict(t), indent=1) + "\n"


def loads_tour(text: str) -> Tour:
    try:
        return tour_from_dict(json.loads(text))
    except json.JSONDecodeError as e:
        raise InstanceError(f"line {e.lineno}: {e.msg}") from e

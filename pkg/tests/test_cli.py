from __future__ import annotations

import csv
import dataclasses
import io as _stdio
import json
import math
import xml.etree.ElementTree as ET

import pytest

from tspn import bench as B
from tspn.cli import main
from tspn.generate import FAMILY_TAG, generate
from tspn.disks import disks_disjoint
from tspn.geom import Arc, Disk, Line, Point, Polygon, Segment, Tour
from tspn.io import (
    Instance,
    InstanceError,
    dumps_instance,
    dumps_tour,
    loads_instance,
    loads_tour,
    region_from_dict,
)
from tspn.svg import render_svg, tour_path


# --------------------------------------------------------------------------- #
#  Records                                                                    #
# --------------------------------------------------------------------------- #
def test_region_records():
    assert region_from_dict({"type": "disk", "cx": 1, "cy": 2, "r": 1}) == Disk(Point(1.0, 2.0), 1.0)
    ln = region_from_dict({"type": "line", "a": 0, "b": -2, "c": 4})
    assert ln.distance(Point(0, 2)) == pytest.approx(0.0)
    assert math.hypot(ln.a, ln.b) == pytest.approx(1.0)
    with pytest.raises(InstanceError, match=r"regions\[3\]\.vertices"):
        region_from_dict({"type": "polygon", "vertices": [[0, 0], [1, 0]]}, "regions[3]")
    with pytest.raises(InstanceError, match=r"region\.r: missing"):
        region_from_dict({"type": "disk", "cx": 0, "cy": 0})
    with pytest.raises(InstanceError, match="unknown region type"):
        region_from_dict({"type": "blob"})


def test_instance_errors():
    text = json.dumps({"family": "disjoint-unit-disks", "regions": [
        {"type": "disk", "cx": 0, "cy": 0, "r": 1}, {"type": "disk", "cx": 1, "cy": 0, "r": 1}]})
    with pytest.raises(InstanceError, match="overlap"):
        loads_instance(text)
    with pytest.raises(InstanceError, match="needs lines"):
        loads_instance(json.dumps({"family": "lines", "regions": [{"type": "point", "x": 0, "y": 0}]}))
    with pytest.raises(InstanceError, match="line 1"):
        loads_instance("{not json")
    with pytest.raises(InstanceError, match="unknown tag"):
        loads_instance(json.dumps({"family": "stars", "regions": []}))


def test_instance_round_trip_bit_exact():
    regions = (Point(0.1, 1 / 3), Segment(Point(math.pi, 0), Point(1e-300, -2.5)), Disk(Point(7, 7), 0.7),
               Polygon((Point(0, 0), Point(1, 0), Point(0.3, 0.9))), Line(0.6, 0.8, -1 / 7))
    inst = Instance("mixed", regions, "hand", 3)
    back = loads_instance(dumps_instance(inst))
    assert back == inst
    assert dumps_instance(back) == dumps_instance(inst)


def test_tour_round_trip():
    t = Tour.polygon([Point(0, 0), Point(1, 0), Point(0, 1)])
    assert loads_tour(dumps_tour(t)).length == pytest.approx(t.length, abs=0)
    c = Tour.circle(Point(1, 2), 0.5)
    back = loads_tour(dumps_tour(c))
    assert all(isinstance(e, Arc) for e in back.elements)
    assert back.length == c.length


# --------------------------------------------------------------------------- #
#  Generators                                                                 #
# --------------------------------------------------------------------------- #
@pytest.mark.parametrize("family", sorted(FAMILY_TAG))
def test_generate_deterministic_and_valid(family):
    a = generate(family, 5, seed=11)
    b = generate(family, 5, seed=11)
    assert dumps_instance(a) == dumps_instance(b)
    assert loads_instance(dumps_instance(a)) == a
    assert a.family == FAMILY_TAG[family] and a.n == 5


def test_generate_examples():
    inst = generate("disjoint-unit-disks", 5, {"box": 20.0}, seed=7)
    ds = inst.regions
    assert all(d.radius == 1.0 for d in ds)
    assert all(disks_disjoint(ds[i], ds[j]) for i in range(5) for j in range(i + 1, 5))
    assert all(1.0 <= c <= 19.0 for d in ds for c in (d.center.x, d.center.y))
    segs = generate("parallel-segments", 4, seed=1).regions
    assert all(s.a.y == s.b.y and s.length == pytest.approx(1.0) for s in segs)
    lines = generate("lines", 3, seed=2).regions
    assert all(isinstance(ln, Line) for ln in lines)
    with pytest.raises(ValueError, match="infeasible packing"):
        generate("disjoint-unit-disks", 50, {"box": 4.0}, seed=0)


# --------------------------------------------------------------------------- #
#  SVG                                                                        #
# --------------------------------------------------------------------------- #
def test_svg_outputs_parse():
    regs = [Disk(Point(0, 0), 1.0), Line(0, 1, -2), Segment(Point(3, 0), Point(4, 1))]
    doc = render_svg(regs, [], title="a < b")
    ET.fromstring(doc)
    assert "a &lt; b" in doc
    circle = Tour.circle(Point(0, 0), 1.0)
    path = tour_path(circle)
    assert path.count("A") == 2
    mixed = Tour([Segment(Point(1, 0), Point(3, 0)), Arc(Point(3, 1), 1.0, -math.pi / 2, math.pi),
                  Segment(Point(3, 2), Point(1, 2)), Arc(Point(1, 1), 1.0, math.pi / 2, math.pi)])
    doc = render_svg(regs, [(circle, "c"), (mixed, "m")])
    root = ET.fromstring(doc)
    paths = [el for el in root.iter() if el.tag.endswith("path")]
    assert len(paths) >= 2
    assert tour_path(mixed).count("M") == 1


# --------------------------------------------------------------------------- #
#  Bench                                                                      #
# --------------------------------------------------------------------------- #
def test_bench_csv_header_and_determinism():
    a = B.reports_csv(B.bench("unit-disks", 4, None, 3, seed=5))
    b = B.reports_csv(B.bench("unit-disks", 4, None, 3, seed=5))
    assert a == b
    rows = list(csv.reader(_stdio.StringIO(a)))
    assert tuple(rows[0]) == B.CSV_COLUMNS and len(rows) == 4
    assert all(r[-1] in ("true", "false", "NA") for r in rows[1:])


def test_bench_parallel_matches_serial():
    serial = B.reports_csv(B.bench("lines", 3, None, 4, seed=2))
    assert B.reports_csv(B.bench("lines", 3, None, 4, seed=2, jobs=2)) == serial


def test_inapplicable_pairs():
    with pytest.raises(B.NotApplicable):
        B.resolve_algorithm("lines", "unit-disks")
    with pytest.raises(B.NotApplicable):
        B.resolve_algorithm("center", "unit-disks")
    with pytest.raises(B.NotApplicable):
        B.resolve_algorithm("nope", "lines")


def test_optimum_closed_forms():
    assert B.optimum([Line(0, 1, 0), Line(0, 1, -2)]) == pytest.approx(4.0)
    assert B.optimum([Line(0, 1, 0), Line(1, 0, 0)]) == 0.0
    assert B.optimum([Disk(Point(0, 0), 1.0), Disk(Point(10, 0), 1.0)]) == pytest.approx(16.0)
    assert B.optimum([Point(i, 0) for i in range(8)]) is None
    assert B.ratio(0.0, 0.0) == 1.0


# --------------------------------------------------------------------------- #
#  Command line                                                               #
# --------------------------------------------------------------------------- #
def test_cli_gen_solve_render(tmp_path, capsys):
    inst = tmp_path / "i.json"
    tour = tmp_path / "t.json"
    assert main(["gen", "--family", "unit-disks", "--n", "4", "--seed", "3", "--output", str(inst)]) == 0
    assert main(["solve", "--input", str(inst), "--output", str(tour), "--svg", str(tmp_path / "s.svg")]) == 0
    summary = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert summary["algorithm"] == "overlapping_disks_tour"
    assert loads_tour(tour.read_text()).length == pytest.approx(summary["length"], abs=0)
    assert main(["render", "--input", str(inst), "--tour", str(tour), "--svg", str(tmp_path / "r.svg")]) == 0
    ET.parse(tmp_path / "r.svg")


def test_cli_oracle_and_guillotine(tmp_path, capsys):
    inst = tmp_path / "i.json"
    assert main(["gen", "--family", "disjoint-unit-disks", "--n", "4", "--seed", "1", "--output", str(inst)]) == 0
    assert main(["oracle", "--input", str(inst)]) == 0
    assert main(["guillotine", "--input", str(inst), "--m", "2"]) == 0
    capsys.readouterr()


def test_cli_exit_codes(tmp_path, monkeypatch, capsys):
    assert main([]) == 2
    assert main(["solve", "--input", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"family": "lines", "regions": [{"type": "disk", "cx": 0, "cy": 0, "r": 1}]}')
    assert main(["solve", "--input", str(bad)]) == 2
    assert main(["bench", "--family", "lines", "--n", "3", "--count", "2", "--algo", "center"]) == 2
    assert main(["bench", "--family", "lines", "--n", "3", "--count", "2"]) == 0
    # a forced bound violation must surface as exit code 1
    tight = dataclasses.replace(B.ALGORITHMS["lines_tour"], bound=lambda regions, opt: 0.5)
    monkeypatch.setitem(B.ALGORITHMS, "lines_tour", tight)
    assert main(["bench", "--family", "lines", "--n", "3", "--count", "2"]) == 1
    capsys.readouterr()


def test_cli_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("TSPN_SEED", "17")
    assert main(["gen", "--family", "lines", "--n", "3"]) == 0
    from_env = capsys.readouterr().out
    assert main(["gen", "--family", "lines", "--n", "3", "--seed", "17"]) == 0
    assert capsys.readouterr().out == from_env
    monkeypatch.setenv("TSPN_SEED", "x")
    assert main(["gen", "--family", "lines", "--n", "3"]) == 2

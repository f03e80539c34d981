"""Command line entry point.

Exit status: 0 on success with every asserted bound holding, 1 on a bound
violation, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import bench as _bench
from .generate import FAMILY_TAG, generate
from .geom import Disk, Segment, Tour
from .io import InstanceError, dumps_instance, dumps_tour, loads_tour, parse_instance, tour_to_dict
from .svg import write_svg

log = logging.getLogger("tspn")

EXIT_OK, EXIT_BOUND, EXIT_USAGE = 0, 1, 2


def _default_seed() -> int:
    raw = os.environ.get("TSPN_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InstanceError(f"TSPN_SEED: expected an integer, got {raw!r}")


def _emit(text: str, output: Optional[str]) -> None:
    if output and output != "-":
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _seed(args) -> int:
    return args.seed if args.seed is not None else _default_seed()


# --------------------------------------------------------------------------- #
#  Subcommands                                                                #
# --------------------------------------------------------------------------- #
def cmd_gen(args) -> int:
    params = {"box": args.box} if args.box is not None else {}
    inst = generate(args.family, args.n, params, _seed(args))
    _emit(dumps_instance(inst), args.output)
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = parse_instance(args.input)
    name, tour = _bench.solve(inst, args.algo, _seed(args))
    _emit(dumps_tour(tour), args.output)
    if args.svg:
        write_svg(args.svg, inst.regions, [(tour, name)], title=inst.name)
    print(json.dumps({"instance": inst.name, "algorithm": name, "length": tour.length}), file=sys.stderr)
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .oracle import discretized_opt, lower_bound

    inst = parse_instance(args.input)
    res = discretized_opt(inst.regions)
    out = {
        "instance": inst.name,
        "length": res.length,
        "kind": res.kind,
        "discretization": list(res.discretization),
        "history": list(res.history),
        "lower_bound": lower_bound(inst.regions),
        "tour": tour_to_dict(res.tour) if res.tour is not None else None,
    }
    if res.clip_box is not None:
        b = res.clip_box
        out["clip_box"] = [b.x1, b.x2, b.y1, b.y2]
    _emit(json.dumps(out, indent=1) + "\n", args.output)
    if args.svg and res.tour is not None:
        write_svg(args.svg, inst.regions, [(res.tour, "oracle")], title=inst.name)
    return EXIT_OK


def cmd_bench(args) -> int:
    params = {"box": args.box} if args.box is not None else {}
    reports = _bench.bench(args.family, args.n, args.algo, args.count, _seed(args), params,
                           use_oracle=not args.no_oracle, jobs=args.jobs)
    _emit(_bench.reports_csv(reports), args.output)
    bad = [r.instanceName for r in reports if r.withinBound is False]
    if bad:
        log.error("bound violated on %s", ", ".join(bad))
        return EXIT_BOUND
    return EXIT_OK


def cmd_guillotine(args) -> int:
    from .disks import DiskInstance, disjoint_center_tour
    from .guillotine import check_transform, guillotine_transform

    inst = parse_instance(args.input)
    if not inst.regions or not all(isinstance(r, Disk) for r in inst.regions):
        raise InstanceError("regions: the guillotine transform needs a disk instance")
    if args.tour:
        tour = loads_tour(Path(args.tour).read_text(encoding="utf-8"))
    else:
        tour = disjoint_center_tour(DiskInstance.from_disks(inst.regions), _seed(args))
    edges = [e for e in tour.elements if isinstance(e, Segment)]
    if len(edges) != len(tour.elements):
        raise InstanceError("tour: the guillotine transform needs a polygonal tour")
    out, plog = guillotine_transform(edges, inst.regions, args.m)
    ok_check = check_transform(out, inst.regions, plog)
    ok_bound = plog.added_length <= plog.bound + _bench.BOUND_TOL
    ok_red = plog.red_total <= plog.red_ceiling + _bench.BOUND_TOL
    ok_blue = plog.blue_total <= plog.blue_ceiling + _bench.BOUND_TOL
    data = plog.to_dict()
    data.update({"instance": inst.name, "m_guillotine": ok_check, "within_bound": ok_bound and ok_red and ok_blue,
                 "edges": [[e.a.x, e.a.y, e.b.x, e.b.y] for e in out.edges]})
    _emit(json.dumps(data, indent=1) + "\n", args.output)
    if args.svg:
        added = out.edges[len(edges):]
        extra = [Tour((s, s.reversed())) for s in added if s.length > 0]
        write_svg(args.svg, inst.regions, [(tour, "input tour")] + [(t, f"added {i}") for i, t in enumerate(extra)],
                  title=inst.name)
    if not (ok_check and ok_bound and ok_red and ok_blue):
        log.error("guillotine check=%s bound=%s red=%s blue=%s", ok_check, ok_bound, ok_red, ok_blue)
        return EXIT_BOUND
    return EXIT_OK


def cmd_render(args) -> int:
    inst = parse_instance(args.input)
    tours = []
    for i, p in enumerate(args.tour or []):
        tours.append((loads_tour(Path(p).read_text(encoding="utf-8")), Path(p).stem))
    write_svg(args.svg, inst.regions, tours, title=inst.name)
    return EXIT_OK


# --------------------------------------------------------------------------- #
#  Parser                                                                     #
# --------------------------------------------------------------------------- #
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tspn", description="Approximation algorithms for TSP with neighborhoods.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded instance")
    g.add_argument("--family", required=True, choices=sorted(FAMILY_TAG))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--box", type=float)
    g.add_argument("--seed", type=int)
    g.add_argument("--output")
    g.set_defaults(fn=cmd_gen)

    s = sub.add_parser("solve", help="run an approximation algorithm")
    s.add_argument("--input", required=True)
    s.add_argument("--algo")
    s.add_argument("--seed", type=int)
    s.add_argument("--output")
    s.add_argument("--svg")
    s.set_defaults(fn=cmd_solve)

    o = sub.add_parser("oracle", help="discretized optimum for n <= 7")
    o.add_argument("--input", required=True)
    o.add_argument("--output")
    o.add_argument("--svg")
    o.set_defaults(fn=cmd_oracle)

    b = sub.add_parser("bench", help="ratio benchmark, CSV output")
    b.add_argument("--family", required=True, choices=sorted(FAMILY_TAG))
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--count", type=int, default=10)
    b.add_argument("--algo")
    b.add_argument("--seed", type=int)
    b.add_argument("--box", type=float)
    b.add_argument("--no-oracle", action="store_true")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--output")
    b.set_defaults(fn=cmd_bench)

    q = sub.add_parser("guillotine", help="m-guillotine transform of a disk tour")
    q.add_argument("--input", required=True)
    q.add_argument("--m", type=int, default=1)
    q.add_argument("--tour", help="tour JSON (default: center tour)")
    q.add_argument("--seed", type=int)
    q.add_argument("--output")
    q.add_argument("--svg")
    q.set_defaults(fn=cmd_guillotine)

    r = sub.add_parser("render", help="draw an instance and tours as SVG")
    r.add_argument("--input", required=True)
    r.add_argument("--tour", action="append")
    r.add_argument("--svg", required=True)
    r.set_defaults(fn=cmd_render)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.fn(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

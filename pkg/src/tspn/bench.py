"""Solver registry, ratio reports and the CSV benchmark harness."""

from __future__ import annotations

import csv
import io as _io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .disks import DiskInstance, disjoint_center_tour, overlapping_disks_tour
from .generate import FAMILY_TAG, generate
from .geom import Disk, Line, Region, Tour, tour_visits
from .io import Instance
from .lines import dedupe_lines, lines_tour, three_line_opt
from .oracle import ORACLE_LIMIT, discretized_opt, lower_bound, two_disk_opt
from .same_diameter import GENERIC_RATIO, PARALLEL_SEGMENT_RATIO, parallel_segments, tspn_same_diameter

CSV_COLUMNS = ("instance", "algorithm", "tour_length", "lower_bound", "oracle_opt", "ratio", "paper_bound", "within_bound")
BOUND_TOL = 1e-6
VISIT_TOL = 1e-7


class NotApplicable(ValueError):
    pass


class VisitFailure(AssertionError):
    """A solver returned a tour that misses a region (a bug, never a bound issue)."""


@dataclass(frozen=True)
class RatioReport:
    instanceName: str
    algorithm: str
    tourLength: float
    lowerBound: float
    oracleOpt: Optional[float]
    empiricalRatio: float
    paperBound: float
    withinBound: Optional[bool]   # None when no oracle value was available

    def row(self) -> List[str]:
        return [
            self.instanceName,
            self.algorithm,
            repr(self.tourLength),
            repr(self.lowerBound),
            "" if self.oracleOpt is None else repr(self.oracleOpt),
            repr(self.empiricalRatio),
            repr(self.paperBound),
            "NA" if self.withinBound is None else str(self.withinBound).lower(),
        ]


# --------------------------------------------------------------------------- #
#  Algorithms                                                                 #
# --------------------------------------------------------------------------- #
def _center(regions, seed):
    return disjoint_center_tour(DiskInstance.from_disks(regions), seed)


def _detour(regions, seed):
    return overlapping_disks_tour(DiskInstance.from_disks(regions), seed).final_tour


def _delta(regions) -> float:
    return regions[0].radius if regions and isinstance(regions[0], Disk) else 1.0


def _center_bound(regions, opt):
    # (1 + 8/pi) OPT + 8 delta, divided through by OPT
    if not opt:
        return math.inf
    return 1.0 + 8.0 / math.pi + 8.0 * _delta(regions) / opt


def _detour_bound(regions, opt):
    if not opt:
        return math.inf
    return math.pi + 8.0 + 10.0 * math.pi * _delta(regions) / opt


def _same_diameter_bound(regions, opt):
    return PARALLEL_SEGMENT_RATIO if parallel_segments(regions) is not None else GENERIC_RATIO


def _lines_bound(regions, opt):
    return math.pi / 2


@dataclass(frozen=True)
class Algorithm:
    name: str
    solve: Callable[[Sequence[Region], int], Tour]
    families: Tuple[str, ...]
    bound: Callable[[Sequence[Region], Optional[float]], float]


ALGORITHMS: Dict[str, Algorithm] = {
    a.name: a
    for a in (
        Algorithm("disjoint_center_tour", _center, ("disjoint-unit-disks",), _center_bound),
        Algorithm("overlapping_disks_tour", _detour, ("disjoint-unit-disks", "unit-disks"), _detour_bound),
        Algorithm("tspn_same_diameter", tspn_same_diameter,
                  ("same-diameter", "disjoint-unit-disks", "unit-disks"), _same_diameter_bound),
        Algorithm("lines_tour", lambda regions, seed: lines_tour(regions, seed), ("lines",), _lines_bound),
    )
}
ALIASES = {"center": "disjoint_center_tour", "detour": "overlapping_disks_tour",
           "same-diameter": "tspn_same_diameter", "lines": "lines_tour"}
DEFAULT_ALGORITHM = {"disjoint-unit-disks": "disjoint_center_tour", "unit-disks": "overlapping_disks_tour",
                     "same-diameter": "tspn_same_diameter", "lines": "lines_tour"}


def resolve_algorithm(name: Optional[str], family: str) -> Algorithm:
    if name is None:
        if family not in DEFAULT_ALGORITHM:
            raise NotApplicable(f"no default algorithm for family {family!r}")
        name = DEFAULT_ALGORITHM[family]
    name = ALIASES.get(name, name)
    if name not in ALGORITHMS:
        raise NotApplicable(f"unknown algorithm {name!r}; choose from {sorted(ALGORITHMS)}")
    algo = ALGORITHMS[name]
    if family not in algo.families:
        raise NotApplicable(f"algorithm {name} does not apply to family {family}")
    return algo


def solve(inst: Instance, algorithm: Optional[str] = None, seed: int = 0) -> Tuple[str, Tour]:
    algo = resolve_algorithm(algorithm, inst.family)
    tour = algo.solve(list(inst.regions), seed)
    check_visits(tour, inst.regions)
    return algo.name, tour


def check_visits(tour: Tour, regions: Sequence[Region]) -> None:
    scale = 1.0 + max((abs(v) for t in tour.vertices for v in (t.x, t.y)), default=0.0)
    for i, r in enumerate(regions):
        if not tour_visits(tour, r, VISIT_TOL * scale):
            raise VisitFailure(f"tour misses region {i}")


# --------------------------------------------------------------------------- #
#  Optimum                                                                    #
# --------------------------------------------------------------------------- #
def optimum(regions: Sequence[Region]) -> Optional[float]:
    """Closed form where one exists, else the discretized oracle (n <= 7), else None."""
    regions = list(regions)
    if len(regions) <= 1:
        return 0.0
    if all(isinstance(r, Line) for r in regions):
        keep = [regions[i] for i in dedupe_lines(regions)]
        if len(keep) < 2 or not keep[0].is_parallel(keep[1]):
            if len(keep) <= 2:
                return 0.0
        elif len(keep) == 2:
            return 2.0 * keep[0].distance(keep[1].point())
        if len(keep) == 3:
            return three_line_opt(keep)[0]
        regions = keep
    if len(regions) == 2 and all(isinstance(r, Disk) for r in regions):
        return two_disk_opt(*regions)
    if len(regions) > ORACLE_LIMIT:
        return None
    return discretized_opt(regions).length


def ratio(tour_length: float, reference: float) -> float:
    if reference > 0:
        return tour_length / reference
    return 1.0 if tour_length <= 1e-12 else math.inf


def report(inst: Instance, algorithm: Optional[str] = None, seed: int = 0, use_oracle: bool = True) -> RatioReport:
    name, tour = solve(inst, algorithm, seed)
    algo = ALGORITHMS[name]
    regions = list(inst.regions)
    lb = lower_bound(regions)
    opt = optimum(regions) if use_oracle else None
    bound = algo.bound(regions, opt)
    if opt is not None:
        r = ratio(tour.length, opt)
        # additive slack too, so round-off on a near-zero optimum is not a violation
        within = tour.length <= (bound + BOUND_TOL) * opt + BOUND_TOL
    else:
        r = ratio(tour.length, lb)
        within = None
    return RatioReport(inst.name, name, tour.length, lb, opt, r, bound, within)


def _bench_one(args) -> RatioReport:
    family, n, params, seed, algorithm, use_oracle = args
    inst = generate(family, n, params, seed)
    return report(inst, algorithm, seed, use_oracle)


def bench(
    family: str,
    n: int,
    algorithm: Optional[str],
    count: int,
    seed: int = 0,
    params: Optional[Dict] = None,
    use_oracle: bool = True,
    jobs: int = 1,
) -> List[RatioReport]:
    if family not in FAMILY_TAG:
        raise NotApplicable(f"unknown family {family!r}")
    name = resolve_algorithm(algorithm, FAMILY_TAG[family]).name
    tasks = [(family, n, params, seed + i, name, use_oracle) for i in range(count)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_bench_one, tasks))    # map keeps instance order
    return [_bench_one(t) for t in tasks]


def reports_csv(reports: Sequence[RatioReport]) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        w.writerow(rep.row())
    return buf.getvalue()


def all_within(reports: Sequence[RatioReport]) -> bool:
    return all(r.withinBound is not False for r in reports)

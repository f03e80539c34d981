"""Approximation algorithms for the traveling salesman problem with neighborhoods.

Solvers cover disjoint and overlapping unit disks, connected regions of one
common diameter, and infinite lines.  An m-guillotine transform, a small
discretized oracle and a CSV benchmark harness complete the package.
"""

from __future__ import annotations

from .geom import Arc, Disk, Line, Point, Polygon, Rectangle, Segment, Tour, tour_visits
from .point_tsp import point_tour
from .disks import DiskInstance, disjoint_center_tour, overlapping_disks_tour
from .lines import lines_tour, min_touching_circle, three_line_opt, triangle_stats
from .same_diameter import algorithm_a, combine_tours, greedy_cover, tspn_same_diameter
from .guillotine import check_m_guillotine, find_favorable_cut, guillotine_transform
from .oracle import discretized_opt, lower_bound
from .io import Instance, InstanceError, parse_instance, serialize_instance
from .generate import generate
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "Arc", "Disk", "Line", "Point", "Polygon", "Rectangle", "Segment", "Tour", "tour_visits",
    "point_tour",
    "DiskInstance", "disjoint_center_tour", "overlapping_disks_tour",
    "lines_tour", "min_touching_circle", "three_line_opt", "triangle_stats",
    "algorithm_a", "combine_tours", "greedy_cover", "tspn_same_diameter",
    "check_m_guillotine", "find_favorable_cut", "guillotine_transform",
    "discretized_opt", "lower_bound",
    "Instance", "InstanceError", "parse_instance", "serialize_instance",
    "generate", "render_svg",
]

from __future__ import annotations

import itertools
import math
import random

import numpy as np
import pytest

from tspn.geom import Line, Point, Segment, convex_hull, tour_visits
from tspn.lines import (
    dedupe_lines,
    lines_lower_bound,
    lines_tour,
    lp_minimize,
    min_touching_circle,
    three_line_opt,
    triangle_stats,
)
from tspn.oracle import discretized_opt


def tri_lines(A, B, C):
    A, B, C = Point(*A), Point(*B), Point(*C)
    return [Line.through(B, C), Line.through(A, C), Line.through(A, B)]


def equilateral():
    return tri_lines((0, 0), (1, 0), (0.5, math.sqrt(3) / 2))


def random_lines(rng, n, box=4.0):
    out = []
    for _ in range(n):
        th = rng.uniform(0, math.pi)
        out.append(Line(math.cos(th), math.sin(th), -rng.uniform(-box / 2, box / 2)))
    return out


def vertex_enumeration(lines):
    """Independent LP oracle: min z over all vertices of {|a x + b y + c| <= z}."""
    rows = []
    for ln in lines:
        rows.append((np.array([ln.a, ln.b, -1.0]), -ln.c))
        rows.append((np.array([-ln.a, -ln.b, -1.0]), ln.c))
    best = math.inf
    for trio in itertools.combinations(rows, 3):
        M = np.array([r for r, _ in trio])
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, np.array([b for _, b in trio]))
        if all(r @ x <= b + 1e-9 for r, b in rows):
            best = min(best, x[2])
    return best


# --------------------------------------------------------------------------- #
#  LP and touching circle                                                     #
# --------------------------------------------------------------------------- #
def test_lp_small_problem():
    # min x + y  s.t. x >= 1, y >= 2, x + y >= 4
    A = np.array([[-1.0, 0.0], [0.0, -1.0], [-1.0, -1.0]])
    b = np.array([-1.0, -2.0, -4.0])
    x = lp_minimize((1.0, 1.0), A, b)
    assert x[0] + x[1] == pytest.approx(4.0)


def test_touching_circle_examples():
    tc = min_touching_circle([Line(0, 1, 0)])
    assert tc.radius == 0.0 and abs(tc.center.y) < 1e-12
    tc = min_touching_circle([Line(0, 1, 0), Line(0, 1, -2)])
    assert tc.radius == pytest.approx(1.0) and tc.center.y == pytest.approx(1.0)
    tc = min_touching_circle(equilateral())
    assert tc.radius == pytest.approx(1 / (2 * math.sqrt(3)), abs=1e-12)
    assert tc.center.x == pytest.approx(0.5) and tc.center.y == pytest.approx(1 / (2 * math.sqrt(3)))
    with pytest.raises(ValueError, match="empty instance"):
        min_touching_circle([])


def test_two_crossing_lines_radius_zero():
    tc = min_touching_circle([Line(1, 0, 0), Line(1, 1, -3)])
    assert tc.radius == pytest.approx(0.0, abs=1e-12)
    assert lines_tour([Line(1, 0, 0), Line(1, 1, -3)]).length == 0.0


def test_duplicates_are_ignored():
    lines = [Line(0, 1, 0), Line(0, -2, 0), Line(1, 0, -1)]
    assert dedupe_lines(lines) == [0, 2]


def test_lp_matches_vertex_enumeration():
    rng = random.Random(21)
    for _ in range(60):
        lines = random_lines(rng, rng.randint(3, 12))
        tc = min_touching_circle(lines, seed=rng.randrange(1000))
        assert tc.radius == pytest.approx(vertex_enumeration(lines), abs=1e-9)
        assert all(ln.distance(tc.center) <= tc.radius + 1e-9 for ln in lines)


def test_lp_optimality_shrink():
    rng = random.Random(22)
    for _ in range(20):
        lines = random_lines(rng, rng.randint(3, 14))
        z = min_touching_circle(lines).radius
        # any feasible circle of radius (1 - 1e-6) z would put an LP vertex below it
        assert vertex_enumeration(lines) >= (1 - 1e-6) * z


def test_determiners_reproduce_circle():
    rng = random.Random(23)
    for _ in range(40):
        lines = random_lines(rng, rng.randint(3, 15))
        tc = min_touching_circle(lines)
        assert 2 <= len(tc.determiners) <= 3
        sub = min_touching_circle([lines[i] for i in tc.determiners])
        assert sub.radius == pytest.approx(tc.radius, abs=1e-9)
        assert sub.center.dist(tc.center) <= 1e-9 * max(1.0, tc.radius) or len(tc.determiners) == 2


def test_lines_tour_examples():
    t = lines_tour([Line(0, 1, 0), Line(0, 1, -2)])
    assert t.length == pytest.approx(2 * math.pi)
    t = lines_tour(equilateral())
    assert t.length == pytest.approx(math.pi / math.sqrt(3))
    assert t.length / 1.5 == pytest.approx(2 * math.pi / (3 * math.sqrt(3)))
    assert lines_tour([Line(1, 2, 3)]).length == 0.0


def test_lines_tour_visits_all():
    rng = random.Random(24)
    for _ in range(50):
        lines = random_lines(rng, rng.randint(1, 20))
        t = lines_tour(lines)
        assert all(tour_visits(t, ln, 1e-9) for ln in lines)


# --------------------------------------------------------------------------- #
#  Three lines                                                                #
# --------------------------------------------------------------------------- #
def test_three_line_examples():
    assert three_line_opt(equilateral())[0] == pytest.approx(1.5)
    length, tour = three_line_opt(tri_lines((0, 0), (4, 0), (1, 1)))
    assert length == pytest.approx(2.0)
    assert three_line_opt([Line(1, 0, 0), Line(0, 1, 0), Line(1, 1, 0)])[0] == 0.0
    # all parallel: extreme pair at gap 3
    assert three_line_opt([Line(0, 1, 0), Line(0, 1, -1), Line(0, 1, -3)])[0] == pytest.approx(6.0)
    # generalized triangle: strip of width 2
    assert three_line_opt([Line(0, 1, 0), Line(0, 1, -2), Line(1, 1, 0)])[0] == pytest.approx(4.0)


def test_three_line_tour_visits_lines():
    rng = random.Random(25)
    for _ in range(100):
        lines = random_lines(rng, 3)
        length, tour = three_line_opt(lines)
        assert tour.length == pytest.approx(length, abs=1e-9)
        assert all(tour_visits(tour, ln, 1e-8) for ln in lines)


def test_three_line_opt_against_oracle():
    rng = random.Random(26)
    for _ in range(6):
        lines = random_lines(rng, 3)
        closed = three_line_opt(lines)[0]
        assert discretized_opt(lines).length == pytest.approx(closed, abs=1e-3 * max(1.0, closed))


def test_triangle_stats_examples():
    st = triangle_stats(equilateral())
    assert st.kind == "acute"
    assert st.r == pytest.approx(1 / (2 * math.sqrt(3)))
    assert st.R == pytest.approx(1 / math.sqrt(3))
    assert st.s == pytest.approx(1.5) and st.y == pytest.approx(1.5)
    assert st.y == pytest.approx(2 * st.r * st.s / st.R)

    st = triangle_stats(tri_lines((0, 0), (4, 0), (0, 3)))
    assert st.kind == "right" and st.r == pytest.approx(1.0) and st.h == pytest.approx(12 / 5)
    assert st.h > 2 * st.r

    # 6-7-8 triangle placed with the side 8 on the x axis
    a, b, c = 6.0, 7.0, 8.0
    x = (b * b - a * a + c * c) / (2 * c)
    st = triangle_stats(tri_lines((0, 0), (c, 0), (x, math.sqrt(b * b - x * x))))
    assert st.kind == "acute" and st.s == pytest.approx(10.5)
    S = math.sqrt(10.5 * 4.5 * 3.5 * 2.5)
    assert st.R == pytest.approx(a * b * c / (4 * S))
    assert st.s > 2 * st.R


def test_triangle_stats_errors_and_generalized():
    with pytest.raises(ValueError, match="concurrent"):
        triangle_stats([Line(1, 0, 0), Line(0, 1, 0), Line(1, 1, 0)])
    st = triangle_stats([Line(0, 1, 0), Line(0, 1, -2), Line(1, 2, 0)])
    assert st.kind == "generalized" and st.r == pytest.approx(1.0) and st.h == pytest.approx(2.0)


def test_lower_bound_triples():
    lines = equilateral()
    A, B, C = Point(0, 0), Point(1, 0), Point(0.5, math.sqrt(3) / 2)
    mids = [Point((B.x + C.x) / 2, (B.y + C.y) / 2), Point((A.x + C.x) / 2, (A.y + C.y) / 2),
            Point((A.x + B.x) / 2, (A.y + B.y) / 2)]
    medians = [Line.through(A, mids[0]), Line.through(B, mids[1]), Line.through(C, mids[2])]
    assert lines_lower_bound(lines + medians) >= 1.5 - 1e-12


def test_oracle_hull_never_longer():
    rng = random.Random(27)
    for _ in range(3):
        lines = random_lines(rng, 4)
        res = discretized_opt(lines)
        h = convex_hull(list(res.touch_points))
        if isinstance(h, Point):
            hull_len = 0.0
        elif isinstance(h, Segment):
            hull_len = 2 * h.length
        else:
            hull_len = h.perimeter
        assert hull_len <= res.length + 1e-6

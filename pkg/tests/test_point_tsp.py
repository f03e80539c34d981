from __future__ import annotations

import itertools
import math
import random

import pytest

from tspn.geom import Point
from tspn.point_tsp import EXACT_LIMIT, exact_point_tour, has_improving_exchange, heuristic_point_tour, point_tour


def brute_force(pts):
    """Independent oracle: enumerate every cyclic order with point 0 fixed."""
    n = len(pts)
    if n <= 1:
        return 0.0
    best = math.inf
    for perm in itertools.permutations(range(1, n)):
        order = (0,) + perm
        best = min(best, sum(pts[order[i]].dist(pts[order[(i + 1) % n]]) for i in range(n)))
    return best


def rand_pts(rng, n):
    return [Point(rng.uniform(0, 10), rng.uniform(0, 10)) for _ in range(n)]


def test_exact_examples():
    assert exact_point_tour([Point(0, 0)]).length == 0.0
    assert exact_point_tour([Point(0, 0), Point(3, 0)]).length == pytest.approx(6.0)
    r = exact_point_tour([Point(0, 0), Point(1, 0), Point(0, 1)])
    assert r.length == pytest.approx(2 + math.sqrt(2))
    assert r.exact


def test_exact_errors():
    with pytest.raises(ValueError, match="empty instance"):
        exact_point_tour([])
    with pytest.raises(ValueError, match="capped"):
        exact_point_tour([Point(i, i * i) for i in range(EXACT_LIMIT + 1)])


def test_exact_matches_brute_force():
    rng = random.Random(1)
    for n in range(2, 9):
        pts = rand_pts(rng, n)
        assert exact_point_tour(pts).length == pytest.approx(brute_force(pts), abs=1e-9)


def test_heuristic_three_points_optimal():
    pts = [Point(0, 0), Point(4, 1), Point(2, 5)]
    assert heuristic_point_tour(pts).length == pytest.approx(exact_point_tour(pts).length)


def test_octagon():
    pts = [Point(math.cos(2 * math.pi * k / 8), math.sin(2 * math.pi * k / 8)) for k in (0, 3, 6, 1, 4, 7, 2, 5)]
    side = 2 * math.sin(math.pi / 8)
    assert heuristic_point_tour(pts).length == pytest.approx(8 * side, abs=1e-9)
    assert exact_point_tour(pts).length == pytest.approx(8 * side, abs=1e-9)


def test_heuristic_sanity_band():
    rng = random.Random(2)
    for _ in range(100):
        pts = rand_pts(rng, rng.randint(3, 10))
        h = heuristic_point_tour(pts, seed=rng.randrange(100))
        ex = exact_point_tour(pts)
        assert 1 - 1e-9 <= h.length / ex.length <= 1.2
        assert not h.exact
        assert sorted(h.order) == list(range(len(pts)))
        assert not has_improving_exchange(h.order, pts)


def test_point_tour_dispatch_and_determinism():
    rng = random.Random(3)
    small = rand_pts(rng, 8)
    big = rand_pts(rng, 30)
    assert point_tour(small).exact
    a, b = point_tour(big, seed=4), point_tour(big, seed=4)
    assert not a.exact and a.order == b.order and a.length == b.length

"""Closed tours through point sets.

Small inputs are solved exactly with the Held-Karp subset recursion; larger
ones get nearest-neighbour construction followed by 2-opt.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .geom import Point, Tour

EXACT_LIMIT = 14
IMPROVE_TOL = 1e-9


@dataclass(frozen=True)
class PointTspResult:
    tour: Tour
    order: tuple
    exact: bool

    @property
    def length(self) -> float:
        return self.tour.length


def _distance_matrix(pts: Sequence[Point]) -> np.ndarray:
    xy = np.array([(p.x, p.y) for p in pts], dtype=float)
    return np.hypot(xy[:, None, 0] - xy[None, :, 0], xy[:, None, 1] - xy[None, :, 1])


def _cycle_length(order: Sequence[int], dist: np.ndarray) -> float:
    return float(sum(dist[order[i], order[(i + 1) % len(order)]] for i in range(len(order))))


def exact_point_tour(pts: Sequence[Point]) -> PointTspResult:
    """Optimal closed tour for at most ``EXACT_LIMIT`` points."""
    n = len(pts)
    if n == 0:
        raise ValueError("empty instance")
    if n > EXACT_LIMIT:
        raise ValueError(f"exact solver capped at {EXACT_LIMIT} points, got {n}")
    if n <= 3:
        order = tuple(range(n))
        return PointTspResult(Tour.polygon([pts[i] for i in order]), order, True)

    dist = _distance_matrix(pts)
    full = 1 << n
    # dp[mask, j]: shortest path from 0 through `mask` ending at j
    dp = np.full((full, n), np.inf)
    parent = np.full((full, n), -1, dtype=np.int64)
    dp[1, 0] = 0.0
    bits = 1 << np.arange(n)
    for mask in range(3, full, 2):
        members = np.nonzero(mask & bits)[0]
        members = members[members != 0]
        if members.size == 0:
            continue
        prev = dp[mask ^ bits[members]]            # (k, n)
        cand = prev + dist[:, members].T           # (k, n)
        best = np.argmin(cand, axis=1)
        dp[mask, members] = cand[np.arange(members.size), best]
        parent[mask, members] = best
    last = full - 1
    closing = dp[last] + dist[:, 0]
    closing[0] = np.inf
    j = int(np.argmin(closing))
    order: List[int] = []
    mask = last
    while j != 0:
        order.append(j)
        j, mask = int(parent[mask, j]), mask ^ (1 << j)
    order.append(0)
    order.reverse()
    return PointTspResult(Tour.polygon([pts[i] for i in order]), tuple(order), True)


def two_opt(order: List[int], dist: np.ndarray) -> List[int]:
    """First-improvement 2-opt until no exchange gains more than ``IMPROVE_TOL``."""
    n = len(order)
    if n < 4:
        return order
    improved = True
    while improved:
        improved = False
        for i in range(n - 1):
            a, b = order[i], order[i + 1]
            for j in range(i + 2, n if i > 0 else n - 1):
                c, d = order[j], order[(j + 1) % n]
                delta = dist[a, c] + dist[b, d] - dist[a, b] - dist[c, d]
                if delta < -IMPROVE_TOL:
                    order[i + 1:j + 1] = reversed(order[i + 1:j + 1])
                    improved = True
                    a, b = order[i], order[i + 1]
    return order


def has_improving_exchange(order: Sequence[int], pts: Sequence[Point]) -> bool:
    dist = _distance_matrix(pts)
    n = len(order)
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            a, b, c, d = order[i], order[i + 1], order[j], order[(j + 1) % n]
            if dist[a, c] + dist[b, d] - dist[a, b] - dist[c, d] < -IMPROVE_TOL:
                return True
    return False


def heuristic_point_tour(pts: Sequence[Point], seed: int = 0) -> PointTspResult:
    """Nearest neighbour from point 0, then 2-opt; the seed breaks distance ties."""
    n = len(pts)
    if n == 0:
        raise ValueError("empty instance")
    dist = _distance_matrix(pts)
    rank = list(range(n))
    random.Random(seed).shuffle(rank)
    order = [0]
    left = set(range(1, n))
    while left:
        cur = order[-1]
        nxt = min(left, key=lambda k: (dist[cur, k], rank[k]))
        order.append(nxt)
        left.remove(nxt)
    order = two_opt(order, dist)
    return PointTspResult(Tour.polygon([pts[i] for i in order]), tuple(order), False)


def point_tour(pts: Sequence[Point], seed: int = 0) -> PointTspResult:
    """Exact when small enough, heuristic otherwise."""
    if len(pts) <= EXACT_LIMIT:
        return exact_point_tour(pts)
    return heuristic_point_tour(pts, seed)

"""Seeded random simple polygons by 2-opt untangling."""
from __future__ import annotations

import random
from typing import List, Tuple

from .geom import (GeometryError, Point, Polygon, _candidate_edge_pairs, cross,
                   segments_cross_properly, segments_intersect, validate_polygon)

MAX_ATTEMPTS = 64


def _hilbert_key(x: int, y: int, order: int) -> int:
    d = 0
    s = 1 << (order - 1)
    while s > 0:
        rx = 1 if x & s else 0
        ry = 1 if y & s else 0
        d += s * s * ((3 * rx) ^ ry)
        if ry == 0:
            if rx == 1:
                x = s - 1 - x
                y = s - 1 - y
            x, y = y, x
        s >>= 1
    return d


def _untangle(pts: List[Tuple[int, int]], tour: List[int]) -> bool:
    """2-opt until the tour is simple.  False if a degenerate overlap remains."""
    n = len(tour)
    while True:
        ring = [pts[i] for i in tour]
        found = False
        for i, j in list(_candidate_edge_pairs(ring)):
            if j - i < 2 or (i == 0 and j == n - 1):
                continue
            a, b = pts[tour[i]], pts[tour[i + 1]]
            c, d = pts[tour[j]], pts[tour[(j + 1) % n]]
            if segments_cross_properly(a, b, c, d):
                tour[i + 1:j + 1] = tour[i + 1:j + 1][::-1]
                found = True
            elif segments_intersect(a, b, c, d):
                return False
        if not found:
            return True


def random_polygon(n: int, seed: int) -> Polygon:
    """Deterministic random simple polygon with exactly ``n`` integer vertices.

    Points are drawn without repetition from a ``G x G`` grid with
    ``G = max(512, 64 n)``.  Small instances start from a random permutation,
    larger ones from a Hilbert-curve order (far fewer crossings to repair).
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    grid = max(512, 64 * n)
    order = max(1, (grid - 1).bit_length())
    master = random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        rng = random.Random(master.getrandbits(64))
        cells = rng.sample(range(grid * grid), n)
        pts = [(c % grid, c // grid) for c in cells]
        if n <= 256:
            tour = list(range(n))
            rng.shuffle(tour)
        else:
            tour = sorted(range(n), key=lambda i: _hilbert_key(pts[i][0], pts[i][1], order))
        if not _untangle(pts, tour):
            continue
        ring = [Point(*pts[i]) for i in tour]
        try:
            P = validate_polygon(ring)
        except GeometryError:
            continue
        if len(P) == n:
            return P
    raise RuntimeError(f"could not generate a simple {n}-gon from seed {seed}")

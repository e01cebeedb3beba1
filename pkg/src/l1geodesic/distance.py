"""Vertex-to-vertex geodesic distance queries."""
from __future__ import annotations

from typing import Dict, Tuple

from .geom import Polygon, Scalar
from .geodesic import _sleeve_walk
from .triangulate import Triangulation


class VertexDistances:
    """Memoized d(v_i, v_j) by a funnel walk along the dual-tree sleeve."""

    def __init__(self, P: Polygon, T: Triangulation):
        self.P = P
        self.T = T
        self.memo: Dict[Tuple[int, int], Scalar] = {}
        self.queries = 0

    def __call__(self, i: int, j: int) -> Scalar:
        if i == j:
            return 0
        key = (i, j) if i < j else (j, i)
        d = self.memo.get(key)
        if d is None:
            self.queries += 1
            d = self.memo[key] = self._walk(*key)
        return d

    def _walk(self, i: int, j: int) -> Scalar:
        vs = self.P.vertices
        pred, ip, iq, xs, ys = _sleeve_walk(self.P, self.T, vs[i], vs[j])
        total = 0
        v = iq
        while v != ip:
            u = pred[v]
            total += abs(xs[v] - xs[u]) + abs(ys[v] - ys[u])
            v = u
        return total

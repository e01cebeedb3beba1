"""Ear-clipping triangulation with neighbour tables and the dual tree."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .geom import Polygon, cross

Triangle = Tuple[int, int, int]


class TriangulationError(RuntimeError):
    pass


@dataclass
class Triangulation:
    """Triangles (vertex-index triples, CCW) of a polygon and their dual tree.

    ``neighbors[t][k]`` is the triangle across the edge from corner ``k`` to
    corner ``k + 1`` of triangle ``t``, or -1 when that edge is a polygon edge.
    """

    polygon: Polygon
    triangles: List[Triangle]
    neighbors: List[List[int]]
    diagonals: List[Tuple[int, int]]
    vertex_triangle: List[int]
    _parent: List[int] = field(default_factory=list, repr=False)
    _depth: List[int] = field(default_factory=list, repr=False)

    def __post_init__(self):
        self._root_dual_tree()

    def __len__(self) -> int:
        return len(self.triangles)

    def dual_edges(self) -> List[Tuple[int, int]]:
        out = []
        for t, nb in enumerate(self.neighbors):
            for u in nb:
                if u > t:
                    out.append((t, u))
        return out

    def _root_dual_tree(self):
        m = len(self.triangles)
        parent = [-1] * m
        depth = [0] * m
        if m:
            seen = [False] * m
            seen[0] = True
            queue = deque([0])
            while queue:
                t = queue.popleft()
                for u in self.neighbors[t]:
                    if u >= 0 and not seen[u]:
                        seen[u] = True
                        parent[u] = t
                        depth[u] = depth[t] + 1
                        queue.append(u)
        self._parent = parent
        self._depth = depth

    def dual_path(self, a: int, b: int) -> List[int]:
        """Triangle ids on the unique dual-tree path from a to b."""
        parent, depth = self._parent, self._depth
        left, right = [a], [b]
        while depth[a] > depth[b]:
            a = parent[a]
            left.append(a)
        while depth[b] > depth[a]:
            b = parent[b]
            right.append(b)
        while a != b:
            a = parent[a]
            b = parent[b]
            left.append(a)
            right.append(b)
        right.pop()
        return left + right[::-1]

    def shared_edge(self, t: int, u: int) -> Tuple[int, int]:
        """Vertex pair (x, y) such that x->y is an edge of CCW triangle ``u``
        and y->x an edge of ``t``."""
        k = self.neighbors[t].index(u)
        tri = self.triangles[t]
        return tri[(k + 1) % 3], tri[k]

    def sleeve(self, a: int, b: int) -> List[Tuple[int, Optional[Tuple[int, int]]]]:
        """(triangle, crossed diagonal) pairs along the dual path.

        The first entry carries ``None``; every later entry names the
        diagonal crossed to enter that triangle.
        """
        path = self.dual_path(a, b)
        out: List[Tuple[int, Optional[Tuple[int, int]]]] = [(path[0], None)]
        for t, u in zip(path, path[1:]):
            x, y = self.shared_edge(t, u)
            out.append((u, (min(x, y), max(x, y))))
        return out

    def locate(self, p) -> int:
        """Id of a triangle containing p (closed), or -1."""
        vs = self.polygon.vertices
        px, py = p[0], p[1]
        for t, (i, j, k) in enumerate(self.triangles):
            a, b, c = vs[i], vs[j], vs[k]
            if px < a[0] and px < b[0] and px < c[0]:
                continue
            if px > a[0] and px > b[0] and px > c[0]:
                continue
            if py < a[1] and py < b[1] and py < c[1]:
                continue
            if py > a[1] and py > b[1] and py > c[1]:
                continue
            if cross(a, b, p) >= 0 and cross(b, c, p) >= 0 and cross(c, a, p) >= 0:
                return t
        return -1


class _Grid:
    """Uniform bucket grid over vertex indices, float-keyed, exact tests elsewhere."""

    def __init__(self, pts: Sequence, idx: Sequence[int]):
        fx = [float(p[0]) for p in pts]
        fy = [float(p[1]) for p in pts]
        self.fx, self.fy = fx, fy
        self.x0, self.y0 = min(fx), min(fy)
        k = max(1, int(math.sqrt(len(idx))))
        self.sx = (max(fx) - self.x0) / k or 1.0
        self.sy = (max(fy) - self.y0) / k or 1.0
        self.cells: Dict[Tuple[int, int], List[int]] = {}
        for i in idx:
            self.cells.setdefault(self._key(fx[i], fy[i]), []).append(i)

    def _key(self, x: float, y: float) -> Tuple[int, int]:
        return int((x - self.x0) / self.sx), int((y - self.y0) / self.sy)

    def query(self, x0: float, y0: float, x1: float, y1: float):
        cx0, cy0 = self._key(x0, y0)
        cx1, cy1 = self._key(x1, y1)
        cells = self.cells
        for cx in range(cx0 - 1, cx1 + 2):
            for cy in range(cy0 - 1, cy1 + 2):
                bucket = cells.get((cx, cy))
                if bucket:
                    yield bucket


def _point_in_closed_triangle(a, b, c, p) -> bool:
    return cross(a, b, p) >= 0 and cross(b, c, p) >= 0 and cross(c, a, p) >= 0


def triangulate(P: Polygon) -> Triangulation:
    """Triangulate a validated CCW simple polygon by ear clipping.

    Ears are found by a cyclic scan starting at vertex 0.  A candidate ear
    (prev, cur, next) is accepted when it turns strictly left and no other
    remaining vertex lies in the closed triangle; candidate blockers come
    from a bucket grid with lazy deletion.
    """
    pts = P.vertices
    n = len(pts)
    nxt = [(i + 1) % n for i in range(n)]
    prv = [(i - 1) % n for i in range(n)]
    alive = [True] * n
    grid = _Grid(pts, range(n))
    fx, fy = grid.fx, grid.fy
    tris: List[Triangle] = []

    def is_ear(i: int) -> bool:
        a, b, c = prv[i], i, nxt[i]
        pa, pb, pc = pts[a], pts[b], pts[c]
        if cross(pa, pb, pc) <= 0:
            return False
        x0 = min(fx[a], fx[b], fx[c])
        x1 = max(fx[a], fx[b], fx[c])
        y0 = min(fy[a], fy[b], fy[c])
        y1 = max(fy[a], fy[b], fy[c])
        for bucket in grid.query(x0, y0, x1, y1):
            w = 0
            for pos, j in enumerate(bucket):
                if not alive[j]:
                    continue
                bucket[w] = j
                w += 1
                if j == a or j == b or j == c:
                    continue
                # float rounding is monotone, so this reject is exact
                if fx[j] < x0 or fx[j] > x1 or fy[j] < y0 or fy[j] > y1:
                    continue
                if _point_in_closed_triangle(pa, pb, pc, pts[j]):
                    del bucket[w:pos + 1]
                    return False
            del bucket[w:]
        return True

    remaining = n
    i = 0
    stall = 0
    while remaining > 3:
        if is_ear(i):
            a, c = prv[i], nxt[i]
            tris.append((a, i, c))
            alive[i] = False
            nxt[a] = c
            prv[c] = a
            remaining -= 1
            stall = 0
            i = c
        else:
            i = nxt[i]
            stall += 1
            if stall > remaining:
                raise TriangulationError("no ear found; polygon is not simple")
    a = i
    tris.append((prv[a], a, nxt[a]))
    return _build(P, tris)


def _build(P: Polygon, tris: List[Triangle]) -> Triangulation:
    n = len(P)
    owner: Dict[Tuple[int, int], int] = {}
    for t, (i, j, k) in enumerate(tris):
        owner[(i, j)] = t
        owner[(j, k)] = t
        owner[(k, i)] = t
    neighbors = []
    diagonals = []
    for t, (i, j, k) in enumerate(tris):
        nb = [owner.get((j, i), -1), owner.get((k, j), -1), owner.get((i, k), -1)]
        neighbors.append(nb)
        for (u, v), s in zip(((i, j), (j, k), (k, i)), nb):
            if s >= 0 and u < v:
                diagonals.append((u, v))
    vertex_triangle = [-1] * n
    for t, tri in enumerate(tris):
        for v in tri:
            if vertex_triangle[v] < 0:
                vertex_triangle[v] = t
    diagonals.sort()
    return Triangulation(P, tris, neighbors, diagonals, vertex_triangle)

"""Brute-force ground truth on visibility graphs.

Nothing here shares code with the funnel machinery: distances come from
exact segment-in-polygon tests and an all-pairs shortest path over the
vertex visibility graph.  Meant for n up to a hundred or so.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .geom import (Point, Polygon, PointOutsidePolygon, Scalar, fmt_point, l1_distance,
                   lerp, make_point, norm, segment_in_polygon)

_CACHE: Dict[int, "VisibilityGraph"] = {}


@dataclass
class VisibilityGraph:
    polygon: Polygon
    visible: List[List[bool]]
    dist: List[List[Scalar]]
    _point_cache: Dict[Point, List[Scalar]] = field(default_factory=dict, repr=False)

    def sees(self, p) -> List[int]:
        """Vertices whose segment to p lies in the polygon."""
        vs = self.polygon.vertices
        return [i for i, v in enumerate(vs) if segment_in_polygon(self.polygon, p, v)]


def visibility_graph(P: Polygon) -> VisibilityGraph:
    """Vertex visibility graph with all-pairs L1 path lengths (memoized)."""
    g = _CACHE.get(id(P))
    if g is not None and g.polygon is P:
        return g
    vs = P.vertices
    n = len(vs)
    vis = [[False] * n for _ in range(n)]
    inf = None
    dist: List[List[Optional[Scalar]]] = [[inf] * n for _ in range(n)]
    for i in range(n):
        vis[i][i] = True
        dist[i][i] = 0
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1) or segment_in_polygon(P, vs[i], vs[j]):
                vis[i][j] = vis[j][i] = True
                d = l1_distance(vs[i], vs[j])
                dist[i][j] = dist[j][i] = d
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik is None:
                continue
            di = dist[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is None:
                    continue
                s = dik + dkj
                if di[j] is None or s < di[j]:
                    di[j] = s
    g = VisibilityGraph(P, vis, dist)
    if len(_CACHE) > 64:
        _CACHE.clear()
    _CACHE[id(P)] = g
    return g


def _vertex_distances(P: Polygon, p) -> List[Scalar]:
    """d(p, v) for every vertex v."""
    g = visibility_graph(P)
    idx = P.index_of(p)
    if idx is not None:
        return list(g.dist[idx])
    cached = g._point_cache.get(p)
    if cached is not None:
        return list(cached)
    seen = g.sees(p)
    out = []
    for v in range(len(P)):
        best = None
        for u in seen:
            d = l1_distance(p, P.vertices[u]) + g.dist[u][v]
            if best is None or d < best:
                best = d
        out.append(norm(best))
    if len(g._point_cache) > 4096:
        g._point_cache.clear()
    g._point_cache[p] = out
    return list(out)


def _check_inside(P: Polygon, p) -> Point:
    p = make_point(p[0], p[1])
    if not P.contains(p):
        raise PointOutsidePolygon(p)
    return p


def oracle_distance(P: Polygon, p, q) -> Scalar:
    """Exact L1 geodesic distance from the visibility graph."""
    p = _check_inside(P, p)
    q = _check_inside(P, q)
    if p == q:
        return 0
    if segment_in_polygon(P, p, q):
        return l1_distance(p, q)
    dp = _vertex_distances(P, p)
    g = visibility_graph(P)
    best = None
    for w in g.sees(q) if P.index_of(q) is None else [P.index_of(q)]:
        d = dp[w] + l1_distance(P.vertices[w], q)
        if best is None or d < best:
            best = d
    return norm(best)


def oracle_diameter(P: Polygon) -> Tuple[Tuple[int, int], Scalar]:
    """Lowest-index vertex pair attaining the maximum pairwise distance."""
    g = visibility_graph(P)
    n = len(P)
    best, pair = -1, (0, 0)
    for i in range(n):
        row = g.dist[i]
        for j in range(i + 1, n):
            if row[j] > best:
                best, pair = row[j], (i, j)
    return pair, best


def oracle_eccentricity(P: Polygon, x) -> Scalar:
    x = _check_inside(P, x)
    return max(_vertex_distances(P, x))


@dataclass
class CenterReport:
    ok: bool
    message: str = ""
    witness: Optional[Point] = None
    checked: int = 0


def _probe_points(P: Polygon, a: Point, b: Point, eps: Fraction) -> List[Point]:
    """Points at distance ~eps just off the candidate center set."""
    out = []
    if a == b:
        dirs = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)]
        for dx, dy in dirs:
            out.append(make_point(a[0] + dx * eps, a[1] + dy * eps))
        return out
    sx = 1 if b[0] > a[0] else -1
    sy = 1 if b[1] > a[1] else -1
    # beyond each end along the chord, then sideways off both ends and the middle
    out.append(make_point(b[0] + sx * eps, b[1] + sy * eps))
    out.append(make_point(a[0] - sx * eps, a[1] - sy * eps))
    m = make_point(Fraction(a[0] + b[0]) / 2, Fraction(a[1] + b[1]) / 2)
    for c in (a, b, m):
        for dx, dy in ((sy, -sx), (-sy, sx), (1, 0), (-1, 0), (0, 1), (0, -1)):
            out.append(make_point(c[0] + dx * eps, c[1] + dy * eps))
    return out


def oracle_center_check(P: Polygon, result, samples: int = 32, seed: int = 0) -> CenterReport:
    """Certify a center result: exact radius on the segment, larger nearby."""
    a, b = result.segment
    r = result.radius
    checked = 0
    mid = make_point(Fraction(a[0] + b[0]) / 2, Fraction(a[1] + b[1]) / 2)
    for c in (a, b, mid):
        if not P.contains(c):
            return CenterReport(False, f"center point {fmt_point(c)} outside polygon", c, checked)
        e = oracle_eccentricity(P, c)
        checked += 1
        if e != r:
            return CenterReport(False, f"eccentricity of {fmt_point(c)} is {e}, radius {r}", c, checked)
    rng = random.Random(seed)
    x0, y0, x1, y1 = P.bbox
    got = 0
    tries = 0
    while got < samples and tries < samples * 50:
        tries += 1
        x = Fraction(x0) + (Fraction(x1) - x0) * Fraction(rng.randrange(1 << 20), 1 << 20)
        y = Fraction(y0) + (Fraction(y1) - y0) * Fraction(rng.randrange(1 << 20), 1 << 20)
        p = make_point(x, y)
        if not P.contains(p):
            continue
        got += 1
        checked += 1
        e = oracle_eccentricity(P, p)
        if e < r:
            return CenterReport(False, f"sample {fmt_point(p)} has eccentricity {e} < radius {r}", p, checked)
    eps = Fraction(max(x1 - x0, y1 - y0)) / (1 << 16)
    for p in _probe_points(P, a, b, eps):
        if not P.contains(p):
            continue
        checked += 1
        e = oracle_eccentricity(P, p)
        if e <= r:
            return CenterReport(False, f"off-center point {fmt_point(p)} has eccentricity {e} <= radius {r}",
                                p, checked)
    return CenterReport(True, "ok", None, checked)


def check_totally_monotone(P: Polygon, pair, quadruples: int = 1000, seed: int = 0,
                           entry: Optional[Callable[[int, int], Scalar]] = None):
    """Sample i<j, k<l and test the quadrangle inequality exactly.

    ``pair`` has chains ``U`` and ``W`` of vertex ids.  Returns a violating
    (i, j, k, l) or None.
    """
    U, W = list(pair.U), list(pair.W)
    if entry is None:
        g = visibility_graph(P)
        entry = lambda i, j: g.dist[U[i]][W[j]]
    p, m = len(U), len(W)
    if p < 2 or m < 2:
        return None
    rng = random.Random(seed)
    for _ in range(quadruples):
        i, j = sorted(rng.sample(range(p), 2))
        k, l = sorted(rng.sample(range(m), 2))
        if entry(j, k) + entry(i, l) > entry(j, l) + entry(i, k):
            return (i, j, k, l)
    return None

"""Geodesic shortest paths, shortest path trees and maps, chord profiles.

The Euclidean shortest path between two points of a simple polygon is also
an L1 shortest path, so everything here computes Euclidean geodesics with a
funnel walk over the triangulation and measures them in L1.

Funnel convention: a CCW triangle (x, y, v) is entered through its edge
x->y.  The funnel is an index window ``buf[lo..hi]`` running from x to y
with the apex at ``buf[a]``; the chain ``lo..a`` leads from x to the apex,
``a..hi`` from the apex to y.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .geom import (GeometryError, Point, Polygon, PointOutsidePolygon, Scalar,
                   l1_distance, norm)
from .triangulate import Triangulation


class ChordError(GeometryError):
    pass


class ChordNotInPolygon(ChordError):
    def __init__(self):
        super().__init__("ChordNotInPolygon")


class ChordNotUnitSlope(ChordError):
    def __init__(self):
        super().__init__("ChordNotUnitSlope")


@dataclass(frozen=True)
class GeodesicPath:
    waypoints: Tuple[Point, ...]
    l1_length: Scalar


@dataclass
class ShortestPathTree:
    """Per-vertex parent and L1 distance from ``source``.

    Parent ids are vertex indices; ``n`` (the polygon size) stands for the
    source when it is not itself a vertex, and the root has parent -1.
    ``order`` lists the vertices in discovery order, parents first.
    """

    source: Point
    source_index: int
    parent: List[int]
    dist_l1: List[Scalar]
    order: List[int]

    def path_to(self, polygon: Polygon, v: int) -> List[Point]:
        out = []
        while v >= 0:
            if v == len(polygon):
                out.append(self.source)
                break
            out.append(polygon.vertices[v])
            v = self.parent[v]
        return out[::-1]


def _require_inside(P: Polygon, p) -> Point:
    p = Point(norm(p[0]), norm(p[1]))
    if not P.contains(p):
        raise PointOutsidePolygon(p)
    return p


def _start_triangle(T: Triangulation, p, idx: int) -> int:
    if idx < len(T.polygon):
        return T.vertex_triangle[idx]
    t = T.locate(p)
    if t < 0:
        raise PointOutsidePolygon(p)
    return t


def _third(T: Triangulation, u: int, x: int, y: int) -> int:
    """Corner k of triangle u with tri[k] == x and tri[k+1] == y."""
    tri = T.triangles[u]
    if tri[0] == x:
        return 0
    if tri[1] == x:
        return 1
    return 2


def _beyond(xs, ys, p: int, q: int, vx, vy, side: int) -> bool:
    """v strictly on ``side`` of p->q, or on the line at or past q."""
    px, py = xs[p], ys[p]
    dx, dy = xs[q] - px, ys[q] - py
    c = dx * (vy - py) - dy * (vx - px)
    if c:
        return (c > 0) == (side > 0)
    return (vx - xs[q]) * dx + (vy - ys[q]) * dy >= 0


def _parent_in_funnel(xs, ys, buf, lo: int, hi: int, a: int, v: int) -> int:
    """Buffer position of the funnel vertex that v attaches to.

    Collinear contacts count as lying beyond once v is past the far end of
    the chain edge, so the result is the funnel vertex nearest to v along a
    straight run.  A point strictly inside a chain edge attaches before it.
    """
    vx, vy = xs[v], ys[v]
    if a > lo and _beyond(xs, ys, buf[a], buf[a - 1], vx, vy, 1):
        # first i in [lo, a-1] with v beyond buf[i+1] -> buf[i] on the left
        i0, i1 = lo, a - 1
        while i0 < i1:
            m = (i0 + i1) // 2
            if _beyond(xs, ys, buf[m + 1], buf[m], vx, vy, 1):
                i1 = m
            else:
                i0 = m + 1
        return i0
    if a < hi and _beyond(xs, ys, buf[a], buf[a + 1], vx, vy, -1):
        # last j in [a, hi-1] with v beyond buf[j] -> buf[j+1] on the right
        j0, j1 = a, hi - 1
        while j0 < j1:
            m = (j0 + j1 + 1) // 2
            if _beyond(xs, ys, buf[m], buf[m + 1], vx, vy, -1):
                j0 = m
            else:
                j1 = m - 1
        return j0 + 1
    return a


def _coords(P: Polygon, extra: Sequence) -> Tuple[list, list]:
    """Coordinate arrays indexed by vertex id, with extra points appended.

    The extra-free arrays are cached on the polygon and must not be mutated.
    """
    base = P.__dict__.get("_coords")
    if base is None:
        base = ([v[0] for v in P.vertices], [v[1] for v in P.vertices])
        object.__setattr__(P, "_coords", base)
    if not extra:
        return base
    xs = base[0] + [p[0] for p in extra]
    ys = base[1] + [p[1] for p in extra]
    return xs, ys


def shortest_path_tree(P: Polygon, T: Triangulation, s) -> ShortestPathTree:
    """Shortest path tree from s to every vertex by a depth-first funnel sweep.

    The funnel lives in one shared buffer; each child window writes a single
    slot and the old value is restored on the way back, so a step costs one
    binary search.
    """
    s = _require_inside(P, s)
    n = len(P)
    src = P.index_of(s)
    if src is None:
        src = n
        xs, ys = _coords(P, [s])
    else:
        xs, ys = _coords(P, [])
    t0 = _start_triangle(T, s, src)
    tris, nbrs = T.triangles, T.neighbors

    parent = [-1] * n
    dist: List[Scalar] = [0] * n
    order: List[int] = []
    sx, sy = s
    for v in tris[t0]:
        if v != src:
            parent[v] = src
            dist[v] = abs(xs[v] - sx) + abs(ys[v] - sy)
        order.append(v)
    if src < n:
        order.remove(src)
        order.insert(0, src)

    buf = [0] * (2 * n + 12)
    mid = n + 6
    stack: list = []
    tri0 = tris[t0]
    for k in range(3):
        u = nbrs[t0][k]
        if u < 0:
            continue
        a_, b_ = tri0[k], tri0[(k + 1) % 3]
        # neighbour is entered through b_ -> a_
        if src == a_ or src == b_:
            writes = ((mid, b_), (mid + 1, a_))
            apex = mid if src == b_ else mid + 1
            stack.append((u, mid, mid + 1, apex, writes))
        else:
            writes = ((mid, b_), (mid + 1, src), (mid + 2, a_))
            stack.append((u, mid, mid + 2, mid + 1, writes))

    while stack:
        u, lo, hi, a, writes = stack.pop()
        if u < 0:
            for pos, val in writes:
                buf[pos] = val
            continue
        stack.append((-1, 0, 0, 0, tuple((pos, buf[pos]) for pos, _ in writes)))
        for pos, val in writes:
            buf[pos] = val
        x = buf[lo]
        k = _third(T, u, x, buf[hi])
        tri = tris[u]
        v = tri[(k + 2) % 3]
        p = _parent_in_funnel(xs, ys, buf, lo, hi, a, v)
        w = buf[p]
        parent[v] = w
        base = 0 if w == n else dist[w]
        dist[v] = base + abs(xs[v] - xs[w]) + abs(ys[v] - ys[w])
        order.append(v)
        nb = nbrs[u]
        right = nb[(k + 1) % 3]   # across y -> v
        left = nb[(k + 2) % 3]    # across v -> x
        if right >= 0:
            stack.append((right, p - 1, hi, a if p <= a else p, ((p - 1, v),)))
        if left >= 0:
            stack.append((left, lo, p + 1, a if p >= a else p, ((p + 1, v),)))
    if src < n:
        parent[src] = -1
        dist[src] = 0
    return ShortestPathTree(s, src, parent, dist, order)


def _sleeve_walk(P: Polygon, T: Triangulation, p: Point, q: Point):
    """Funnel walk from p to q along the dual path.

    Returns (pred map, index of p, index of q, coords); indices n and n+1
    stand for p and q when they are not vertices.
    """
    n = len(P)
    ip = P.index_of(p)
    iq = P.index_of(q)
    extra = []
    if ip is None:
        ip = n
        extra.append(p)
    if iq is None:
        iq = n + 1
        if ip != n:
            extra.append(p)   # keep slot n occupied
        extra.append(q)
    xs, ys = _coords(P, extra)
    tp = _start_triangle(T, p, ip)
    tq = _start_triangle(T, q, iq)
    path = T.dual_path(tp, tq)
    pred: Dict[int, int] = {iq: ip}
    if len(path) == 1:
        return pred, ip, iq, xs, ys
    tris, nbrs = T.triangles, T.neighbors
    x, y = T.shared_edge(path[0], path[1])
    m = len(path) + 8
    buf = [0] * (2 * m + 8)
    lo = m
    if ip == x or ip == y:
        buf[lo], buf[lo + 1] = x, y
        hi = lo + 1
        a = lo if ip == x else hi
    else:
        buf[lo], buf[lo + 1], buf[lo + 2] = x, ip, y
        hi = lo + 2
        a = lo + 1
    pred[x] = ip
    pred[y] = ip
    last = len(path) - 1
    for step in range(1, len(path)):
        u = path[step]
        k = _third(T, u, buf[lo], buf[hi])
        if step == last:
            v = iq
        else:
            v = tris[u][(k + 2) % 3]
        if v == buf[lo] or v == buf[hi]:
            # q is an endpoint of the entry edge; its predecessor is known
            break
        pos = _parent_in_funnel(xs, ys, buf, lo, hi, a, v)
        pred[v] = buf[pos]
        if step == last:
            break
        nxt = path[step + 1]
        if nbrs[u][(k + 1) % 3] == nxt:
            buf[pos - 1] = v
            lo = pos - 1
            if pos > a:
                a = pos
        else:
            buf[pos + 1] = v
            hi = pos + 1
            if pos < a:
                a = pos
    return pred, ip, iq, xs, ys


def shortest_path(P: Polygon, T: Triangulation, p, q) -> GeodesicPath:
    """Euclidean shortest path from p to q, with its L1 length."""
    p = _require_inside(P, p)
    q = _require_inside(P, q)
    if p == q:
        return GeodesicPath((p,), 0)
    pred, ip, iq, xs, ys = _sleeve_walk(P, T, p, q)
    seq = [iq]
    v = iq
    while v != ip:
        v = pred[v]
        seq.append(v)
    seq.reverse()
    pts = tuple(Point(xs[i], ys[i]) for i in seq)
    length = 0
    for a, b in zip(pts, pts[1:]):
        length += l1_distance(a, b)
    return GeodesicPath(pts, norm(length))


def geodesic_distance(P: Polygon, T: Triangulation, p, q) -> Scalar:
    return shortest_path(P, T, p, q).l1_length


def path_midpoint(path: GeodesicPath) -> Point:
    """Point at half the L1 length along the path, measured in L1 arclength."""
    pts = path.waypoints
    half = Fraction(path.l1_length) / 2
    for a, b in zip(pts, pts[1:]):
        seg = l1_distance(a, b)
        if half <= seg:
            if seg == 0:
                return a
            t = half / seg
            return Point(norm(a[0] + (b[0] - a[0]) * t), norm(a[1] + (b[1] - a[1]) * t))
        half -= seg
    return pts[-1]


# --- shortest path map -----------------------------------------------------

@dataclass(frozen=True)
class SPMCell:
    ring: Tuple[Point, ...]
    apex: Point
    apex_index: int
    additive: Scalar


@dataclass
class ShortestPathMap:
    """Cells of equal apex; d(source, x) = additive + |apex - x|_1 inside a cell."""

    source: Point
    polygon: Polygon
    tree: ShortestPathTree
    cells: List[SPMCell]
    cuts: List[Tuple[Point, Point]]
    adjacency: List[Tuple[int, int]]


def _split_ring(ring: List[Point], v: Point, h: Point) -> Tuple[List[Point], List[Point]]:
    """Split a CCW ring along the chord v-h (v a vertex, h on the boundary).

    The first part lies to the right of v->h, the second to the left.
    """
    from .geom import on_segment
    m = len(ring)
    i = ring.index(v)
    rot = ring[i:] + ring[:i]
    j = None
    for k in range(1, m):
        if rot[k] == h:
            return rot[:k + 1], [rot[k]] + rot[k + 1:] + [rot[0]]
    for k in range(m):
        if on_segment(rot[k], rot[(k + 1) % m], h):
            j = k
            break
    if j is None:
        raise RuntimeError("cut endpoint not on piece boundary")
    return rot[:j + 1] + [h], [h] + rot[j + 1:] + [rot[0]]


def shortest_path_map(P: Polygon, T: Triangulation, s) -> ShortestPathMap:
    """Subdivide P along extensions of shortest path tree edges.

    Every vertex v with parent u whose ray u->v re-enters the interior just
    beyond v contributes the cut from v to the first boundary point of that
    ray.  The side of a cut holding v's polygon edges is the shadow of v
    (apex v); the other side keeps the apex of the piece it splits.
    """
    from .geom import cross, ray_shoot_unchecked, ring_locate
    tree = shortest_path_tree(P, T, s)
    s = tree.source
    n = len(P)
    vs = P.vertices

    def node(i):
        return s if i == n or i == tree.source_index else vs[i]

    def node_dist(i):
        return 0 if i == n else tree.dist_l1[i]

    pieces: List[Tuple[List[Point], int]] = [(list(vs), tree.source_index)]
    cuts = []
    for v in tree.order:
        u = tree.parent[v]
        if u < 0:
            continue
        pu, pv = node(u), vs[v]
        d = (pv[0] - pu[0], pv[1] - pu[1])
        h = ray_shoot_unchecked(P, pv, d)
        if h == pv:
            continue
        cuts.append((pv, h))
        mid = Point(norm(Fraction(pv[0] + h[0]) / 2), norm(Fraction(pv[1] + h[1]) / 2))
        for k, (ring, apex) in enumerate(pieces):
            # the cut starts at pv, so its piece has pv on the boundary
            if pv in ring and ring_locate(ring, mid) > 0:
                break
        else:
            raise RuntimeError("cut midpoint in no piece")
        right, left = _split_ring(ring, pv, h)
        side = cross(pv, h, vs[v - 1]) or cross(pv, h, vs[(v + 1) % n])
        # the lit side keeps the piece's apex, which is an ancestor of v
        # further up a collinear chain when the tree path runs straight
        if side < 0:
            pieces[k:k + 1] = [(right, v), (left, apex)]
        else:
            pieces[k:k + 1] = [(right, apex), (left, v)]
    cells = [SPMCell(tuple(ring), node(a), a, node_dist(a)) for ring, a in pieces]
    return ShortestPathMap(s, P, tree, cells, cuts, _cell_adjacency(cells))


def _line_key(a: Point, b: Point):
    A, B = b[1] - a[1], a[0] - b[0]
    C = A * a[0] + B * a[1]
    if A != 0:
        return (1, Fraction(B) / A, Fraction(C) / A)
    return (0, 1, Fraction(C) / B)


def _cell_adjacency(cells: Sequence[SPMCell]) -> List[Tuple[int, int]]:
    """Pairs of cells sharing a boundary segment of positive length.

    Shared segments lie on a common line, so edges are bucketed by their
    supporting line and only compared within a bucket.
    """
    buckets: Dict[tuple, List[Tuple[int, Scalar, Scalar]]] = {}
    for ci, cell in enumerate(cells):
        ring = cell.ring
        for i in range(len(ring)):
            a, b = ring[i - 1], ring[i]
            if a == b:
                continue
            key = _line_key(a, b)
            axis = 0 if a[0] != b[0] else 1
            lo, hi = sorted((a[axis], b[axis]))
            buckets.setdefault(key, []).append((ci, lo, hi))
    found = set()
    for spans in buckets.values():
        if len(spans) < 2:
            continue
        spans.sort(key=lambda t: t[1])
        for k, (ci, lo, hi) in enumerate(spans):
            for cj, lo2, hi2 in spans[k + 1:]:
                if lo2 >= hi:
                    break
                if ci != cj and min(hi, hi2) > lo2:
                    found.add((min(ci, cj), max(ci, cj)))
    return sorted(found)


def spm_cell_of(M: ShortestPathMap, x) -> int:
    from .geom import ring_locate
    for k, cell in enumerate(M.cells):
        if ring_locate(cell.ring, x) >= 0:
            return k
    raise PointOutsidePolygon(x)


def spm_query(M: ShortestPathMap, x) -> Scalar:
    """d(source, x) from the cell containing x."""
    x = Point(norm(x[0]), norm(x[1]))
    cell = M.cells[spm_cell_of(M, x)]
    return norm(cell.additive + l1_distance(cell.apex, x))


# --- chord profiles ---------------------------------------------------------

@dataclass(frozen=True)
class Chord:
    """Slope +1 or -1 segment a-b; arclength t runs from a (t=0) to b (t=L)."""

    a: Point
    b: Point

    @property
    def L(self) -> Scalar:
        return l1_distance(self.a, self.b)

    @property
    def slope(self) -> int:
        dx = self.b[0] - self.a[0]
        dy = self.b[1] - self.a[1]
        return 1 if (dx > 0) == (dy > 0) else -1

    def point(self, t) -> Point:
        L = self.L
        if L == 0:
            return self.a
        f = Fraction(t) / L
        return Point(norm(self.a[0] + (self.b[0] - self.a[0]) * f),
                     norm(self.a[1] + (self.b[1] - self.a[1]) * f))

    def param(self, p) -> Scalar:
        """Arclength of a point on the chord's line."""
        return norm(2 * abs(Fraction(p[0]) - self.a[0]))


@dataclass
class ChordProfile:
    """Piecewise-linear d(source, chord(t)) with merged collinear pieces."""

    chord: Chord
    breakpoints: List[Tuple[Scalar, Scalar]]

    @property
    def slopes(self) -> List[int]:
        out = []
        for (t0, v0), (t1, v1) in zip(self.breakpoints, self.breakpoints[1:]):
            out.append(int((v1 - v0) / (t1 - t0)))
        return out

    def value(self, t) -> Scalar:
        bp = self.breakpoints
        for (t0, v0), (t1, v1) in zip(bp, bp[1:]):
            if t0 <= t <= t1:
                return norm(v0 + (v1 - v0) * (Fraction(t) - t0) / (t1 - t0))
        if len(bp) == 1 and t == bp[0][0]:
            return bp[0][1]
        raise ValueError("t outside chord")

    def sublevel(self, r) -> Optional[Tuple[Scalar, Scalar]]:
        """{t : value(t) <= r} as an interval, or None when empty.

        Assumes the three-piece shape, which makes every sublevel set an
        interval.
        """
        bp = self.breakpoints
        lo = hi = None
        for k, (t, v) in enumerate(bp):
            if v <= r:
                if lo is None:
                    lo = t
                    if k > 0:
                        t0, v0 = bp[k - 1]
                        lo = norm(t0 + (Fraction(r) - v0) * (t - t0) / (v - v0))
                hi = t
                if k + 1 < len(bp):
                    t1, v1 = bp[k + 1]
                    if v1 > r:
                        hi = norm(t + (Fraction(r) - v) * (t1 - t) / (v1 - v))
        if lo is None:
            return None
        return lo, hi


def make_chord(P: Polygon, a, b) -> Chord:
    from .geom import segment_in_polygon
    a = Point(norm(a[0]), norm(a[1]))
    b = Point(norm(b[0]), norm(b[1]))
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx == 0 or abs(dx) != abs(dy):
        raise ChordNotUnitSlope()
    if not segment_in_polygon(P, a, b):
        raise ChordNotInPolygon()
    return Chord(a, b)


def chord_profile(M: ShortestPathMap, chord) -> ChordProfile:
    """Exact restriction of d(source, .) to a slope +-1 chord.

    Candidate breakpoints are the chord's crossings with cell boundaries and
    with the axis-parallel lines through cell apexes; between consecutive
    candidates the distance is linear, so evaluating there is exact.
    """
    from .geom import segment_intersection_params
    if not isinstance(chord, Chord):
        chord = make_chord(M.polygon, chord[0], chord[1])
    else:
        chord = make_chord(M.polygon, chord.a, chord.b)
    a, b, L = chord.a, chord.b, chord.L
    d = (b[0] - a[0], b[1] - a[1])
    ts = {0, L}
    for cell in M.cells:
        ring = cell.ring
        for i in range(len(ring)):
            for u in segment_intersection_params(a, d, ring[i - 1], ring[i]):
                if 0 < u < 1:
                    ts.add(norm(u * L))
        ax, ay = cell.apex
        for u in (Fraction(ax - a[0]) / d[0], Fraction(ay - a[1]) / d[1]):
            if 0 < u < 1:
                ts.add(norm(u * L))
    ts = sorted(ts)
    pts = [(t, spm_query(M, chord.point(t))) for t in ts]
    merged = [pts[0]]
    for k in range(1, len(pts)):
        if len(merged) >= 2 and k < len(pts):
            (t0, v0), (t1, v1) = merged[-2], merged[-1]
            t2, v2 = pts[k]
            if (v1 - v0) * (t2 - t1) == (v2 - v1) * (t1 - t0):
                merged[-1] = pts[k]
                continue
        merged.append(pts[k])
    return ChordProfile(chord, merged)

"""Geodesic balls as explicit polygons, membership and Helly-type checks."""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .geodesic import (ShortestPathMap, geodesic_distance, path_midpoint, shortest_path,
                       shortest_path_map)
from .geom import (Point, Polygon, Scalar, cross, lerp, make_point, norm, on_segment,
                   ring_locate, segment_in_polygon, segment_intersection_params)
from .triangulate import Triangulation


@dataclass
class GeodesicBall:
    """B_s(r) in P.  ``boundary`` is a CCW ring; [] when empty, [s] when r = 0."""

    polygon: Polygon
    source: Point
    radius: Scalar
    boundary: List[Point]

    @property
    def empty(self) -> bool:
        return not self.boundary

    def contains(self, x) -> bool:
        """Exact membership of x in the constructed ball polygon."""
        if not self.boundary:
            return False
        if len(self.boundary) == 1:
            return x[0] == self.boundary[0][0] and x[1] == self.boundary[0][1]
        return ring_locate(self.boundary, x) >= 0

    def edges(self):
        b = self.boundary
        if len(b) < 2:
            return []
        return [(b[i], b[(i + 1) % len(b)]) for i in range(len(b))]


# --- construction ---------------------------------------------------------

def _clip(ring: Sequence[Point], keep) -> List[Point]:
    """Sutherland-Hodgman against one half-plane ``keep(p) >= 0`` (affine)."""
    out: List[Point] = []
    m = len(ring)
    for i in range(m):
        p, q = ring[i - 1], ring[i]
        fp, fq = keep(p), keep(q)
        if fq >= 0:
            if fp < 0:
                out.append(lerp(p, q, Fraction(fp) / (fp - fq)))
            out.append(q)
        elif fp >= 0:
            if fp > 0:
                out.append(lerp(p, q, Fraction(fp) / (fp - fq)))
    return out


def _dedupe(ring: List[Point]) -> List[Point]:
    out: List[Point] = []
    for p in ring:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def clip_to_diamond(ring: Sequence[Point], c: Point, rho: Scalar) -> List[Point]:
    """Ring clipped to the L1 disk of radius rho about c."""
    cx, cy = c
    out = list(ring)
    for sx, sy in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
        out = _clip(out, lambda p, sx=sx, sy=sy: rho - sx * (p[0] - cx) - sy * (p[1] - cy))
        if not out:
            return []
    return _dedupe(out)


def _union_rings(rings: List[List[Point]], keep: set) -> List[List[Point]]:
    """Boundary cycles of a union of interior-disjoint CCW rings.

    Edges are split at every ring vertex lying on them, opposite copies
    cancel, and the survivors are chained into cycles.  Collinear points
    are dropped unless listed in ``keep``.
    """
    pts = sorted({p for r in rings for p in r})
    directed: Dict[Tuple[Point, Point], int] = defaultdict(int)
    for r in rings:
        m = len(r)
        for i in range(m):
            a, b = r[i], r[(i + 1) % m]
            inner = [p for p in pts if p != a and p != b and on_segment(a, b, p)]
            inner.sort(key=lambda p: (p[0] - a[0]) ** 2 + (p[1] - a[1]) ** 2)
            chain = [a] + inner + [b]
            for u, v in zip(chain, chain[1:]):
                directed[(u, v)] += 1
    live = []
    for (u, v), k in directed.items():
        back = directed.get((v, u), 0)
        for _ in range(k - back):
            live.append((u, v))
    out_edges: Dict[Point, List[Point]] = defaultdict(list)
    for u, v in live:
        out_edges[u].append(v)
    cycles = []
    while out_edges:
        start = min(out_edges)
        cyc = [start]
        prev = None
        cur = start
        while True:
            outs = out_edges[cur]
            if len(outs) == 1 or prev is None:
                nxt = outs[0]
            else:
                nxt = _first_clockwise(cur, prev, outs)
            outs.remove(nxt)
            if not outs:
                del out_edges[cur]
            prev, cur = cur, nxt
            if cur == start:
                break
            cyc.append(cur)
        cycles.append(_drop_collinear(cyc, keep))
    return cycles


def _pseudo_angle(dx, dy) -> Fraction:
    """Monotone stand-in for the counterclockwise angle, in [0, 4)."""
    if dy >= 0:
        if dx > 0:
            return Fraction(dy, dx + dy)
        return 1 + Fraction(-dx, -dx + dy)
    if dx < 0:
        return 2 + Fraction(-dy, -dx - dy)
    return 3 + Fraction(dx, dx - dy)


def _first_clockwise(cur: Point, prev: Point, outs: List[Point]) -> Point:
    """Outgoing neighbour met first when turning clockwise from the way back."""
    back = _pseudo_angle(prev[0] - cur[0], prev[1] - cur[1])

    def cw(v):
        d = (back - _pseudo_angle(v[0] - cur[0], v[1] - cur[1])) % 4
        return d if d > 0 else 4
    return min(outs, key=cw)


def _drop_collinear(cyc: List[Point], keep: set) -> List[Point]:
    changed = True
    while changed and len(cyc) > 3:
        changed = False
        out = []
        m = len(cyc)
        for i in range(m):
            a, b, c = (out[-1] if out else cyc[i - 1]), cyc[i], cyc[(i + 1) % m]
            if b not in keep and cross(a, b, c) == 0 and \
                    (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) > 0:
                changed = True
                continue
            out.append(b)
        cyc = out
    return cyc


def _splice(cycles: List[List[Point]]) -> List[Point]:
    """Join cycles that touch at a shared vertex into one weakly simple ring."""
    ring = cycles[0]
    rest = cycles[1:]
    while rest:
        for k, cyc in enumerate(rest):
            common = set(ring) & set(cyc)
            if common:
                p = min(common)
                i, j = ring.index(p), cyc.index(p)
                ring = ring[:i + 1] + cyc[j + 1:] + cyc[:j + 1] + ring[i + 1:]
                del rest[k]
                break
        else:
            raise RuntimeError("ball union is disconnected")
    return ring


def geodesic_ball(P: Polygon, M: ShortestPathMap, r) -> GeodesicBall:
    """B_s(r) as a polygon: every SPM cell clipped to its apex's L1 disk."""
    s = M.source
    r = norm(Fraction(r)) if not isinstance(r, int) else r
    if r < 0:
        return GeodesicBall(P, s, r, [])
    if r == 0:
        return GeodesicBall(P, s, r, [s])
    pieces = []
    for cell in M.cells:
        rho = r - cell.additive
        if rho <= 0:
            continue
        piece = clip_to_diamond(cell.ring, cell.apex, rho)
        if len(piece) >= 3:
            pieces.append(piece)
    keep = set(P.vertices)
    cycles = _union_rings(pieces, keep)
    ring = cycles[0] if len(cycles) == 1 else _splice(cycles)
    if s in ring:
        k = ring.index(s)
        ring = ring[k:] + ring[:k]
    else:
        k = ring.index(min(ring))
        ring = ring[k:] + ring[:k]
    return GeodesicBall(P, s, r, ring)


def union_boundary_cycles(balls: Sequence[GeodesicBall]) -> int:
    """Number of boundary cycles of the union of the ball polygons.

    All edges are cut at their mutual intersections.  A piece belongs to
    the union boundary when its midpoint is outside every other ball, or
    when it runs along another ball's edge in the same direction (kept
    once); pieces are then chained into cycles.
    """
    rings = [list(b.boundary) for b in balls if len(b.boundary) >= 3]
    if not rings:
        return 0
    edges = []
    for k, ring in enumerate(rings):
        for i in range(len(ring)):
            edges.append((k, ring[i - 1], ring[i]))
    pieces = set()
    for k, a, b in edges:
        d = (b[0] - a[0], b[1] - a[1])
        ts = {Fraction(0), Fraction(1)}
        for k2, c, e in edges:
            if k2 == k:
                continue
            for t in segment_intersection_params(a, d, c, e):
                if 0 < t < 1:
                    ts.add(t)
        ts = sorted(ts)
        for t0, t1 in zip(ts, ts[1:]):
            u, v = lerp(a, b, t0), lerp(a, b, t1)
            m = lerp(a, b, (t0 + t1) / 2)
            on_boundary = True
            for k2, ring in enumerate(rings):
                if k2 == k:
                    continue
                where = ring_locate(ring, m)
                if where > 0:
                    on_boundary = False
                    break
                if where == 0 and not _runs_along(ring, m, u, v):
                    on_boundary = False
                    break
            if on_boundary:
                pieces.add((u, v))
    out_edges: Dict[Point, List[Point]] = defaultdict(list)
    for u, v in sorted(pieces):
        out_edges[u].append(v)
    cycles = 0
    while out_edges:
        start = min(out_edges)
        prev, cur = None, start
        while True:
            outs = out_edges[cur]
            nxt = outs[0] if (len(outs) == 1 or prev is None) else _first_clockwise(cur, prev, outs)
            outs.remove(nxt)
            if not outs:
                del out_edges[cur]
            prev, cur = cur, nxt
            if cur == start:
                break
        cycles += 1
    return cycles


def _runs_along(ring, m: Point, u: Point, v: Point) -> bool:
    """True if the ring edge through m is collinear with u->v and co-directed."""
    for i in range(len(ring)):
        a, b = ring[i - 1], ring[i]
        if on_segment(a, b, m):
            if cross(a, b, u) == 0 and cross(a, b, v) == 0:
                return (b[0] - a[0]) * (v[0] - u[0]) + (b[1] - a[1]) * (v[1] - u[1]) > 0
            return False
    return False


def _line(a: Point, b: Point) -> Tuple[Scalar, Scalar, Scalar]:
    A = b[1] - a[1]
    B = a[0] - b[0]
    C = -(A * a[0] + B * a[1])
    g = Fraction(abs(A) + abs(B))
    A, B, C = Fraction(A) / g, Fraction(B) / g, Fraction(C) / g
    if A < 0 or (A == 0 and B < 0):
        A, B, C = -A, -B, -C
    return A, B, C


def _area2(ring) -> Scalar:
    s = 0
    for i in range(len(ring)):
        a, b = ring[i - 1], ring[i]
        s += a[0] * b[1] - a[1] * b[0]
    return s


# --- predicates -----------------------------------------------------------

def ball_contains(P: Polygon, T: Triangulation, s, r, x) -> bool:
    return geodesic_distance(P, T, s, x) <= r


def balls_intersect(P: Polygon, T: Triangulation, p, q, r) -> Tuple[bool, Optional[Point]]:
    """Whether B_p(r) and B_q(r) meet, with the geodesic midpoint as witness."""
    path = shortest_path(P, T, p, q)
    if path.l1_length <= 2 * r:
        return True, path_midpoint(path)
    return False, None


def _segment_points(a: Point, b: Point, c: Point, d: Point) -> List[Point]:
    direction = (b[0] - a[0], b[1] - a[1])
    out = []
    for t in segment_intersection_params(a, direction, c, d):
        if 0 <= t <= 1:
            out.append(lerp(a, b, t))
    return out


def triple_common_point(B1: GeodesicBall, B2: GeodesicBall, B3: GeodesicBall) -> Optional[Point]:
    """A point in all three balls, searched among ball vertices, sources and
    pairwise boundary intersections; None if none qualifies."""
    balls = (B1, B2, B3)
    if any(b.empty for b in balls):
        return None
    cands: List[Point] = []
    for b in balls:
        cands.extend(b.boundary)
        cands.append(b.source)
    for i in range(3):
        for j in range(i + 1, 3):
            for a, bb in balls[i].edges():
                for c, d in balls[j].edges():
                    cands.extend(_segment_points(a, bb, c, d))
    seen = set()
    for p in cands:
        if p in seen:
            continue
        seen.add(p)
        if all(b.contains(p) for b in balls):
            return p
    return None


def _random_point_in(P: Polygon, rng: random.Random, box=None) -> Point:
    x0, y0, x1, y1 = box or P.bbox
    while True:
        x = Fraction(x0) + (Fraction(x1) - x0) * Fraction(rng.randrange(1 << 16), 1 << 16)
        y = Fraction(y0) + (Fraction(y1) - y0) * Fraction(rng.randrange(1 << 16), 1 << 16)
        p = make_point(x, y)
        if P.contains(p):
            return p


def segment_components(ring: Sequence[Point], a: Point, b: Point) -> int:
    """Number of connected components of segment ab inside the closed ring."""
    d = (b[0] - a[0], b[1] - a[1])
    ts = {Fraction(0), Fraction(1)}
    for i in range(len(ring)):
        for t in segment_intersection_params(a, d, ring[i - 1], ring[i]):
            if 0 < t < 1:
                ts.add(t)
    ts = sorted(ts)
    status = []
    for k, t in enumerate(ts):
        status.append(ring_locate(ring, lerp(a, b, t)) >= 0)
        if k + 1 < len(ts):
            status.append(ring_locate(ring, lerp(a, b, (t + ts[k + 1]) / 2)) >= 0)
    runs = 0
    prev = False
    for s in status:
        if s and not prev:
            runs += 1
        prev = s
    return runs


def pconvexity_witness(B: GeodesicBall, trials: int = 1000, seed: int = 0):
    """A segment inside P meeting B in two or more pieces, or None.

    Half the segments join two random points of the ball region's bounding
    box; the rest join ball vertices, which probes the boundary hardest.
    """
    if len(B.boundary) < 3:
        return None
    P = B.polygon
    rng = random.Random(seed)
    xs = [p[0] for p in B.boundary]
    ys = [p[1] for p in B.boundary]
    box = (min(xs), min(ys), max(xs), max(ys))
    for k in range(trials):
        if k % 2 == 0:
            a = _random_point_in(P, rng, box)
            b = _random_point_in(P, rng)
        else:
            a = rng.choice(B.boundary)
            b = rng.choice(B.boundary)
            if a == b:
                continue
        if not segment_in_polygon(P, a, b):
            continue
        if segment_components(B.boundary, a, b) >= 2:
            return (a, b)
    return None

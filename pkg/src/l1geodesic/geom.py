"""Exact rational geometry: scalars, points, predicates and simple polygons.

Every coordinate is an ``int`` or a :class:`fractions.Fraction`.  Integral
values are kept as plain ``int`` because integer arithmetic is an order of
magnitude faster than ``Fraction`` arithmetic and the two compare and hash
identically.  Nothing in this module takes a tolerance.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

Scalar = Union[int, Fraction]


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class NotSimple(GeometryError):
    def __init__(self, edges: Tuple[int, int]):
        self.edges = edges
        super().__init__(f"NotSimple: edges {edges[0]} and {edges[1]} intersect")


class TooFewVertices(GeometryError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"TooFewVertices: {count} distinct vertices, need at least 3")


class DegenerateArea(GeometryError):
    def __init__(self):
        super().__init__("DegenerateArea: polygon has zero area")


class PointOutsidePolygon(GeometryError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"PointOutsidePolygon: {fmt_point(point)}")


def scalar(value, float_ok: bool = False) -> Scalar:
    """Convert ``value`` to an exact scalar.

    Accepts ints, Fractions, decimal strings (``"-1.25"``) and ``"p/q"``
    strings.  Floats are rejected unless ``float_ok`` is set, in which case
    the exact binary value of the float is used.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, float):
        if not float_ok:
            raise TypeError(f"float coordinate {value!r} is lossy; pass it as a string")
        if not math.isfinite(value):
            raise ValueError(f"non-finite coordinate {value!r}")
        return norm(Fraction(value))
    if isinstance(value, Rational):
        return norm(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        text = value.strip()
        try:
            return norm(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse coordinate {value!r}") from exc
    raise TypeError(f"unsupported coordinate type {type(value).__name__}")


def norm(v: Scalar) -> Scalar:
    """Collapse integral Fractions to int."""
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


def fmt_scalar(v: Scalar) -> str:
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


class Point(NamedTuple):
    x: Scalar
    y: Scalar


def make_point(x, y) -> Point:
    return Point(norm(x), norm(y))


def as_point(p, float_ok: bool = False) -> Point:
    x, y = p
    return Point(scalar(x, float_ok), scalar(y, float_ok))


def fmt_point(p) -> str:
    return f"({fmt_scalar(p[0])},{fmt_scalar(p[1])})"


class Orientation(enum.IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


def cross(p, q, r) -> Scalar:
    """Twice the signed area of triangle pqr, i.e. (q - p) x (r - p)."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orientation(p, q, r) -> Orientation:
    c = cross(p, q, r)
    if c > 0:
        return Orientation.CCW
    if c < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


def l1_distance(p, q) -> Scalar:
    return abs(p[0] - q[0]) + abs(p[1] - q[1])


def lerp(p, q, t) -> Point:
    """Point p + t (q - p), exact."""
    return make_point(p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)


def midpoint(p, q) -> Point:
    return make_point(Fraction(p[0] + q[0]) / 2, Fraction(p[1] + q[1]) / 2)


def on_segment(a, b, p) -> bool:
    """True if p lies on the closed segment ab."""
    if cross(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments ab and cd share at least one point."""
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
            ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and on_segment(c, d, a):
        return True
    if d2 == 0 and on_segment(c, d, b):
        return True
    if d3 == 0 and on_segment(a, b, c):
        return True
    if d4 == 0 and on_segment(a, b, d):
        return True
    return False


def segments_cross_properly(a, b, c, d) -> bool:
    """Interiors cross at a single point that is not an endpoint of either."""
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    return (((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0))
            and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)))


def segment_intersection_params(o, d, a, b) -> List[Fraction]:
    """Parameters t (along o + t d) where the line through o meets segment ab.

    Collinear overlap reports the parameters of a and b.  No range filter on t.
    """
    ex, ey = b[0] - a[0], b[1] - a[1]
    denom = d[0] * ey - d[1] * ex
    wx, wy = a[0] - o[0], a[1] - o[1]
    if denom != 0:
        u_num = wx * d[1] - wy * d[0]
        # u in [0, 1] along ab
        if denom > 0:
            if u_num < 0 or u_num > denom:
                return []
        else:
            if u_num > 0 or u_num < denom:
                return []
        return [Fraction(wx * ey - wy * ex) / denom]
    if wx * d[1] - wy * d[0] != 0:
        return []
    dd = d[0] * d[0] + d[1] * d[1]
    ta = Fraction(wx * d[0] + wy * d[1]) / dd
    tb = Fraction((b[0] - o[0]) * d[0] + (b[1] - o[1]) * d[1]) / dd
    return [ta, tb]


# --- rings: plain vertex sequences, not necessarily validated -------------

def ring_area2(ring: Sequence) -> Scalar:
    """Twice the signed area (positive for counterclockwise)."""
    s = 0
    n = len(ring)
    for i in range(n):
        a = ring[i]
        b = ring[(i + 1) % n]
        s += a[0] * b[1] - a[1] * b[0]
    return s


def ring_locate(ring: Sequence, p) -> int:
    """1 inside, 0 on the boundary, -1 outside.  Crossing-count rule."""
    px, py = p[0], p[1]
    inside = False
    n = len(ring)
    a = ring[n - 1]
    for i in range(n):
        b = ring[i]
        ay, by = a[1], b[1]
        if (ay > py) != (by > py):
            c = (b[0] - a[0]) * (py - ay) - (by - ay) * (px - a[0])
            if c == 0:
                return 0
            # crossing lies to the right of p
            if (c > 0) == (by > ay):
                inside = not inside
        elif ay == py and by == py:
            if min(a[0], b[0]) <= px <= max(a[0], b[0]):
                return 0
        elif (ay == py and a[0] == px) or (by == py and b[0] == px):
            return 0
        a = b
    return 1 if inside else -1


def ring_boundary_element(ring: Sequence, p) -> Optional[Tuple[str, int]]:
    """('vertex', i) or ('edge', i) if p lies on the ring boundary."""
    n = len(ring)
    for i, v in enumerate(ring):
        if v[0] == p[0] and v[1] == p[1]:
            return ("vertex", i)
    for i in range(n):
        if on_segment(ring[i], ring[(i + 1) % n], p):
            return ("edge", i)
    return None


def segment_in_ring(ring: Sequence, a, b) -> bool:
    """True if the closed segment ab lies in the closed region bounded by ring.

    A proper crossing with an edge rejects at once.  Otherwise the segment is
    cut at every boundary contact and the midpoint of each piece is located.
    """
    if a[0] == b[0] and a[1] == b[1]:
        return ring_locate(ring, a) >= 0
    ax, ay = a[0], a[1]
    bx, by = b[0], b[1]
    dx, dy = bx - ax, by - ay
    dd = dx * dx + dy * dy
    x0, x1 = (ax, bx) if ax <= bx else (bx, ax)
    y0, y1 = (ay, by) if ay <= by else (by, ay)
    ts = {0, 1}
    c = ring[-1]
    for e in ring:
        cx, cy = c[0], c[1]
        ex, ey = e[0], e[1]
        c = e
        if (cx < x0 and ex < x0) or (cx > x1 and ex > x1) or \
                (cy < y0 and ey < y0) or (cy > y1 and ey > y1):
            continue
        fx, fy = ex - cx, ey - cy
        d1 = fx * (ay - cy) - fy * (ax - cx)
        d2 = fx * (by - cy) - fy * (bx - cx)
        if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0):
            continue
        d3 = dx * (cy - ay) - dy * (cx - ax)
        d4 = dx * (ey - ay) - dy * (ex - ax)
        if (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0):
            continue
        if d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
            return False
        if d3 == 0:
            t = Fraction((cx - ax) * dx + (cy - ay) * dy, dd)
            if 0 < t < 1:
                ts.add(t)
        if d4 == 0:
            t = Fraction((ex - ax) * dx + (ey - ay) * dy, dd)
            if 0 < t < 1:
                ts.add(t)
    ts = sorted(ts)
    for t0, t1 in zip(ts, ts[1:]):
        if ring_locate(ring, lerp(a, b, Fraction(t0 + t1) / 2)) < 0:
            return False
    return True


def ring_ray_params(ring: Sequence, origin, direction) -> List[Fraction]:
    """Sorted distinct t >= 0 where the ray origin + t*direction meets the ring."""
    ts = {Fraction(0)}
    n = len(ring)
    for i in range(n):
        for t in segment_intersection_params(origin, direction, ring[i], ring[(i + 1) % n]):
            if t > 0:
                ts.add(t)
    return sorted(ts)


# --- validated polygons ----------------------------------------------------

class Where(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


class Location(NamedTuple):
    where: Where
    edge: Optional[int] = None
    vertex: Optional[int] = None


@dataclass(frozen=True, eq=False)
class Polygon:
    """A simple polygon with counterclockwise vertices.

    Build instances through :func:`validate_polygon`; the constructor does
    not check anything.  Edge ``i`` runs from vertex ``i`` to ``i + 1``.
    """

    vertices: Tuple[Point, ...]
    _bbox: Tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        object.__setattr__(self, "_bbox", (min(xs), min(ys), max(xs), max(ys)))

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def bbox(self) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
        return self._bbox

    def edge(self, i: int) -> Tuple[Point, Point]:
        return self.vertices[i], self.vertices[(i + 1) % len(self.vertices)]

    def area(self) -> Scalar:
        return norm(Fraction(ring_area2(self.vertices)) / 2)

    def index_of(self, p) -> Optional[int]:
        try:
            return self._index[(p[0], p[1])]
        except AttributeError:
            object.__setattr__(self, "_index", {(v[0], v[1]): i for i, v in enumerate(self.vertices)})
            return self._index.get((p[0], p[1]))
        except KeyError:
            return None

    def is_reflex(self, i: int) -> bool:
        n = len(self.vertices)
        return cross(self.vertices[i - 1], self.vertices[i], self.vertices[(i + 1) % n]) < 0

    def contains(self, p) -> bool:
        """Closed containment (boundary counts as inside)."""
        x0, y0, x1, y1 = self._bbox
        if not (x0 <= p[0] <= x1 and y0 <= p[1] <= y1):
            return False
        return ring_locate(self.vertices, p) >= 0

    def cyclic_key(self) -> Tuple[Point, ...]:
        """Vertex tuple rotated to start at the lexicographically smallest vertex."""
        vs = self.vertices
        k = min(range(len(vs)), key=lambda i: vs[i])
        return vs[k:] + vs[:k]


def _drop_degenerate(pts: List[Point]) -> List[Point]:
    """Remove repeated points and middle vertices of collinear triples."""
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        out: List[Point] = []
        for p in pts:
            if out and out[-1] == p:
                changed = True
                continue
            out.append(p)
        while len(out) > 1 and out[0] == out[-1]:
            out.pop()
            changed = True
        pts = out
        if len(pts) < 3:
            break
        keep = [True] * len(pts)
        n = len(pts)
        i = 0
        # one left-to-right sweep; neighbours are the nearest kept vertices
        prev = n - 1
        kept = n
        while i < n:
            nxt = (i + 1) % n
            if cross(pts[prev], pts[i], pts[nxt]) == 0 and kept > 2:
                keep[i] = False
                kept -= 1
                changed = True
            else:
                prev = i
            i += 1
        pts = [p for p, k in zip(pts, keep) if k]
    return pts


def validate_polygon(raw: Iterable, float_ok: bool = False) -> Polygon:
    """Canonicalize raw vertices into a counterclockwise simple :class:`Polygon`.

    Duplicate consecutive points and the middle vertex of every collinear
    triple are dropped, the ring is checked for simplicity, and clockwise
    input is reversed (the first vertex stays first).
    """
    pts = [p if isinstance(p, Point) and _exact(p) else as_point(p, float_ok) for p in raw]
    if len(pts) < 3:
        raise TooFewVertices(len(pts))
    pts = _drop_degenerate(pts)
    if len(pts) < 3:
        raise TooFewVertices(len(pts))
    bad = find_self_intersection(pts)
    if bad is not None:
        raise NotSimple(bad)
    a2 = ring_area2(pts)
    if a2 == 0:
        raise DegenerateArea()
    if a2 < 0:
        pts = [pts[0]] + pts[:0:-1]
    return Polygon(tuple(pts))


def _exact(p) -> bool:
    return all(type(c) is int or type(c) is Fraction for c in p)


def find_self_intersection(pts: Sequence) -> Optional[Tuple[int, int]]:
    """Lowest-index pair of edges that violates simplicity, or None.

    Non-adjacent edges may not touch; adjacent edges may only share their
    common endpoint.  Candidate pairs come from a uniform grid over the
    bounding box, so typical inputs run in near-linear time.
    """
    n = len(pts)
    if n < 4:
        return None if n < 3 or cross(pts[0], pts[1], pts[2]) != 0 else (0, 1)
    bad: List[Tuple[int, int]] = []
    for i, j in _candidate_edge_pairs(pts):
        if _edges_conflict(pts, i, j):
            bad.append((i, j))
    return min(bad) if bad else None


def _edges_conflict(pts, i: int, j: int) -> bool:
    n = len(pts)
    a, b = pts[i], pts[(i + 1) % n]
    c, d = pts[j], pts[(j + 1) % n]
    if (i + 1) % n == j:
        # share b == c; conflict only if they overlap beyond it
        return cross(a, b, d) == 0 and _dot(a[0] - b[0], a[1] - b[1], d[0] - b[0], d[1] - b[1]) > 0
    if (j + 1) % n == i:
        return cross(c, d, b) == 0 and _dot(c[0] - d[0], c[1] - d[1], b[0] - d[0], b[1] - d[1]) > 0
    return segments_intersect(a, b, c, d)


def _dot(ax, ay, bx, by):
    return ax * bx + ay * by


def _candidate_edge_pairs(pts: Sequence):
    n = len(pts)
    if n <= 48:
        for i in range(n):
            for j in range(i + 1, n):
                yield i, j
        return
    fx = [float(p[0]) for p in pts]
    fy = [float(p[1]) for p in pts]
    x0, x1, y0, y1 = min(fx), max(fx), min(fy), max(fy)
    k = max(1, int(math.sqrt(n)))
    sx = (x1 - x0) / k or 1.0
    sy = (y1 - y0) / k or 1.0
    grid: dict = {}
    # rounding to float and to cell keys is monotone, so an exact common
    # point of two edges falls in a cell registered for both of them
    for i in range(n):
        j = (i + 1) % n
        cx0 = int((min(fx[i], fx[j]) - x0) / sx)
        cx1 = int((max(fx[i], fx[j]) - x0) / sx)
        cy0 = int((min(fy[i], fy[j]) - y0) / sy)
        cy1 = int((max(fy[i], fy[j]) - y0) / sy)
        for cx in range(cx0, cx1 + 1):
            for cy in range(cy0, cy1 + 1):
                grid.setdefault((cx, cy), []).append(i)
    seen = set()
    for bucket in grid.values():
        m = len(bucket)
        for s in range(m):
            for t in range(s + 1, m):
                i, j = bucket[s], bucket[t]
                key = (i, j) if i < j else (j, i)
                if key not in seen:
                    seen.add(key)
                    yield key


def locate_point(P: Polygon, p) -> Location:
    """Classify p against P: interior, boundary (with vertex/edge id) or exterior."""
    el = ring_boundary_element(P.vertices, p)
    if el is not None:
        kind, idx = el
        if kind == "vertex":
            return Location(Where.BOUNDARY, edge=idx, vertex=idx)
        return Location(Where.BOUNDARY, edge=idx)
    if ring_locate(P.vertices, p) > 0:
        return Location(Where.INTERIOR)
    return Location(Where.EXTERIOR)


def segment_in_polygon(P: Polygon, a, b) -> bool:
    return segment_in_ring(P.vertices, a, b)


def _ray_point(origin, direction, t) -> Point:
    return make_point(origin[0] + direction[0] * t, origin[1] + direction[1] * t)


def ray_shoot(P: Polygon, origin, direction) -> Point:
    """First boundary point strictly hit by the open ray from ``origin``.

    When ``origin`` is on the boundary and the ray leaves P (or runs along
    an edge) immediately, ``origin`` itself is returned.
    """
    if direction[0] == 0 and direction[1] == 0:
        raise ValueError("zero direction")
    if not P.contains(origin):
        raise PointOutsidePolygon(origin)
    return ray_shoot_unchecked(P, origin, direction)


def ray_shoot_unchecked(P: Polygon, origin, direction) -> Point:
    """:func:`ray_shoot` for an origin already known to lie in P."""
    ts = ring_ray_params(P.vertices, origin, direction)
    if len(ts) < 2:
        return Point(origin[0], origin[1])
    t1 = ts[1]
    if ring_locate(P.vertices, _ray_point(origin, direction, t1 / 2)) <= 0:
        return Point(origin[0], origin[1])
    return _ray_point(origin, direction, t1)


def ray_exit(P: Polygon, origin, direction) -> Point:
    """Farthest point h with the whole segment origin-h inside P.

    Unlike :func:`ray_shoot` this passes through grazing contacts with the
    boundary (reflex vertices touched tangentially, edges run along).
    """
    if direction[0] == 0 and direction[1] == 0:
        raise ValueError("zero direction")
    if not P.contains(origin):
        raise PointOutsidePolygon(origin)
    ts = ring_ray_params(P.vertices, origin, direction)
    last = ts[0]
    for t0, t1 in zip(ts, ts[1:]):
        if ring_locate(P.vertices, _ray_point(origin, direction, (t0 + t1) / 2)) < 0:
            break
        last = t1
    return _ray_point(origin, direction, last)

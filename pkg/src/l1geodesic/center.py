"""Geodesic radius and the full center set.

The center is a slope +1 or -1 segment (possibly a point) on the chord
through the midpoint of a diametral geodesic.  Along such a chord the
distance from any vertex is decreasing, then flat, then increasing, all at
unit rate in L1 arclength, so each vertex cuts out its admissible interval
from just the two endpoint distances.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .diameter import DiameterResult, diameter
from .geodesic import (Chord, geodesic_distance, path_midpoint, shortest_path,
                       shortest_path_tree)
from .geom import Point, Polygon, Scalar, norm, ray_exit
from .triangulate import Triangulation, triangulate


class CenterError(RuntimeError):
    pass


@dataclass(frozen=True)
class ChordInterval:
    lo: Scalar
    hi: Scalar

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    @property
    def length(self) -> Scalar:
        return self.hi - self.lo


@dataclass(frozen=True)
class DegeneratePoint:
    point: Point


@dataclass
class CenterResult:
    radius: Scalar
    segment: Tuple[Point, Point]
    chord: Optional[Chord] = None
    diameter: Optional[DiameterResult] = None

    @property
    def is_point(self) -> bool:
        return self.segment[0] == self.segment[1]


def vertex_interval(dva: Scalar, dvb: Scalar, rad: Scalar, L: Scalar) -> ChordInterval:
    """Arclength interval of the chord within distance ``rad`` of a vertex."""
    lo = max(0, dva - rad)
    hi = L - max(0, dvb - rad)
    return ChordInterval(norm(Fraction(lo)), norm(Fraction(hi)))


def _intersect(a: ChordInterval, b: ChordInterval) -> ChordInterval:
    return ChordInterval(max(a.lo, b.lo), min(a.hi, b.hi))


def _chord_through(P: Polygon, m: Point, sigma: int) -> Chord:
    a = ray_exit(P, m, (-1, -sigma))
    b = ray_exit(P, m, (1, sigma))
    return Chord(a, b)


def center_chord(P: Polygon, T: Triangulation, v1: int, v2: int,
                 rad: Scalar) -> Union[Chord, DegeneratePoint]:
    """Chord of the right slope through the diametral midpoint.

    Both slopes are tried; the one on which the two diametral balls of
    radius ``rad`` overlap in a longer interval wins.
    """
    p, q = P.vertices[v1], P.vertices[v2]
    m = path_midpoint(shortest_path(P, T, p, q))
    best, best_len = None, None
    for sigma in (1, -1):
        ch = _chord_through(P, m, sigma)
        L = ch.L
        if L == 0:
            continue
        iv = ChordInterval(0, L)
        for v in (p, q):
            iv = _intersect(iv, vertex_interval(geodesic_distance(P, T, v, ch.a),
                                                geodesic_distance(P, T, v, ch.b), rad, L))
        if iv.empty:
            continue
        if best_len is None or iv.length > best_len:
            best, best_len = ch, iv.length
    if best is None or best_len == 0:
        return DegeneratePoint(m)
    return best


def center(P: Polygon, T: Optional[Triangulation] = None,
           diam: Optional[DiameterResult] = None) -> CenterResult:
    """Radius (half the diameter) and the center segment of P."""
    if T is None:
        T = triangulate(P)
    if diam is None:
        diam = diameter(P, T)
    rad = norm(Fraction(diam.value) / 2)
    v1, v2 = diam.pair
    ch = center_chord(P, T, v1, v2, rad)
    if isinstance(ch, DegeneratePoint):
        m = ch.point
        ecc = max(shortest_path_tree(P, T, m).dist_l1)
        if ecc != rad:
            raise CenterError(f"degenerate center candidate has eccentricity {ecc}, radius {rad}")
        return CenterResult(rad, (m, m), None, diam)
    da = shortest_path_tree(P, T, ch.a).dist_l1
    db = shortest_path_tree(P, T, ch.b).dist_l1
    L = ch.L
    iv = ChordInterval(0, L)
    for v in range(len(P)):
        iv = _intersect(iv, vertex_interval(da[v], db[v], rad, L))
    if iv.empty:
        raise CenterError(f"empty center interval [{iv.lo}, {iv.hi}] on chord {ch}")
    return CenterResult(rad, (ch.point(iv.lo), ch.point(iv.hi)), ch, diam)

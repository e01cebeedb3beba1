"""Executable property suites shared by the ``check`` command and the tests."""
from __future__ import annotations

import operator
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .balls import (GeodesicBall, balls_intersect, geodesic_ball, pconvexity_witness,
                    triple_common_point, union_boundary_cycles)
from .center import center
from .diameter import diameter
from .geodesic import ShortestPathMap, shortest_path_map, spm_query
from .geom import Point, Polygon, fmt_point, make_point, ray_exit, segment_in_polygon
from .oracle import (check_totally_monotone, oracle_center_check, oracle_diameter,
                     oracle_distance)
from .triangulate import Triangulation, triangulate


@dataclass
class CheckResult:
    name: str
    ok: bool
    trials: int = 0
    witness: Optional[dict] = None


def random_point(P: Polygon, rng: random.Random, bits: int = 12) -> Point:
    x0, y0, x1, y1 = P.bbox
    while True:
        x = Fraction(x0) + (Fraction(x1) - x0) * Fraction(rng.randrange(1 << bits), 1 << bits)
        y = Fraction(y0) + (Fraction(y1) - y0) * Fraction(rng.randrange(1 << bits), 1 << bits)
        p = make_point(x, y)
        if P.contains(p):
            return p


def random_segment(P: Polygon, rng: random.Random) -> Tuple[Point, Point]:
    while True:
        a, b = random_point(P, rng), random_point(P, rng)
        if a != b and segment_in_polygon(P, a, b):
            return a, b


def random_axis_segment(P: Polygon, rng: random.Random) -> Tuple[Point, Point]:
    """A maximal horizontal or vertical segment of P through a random point."""
    while True:
        p = random_point(P, rng)
        d = (1, 0) if rng.random() < 0.5 else (0, 1)
        a = ray_exit(P, p, (-d[0], -d[1]))
        b = ray_exit(P, p, d)
        if a != b:
            return a, b


def _at(a: Point, b: Point, t: Fraction) -> Point:
    return make_point(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def _ts(rng: random.Random, k: int) -> List[Fraction]:
    return sorted(Fraction(rng.randrange(1 << 10), 1 << 10) for _ in range(k))


def axis_convexity(M: ShortestPathMap, trials: int, rng: random.Random) -> CheckResult:
    """Midpoint convexity of d(s, .) along axis-parallel segments."""
    P = M.polygon
    for _ in range(trials):
        a, b = random_axis_segment(P, rng)
        t1, t2 = _ts(rng, 2)
        f1 = spm_query(M, _at(a, b, t1))
        f2 = spm_query(M, _at(a, b, t2))
        fm = spm_query(M, _at(a, b, (t1 + t2) / 2))
        if 2 * fm > f1 + f2:
            return CheckResult("axis-convexity", False, trials,
                               {"source": fmt_point(M.source), "segment": [fmt_point(a), fmt_point(b)],
                                "t": [str(t1), str(t2)]})
    return CheckResult("axis-convexity", True, trials)


def quasiconvexity(M: ShortestPathMap, trials: int, rng: random.Random) -> CheckResult:
    """No strict interior maximum of d(s, .) along segments inside P."""
    P = M.polygon
    for _ in range(trials):
        a, b = random_segment(P, rng)
        ts = _ts(rng, 3)
        f = [spm_query(M, _at(a, b, t)) for t in ts]
        if f[1] > max(f[0], f[2]):
            return CheckResult("quasiconvexity", False, trials,
                               {"source": fmt_point(M.source), "segment": [fmt_point(a), fmt_point(b)],
                                "t": [str(t) for t in ts]})
    return CheckResult("quasiconvexity", True, trials)


def ball_slopes(B: GeodesicBall) -> Optional[dict]:
    """First ball edge that is neither on the polygon boundary nor slope +-1."""
    from .geom import on_segment
    P = B.polygon
    for a, b in B.edges():
        if abs(b[0] - a[0]) == abs(b[1] - a[1]):
            continue
        if any(on_segment(*P.edge(i), a) and on_segment(*P.edge(i), b) for i in range(len(P))):
            continue
        return {"edge": [fmt_point(a), fmt_point(b)]}
    return None


def ball_membership(B: GeodesicBall, trials: int, rng: random.Random,
                    mutate: bool = False) -> CheckResult:
    """Ball polygon membership agrees with the geodesic distance test."""
    M_cmp = operator.gt if mutate else operator.le
    P = B.polygon
    for _ in range(trials):
        x = random_point(P, rng)
        d = oracle_distance(P, B.source, x)
        if B.contains(x) != M_cmp(d, B.radius):
            return CheckResult("ball-membership", False, trials,
                               {"source": fmt_point(B.source), "radius": str(B.radius),
                                "point": fmt_point(x), "distance": str(d)})
    return CheckResult("ball-membership", True, trials)


class BallCache:
    def __init__(self, P: Polygon, T: Triangulation):
        self.P, self.T = P, T
        self.maps: Dict[Point, ShortestPathMap] = {}
        self.balls: Dict[Tuple[Point, Fraction], GeodesicBall] = {}

    def spm(self, s: Point) -> ShortestPathMap:
        M = self.maps.get(s)
        if M is None:
            M = self.maps[s] = shortest_path_map(self.P, self.T, s)
        return M

    def ball(self, s: Point, r) -> GeodesicBall:
        key = (s, r)
        B = self.balls.get(key)
        if B is None:
            B = self.balls[key] = geodesic_ball(self.P, self.spm(s), r)
        return B


def helly_triples(cache: BallCache, sources: List[Point], radii: List[Fraction], trials: int,
                  rng: random.Random) -> Tuple[CheckResult, int]:
    """Pairwise-intersecting triples must share a point and have a hole-free union."""
    P, T = cache.P, cache.T
    qualified = 0
    for _ in range(trials):
        s3 = rng.sample(sources, 3)
        r = rng.choice(radii)
        if not all(balls_intersect(P, T, p, q, r)[0] for p, q in ((s3[0], s3[1]), (s3[1], s3[2]),
                                                                 (s3[0], s3[2]))):
            continue
        qualified += 1
        bs = [cache.ball(s, r) for s in s3]
        p = triple_common_point(*bs)
        wit = {"sources": [fmt_point(s) for s in s3], "radius": str(r)}
        if p is None:
            return CheckResult("helly", False, qualified, wit), qualified
        if union_boundary_cycles(bs) != 1:
            wit["problem"] = "union has more than one boundary cycle"
            return CheckResult("helly", False, qualified, wit), qualified
    return CheckResult("helly", True, qualified), qualified


def run_checks(P: Polygon, trials: int = 200, seed: int = 0, mutate: bool = False,
               oracle: bool = True) -> List[CheckResult]:
    """Every property suite on one polygon.  Trial counts scale with ``trials``."""
    rng = random.Random(seed)
    T = triangulate(P)
    out: List[CheckResult] = []
    cache = BallCache(P, T)

    sources = [random_point(P, rng) for _ in range(3)] + [P.vertices[rng.randrange(len(P))]
                                                         for _ in range(2)]
    d = diameter(P, T)
    radii = sorted({Fraction(d.value) * k / 8 for k in range(1, 9)})

    for s in sources[:2]:
        M = cache.spm(s)
        out.append(axis_convexity(M, trials, rng))
        out.append(quasiconvexity(M, trials, rng))

    slope_bad = None
    pconv_bad = None
    for s in sources[:3]:
        for r in radii[::2]:
            B = cache.ball(s, r)
            w = ball_slopes(B)
            if w and slope_bad is None:
                slope_bad = dict(w, source=fmt_point(s), radius=str(r))
            v = pconvexity_witness(B, max(1, trials // 4), rng.randrange(1 << 30))
            if v and pconv_bad is None:
                pconv_bad = {"source": fmt_point(s), "radius": str(r),
                             "segment": [fmt_point(v[0]), fmt_point(v[1])]}
    out.append(CheckResult("ball-slopes", slope_bad is None, 0, slope_bad))
    out.append(CheckResult("p-convexity", pconv_bad is None, trials, pconv_bad))

    B = cache.ball(sources[0], radii[len(radii) // 2])
    if oracle or mutate:
        out.append(ball_membership(B, max(1, trials // 10), rng, mutate))

    res, _ = helly_triples(cache, sources, radii, trials, rng)
    out.append(res)

    if oracle and len(P) <= 128:
        _, v = oracle_diameter(P)
        out.append(CheckResult("diameter-oracle", v == d.value, 1,
                               None if v == d.value else {"fast": str(d.value), "oracle": str(v)}))
        c = center(P, T, d)
        out.append(CheckResult("radius-half-diameter", 2 * c.radius == d.value, 1))
        rep = oracle_center_check(P, c, samples=16, seed=seed)
        out.append(CheckResult("center-oracle", rep.ok, rep.checked,
                               None if rep.ok else {"message": rep.message,
                                                    "point": fmt_point(rep.witness) if rep.witness else None}))
        viol = None
        for pair in d.chain_pairs:
            viol = viol or check_totally_monotone(P, pair, trials, rng.randrange(1 << 30))
        out.append(CheckResult("total-monotonicity", viol is None, trials,
                               None if viol is None else {"quadruple": list(viol)}))
    return out

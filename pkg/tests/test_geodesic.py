import random
import re
from fractions import Fraction as F

import pytest

from corpus import DIAMOND, FIG1_RIGHT, L_SHAPE, hand_corpus
from l1geodesic import (geodesic_distance, random_polygon, shortest_path, shortest_path_map,
                        shortest_path_tree, spm_query, triangulate, validate_polygon)
from l1geodesic.geodesic import (ChordNotInPolygon, ChordNotUnitSlope, chord_profile, make_chord,
                                 path_midpoint)
from l1geodesic.geom import PointOutsidePolygon, l1_distance, lerp, segment_in_polygon
from l1geodesic.oracle import oracle_distance
from l1geodesic.properties import random_axis_segment, random_point, random_segment


def setup(raw):
    P = validate_polygon(raw)
    return P, triangulate(P)


D, TD = setup(DIAMOND)
L, TL = setup(L_SHAPE)
FR, TFR = setup(FIG1_RIGHT)


def _random_polys(count, lo, hi, seed):
    rng = random.Random(seed)
    return [random_polygon(rng.randrange(lo, hi), s) for s in range(count)]


def test_shortest_path_examples():
    p = shortest_path(D, TD, (1, 0), (-1, 0))
    assert p.waypoints == ((1, 0), (-1, 0)) and p.l1_length == 2
    p = shortest_path(L, TL, (2, 0), (1, 2))
    assert p.waypoints == ((2, 0), (1, 1), (1, 2)) and p.l1_length == 3
    q = (F(1, 3), F(1, 5))
    p = shortest_path(L, TL, q, q)
    assert p.waypoints == (q,) and p.l1_length == 0


def test_shortest_path_outside():
    with pytest.raises(PointOutsidePolygon):
        shortest_path(L, TL, (0, 0), (3, 3))


def test_geodesic_distance_examples():
    assert geodesic_distance(FR, TFR, (F(-5, 7), F(4, 7)), (F(6, 7), F(-2, 7))) == F(17, 7)
    assert geodesic_distance(FR, TFR, (0, 0), (0, 0)) == 0
    assert geodesic_distance(D, TD, (1, 0), (0, 1)) == 2


def test_spt_examples():
    t = shortest_path_tree(D, TD, (0, 0))
    assert t.dist_l1 == [1, 1, 1, 1]
    assert all(p == len(D) for p in t.parent)
    t = shortest_path_tree(L, TL, (2, 0))
    k = L.index_of((1, 2))
    assert L.vertices[t.parent[k]] == (1, 1) and t.dist_l1[k] == 3
    v = L.index_of((1, 1))
    t = shortest_path_tree(L, TL, (1, 1))
    assert t.dist_l1[v] == 0 and t.parent[v] == -1 and t.source_index == v


def test_spm_examples():
    M = shortest_path_map(D, TD, (0, 0))
    assert len(M.cells) == 1
    assert M.cells[0].apex == (0, 0) and M.cells[0].additive == 0
    M = shortest_path_map(L, TL, (2, 0))
    assert sorted((c.apex, c.additive) for c in M.cells) == [((1, 1), 2), ((2, 0), 0)]
    assert spm_query(M, (2, 0)) == 0
    assert spm_query(M, (1, 2)) == 3


def _polygon_pool():
    return list(hand_corpus().values()) + _random_polys(30, 5, 48, 17)


@pytest.mark.parametrize("P", _polygon_pool())
def test_spt_matches_oracle(P):
    T = triangulate(P)
    rng = random.Random(len(P))
    sources = [P.vertices[0], P.vertices[len(P) // 2], random_point(P, rng)]
    for s in sources:
        t = shortest_path_tree(P, T, s)
        for v in range(len(P)):
            assert t.dist_l1[v] == oracle_distance(P, s, P.vertices[v])
            # tree edges lie in P and distances add along them
            if t.parent[v] >= 0:
                path = t.path_to(P, v)
                assert path[0] == t.source and path[-1] == P.vertices[v]
                par = path[-2]
                assert segment_in_polygon(P, par, P.vertices[v])
        rank = {v: k for k, v in enumerate(t.order)}
        assert sorted(t.order) == list(range(len(P)))
        assert all(t.parent[v] < 0 or t.parent[v] == len(P) or rank[t.parent[v]] < rank[v]
                   for v in range(len(P)))


@pytest.mark.parametrize("P", _polygon_pool()[::2])
def test_spm_matches_oracle(P):
    T = triangulate(P)
    rng = random.Random(7 * len(P))
    s = random_point(P, rng)
    M = shortest_path_map(P, T, s)
    for _ in range(100):
        x = random_point(P, rng)
        assert spm_query(M, x) == oracle_distance(P, s, x)
    # cells tile P
    total = sum(abs(_area(c.ring)) for c in M.cells)
    assert total == P.area()


def _area(ring):
    s = 0
    for i in range(len(ring)):
        a, b = ring[i - 1], ring[i]
        s += a[0] * b[1] - a[1] * b[0]
    return F(s, 2)


@pytest.mark.parametrize("P", _polygon_pool()[::3])
def test_paths_are_valid(P):
    T = triangulate(P)
    rng = random.Random(len(P) + 1)
    for _ in range(20):
        p, q = random_point(P, rng), random_point(P, rng)
        path = shortest_path(P, T, p, q)
        w = path.waypoints
        assert w[0] == p and w[-1] == q
        assert all(segment_in_polygon(P, a, b) for a, b in zip(w, w[1:]))
        assert path.l1_length == sum(l1_distance(a, b) for a, b in zip(w, w[1:]))
        assert path.l1_length == oracle_distance(P, p, q)


def test_metric_properties():
    rng = random.Random(99)
    pairs = 0
    for P in _random_polys(10, 8, 40, 5):
        T = triangulate(P)
        for _ in range(100):
            p, q, r = (random_point(P, rng) for _ in range(3))
            dpq = geodesic_distance(P, T, p, q)
            assert dpq == geodesic_distance(P, T, q, p)
            assert geodesic_distance(P, T, p, r) <= dpq + geodesic_distance(P, T, q, r)
            assert dpq >= l1_distance(p, q)
            if segment_in_polygon(P, p, q):
                assert dpq == l1_distance(p, q)
            pairs += 1
    assert pairs >= 1000


def test_axis_convexity_and_quasiconvexity():
    from l1geodesic.properties import axis_convexity, quasiconvexity
    rng = random.Random(4)
    for P in _random_polys(6, 8, 40, 8) + [L, hand_corpus()["spiral"]]:
        T = triangulate(P)
        M = shortest_path_map(P, T, random_point(P, rng))
        assert axis_convexity(M, 60, rng).ok
        assert quasiconvexity(M, 60, rng).ok


def test_chord_profile_l_shape():
    M = shortest_path_map(L, TL, (2, 1))
    pr = chord_profile(M, ((2, 0), (0, 2)))
    assert pr.breakpoints == [(0, 1), (2, 1), (4, 3)]
    assert pr.slopes == [0, 1]


def test_chord_profile_source_on_line():
    P, T = setup([(0, 0), (6, 0), (6, 6), (0, 6)])
    M = shortest_path_map(P, T, (1, 3))
    pr = chord_profile(M, ((0, 2), (4, 6)))
    assert pr.slopes == [-1, 1]
    assert pr.value(0) == 2 and pr.value(pr.chord.L) == 6
    assert min(v for _, v in pr.breakpoints) == 0


def test_chord_profile_from_endpoint():
    M = shortest_path_map(D, TD, (1, 0))
    pr = chord_profile(M, ((1, 0), (0, 1)))
    assert pr.breakpoints == [(0, 0), (2, 2)]
    for k in range(9):
        t = F(k, 4)
        assert pr.value(t) == t


def test_chord_errors():
    with pytest.raises(ChordNotUnitSlope):
        make_chord(L, (0, 0), (2, 1))
    with pytest.raises(ChordNotInPolygon):
        # runs into the notch above (1, 1)
        make_chord(L, (F(1, 2), F(1, 2)), (F(3, 2), F(3, 2)))


def test_profile_shape_random():
    rng = random.Random(21)
    from l1geodesic.geom import ray_exit
    for P in _random_polys(12, 8, 48, 31):
        T = triangulate(P)
        M = shortest_path_map(P, T, random_point(P, rng))
        for _ in range(10):
            x = random_point(P, rng)
            sg = rng.choice((1, -1))
            a, b = ray_exit(P, x, (-1, -sg)), ray_exit(P, x, (1, sg))
            if a == b:
                continue
            pr = chord_profile(M, (a, b))
            pattern = "".join({-1: "d", 0: "f", 1: "u"}[s] for s in pr.slopes)
            assert re.fullmatch("d?f?u?", pattern), pattern
            assert pr.value(0) == oracle_distance(P, M.source, a)
            assert pr.value(pr.chord.L) == oracle_distance(P, M.source, b)
            t = F(rng.randrange(1025), 1024) * pr.chord.L
            assert pr.value(t) == oracle_distance(P, M.source, pr.chord.point(t))


def test_path_midpoint_examples():
    p = shortest_path(FR, TFR, (F(-5, 7), F(4, 7)), (F(6, 7), F(-2, 7)))
    assert path_midpoint(p) == (F(1, 14), F(1, 7))
    p = shortest_path(L, TL, (2, 0), (0, 2))
    assert p.waypoints == ((2, 0), (1, 1), (0, 2))
    assert path_midpoint(p) == (1, 1)
    p = shortest_path(L, TL, (1, 1), (1, 1))
    assert path_midpoint(p) == (1, 1)


def _spm_agrees(P, sources, queries, rng):
    T = triangulate(P)
    for s in sources:
        M = shortest_path_map(P, T, s)
        for _ in range(queries):
            x = random_point(P, rng)
            assert spm_query(M, x) == oracle_distance(P, s, x), (s, x)


def test_spm_collinear_reflex_chain():
    # the spine of the comb sees four reflex corners on one line
    P = hand_corpus()["comb"]
    _spm_agrees(P, list(P.vertices), 40, random.Random(0))


def test_spm_random_histograms():
    from corpus import histogram
    rng = random.Random(6)
    for _ in range(12):
        P = validate_polygon(histogram([rng.randrange(1, 5) for _ in range(rng.randrange(3, 12))]))
        sources = [rng.choice(P.vertices) for _ in range(3)] + [random_point(P, rng)]
        _spm_agrees(P, sources, 40, rng)


def _share_brute(r1, r2):
    from l1geodesic.geom import cross
    for i in range(len(r1)):
        a, b = r1[i - 1], r1[i]
        for j in range(len(r2)):
            c, d = r2[j - 1], r2[j]
            if cross(a, b, c) == 0 and cross(a, b, d) == 0:
                k = 0 if a[0] != b[0] else 1
                lo1, hi1 = sorted((a[k], b[k]))
                lo2, hi2 = sorted((c[k], d[k]))
                if min(hi1, hi2) > max(lo1, lo2):
                    return True
    return False


def test_spm_adjacency():
    rng = random.Random(14)
    pool = list(hand_corpus().values()) + _random_polys(8, 6, 40, 3)
    for P in pool:
        T = triangulate(P)
        M = shortest_path_map(P, T, random_point(P, rng))
        cells = M.cells
        want = [(i, j) for i in range(len(cells)) for j in range(i + 1, len(cells))
                if _share_brute(cells[i].ring, cells[j].ring)]
        assert M.adjacency == want
        if len(cells) > 1:
            assert M.adjacency


def test_path_ending_inside_collinear_chain_edge():
    # the target sits on the line y = 1 between two funnel vertices; the
    # path must stop there rather than run to the far vertex and come back
    P = hand_corpus()["comb-sheared"]
    T = triangulate(P)
    path = shortest_path(P, T, (3, 4), (F(27, 8), 1))
    assert path.l1_length == oracle_distance(P, (3, 4), (F(27, 8), 1)) == F(51, 8)
    xs = [p[0] for p in path.waypoints[1:]]
    assert xs == sorted(xs)


def test_distances_on_vertex_lines():
    from corpus import histogram
    rng = random.Random(21)
    polys = [hand_corpus()[k] for k in ("comb", "comb-sheared", "spiral")]
    polys += [validate_polygon(histogram([rng.randrange(1, 5) for _ in range(rng.randrange(3, 9))]))
              for _ in range(8)]
    for P in polys:
        T = triangulate(P)
        pts = list(P.vertices)
        while len(pts) < len(P) + 30:
            a, b = rng.sample(P.vertices, 2)
            p = lerp(a, b, F(rng.randrange(1, 16), 16))
            if P.contains(p):
                pts.append(p)
        for _ in range(150):
            p, q = rng.choice(pts), rng.choice(pts)
            assert geodesic_distance(P, T, p, q) == oracle_distance(P, p, q), (p, q)
        s = rng.choice(pts[len(P):])
        t = shortest_path_tree(P, T, s)
        assert t.dist_l1 == [oracle_distance(P, s, v) for v in P.vertices]

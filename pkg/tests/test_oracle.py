import random
from fractions import Fraction as F

import pytest

from corpus import DIAMOND, FIG1_RIGHT, L_SHAPE, hand_corpus
from l1geodesic import geodesic_distance, random_polygon, triangulate, validate_polygon
from l1geodesic.geom import PointOutsidePolygon, lerp
from l1geodesic.oracle import (oracle_diameter, oracle_distance, oracle_eccentricity,
                               visibility_graph)
from l1geodesic.properties import random_point

D = validate_polygon(DIAMOND)
L = validate_polygon(L_SHAPE)
FR = validate_polygon(FIG1_RIGHT)


def test_distance_examples():
    assert oracle_distance(D, (1, 0), (-1, 0)) == 2
    assert oracle_distance(L, (2, 0), (1, 2)) == 3
    assert oracle_distance(L, (F(1, 3), 1), (F(1, 3), 1)) == 0
    with pytest.raises(PointOutsidePolygon):
        oracle_distance(L, (0, 0), (2, 2))


def test_diameter_examples():
    assert oracle_diameter(D)[1] == 2
    pair, v = oracle_diameter(FR)
    assert v == F(17, 7)
    assert {FR.vertices[k] for k in pair} == {(F(-5, 7), F(4, 7)), (F(6, 7), F(-2, 7))}
    assert oracle_diameter(L)[1] == 4


def test_eccentricity_examples():
    assert oracle_eccentricity(D, (0, 0)) == 1
    assert oracle_eccentricity(L, (1, 1)) == 2
    pair, v = oracle_diameter(L)
    assert oracle_eccentricity(L, L.vertices[pair[0]]) == v


def _pool():
    rng = random.Random(12)
    return list(hand_corpus().values()) + [random_polygon(rng.randrange(5, 60), s)
                                           for s in range(20)]


@pytest.mark.parametrize("P", _pool())
def test_two_algorithms_agree(P):
    T = triangulate(P)
    g = visibility_graph(P)
    vs = P.vertices
    for i in range(len(P)):
        for j in range(i, len(P)):
            assert g.dist[i][j] == geodesic_distance(P, T, vs[i], vs[j])


def test_farthest_points_are_vertices():
    rng = random.Random(3)
    checked = 0
    for seed in range(10):
        P = random_polygon(rng.randrange(6, 24), seed)
        for _ in range(10):
            x = random_point(P, rng)
            best = oracle_eccentricity(P, x)
            # samples strictly inside edges, spacing h in L1 arclength per edge
            m = 8
            sample_best = 0
            worst_gap = 0
            for i in range(len(P)):
                a, b = P.edge(i)
                h = (abs(b[0] - a[0]) + abs(b[1] - a[1])) / F(m)
                worst_gap = max(worst_gap, h / 2)
                for k in range(m):
                    p = lerp(a, b, F(2 * k + 1, 2 * m))
                    sample_best = max(sample_best, oracle_distance(P, x, p))
            assert sample_best <= best
            assert best - sample_best <= worst_gap
            checked += 1
    assert checked == 100

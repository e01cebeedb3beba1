import random
from collections import deque
from fractions import Fraction as F

import pytest

from corpus import DIAMOND, L_SHAPE, hand_corpus
from l1geodesic import random_polygon, triangulate, validate_polygon
from l1geodesic.geom import Where, cross, locate_point, midpoint


def _polygons():
    out = list(hand_corpus().values())
    rng = random.Random(2)
    out += [random_polygon(rng.randrange(3, 120), s) for s in range(25)]
    return out


POLYS = _polygons()


def test_counts_diamond():
    T = triangulate(validate_polygon(DIAMOND))
    assert len(T.triangles) == 2 and len(T.diagonals) == 1


def test_counts_l_shape():
    T = triangulate(validate_polygon(L_SHAPE))
    assert len(T.triangles) == 4 and len(T.diagonals) == 3
    assert len(T.dual_edges()) == 3


def test_counts_convex():
    ring = [(3, 0), (2, 2), (1, 3), (-1, 3), (-2, 2), (-3, 0), (-2, -2), (-1, -3), (1, -3), (2, -2)]
    T = triangulate(validate_polygon(ring))
    assert len(T.triangles) == 8 and len(T.dual_edges()) == 7


@pytest.mark.parametrize("P", POLYS)
def test_structure(P):
    T = triangulate(P)
    n = len(P)
    assert len(T.triangles) == n - 2
    assert len(T.diagonals) == n - 3
    vs = P.vertices
    # areas add up exactly and every triangle is CCW
    total = 0
    for i, j, k in T.triangles:
        a2 = cross(vs[i], vs[j], vs[k])
        assert a2 > 0
        total += a2
    assert F(total, 2) == P.area()
    for i, j in T.diagonals:
        assert locate_point(P, midpoint(vs[i], vs[j])).where == Where.INTERIOR
    # the dual graph is a tree
    adj = {t: [u for u in nb if u >= 0] for t, nb in enumerate(T.neighbors)}
    seen = {0}
    stack = [0]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    assert len(seen) == len(T.triangles)
    assert len(T.dual_edges()) == len(T.triangles) - 1


def _bfs_path(T, a, b):
    prev = {a: None}
    q = deque([a])
    while q:
        t = q.popleft()
        for u in T.neighbors[t]:
            if u >= 0 and u not in prev:
                prev[u] = t
                q.append(u)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


@pytest.mark.parametrize("P", POLYS[::3])
def test_dual_path_matches_bfs(P):
    T = triangulate(P)
    rng = random.Random(len(P))
    m = len(T.triangles)
    for _ in range(30):
        a, b = rng.randrange(m), rng.randrange(m)
        path = T.dual_path(a, b)
        assert path[0] == a and path[-1] == b
        assert path == _bfs_path(T, a, b)


def test_sleeve_examples():
    T = triangulate(validate_polygon(DIAMOND))
    assert T.sleeve(0, 0) == [(0, None)]
    s = T.sleeve(0, 1)
    assert len(s) == 2 and s[1][1] == T.diagonals[0]


def test_sleeve_of_path_shaped_dual():
    # this convex heptagon triangulates with a path-shaped dual
    P = validate_polygon([(0, 0), (4, 0), (6, 2), (6, 5), (4, 7), (0, 7), (-2, 4)])
    T = triangulate(P)
    deg = [sum(1 for u in nb if u >= 0) for nb in T.neighbors]
    assert max(deg) == 2
    ends = [t for t, d in enumerate(deg) if d == 1]
    s = T.sleeve(ends[0], ends[1])
    assert len(s) == len(T.triangles) == 5
    assert sum(1 for _, d in s if d is not None) == 4


def test_locate_triangle():
    P = validate_polygon(L_SHAPE)
    T = triangulate(P)
    for p in [(F(1, 2), F(1, 2)), (F(3, 2), F(1, 2)), (F(1, 2), F(3, 2)), (1, 1)]:
        t = T.locate(p)
        assert t >= 0
    assert T.locate((F(3, 2), F(3, 2))) == -1

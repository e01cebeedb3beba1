"""Geodesic diameter: farthest neighbours, three chains and SMAWK."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .geom import Point, Polygon, Scalar, validate_polygon
from .geodesic import shortest_path_tree
from .distance import VertexDistances
from .triangulate import Triangulation, triangulate


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class ChainPair:
    """Disjoint vertex chains (0-based ids) in counterclockwise order."""

    U: Tuple[int, ...]
    W: Tuple[int, ...]


@dataclass
class DiameterResult:
    pair: Tuple[int, int]
    value: Scalar
    farthest: List[Tuple[int, Scalar]]
    evaluations: int = 0
    matrix_cells: int = 0
    chain_pairs: List[ChainPair] = field(default_factory=list)


class EntryCounter:
    """Wraps a matrix entry function and counts evaluations."""

    def __init__(self, entry: Callable[[int, int], Scalar]):
        self.entry = entry
        self.count = 0

    def __call__(self, i: int, j: int) -> Scalar:
        self.count += 1
        return self.entry(i, j)


def smawk_row_maxima(rows: int, cols: int, entry: Callable[[int, int], Scalar]) -> List[int]:
    """Leftmost row maxima of a totally monotone ``rows x cols`` matrix.

    Columns are 0-based.  Each entry is evaluated at most once (results are
    memoized), and the number of evaluations is O(rows + cols).
    """
    if rows == 0:
        return []
    if cols == 0:
        raise ValueError("matrix has no columns")
    memo: Dict[Tuple[int, int], Scalar] = {}

    def f(i: int, j: int) -> Scalar:
        key = (i, j)
        v = memo.get(key)
        if v is None:
            v = memo[key] = entry(i, j)
        return v

    result = [0] * rows

    def solve(rs: List[int], cs: List[int]):
        # REDUCE: keep at most len(rs) columns that can still hold a leftmost maximum
        stack: List[int] = []
        for c in cs:
            while stack:
                r = rs[len(stack) - 1]
                if f(r, stack[-1]) >= f(r, c):
                    break
                stack.pop()
            if len(stack) < len(rs):
                stack.append(c)
        cs = stack
        if len(rs) == 1:
            best = cs[0]
            bv = f(rs[0], best)
            for c in cs[1:]:
                v = f(rs[0], c)
                if v > bv:
                    best, bv = c, v
            result[rs[0]] = best
            return
        solve(rs[1::2], cs)
        # fill the even rows between the odd rows' answers
        pos = {c: k for k, c in enumerate(cs)}
        start = 0
        for k in range(0, len(rs), 2):
            r = rs[k]
            stop = pos[result[rs[k + 1]]] if k + 1 < len(rs) else len(cs) - 1
            best = cs[start]
            bv = f(r, best)
            for q in range(start + 1, stop + 1):
                v = f(r, cs[q])
                if v > bv:
                    best, bv = cs[q], v
            result[r] = best
            start = stop

    solve(list(range(rows)), list(range(cols)))
    return result


def decompose_chains(n: int, a: int, b: int) -> Tuple[ChainPair, ChainPair, ChainPair]:
    """The three (U, W) chain pairs cut out by v1, va and vb.

    ``a`` and ``b`` are 1-based with ``1 < a < b <= n + 1``; ``b = n + 1``
    stands for vb = v1.  Returned chains hold 0-based vertex ids.
    """
    if not (1 < a < b <= n + 1) or n < 3:
        raise IndexOutOfRange(f"need 1 < a < b <= n, got n={n}, a={a}, b={b}")

    def seq(i: int, j: int) -> Tuple[int, ...]:
        # 1-based inclusive range i..j, wrapping past n
        return tuple(((k - 1) % n) for k in range(i, j + 1))

    U1 = seq(2, a - 1)
    U2 = seq(a + 1, b - 1)
    U3 = seq(b + 1, n)
    W1 = seq(a, n + 1)
    W2 = seq(b, n + a) if b <= n else seq(1, a)
    W3 = seq(1, b) if b <= n else seq(1, n)
    return ChainPair(U1, W1), ChainPair(U2, W2), ChainPair(U3, W3)


def farthest_vertex(P: Polygon, T: Triangulation, s) -> Tuple[int, Scalar]:
    """Lowest-index vertex at maximum geodesic distance from s."""
    d = shortest_path_tree(P, T, s).dist_l1
    best = max(d)
    return d.index(best), best


def restricted_farthest_neighbors(P: Polygon, T: Triangulation, pair: ChainPair,
                                  dist: Optional[Callable[[int, int], Scalar]] = None,
                                  counter: Optional[list] = None) -> List[Tuple[int, Scalar]]:
    """For each u of pair.U, a vertex of pair.W farthest from it, with the distance."""
    U, W = pair.U, pair.W
    if not U:
        return []
    if dist is None:
        dist = VertexDistances(P, T)
    ec = EntryCounter(lambda i, j: dist(U[i], W[j]))
    cols = smawk_row_maxima(len(U), len(W), ec)
    if counter is not None:
        counter.append((len(U), len(W), ec.count))
    return [(W[j], dist(U[i], W[j])) for i, j in enumerate(cols)]


def mirror_polygon(P: Polygon) -> Polygon:
    """Reflection across the y-axis, relabelled to stay counterclockwise."""
    vs = [Point(-v[0], v[1]) for v in P.vertices]
    return Polygon(tuple([vs[0]] + vs[:0:-1]))


def diameter(P: Polygon, T: Optional[Triangulation] = None,
             dist: Optional[Callable[[int, int], Scalar]] = None) -> DiameterResult:
    """Diametral vertex pair via the three-chain decomposition.

    va is farthest from v1 and vb from va.  When b < a the vertex order is
    mirrored (v1 fixed, the rest reversed); distances are unchanged by the
    reflection, so they are still evaluated on P and only indices move.
    """
    if T is None:
        T = triangulate(P)
    n = len(P)
    if dist is None:
        dist = VertexDistances(P, T)
    t1 = shortest_path_tree(P, T, P.vertices[0])
    a0 = t1.dist_l1.index(max(t1.dist_l1))
    ta = shortest_path_tree(P, T, P.vertices[a0])
    b0 = ta.dist_l1.index(max(ta.dist_l1))
    far: List[Optional[Tuple[int, Scalar]]] = [None] * n
    far[0] = (a0, t1.dist_l1[a0])
    far[a0] = (b0, ta.dist_l1[b0])
    if b0 != 0:
        tb = shortest_path_tree(P, T, P.vertices[b0])
        far[b0] = (tb.dist_l1.index(max(tb.dist_l1)), max(tb.dist_l1))

    a, b = a0 + 1, b0 + 1
    if b == 1:
        b = n + 1
        to_orig = list(range(n))
    elif a < b:
        to_orig = list(range(n))
    else:
        # mirrored labels: k -> n + 2 - k (1-based), v1 fixed
        to_orig = [0] + list(range(n - 1, 0, -1))
        a, b = n + 2 - a, n + 2 - b
    mdist = (lambda i, j: dist(to_orig[i], to_orig[j]))
    stats: list = []
    pairs = decompose_chains(n, a, b)
    for pair in pairs:
        for u, (w, d) in zip(pair.U, restricted_farthest_neighbors(P, T, pair, mdist, stats)):
            far[to_orig[u]] = (to_orig[w], d)
    for v in range(n):
        if far[v] is None:
            # not reachable for valid input; keep the table total anyway
            d = shortest_path_tree(P, T, P.vertices[v]).dist_l1
            far[v] = (d.index(max(d)), max(d))
    best = max(d for _, d in far)
    u = next(v for v in range(n) if far[v][1] == best)
    w = far[u][0]
    pair = (min(u, w), max(u, w))
    return DiameterResult(pair, best, far,
                          evaluations=sum(c for _, _, c in stats),
                          matrix_cells=sum(r + c for r, c, _ in stats),
                          chain_pairs=[ChainPair(tuple(to_orig[u] for u in p.U),
                                                 tuple(to_orig[w] for w in p.W)) for p in pairs])

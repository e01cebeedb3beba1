"""Scaling benchmark on seeded random polygons."""
from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence

from .center import center
from .diameter import diameter
from .generate import random_polygon
from .oracle import oracle_diameter, visibility_graph
from .triangulate import triangulate

CSV_HEADER = "n,diameter_us,center_us,oracle_us,diameter_ratio,center_ratio"
ORACLE_MAX_N = 256


@dataclass
class BenchRow:
    n: int
    diameter_us: int
    center_us: int
    oracle_us: Optional[int]
    diameter_ratio: Optional[float]
    center_ratio: Optional[float]

    def csv(self) -> str:
        def f(v):
            if v is None:
                return ""
            return f"{v:.3f}" if isinstance(v, float) else str(v)
        return ",".join(f(v) for v in (self.n, self.diameter_us, self.center_us, self.oracle_us,
                                       self.diameter_ratio, self.center_ratio))


def _best_of(fn, repeats: int) -> float:
    best = None
    for _ in range(max(1, repeats)):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def run_bench(sizes: Sequence[int], seed: int = 0, with_oracle: bool = False,
              repeats: int = 1) -> Iterator[BenchRow]:
    """Time diameter and center (triangulation included) for each size.

    Ratios compare each size with the previous one in the list.
    """
    prev = None
    for n in sizes:
        P = random_polygon(n, seed)
        d_us = int(_best_of(lambda: diameter(P, triangulate(P)), repeats) * 1e6)
        c_us = int(_best_of(lambda: center(P, triangulate(P)), repeats) * 1e6)
        o_us = None
        if with_oracle and n <= ORACLE_MAX_N:
            def run_oracle():
                from . import oracle
                oracle._CACHE.clear()
                oracle_diameter(P)
            o_us = int(_best_of(run_oracle, repeats) * 1e6)
        row = BenchRow(n, d_us, c_us, o_us,
                       d_us / prev.diameter_us if prev else None,
                       c_us / prev.center_us if prev else None)
        prev = row
        yield row


def median_ratios(rows: List[BenchRow]):
    d = [r.diameter_ratio for r in rows if r.diameter_ratio is not None]
    c = [r.center_ratio for r in rows if r.center_ratio is not None]
    return statistics.median(d), statistics.median(c)

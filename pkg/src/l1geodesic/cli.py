"""Command-line interface: diameter, center, ball, check, bench."""
from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional

from . import io
from .balls import geodesic_ball
from .bench import CSV_HEADER, run_bench
from .center import center
from .diameter import diameter
from .generate import random_polygon
from .geodesic import shortest_path_map
from .geom import GeometryError, fmt_point, fmt_scalar, scalar
from .oracle import oracle_center_check, oracle_diameter
from .properties import run_checks
from .svg import render
from .triangulate import triangulate

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2
EXIT_PROPERTY = 3


class UsageError(Exception):
    pass


def _load(args):
    return io.read_polygon(args.file, args.float_ok)


def _emit(args, report: dict, lines: List[str]):
    if args.json:
        print(io.dumps(report))
    else:
        print("\n".join(lines))


def _write_svg(path: Optional[str], text: str):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_diameter(args) -> int:
    P = _load(args)
    t0 = time.perf_counter()
    T = triangulate(P)
    res = diameter(P, T)
    elapsed = time.perf_counter() - t0
    i, j = res.pair
    report = {
        "command": "diameter",
        "input_sha256": io.input_hash(P),
        "result": {"pair": [i, j],
                   "pair_points": [io.point_str(P.vertices[i]), io.point_str(P.vertices[j])],
                   "value": fmt_scalar(res.value)},
        "timing_us": int(elapsed * 1e6),
        "counters": {"matrix_evaluations": res.evaluations, "matrix_rows_plus_cols": res.matrix_cells},
    }
    lines = [f"pair: {i} {j}",
             f"points: {fmt_point(P.vertices[i])} {fmt_point(P.vertices[j])}",
             f"value: {fmt_scalar(res.value)}"]
    status = EXIT_OK
    if args.check:
        _, ov = oracle_diameter(P)
        ok = ov == res.value
        report["check"] = {"oracle_value": fmt_scalar(ov), "ok": ok}
        lines.append(f"check: {'ok' if ok else 'MISMATCH'} (oracle {fmt_scalar(ov)})")
        if not ok:
            status = EXIT_CHECK
    _emit(args, report, lines)
    _write_svg(args.svg, render(P, paths=[], points=[P.vertices[i], P.vertices[j]]))
    return status


def cmd_center(args) -> int:
    P = _load(args)
    t0 = time.perf_counter()
    T = triangulate(P)
    res = center(P, T)
    elapsed = time.perf_counter() - t0
    a, b = res.segment
    report = {
        "command": "center",
        "input_sha256": io.input_hash(P),
        "result": {"radius": fmt_scalar(res.radius),
                   "segment": [io.point_str(a), io.point_str(b)],
                   "is_point": res.is_point},
        "timing_us": int(elapsed * 1e6),
        "counters": {"matrix_evaluations": res.diameter.evaluations},
    }
    lines = [f"radius: {fmt_scalar(res.radius)}"]
    if res.is_point:
        lines.append(f"point: {fmt_point(a)}")
    else:
        lines.append(f"segment: {fmt_point(a)} {fmt_point(b)}")
    status = EXIT_OK
    if args.check:
        rep = oracle_center_check(P, res, samples=args.samples, seed=args.seed)
        report["check"] = {"ok": rep.ok, "message": rep.message,
                           "witness": io.point_str(rep.witness) if rep.witness else None}
        lines.append(f"check: {'ok' if rep.ok else 'MISMATCH ' + rep.message}")
        if not rep.ok:
            status = EXIT_CHECK
    _emit(args, report, lines)
    _write_svg(args.svg, render(P, segment=(a, b)))
    return status


def _parse_source(text: str, P):
    if "," in text:
        x, y = text.split(",", 1)
        return scalar(x.strip()), scalar(y.strip())
    k = int(text)
    if not 0 <= k < len(P):
        raise UsageError(f"vertex index {k} out of range 0..{len(P) - 1}")
    return P.vertices[k]


def cmd_ball(args) -> int:
    P = _load(args)
    try:
        s = _parse_source(args.source, P)
        r = scalar(args.radius)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    T = triangulate(P)
    M = shortest_path_map(P, T, s)
    B = geodesic_ball(P, M, r)
    report = {
        "command": "ball",
        "input_sha256": io.input_hash(P),
        "result": {"source": io.point_str(M.source), "radius": fmt_scalar(r),
                   "vertices": [io.point_str(p) for p in B.boundary]},
    }
    if not B.boundary:
        lines = ["ball: empty"]
    else:
        lines = [f"vertices: {len(B.boundary)}"] + [fmt_point(p) for p in B.boundary]
    _emit(args, report, lines)
    _write_svg(args.svg, render(P, balls=[B.boundary] if B.boundary else [], cuts=M.cuts,
                                points=[M.source]))
    return EXIT_OK


def cmd_check(args) -> int:
    if args.random is not None:
        P = random_polygon(args.random, args.seed)
    elif args.file:
        P = io.read_polygon(args.file, args.float_ok)
    else:
        raise UsageError("check needs a file or --random N")
    results = run_checks(P, trials=args.trials, seed=args.seed, mutate=args.mutate)
    failed = [r for r in results if not r.ok]
    report = {"command": "check", "input_sha256": io.input_hash(P),
              "result": [{"name": r.name, "ok": r.ok, "trials": r.trials, "witness": r.witness}
                         for r in results],
              "ok": not failed}
    lines = [f"{'PASS' if r.ok else 'FAIL'} {r.name} ({r.trials} trials)" for r in results]
    for r in failed:
        lines.append(f"witness {r.name}: {io.dumps(r.witness)}")
        if args.random is not None:
            lines.append("polygon: " + io.polygon_to_text(P).strip())
    _emit(args, report, lines)
    return EXIT_PROPERTY if failed else EXIT_OK


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"bad size list: {args.sizes}") from exc
    if not sizes:
        raise UsageError("empty size list")
    if any(n < 3 for n in sizes):
        raise UsageError("sizes must be at least 3")
    print(CSV_HEADER)
    for row in run_bench(sizes, args.seed, args.with_oracle, args.repeats):
        print(row.csv(), flush=True)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="l1geodesic",
                                description="L1 geodesic diameter and center of simple polygons")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_file=True):
        if with_file:
            sp.add_argument("file", help="polygon JSON file")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--float-ok", action="store_true",
                        help="accept JSON floats, read as exact binary fractions")

    d = sub.add_parser("diameter", help="geodesic diameter and a diametral vertex pair")
    common(d)
    d.add_argument("--check", action="store_true", help="compare with the brute-force oracle")
    d.add_argument("--svg", help="write an SVG figure")
    d.set_defaults(func=cmd_diameter)

    c = sub.add_parser("center", help="geodesic radius and center segment")
    common(c)
    c.add_argument("--check", action="store_true", help="certify with the brute-force oracle")
    c.add_argument("--samples", type=int, default=32, help="random points for --check")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--svg", help="write an SVG figure")
    c.set_defaults(func=cmd_center)

    b = sub.add_parser("ball", help="geodesic ball polygon")
    common(b)
    b.add_argument("--source", required=True, help="vertex index or x,y")
    b.add_argument("--radius", required=True)
    b.add_argument("--svg", help="write an SVG figure")
    b.set_defaults(func=cmd_ball)

    k = sub.add_parser("check", help="run the property suites")
    k.add_argument("file", nargs="?")
    k.add_argument("--random", type=int, metavar="N", help="use a random N-gon instead of a file")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--trials", type=int, default=200)
    k.add_argument("--mutate", action="store_true",
                   help="flip the ball membership comparison (harness self-test)")
    k.add_argument("--json", action="store_true")
    k.add_argument("--float-ok", action="store_true")
    k.set_defaults(func=cmd_check)

    s = sub.add_parser("bench", help="scaling benchmark, CSV on stdout")
    s.add_argument("--sizes", default="1024,2048,4096,8192,16384")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--with-oracle", action="store_true", help="time the oracle for n <= 256")
    s.add_argument("--repeats", type=int, default=1, help="best of k timings per size")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (io.ParseError, GeometryError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Polygon files and exact JSON payloads.

A polygon file is JSON with one field::

    {"vertices": [[0, 0], ["2.5", 0], ["-5/7", "4/7"]]}

Coordinates are integers, decimal strings or ``"p/q"`` strings.  JSON
floats are refused unless ``float_ok`` is set.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, List, Union

from .geom import Polygon, as_point, fmt_point, fmt_scalar, validate_polygon


class ParseError(ValueError):
    pass


def exact(v) -> Union[int, str]:
    """JSON form of a scalar: int when integral, else a "p/q" string."""
    f = Fraction(v)
    return f.numerator if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def point_json(p) -> List[Union[int, str]]:
    return [exact(p[0]), exact(p[1])]


def point_str(p) -> List[str]:
    """Report form of a point: both coordinates as exact strings."""
    return [fmt_scalar(p[0]), fmt_scalar(p[1])]


def parse_polygon_text(text: str, float_ok: bool = False) -> Polygon:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ParseError("expected an object with a 'vertices' field")
    raw = doc["vertices"]
    if not isinstance(raw, list):
        raise ParseError("'vertices' must be a list")
    pts = []
    for k, item in enumerate(raw):
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError(f"vertex {k} is not an [x, y] pair")
        try:
            pts.append(as_point(item, float_ok))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"vertex {k}: {exc}") from exc
    return validate_polygon(pts)


def read_polygon(path: str, float_ok: bool = False) -> Polygon:
    with open(path, encoding="utf-8") as fh:
        return parse_polygon_text(fh.read(), float_ok)


def polygon_to_text(P: Polygon) -> str:
    return json.dumps({"vertices": [point_json(v) for v in P.vertices]}) + "\n"


def write_polygon(P: Polygon, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(polygon_to_text(P))


def input_hash(P: Polygon) -> str:
    return hashlib.sha256(polygon_to_text(P).encode()).hexdigest()


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


__all__ = ["ParseError", "exact", "point_json", "point_str", "parse_polygon_text", "read_polygon",
           "polygon_to_text", "write_polygon", "input_hash", "dumps", "fmt_point", "fmt_scalar"]

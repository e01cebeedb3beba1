"""Deterministic SVG figures.  Coordinates are rounded for display only."""
from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .geom import Polygon

SIZE = 1000
MARGIN = 40


class Canvas:
    def __init__(self, P: Polygon):
        x0, y0, x1, y1 = (float(v) for v in P.bbox)
        span = max(x1 - x0, y1 - y0) or 1.0
        self.scale = (SIZE - 2 * MARGIN) / span
        self.x0, self.y1 = x0, y1
        self.items: List[str] = []
        self.count = 0

    def xy(self, p) -> str:
        x = MARGIN + (float(p[0]) - self.x0) * self.scale
        y = MARGIN + (self.y1 - float(p[1])) * self.scale
        return f"{x:.3f},{y:.3f}"

    def _id(self, kind: str) -> str:
        self.count += 1
        return f"{kind}-{self.count}"

    def polygon(self, pts: Sequence, kind: str, fill: str, stroke: str, opacity: float = 1.0):
        if len(pts) < 3:
            return
        coords = " ".join(self.xy(p) for p in pts)
        self.items.append(f'<polygon id="{self._id(kind)}" points="{coords}" fill="{fill}" '
                          f'fill-opacity="{opacity}" stroke="{stroke}" stroke-width="2"/>')

    def polyline(self, pts: Sequence, kind: str, stroke: str, dash: bool = False):
        if len(pts) < 2:
            return
        coords = " ".join(self.xy(p) for p in pts)
        extra = ' stroke-dasharray="8,6"' if dash else ""
        self.items.append(f'<polyline id="{self._id(kind)}" points="{coords}" fill="none" '
                          f'stroke="{stroke}" stroke-width="3"{extra}/>')

    def dot(self, p, kind: str, fill: str, r: int = 6):
        x, y = self.xy(p).split(",")
        self.items.append(f'<circle id="{self._id(kind)}" cx="{x}" cy="{y}" r="{r}" fill="{fill}"/>')

    def render(self) -> str:
        body = "\n".join(self.items)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" '
                f'width="{SIZE}" height="{SIZE}">\n'
                f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>\n{body}\n</svg>\n')


def render(P: Polygon, balls: Iterable[Sequence] = (), cuts: Iterable[Tuple] = (),
           paths: Iterable[Sequence] = (), segment: Optional[Tuple] = None,
           points: Iterable = ()) -> str:
    """SVG of P with optional ball polygons, SPM cuts, paths and a center."""
    c = Canvas(P)
    c.polygon(P.vertices, "polygon", "#eef2f7", "#223")
    for ring in balls:
        if len(ring) == 1:
            c.dot(ring[0], "ball", "#2a7")
        else:
            c.polygon(ring, "ball", "#6c6", "#2a7", 0.45)
    for a, b in cuts:
        c.polyline([a, b], "cut", "#888", dash=True)
    for path in paths:
        c.polyline(path, "path", "#d62")
    if segment is not None:
        a, b = segment
        if a == b:
            c.dot(a, "center", "#c00", 8)
        else:
            c.polyline([a, b], "center", "#c00")
    for p in points:
        c.dot(p, "point", "#24c")
    return c.render()

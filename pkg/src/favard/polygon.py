"""Convex polygons, halfplane clipping and shoelace area.

Just enough computational geometry for intersecting dual wedges with the
vertical strip: Sutherland-Hodgman clipping against one closed halfplane
at a time, with a vertex-collapse tolerance that guards against sliver
polygons produced by near-parallel cutting lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

#: vertices closer than this collapse to one point
VERTEX_TOL = 1e-12

Point = tuple[float, float]


@dataclass(frozen=True, slots=True)
class HalfPlane:
    """Closed halfplane nx*x + ny*y <= offset."""

    nx: float
    ny: float
    offset: float

    def contains(self, p: Point) -> bool:
        return self.nx * p[0] + self.ny * p[1] <= self.offset + 0.0

    def signed(self, p: Point) -> float:
        return self.nx * p[0] + self.ny * p[1] - self.offset


class ConvexPolygon:
    """Counterclockwise vertex list; empty polygon allowed (area 0)."""

    __slots__ = ("_vertices",)

    def __init__(self, vertices: Sequence[Point] = ()) -> None:
        pts = _dedupe(tuple((float(x), float(y)) for x, y in vertices))
        if len(pts) >= 3 and _signed_area(pts) < 0.0:
            pts = tuple(reversed(pts))
        self._vertices = pts

    @property
    def vertices(self) -> tuple[Point, ...]:
        return self._vertices

    def is_empty(self) -> bool:
        return len(self._vertices) < 3

    def area(self) -> float:
        """Shoelace area; degenerate polygons report 0."""
        if len(self._vertices) < 3:
            return 0.0
        return abs(_signed_area(self._vertices)) / 2.0

    def clip(self, plane: HalfPlane) -> ConvexPolygon:
        """Intersection with a closed halfplane; may come back empty."""
        v = self._vertices
        if not v:
            return self
        out: list[Point] = []
        n = len(v)
        for i in range(n):
            cur, nxt = v[i], v[(i + 1) % n]
            c_in = plane.signed(cur) <= 0.0
            n_in = plane.signed(nxt) <= 0.0
            if c_in:
                out.append(cur)
            if c_in != n_in:
                out.append(_cross_point(cur, nxt, plane))
        return ConvexPolygon(out)

    def __repr__(self) -> str:
        return f"ConvexPolygon({list(self._vertices)!r})"


def _signed_area(v: tuple[Point, ...]) -> float:
    return math.fsum(
        v[i][0] * v[(i + 1) % len(v)][1] - v[(i + 1) % len(v)][0] * v[i][1]
        for i in range(len(v))
    )


def _cross_point(a: Point, b: Point, plane: HalfPlane) -> Point:
    da = plane.signed(a)
    db = plane.signed(b)
    t = da / (da - db)
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def _dedupe(vertices: tuple[Point, ...]) -> tuple[Point, ...]:
    if not vertices:
        return vertices
    out: list[Point] = []
    for p in vertices:
        if not out or _dist(out[-1], p) > VERTEX_TOL:
            out.append(p)
    while len(out) > 1 and _dist(out[0], out[-1]) <= VERTEX_TOL:
        out.pop()
    return tuple(out)


def _dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def polygon_clip_halfplane(p: ConvexPolygon, plane: HalfPlane) -> ConvexPolygon:
    return p.clip(plane)


def polygon_area(p: ConvexPolygon) -> float:
    return p.area()


def unit_square() -> ConvexPolygon:
    return ConvexPolygon([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])

"""Constrained triangulation of polygonal regions with holes, exact.

Greedy shortest-diagonal insertion yields a triangulation using only the ring
vertices; Lawson flips then make it constrained Delaunay.
"""

from __future__ import annotations

from typing import Sequence

from .arrangement import PlanarGraph
from .geom import (
    ConvexPolygon,
    Location,
    Point,
    PolygonWithHoles,
    centroid,
    midpoint,
    orient,
    point_in_pwh,
    segments_cross_open,
)


class _Region:
    # duck-typed stand-in for PolygonWithHoles that skips validation/normalization
    def __init__(self, outer, holes):
        self.outer = outer
        self.holes = holes


def _incircle(a: Point, b: Point, c: Point, d: Point) -> int:
    """Sign of the incircle determinant; > 0 iff d is inside circle(a, b, c) for CCW abc."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    det = ((adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
           - (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady)
           + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady))
    return (det > 0) - (det < 0)


def triangulate_region(outer: Sequence[Point], holes: Sequence[Sequence[Point]] = (),
                       delaunay: bool = True) -> list[tuple[Point, Point, Point]]:
    """Triangles (CCW) partitioning the region; vertices are ring vertices only."""
    rings = [list(outer)] + [list(h) for h in holes]
    region = _Region(rings[0], rings[1:])
    boundary = set()
    for r in rings:
        for i in range(len(r)):
            a, b = r[i], r[(i + 1) % len(r)]
            if a != b:
                boundary.add((min(a, b), max(a, b)))
    bedges = sorted(boundary)
    verts = sorted({p for r in rings for p in r})

    cands = []
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            a, b = verts[i], verts[j]
            if (a, b) in boundary:
                continue
            d = (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2
            cands.append((d, a, b))
    cands.sort()

    diagonals: list[tuple[Point, Point]] = []
    for _, a, b in cands:
        if any(segments_cross_open(a, b, c, d) for c, d in bedges):
            continue
        if any(segments_cross_open(a, b, c, d) for c, d in diagonals):
            continue
        if point_in_pwh(region, midpoint(a, b)) is not Location.INSIDE:
            continue
        diagonals.append((a, b))

    g = PlanarGraph(bedges + diagonals)
    tris = []
    for c, area in enumerate(g.cycle_area2):
        if area <= 0:
            continue
        pts = g.cycle_points(c)
        if len(pts) != 3:
            continue
        if point_in_pwh(region, centroid(pts)) is Location.INSIDE:
            tris.append(tuple(pts))
    if delaunay:
        tris = _lawson(tris, boundary)
    return tris


def _lawson(tris, constrained):
    tris = [tuple(t) for t in tris]
    while True:
        owner: dict[tuple, list[int]] = {}
        for k, t in enumerate(tris):
            for i in range(3):
                a, b = t[i], t[(i + 1) % 3]
                owner.setdefault((min(a, b), max(a, b)), []).append(k)
        flipped = False
        for e, ks in owner.items():
            if len(ks) != 2 or e in constrained:
                continue
            t1, t2 = tris[ks[0]], tris[ks[1]]
            c = next(p for p in t1 if p not in e)
            d = next(p for p in t2 if p not in e)
            a, b = e
            # orient so that (a, b, c) is CCW
            if orient(a, b, c) < 0:
                a, b = b, a
            if _incircle(a, b, c, d) <= 0:
                continue
            # quad a, d, b, c must be strictly convex for the flip
            if orient(c, d, a) == 0 or orient(c, d, b) == 0 or orient(c, d, a) == orient(c, d, b):
                continue
            n1 = (c, a, d) if orient(c, a, d) > 0 else (c, d, a)
            n2 = (c, d, b) if orient(c, d, b) > 0 else (c, b, d)
            tris[ks[0]], tris[ks[1]] = n1, n2
            flipped = True
            break
        if not flipped:
            return tris


def triangulate(P: PolygonWithHoles, delaunay: bool = True) -> list[ConvexPolygon]:
    """Constrained (Delaunay) triangulation of P with vertices exactly the vertices of P."""
    return [ConvexPolygon(t) for t in triangulate_region(P.outer, P.holes, delaunay)]

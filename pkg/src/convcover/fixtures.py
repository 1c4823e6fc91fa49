"""Small named instances and random polygon generators for tests and demos."""

from __future__ import annotations

import math

import numpy as np

from .geom import ConvexPolygon, PolygonWithHoles, orient, segment_intersection

UNIT_SQUARE = PolygonWithHoles([(0, 0), (1, 0), (1, 1), (0, 1)], name="unit_square")

# L-shaped hexagon
LSH = PolygonWithHoles([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)], name="lsh")

# square with a square hole ("donut")
DON = PolygonWithHoles([(0, 0), (6, 0), (6, 6), (0, 6)], [[(2, 2), (4, 2), (4, 4), (2, 4)]], name="don")

# comb with three teeth
COMB = PolygonWithHoles([(0, 0), (7, 0), (7, 3), (6, 3), (6, 1), (4, 1), (4, 3), (3, 3), (3, 1), (1, 1), (1, 3),
                         (0, 3)], name="comb")

# cross / plus sign
PLUS = PolygonWithHoles([(1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (2, 2), (2, 3), (1, 3), (1, 2), (0, 2), (0, 1),
                         (1, 1)], name="plus")

# rectangle with two triangular holes
TWO_HOLES = PolygonWithHoles([(0, 0), (10, 0), (10, 6), (0, 6)],
                             [[(2, 2), (4, 2), (3, 4)], [(6, 1), (8, 3), (6, 4)]], name="two_holes")

Q1 = ConvexPolygon.from_points([(0, 0), (2, 0), (2, 1), (1, 1)])
Q2 = ConvexPolygon.from_points([(0, 0), (1, 1), (1, 2), (0, 2)])
T = ConvexPolygon.from_points([(0, 0), (2, 0), (1, 1), (0, 2)])

FIXTURES = {P.name: P for P in (UNIT_SQUARE, LSH, DON, COMB, PLUS, TWO_HOLES)}


def _simple(pts) -> bool:
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(i + 1, n):
            c, d = pts[j], pts[(j + 1) % n]
            if j == i + 1 or (i == 0 and j == n - 1):
                # neighbours: reject folding back
                if orient(a, b, d if j == i + 1 else c) == 0 and j == i + 1:
                    if (b[0] - a[0]) * (d[0] - c[0]) + (b[1] - a[1]) * (d[1] - c[1]) < 0:
                        return False
                continue
            if segment_intersection((a, b), (c, d)):
                return False
    return True


def random_simple_polygon(rng: np.random.Generator, n: int, grid: int = 20, name: str = "random") -> PolygonWithHoles:
    """Random simple polygon with n integer vertices (star-shaped around the centre, or 2-opt untangled)."""
    for _ in range(1000):
        pts = list({(int(x), int(y)) for x, y in rng.integers(0, grid + 1, size=(n, 2))})
        if len(pts) < 3:
            continue
        if rng.random() < 0.5:
            cx, cy = grid / 2 + rng.uniform(-1, 1), grid / 2 + rng.uniform(-1, 1)
            pts.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
        else:
            pts = _untangle([pts[int(i)] for i in rng.permutation(len(pts))])
            if pts is None:
                continue
        if len(pts) >= 3 and _simple(pts):
            try:
                P = PolygonWithHoles(pts, name=name)
            except ValueError:
                continue
            if P.area2 != 0:
                return P
    raise RuntimeError("could not generate a simple polygon")


def _untangle(pts, rounds: int = 200):
    pts = list(pts)
    n = len(pts)
    for _ in range(rounds):
        changed = False
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                a, b = pts[i], pts[i + 1]
                c, d = pts[j], pts[(j + 1) % n]
                if segment_intersection((a, b), (c, d)):
                    pts[i + 1:j + 1] = reversed(pts[i + 1:j + 1])
                    changed = True
        if not changed:
            return pts
    return None


def random_polygon_with_holes(rng: np.random.Generator, n_outer: int = 8, n_holes: int = 1, grid: int = 30,
                              name: str = "random_holes") -> PolygonWithHoles:
    """Random polygon with small triangular or quadrilateral holes placed strictly inside."""
    from .geom import Location, point_in_ring

    for _ in range(200):
        outer = random_simple_polygon(rng, n_outer, grid).outer
        holes = []
        for _ in range(20 * max(n_holes, 1)):
            if len(holes) == n_holes:
                break
            cx, cy = (int(v) for v in rng.integers(2, grid - 1, size=2))
            k = int(rng.integers(3, 5))
            r = int(rng.integers(1, 3))
            cand = [(cx + r, cy), (cx, cy + r), (cx - r, cy), (cx, cy - r)][:k]
            if k == 3:
                cand = [(cx - r, cy - r), (cx + r, cy - r), (cx, cy + r)]
            ok = all(point_in_ring(outer, p) is Location.INSIDE for p in cand)
            if not ok:
                continue
            rings = [outer] + holes
            if any(segment_intersection((cand[i], cand[(i + 1) % k]), (r_[j], r_[(j + 1) % len(r_)]))
                   for r_ in rings for i in range(k) for j in range(len(r_))):
                continue
            if any(point_in_ring(h, cand[0]) is not Location.OUTSIDE or point_in_ring(cand, h[0]) is not Location.OUTSIDE
                   for h in holes):
                continue
            holes.append(cand)
        if len(holes) == n_holes:
            return PolygonWithHoles(outer, holes, name=name)
    raise RuntimeError("could not place holes")

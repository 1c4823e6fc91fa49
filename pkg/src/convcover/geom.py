"""Exact rational geometry kernel.

Coordinates are Python ints or :class:`fractions.Fraction`; every predicate is
decided exactly. Points are plain named tuples so they hash, sort and compare
by value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence, Union

Number = Union[int, Fraction]


class GeometryError(ValueError):
    pass


class DegenerateHull(GeometryError):
    """Raised when a hull of collinear points is requested."""


class InvalidPolygon(GeometryError):
    pass


def q(v) -> Number:
    """Normalize a number to int when integral, Fraction otherwise."""
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, float):
        if not v.is_integer():
            return Fraction(v)
        return int(v)
    return q(Fraction(v))


class Point(NamedTuple):
    x: Number
    y: Number

    def __repr__(self):
        return f"({self.x}, {self.y})"


def point(x, y) -> Point:
    return Point(q(x), q(y))


class Segment(NamedTuple):
    a: Point
    b: Point


class Orientation(enum.IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


class Location(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def cross(o: Point, a: Point, b: Point) -> Number:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orient(p: Point, q_: Point, r: Point) -> int:
    c = (q_[0] - p[0]) * (r[1] - p[1]) - (q_[1] - p[1]) * (r[0] - p[0])
    return (c > 0) - (c < 0)


def orientation(p: Point, q_: Point, r: Point) -> Orientation:
    return Orientation(orient(p, q_, r))


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff ``p`` lies on the closed segment ``ab``."""
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def signed_area2(ring: Sequence[Point]) -> Number:
    """Twice the signed area of a ring (positive for CCW)."""
    s = 0
    n = len(ring)
    for i in range(n):
        x1, y1 = ring[i]
        x2, y2 = ring[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return s


def centroid(pts: Sequence[Point]) -> Point:
    n = len(pts)
    return Point(q(Fraction(sum(p[0] for p in pts)) / n), q(Fraction(sum(p[1] for p in pts)) / n))


def midpoint(a: Point, b: Point) -> Point:
    return Point(q(Fraction(a[0] + b[0]) / 2), q(Fraction(a[1] + b[1]) / 2))


def lerp(a: Point, b: Point, t: Number) -> Point:
    t = Fraction(t)
    return Point(q(a[0] + t * (b[0] - a[0])), q(a[1] + t * (b[1] - a[1])))


# --------------------------------------------------------------------------
# convex polygons


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon, vertices CCW starting at the lexicographic minimum.

    ``generators`` optionally records the point set the hull was built from
    (including collinear boundary points); it does not take part in equality.
    """

    vertices: tuple[Point, ...]
    generators: tuple[Point, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(vs) < 3:
            raise DegenerateHull("a convex polygon needs at least 3 vertices")
        i = min(range(len(vs)), key=vs.__getitem__)
        object.__setattr__(self, "vertices", vs[i:] + vs[:i])

    @classmethod
    def from_points(cls, pts: Iterable) -> "ConvexPolygon":
        return convex_hull([p if isinstance(p, Point) else point(*p) for p in pts])

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def is_strictly_convex(self) -> bool:
        vs = self.vertices
        n = len(vs)
        return all(orient(vs[i - 1], vs[i], vs[(i + 1) % n]) > 0 for i in range(n))

    @cached_property
    def area2(self) -> Number:
        return signed_area2(self.vertices)

    @cached_property
    def bbox(self):
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    @cached_property
    def interior_point(self) -> Point:
        return centroid(self.vertices[:3])

    def __repr__(self):
        return f"ConvexPolygon({list(self.vertices)})"


def _hull_chain(pts: list[Point]) -> list[Point]:
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def hull_vertices(points: Iterable[Point]) -> list[Point]:
    """Strict hull (CCW, collinear points dropped); may have fewer than 3 points."""
    pts = sorted(set(points))
    return _hull_chain(pts)


def convex_hull(points: Iterable[Point]) -> ConvexPolygon:
    pts = sorted(set(points))
    hv = _hull_chain(pts)
    if len(hv) < 3:
        raise DegenerateHull("points are collinear")
    return ConvexPolygon(tuple(hv), tuple(pts))


def point_in_convex(C: ConvexPolygon, p: Point) -> Location:
    vs = C.vertices
    n = len(vs)
    on_edge = False
    px, py = p
    for i in range(n):
        ax, ay = vs[i]
        bx, by = vs[(i + 1) % n]
        c = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        if c < 0:
            return Location.OUTSIDE
        if c == 0:
            on_edge = True
    return Location.BOUNDARY if on_edge else Location.INSIDE


# --------------------------------------------------------------------------
# polygons with holes


def _ring(pts) -> tuple[Point, ...]:
    return tuple(p if isinstance(p, Point) else point(*p) for p in pts)


@dataclass(frozen=True)
class PolygonWithHoles:
    """Outer ring (CCW) minus hole rings (CW). Orientation is fixed on construction."""

    outer: tuple[Point, ...]
    holes: tuple[tuple[Point, ...], ...] = ()
    name: str = ""

    def __post_init__(self):
        outer = _ring(self.outer)
        if len(outer) < 3:
            raise InvalidPolygon("outer ring needs at least 3 vertices")
        if signed_area2(outer) < 0:
            outer = outer[::-1]
        holes = []
        for h in self.holes:
            h = _ring(h)
            if len(h) < 3:
                raise InvalidPolygon("hole ring needs at least 3 vertices")
            if signed_area2(h) > 0:
                h = h[::-1]
            holes.append(h)
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "holes", tuple(holes))

    @property
    def rings(self) -> tuple[tuple[Point, ...], ...]:
        return (self.outer,) + self.holes

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rings)

    @cached_property
    def vertices(self) -> list[Point]:
        return [p for r in self.rings for p in r]

    @cached_property
    def edges(self) -> list[tuple[Point, Point]]:
        return [(r[i], r[(i + 1) % len(r)]) for r in self.rings for i in range(len(r))]

    @cached_property
    def bbox(self):
        xs = [p[0] for p in self.outer]
        ys = [p[1] for p in self.outer]
        return min(xs), min(ys), max(xs), max(ys)

    @cached_property
    def hole_interior_points(self) -> list[Point]:
        return [ring_interior_point(h) for h in self.holes]

    @cached_property
    def area2(self) -> Number:
        return sum(signed_area2(r) for r in self.rings)

    def vertex_neighbors(self):
        """Yield (prev, v, next) for every vertex, with P's interior on the left of prev->v->next."""
        for r in self.rings:
            n = len(r)
            for i in range(n):
                yield r[i - 1], r[i], r[(i + 1) % n]

    def __repr__(self):
        return f"PolygonWithHoles(name={self.name!r}, n={self.n}, holes={len(self.holes)})"


def point_in_ring(ring: Sequence[Point], p: Point) -> Location:
    """Crossing-number test against one closed ring, exact."""
    px, py = p
    inside = False
    n = len(ring)
    for i in range(n):
        ax, ay = ring[i]
        bx, by = ring[(i + 1) % n]
        if (ay > py) != (by > py):
            c = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
            if c == 0:
                return Location.BOUNDARY
            if (c > 0) == (by > ay):
                inside = not inside
        elif ay == py == by and min(ax, bx) <= px <= max(ax, bx):
            return Location.BOUNDARY
        elif (ay == py and ax == px) or (by == py and bx == px):
            return Location.BOUNDARY
    return Location.INSIDE if inside else Location.OUTSIDE


def point_in_pwh(P: PolygonWithHoles, p: Point) -> Location:
    loc = point_in_ring(P.outer, p)
    if loc is not Location.INSIDE:
        return loc
    for h in P.holes:
        hl = point_in_ring(h, p)
        if hl is Location.BOUNDARY:
            return hl
        if hl is Location.INSIDE:
            return Location.OUTSIDE
    return Location.INSIDE


def ring_interior_point(ring: Sequence[Point]) -> Point:
    """A rational point strictly inside a simple ring."""
    n = len(ring)
    i = min(range(n), key=lambda k: ring[k])
    u, v, w = ring[i - 1], ring[i], ring[(i + 1) % n]
    # v is the lexicographic minimum, hence a convex corner; fix orientation
    if orient(u, v, w) < 0:
        u, w = w, u
    best = None
    best_d = 0
    for j, p in enumerate(ring):
        if p in (u, v, w):
            continue
        if orient(u, v, p) >= 0 and orient(v, w, p) >= 0 and orient(w, u, p) >= 0:
            d = cross(u, w, p)
            d = -d if d < 0 else d
            if best is None or d > best_d:
                best, best_d = p, d
    if best is None:
        return centroid((u, v, w))
    return midpoint(v, best)


# --------------------------------------------------------------------------
# lines and segments


def line_intersection(l1, l2) -> Point | None:
    """Intersection of the supporting lines, or None when parallel or identical."""
    (a, b), (c, d) = l1, l2
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    den = rx * sy - ry * sx
    if den == 0:
        return None
    t = Fraction((c[0] - a[0]) * sy - (c[1] - a[1]) * sx) / den
    return Point(q(a[0] + t * rx), q(a[1] + t * ry))


def _line_params(P: PolygonWithHoles, a: Point, dx, dy) -> set:
    """Parameters t at which a + t*(dx,dy) meets the boundary of P."""
    ts = set()
    dd = dx * dx + dy * dy
    ax, ay = a
    for (c, e) in P.edges:
        ex, ey = e[0] - c[0], e[1] - c[1]
        wx, wy = c[0] - ax, c[1] - ay
        den = dx * ey - dy * ex
        if den == 0:
            if wx * dy - wy * dx == 0:
                ts.add(Fraction(wx * dx + wy * dy) / dd)
                ts.add(Fraction((e[0] - ax) * dx + (e[1] - ay) * dy) / dd)
            continue
        u = wx * dy - wy * dx
        # u/den is the parameter along the edge
        if den > 0:
            if u < 0 or u > den:
                continue
        elif u > 0 or u < den:
            continue
        ts.add(Fraction(wx * ey - wy * ex) / den)
    return ts


def segment_in_pwh(P: PolygonWithHoles, s) -> bool:
    a, b = s
    if point_in_pwh(P, a) is Location.OUTSIDE or point_in_pwh(P, b) is Location.OUTSIDE:
        return False
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx == 0 and dy == 0:
        return True
    ts = sorted(t for t in _line_params(P, a, dx, dy) if 0 < t < 1)
    prev = Fraction(0)
    for t in ts + [Fraction(1)]:
        if point_in_pwh(P, lerp(a, b, (prev + t) / 2)) is Location.OUTSIDE:
            return False
        prev = t
    return True


def extend_segment(P: PolygonWithHoles, s) -> Segment:
    """Largest segment on the supporting line of ``s`` containing ``s`` inside closed P."""
    a, b = s
    dx, dy = b[0] - a[0], b[1] - a[1]
    ts = sorted(_line_params(P, a, dx, dy))
    hi = Fraction(1)
    for t in ts:
        if t <= hi:
            continue
        if point_in_pwh(P, lerp(a, b, (hi + t) / 2)) is Location.OUTSIDE:
            break
        hi = t
    lo = Fraction(0)
    for t in reversed(ts):
        if t >= lo:
            continue
        if point_in_pwh(P, lerp(a, b, (lo + t) / 2)) is Location.OUTSIDE:
            break
        lo = t
    return Segment(lerp(a, b, lo), lerp(a, b, hi))


def convex_in_pwh(P: PolygonWithHoles, C: ConvexPolygon) -> bool:
    """Exact test of C being contained in closed P."""
    cx0, cy0, cx1, cy1 = C.bbox
    px0, py0, px1, py1 = P.bbox
    if cx0 < px0 or cy0 < py0 or cx1 > px1 or cy1 > py1:
        return False
    for h, hp in zip(P.holes, P.hole_interior_points):
        if point_in_convex(C, hp) is not Location.OUTSIDE:
            return False
        for v in h:
            if point_in_convex(C, v) is Location.INSIDE:
                return False
    for e in C.edges():
        if not segment_in_pwh(P, e):
            return False
    return point_in_pwh(P, C.interior_point) is Location.INSIDE


def hull_in_pwh(P: PolygonWithHoles, pts: Iterable[Point]) -> bool:
    """conv(pts) inside closed P, accepting degenerate hulls (points, segments)."""
    hv = hull_vertices(pts)
    if len(hv) == 1:
        return point_in_pwh(P, hv[0]) is not Location.OUTSIDE
    if len(hv) == 2:
        return segment_in_pwh(P, (hv[0], hv[1]))
    return convex_in_pwh(P, ConvexPolygon(tuple(hv)))


def segment_intersection(s1, s2) -> list[Point]:
    """Intersection of two closed segments: [], [point] or [p, q] for a collinear overlap."""
    (a, b), (c, d) = s1, s2
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    wx, wy = c[0] - a[0], c[1] - a[1]
    den = rx * sy - ry * sx
    if den == 0:
        if wx * ry - wy * rx != 0:
            return []
        pts = [p for p in (a, b) if on_segment(p, c, d)] + [p for p in (c, d) if on_segment(p, a, b)]
        return sorted(set(pts))
    tn = wx * sy - wy * sx
    un = wx * ry - wy * rx
    if den < 0:
        den, tn, un = -den, -tn, -un
    if tn < 0 or tn > den or un < 0 or un > den:
        return []
    t = Fraction(tn, 1) / den
    return [Point(q(a[0] + t * rx), q(a[1] + t * ry))]


def segments_cross_open(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the open segment ab shares a point with the closed segment cd,
    other than at a or b."""
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    if o1 == 0 and o2 == 0:
        # collinear: overlap of positive length or a point of cd strictly inside ab
        for p in (c, d):
            if p != a and p != b and on_segment(p, a, b):
                return True
        return on_segment(a, c, d) and on_segment(b, c, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and c != a and c != b and on_segment(c, a, b):
        return True
    if o2 == 0 and d != a and d != b and on_segment(d, a, b):
        return True
    return False


def pseudo_angle(dx, dy) -> Fraction:
    """Exact value in [0, 4) monotone in the polar angle of (dx, dy)."""
    if dy >= 0:
        if dx >= 0:
            return Fraction(dy) / (dx + dy)
        return 1 - Fraction(dx) / (dy - dx)
    if dx < 0:
        return 2 - Fraction(dy) / (-dx - dy)
    return 3 + Fraction(dx) / (dx - dy)


def primitive_direction(dx, dy) -> tuple[int, int]:
    """Scale a nonzero rational direction to a primitive integer vector."""
    from math import gcd, lcm

    fx, fy = Fraction(dx), Fraction(dy)
    m = lcm(fx.denominator, fy.denominator)
    ix, iy = int(fx * m), int(fy * m)
    g = gcd(ix, iy)
    return ix // g, iy // g

"""Overlay of segment sets: exact splitting, half-edge faces, face representatives.

The same planar-graph machinery backs the witness arrangement, the uncovered
region computation and the triangulator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .geom import (
    ConvexPolygon,
    GeometryError,
    Location,
    Point,
    PolygonWithHoles,
    on_segment,
    orient,
    point_in_convex,
    point_in_pwh,
    point_in_ring,
    pseudo_angle,
    q,
    segment_intersection,
    signed_area2,
)

DEFAULT_FACE_CAP = 10**6


class ArrangementTooLarge(GeometryError):
    pass


def _float_bboxes(segs):
    arr = np.array([[float(a[0]), float(a[1]), float(b[0]), float(b[1])] for a, b in segs])
    lo = np.minimum(arr[:, :2], arr[:, 2:])
    hi = np.maximum(arr[:, :2], arr[:, 2:])
    eps = 1e-9 * (1.0 + float(np.abs(arr).max()))
    return lo - eps, hi + eps


def candidate_pairs(segs) -> Iterable[tuple[int, int]]:
    """Index pairs whose (slightly padded) float bounding boxes overlap."""
    m = len(segs)
    if m < 2:
        return []
    lo, hi = _float_bboxes(segs)
    order = np.argsort(lo[:, 0], kind="stable")
    lo, hi = lo[order], hi[order]
    out = []
    for k in range(m):
        # sweep in x: only later boxes starting before this one ends
        end = np.searchsorted(lo[:, 0], hi[k, 0], side="right")
        if end <= k + 1:
            continue
        js = np.arange(k + 1, end)
        ok = (lo[js, 1] <= hi[k, 1]) & (hi[js, 1] >= lo[k, 1]) & (hi[js, 0] >= lo[k, 0])
        i0 = int(order[k])
        for j in js[ok]:
            out.append((i0, int(order[j])))
    return out


def split_segments(segments: Iterable) -> list[tuple[Point, Point]]:
    """Split segments at all mutual intersections; returns deduplicated elementary edges."""
    segs = sorted({(min(a, b), max(a, b)) for a, b in segments if a != b})
    cuts = [{a, b} for a, b in segs]
    for i, j in candidate_pairs(segs):
        for p in segment_intersection(segs[i], segs[j]):
            cuts[i].add(p)
            cuts[j].add(p)
    pieces = set()
    for pts in cuts:
        ordered = sorted(pts)
        for u, v in zip(ordered, ordered[1:]):
            pieces.add((u, v))
    return sorted(pieces)


class PlanarGraph:
    """Half-edge structure over non-crossing elementary edges.

    Half-edge ``h`` and ``h ^ 1`` are twins; the face of a half-edge lies to its
    left. Positive-area cycles are bounded faces; every connected component has
    one negative cycle, which is attached to the face enclosing the component.
    """

    def __init__(self, edges: Sequence[tuple[Point, Point]]):
        nodes: list[Point] = []
        index: dict[Point, int] = {}
        orig: list[int] = []
        for a, b in edges:
            for p in (a, b):
                if p not in index:
                    index[p] = len(nodes)
                    nodes.append(p)
            orig.append(index[a])
            orig.append(index[b])
        self.nodes = nodes
        self.index = index
        self.orig = orig
        nh = len(orig)
        out: list[list[int]] = [[] for _ in nodes]
        for h in range(nh):
            out[orig[h]].append(h)
        ang = [None] * nh
        for h in range(nh):
            a, b = nodes[orig[h]], nodes[orig[h ^ 1]]
            ang[h] = pseudo_angle(b[0] - a[0], b[1] - a[1])
        pos = [0] * nh
        for lst in out:
            lst.sort(key=ang.__getitem__)
            for k, h in enumerate(lst):
                pos[h] = k
        self.out = out
        self.angle = ang
        nxt = [0] * nh
        for h in range(nh):
            t = h ^ 1
            lst = out[orig[t]]
            nxt[h] = lst[pos[t] - 1]
        self.next = nxt
        cyc_of = [-1] * nh
        cycles: list[list[int]] = []
        for h in range(nh):
            if cyc_of[h] >= 0:
                continue
            c = []
            e = h
            while cyc_of[e] < 0:
                cyc_of[e] = len(cycles)
                c.append(e)
                e = nxt[e]
            cycles.append(c)
        self.cycles = cycles
        self.cycle_of = cyc_of
        self.cycle_area2 = [signed_area2([nodes[orig[e]] for e in c]) for c in cycles]

    def dest(self, h: int) -> int:
        return self.orig[h ^ 1]

    def cycle_points(self, c: int) -> list[Point]:
        return [self.nodes[self.orig[e]] for e in self.cycles[c]]

    def components(self) -> list[int]:
        parent = list(range(len(self.nodes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for h in range(0, len(self.orig), 2):
            ra, rb = find(self.orig[h]), find(self.orig[h + 1])
            if ra != rb:
                parent[ra] = rb
        return [find(i) for i in range(len(self.nodes))]

    def assign_faces(self, cap: int = DEFAULT_FACE_CAP):
        """Compute bounded faces; returns (face_outer_cycle, face_inner_cycles, face_of_halfedge).

        Face id -1 is the unbounded face.
        """
        pos_cycles = [c for c, a in enumerate(self.cycle_area2) if a > 0]
        if len(pos_cycles) > cap:
            raise ArrangementTooLarge(f"{len(pos_cycles)} faces exceed the cap of {cap}")
        face_of_cycle = {c: f for f, c in enumerate(pos_cycles)}
        comp = self.components()
        comp_of_cycle = [comp[self.orig[c[0]]] for c in self.cycles]
        inner: list[list[int]] = [[] for _ in pos_cycles]
        rings = {}
        bboxes = {}
        for c in pos_cycles:
            pts = self.cycle_points(c)
            rings[c] = pts
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            bboxes[c] = (min(xs), min(ys), max(xs), max(ys))
        for c, a in enumerate(self.cycle_area2):
            if a > 0:
                continue
            # outer boundary of a component: find the smallest enclosing face of another component
            v = min(self.cycle_points(c))
            best = None
            for pc in pos_cycles:
                if comp_of_cycle[pc] == comp_of_cycle[c]:
                    continue
                x0, y0, x1, y1 = bboxes[pc]
                if not (x0 < v[0] < x1 and y0 < v[1] < y1):
                    continue
                if best is not None and self.cycle_area2[pc] >= self.cycle_area2[best]:
                    continue
                if point_in_ring(rings[pc], v) is Location.INSIDE:
                    best = pc
            f = -1 if best is None else face_of_cycle[best]
            face_of_cycle[c] = f
            if f >= 0:
                inner[f].append(c)
        face_of_he = [face_of_cycle[self.cycle_of[h]] for h in range(len(self.orig))]
        return pos_cycles, inner, face_of_he


def _ray_hit(m: Point, n, a: Point, b: Point):
    """Smallest t > 0 with m + t*n on segment ab, or None."""
    ex, ey = b[0] - a[0], b[1] - a[1]
    wx, wy = a[0] - m[0], a[1] - m[1]
    den = n[0] * ey - n[1] * ex
    if den == 0:
        if wx * n[1] - wy * n[0] != 0:
            return None
        nn = n[0] * n[0] + n[1] * n[1]
        ts = [Fraction(wx * n[0] + wy * n[1]) / nn,
              Fraction((b[0] - m[0]) * n[0] + (b[1] - m[1]) * n[1]) / nn]
        ts = [t for t in ts if t > 0]
        return min(ts) if ts else None
    s_num = wx * n[1] - wy * n[0]
    t = Fraction(wx * ey - wy * ex) / den
    s = Fraction(s_num) / den
    if t <= 0 or s < 0 or s > 1:
        return None
    return t


@dataclass
class Face:
    rep: Point
    inside: bool
    outer: int
    inner: list


class Arrangement:
    """Overlay of P's boundary with the boundaries of a list of convex polygons."""

    def __init__(self, P: PolygonWithHoles, polys: Sequence[ConvexPolygon] = (), cap: int = DEFAULT_FACE_CAP,
                 extra_segments: Iterable = ()):
        self.P = P
        self.polys = list(polys)
        segs = list(P.edges)
        for C in self.polys:
            segs.extend(C.edges())
        segs.extend(extra_segments)
        self.segments = segs
        pieces = split_segments(segs)
        if len(pieces) > 3 * cap:
            raise ArrangementTooLarge(f"{len(pieces)} edges exceed what a cap of {cap} faces allows")
        self.edges = pieces
        g = PlanarGraph(pieces)
        self.graph = g
        outer_cycles, inner, face_of_he = g.assign_faces(cap)
        self.face_of_he = face_of_he
        faces = []
        for f, c in enumerate(outer_cycles):
            rep = self._representative(c, inner[f])
            faces.append(Face(rep, point_in_pwh(P, rep) is Location.INSIDE, c, inner[f]))
        self.faces = faces

    def _representative(self, c: int, inner_cycles) -> Point:
        g = self.graph
        h0 = g.cycles[c][0]
        a, b = g.nodes[g.orig[h0]], g.nodes[g.dest(h0)]
        m = (Fraction(a[0] + b[0]) / 2, Fraction(a[1] + b[1]) / 2)
        n = (a[1] - b[1], b[0] - a[0])
        best = None
        for cc in [c] + list(inner_cycles):
            for h in g.cycles[cc]:
                if h == h0:
                    continue
                t = _ray_hit(m, n, g.nodes[g.orig[h]], g.nodes[g.dest(h)])
                if t is not None and (best is None or t < best):
                    best = t
        if best is None:
            raise GeometryError("open face encountered while placing a representative")
        t = best / 2
        return Point(q(m[0] + t * n[0]), q(m[1] + t * n[1]))

    # --- queries -------------------------------------------------------

    @property
    def inside_faces(self) -> list[int]:
        return [f for f, face in enumerate(self.faces) if face.inside]

    def face_points(self) -> list[tuple[Point, bool]]:
        return [(f.rep, f.inside) for f in self.faces]

    def faces_at(self, v: Point) -> list[int]:
        """Faces incident to node v (in CCW order of their bounding half-edges)."""
        g = self.graph
        k = g.index.get(v)
        if k is None:
            return []
        out = []
        for h in g.out[k]:
            f = self.face_of_he[h]
            if f not in out:
                out.append(f)
        return out

    def face_in_direction(self, v: Point, d) -> int | None:
        """Face entered when leaving node v along direction d; None if d runs along an edge."""
        g = self.graph
        k = g.index.get(v)
        if k is None:
            return None
        a = pseudo_angle(d[0], d[1])
        lst = g.out[k]
        angs = [g.angle[h] for h in lst]
        if a in angs:
            return None
        # wedge from lst[i] CCW to lst[i+1]; face of lst[i]
        i = -1
        for j, x in enumerate(angs):
            if x < a:
                i = j
        return self.face_of_he[lst[i]]

    def locate(self, p: Point) -> int | None:
        """Face whose interior contains p (None when p lies on an edge)."""
        g = self.graph
        for a, b in self.edges:
            if on_segment(p, a, b):
                return None
        best = None
        best_area = None
        for f, face in enumerate(self.faces):
            if best_area is not None and g.cycle_area2[face.outer] >= best_area:
                continue
            if point_in_ring(g.cycle_points(face.outer), p) is Location.INSIDE:
                best, best_area = f, g.cycle_area2[face.outer]
        return best

    def coverage(self, polys: Sequence[ConvexPolygon] | None = None) -> list[list[int]]:
        """For each face, indices of the polygons containing it."""
        polys = self.polys if polys is None else polys
        return [[i for i, C in enumerate(polys) if point_in_convex(C, face.rep) is Location.INSIDE]
                for face in self.faces]

    def face_neighbors(self, f: int) -> set[int]:
        g = self.graph
        face = self.faces[f]
        out = set()
        for c in [face.outer] + face.inner:
            for h in g.cycles[c]:
                out.add(self.face_of_he[h ^ 1])
        out.discard(f)
        return out

    def region_rings(self, face_set: set[int]) -> list[list[Point]]:
        """Boundary rings of the union of a set of faces (outer CCW, holes CW)."""
        g = self.graph
        fo = self.face_of_he
        rings = []
        seen = set()
        for h in range(len(g.orig)):
            if h in seen or fo[h] not in face_set or fo[h ^ 1] in face_set:
                continue
            ring = []
            e = h
            while e not in seen:
                seen.add(e)
                ring.append(g.nodes[g.orig[e]])
                e = g.next[e]
                while fo[e ^ 1] in face_set:
                    e = g.next[e ^ 1]
            rings.append(simplify_ring(ring))
        return rings


def build_arrangement(P: PolygonWithHoles, polys: Sequence[ConvexPolygon], cap: int = DEFAULT_FACE_CAP) -> Arrangement:
    return Arrangement(P, polys, cap)


def simplify_ring(ring: list[Point]) -> list[Point]:
    """Drop vertices lying strictly inside the segment joining their neighbours."""
    pts = list(ring)
    changed = True
    while changed and len(pts) > 3:
        changed = False
        n = len(pts)
        for i in range(n):
            u, v, w = pts[i - 1], pts[i], pts[(i + 1) % n]
            if u != w and orient(u, v, w) == 0 and on_segment(v, u, w):
                del pts[i]
                changed = True
                break
    return pts


def uncovered_components(P: PolygonWithHoles, polys: Sequence[ConvexPolygon],
                         cap: int = DEFAULT_FACE_CAP) -> list[PolygonWithHoles]:
    """Connected components (through shared edges) of P minus the union of polys."""
    arr = Arrangement(P, polys, cap)
    cov = arr.coverage()
    free = {f for f in arr.inside_faces if not cov[f]}
    comps = []
    todo = set(free)
    while todo:
        f0 = todo.pop()
        comp = {f0}
        stack = [f0]
        while stack:
            f = stack.pop()
            for nb in arr.face_neighbors(f):
                if nb in todo:
                    todo.discard(nb)
                    comp.add(nb)
                    stack.append(nb)
        comps.append(comp)
    out = []
    for comp in comps:
        rings = arr.region_rings(comp)
        outers = [r for r in rings if signed_area2(r) > 0]
        holes = [r for r in rings if signed_area2(r) < 0]
        for o in outers:
            mine = [h for h in holes if len(outers) == 1 or point_in_ring(o, min(h)) is not Location.OUTSIDE]
            out.append(PolygonWithHoles(tuple(o), tuple(tuple(h) for h in mine), name="uncovered"))
    out.sort(key=lambda U: min(U.outer))
    return out

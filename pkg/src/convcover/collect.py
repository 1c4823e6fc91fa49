"""Phase 1: collections of large convex polygons inside P.

Two seeds are supported: enumeration of all S-maximal convex polygons with a
geometric Bron-Kerbosch recursion, and a constrained triangulation whose
triangles are grown by randomized bloating.
"""

from __future__ import annotations

import enum
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .geom import (
    ConvexPolygon,
    Location,
    Point,
    PolygonWithHoles,
    convex_hull,
    convex_in_pwh,
    extend_segment,
    hull_in_pwh,
    hull_vertices,
    line_intersection,
    on_segment,
    point_in_convex,
    point,
    point_in_pwh,
    segment_in_pwh,
)
from .triangulation import triangulate

DEFAULT_MAX_POLYGONS = 200_000
DEFAULT_TIME_LIMIT = 60.0


class LimitExceeded(RuntimeError):
    """Enumeration stopped early; ``partial`` holds what was found so far."""

    def __init__(self, message: str, partial: list):
        super().__init__(message)
        self.partial = partial
        self.truncated = True


class PointSetKind(str, enum.Enum):
    V = "V"
    V_S1 = "V+S1"
    V_S2 = "V+S2"


# --------------------------------------------------------------------------
# point sets


def _dedup(points: Iterable[Point]) -> list[Point]:
    return list(dict.fromkeys(points))


def s1_points(P: PolygonWithHoles, edges) -> list[Point]:
    out = []
    for e in edges:
        s = extend_segment(P, e)
        out.extend(s)
    return _dedup(out)


def s2_points(P: PolygonWithHoles, edges) -> list[Point]:
    edges = list(edges)
    out = s1_points(P, edges)
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            p = line_intersection(edges[i], edges[j])
            if p is not None and point_in_pwh(P, p) is not Location.OUTSIDE:
                out.append(p)
    return _dedup(out)


def point_set(P: PolygonWithHoles, kind: PointSetKind | str = PointSetKind.V) -> list[Point]:
    kind = PointSetKind(kind)
    pts = list(P.vertices)
    if kind is PointSetKind.V_S1:
        pts += s1_points(P, P.edges)
    elif kind is PointSetKind.V_S2:
        pts += s2_points(P, P.edges)
    return [p for p in _dedup(pts) if point_in_pwh(P, p) is not Location.OUTSIDE]


def visibility_adjacent(P: PolygonWithHoles, u: Point, v: Point) -> bool:
    return segment_in_pwh(P, (u, v))


# --------------------------------------------------------------------------
# Bron-Kerbosch


def bron_kerbosch_cliques(vertices: Sequence[Hashable], adjacent: Callable[[Hashable, Hashable], bool] | dict):
    """All maximal cliques, each reported once (no pivoting, input order)."""
    if isinstance(adjacent, dict):
        nbrs = {v: set(adjacent.get(v, ())) for v in vertices}
    else:
        nbrs = {v: {u for u in vertices if u != v and adjacent(u, v)} for v in vertices}
    out = []

    def rec(R, S, X):
        if not S and not X:
            out.append(frozenset(R))
            return
        for v in list(S):
            rec(R + [v], [u for u in S if u in nbrs[v]], [u for u in X if u in nbrs[v]])
            S.remove(v)
            X.append(v)

    rec([], list(vertices), [])
    return out


def _integer_frame(P: PolygonWithHoles, pts: Sequence[Point]) -> int:
    """Common denominator of all coordinates; scaling by it makes every predicate integer-only."""
    L = 1
    for p in list(P.vertices) + list(pts):
        for c in p:
            if isinstance(c, Fraction):
                L = math.lcm(L, c.denominator)
    return L


def _scale_pwh(P: PolygonWithHoles, L: int) -> PolygonWithHoles:
    return PolygonWithHoles([(x * L, y * L) for x, y in P.outer], [[(x * L, y * L) for x, y in h] for h in P.holes],
                            name=P.name)


def enumerate_maximal_convex(P: PolygonWithHoles, S: Sequence[Point],
                             max_polygons: int = DEFAULT_MAX_POLYGONS,
                             time_limit: float | None = DEFAULT_TIME_LIMIT,
                             prune: bool = True) -> list[ConvexPolygon]:
    """All S-maximal convex polygons in P (deduplicated by hull)."""
    pts = _dedup(S)
    L = _integer_frame(P, pts)
    if L > 1:
        try:
            res = enumerate_maximal_convex(_scale_pwh(P, L), [point(x * L, y * L) for x, y in pts], max_polygons,
                                           time_limit, prune)
        except LimitExceeded as e:
            raise LimitExceeded(str(e), [_unscale(C, L) for C in e.partial]) from None
        return [_unscale(C, L) for C in res]
    fits_cache: dict[tuple, bool] = {}
    found: dict[ConvexPolygon, None] = {}
    deadline = None if time_limit is None else time.monotonic() + time_limit

    def fits(idx) -> bool:
        hv = tuple(hull_vertices([pts[i] for i in idx]))
        r = fits_cache.get(hv)
        if r is None:
            r = hull_in_pwh(P, hv)
            fits_cache[hv] = r
        return r

    def in_hull(R, xs) -> bool:
        hv = hull_vertices([pts[i] for i in R])
        if len(hv) == 1:
            return any(pts[x] == hv[0] for x in xs)
        if len(hv) == 2:
            return any(on_segment(pts[x], hv[0], hv[1]) for x in xs)
        H = ConvexPolygon(tuple(hv))
        return any(point_in_convex(H, pts[x]) is not Location.OUTSIDE for x in xs)

    def rec(R, Sc, X):
        if deadline is not None and time.monotonic() > deadline:
            raise LimitExceeded("time limit reached", list(found))
        if not Sc and not X:
            hv = hull_vertices([pts[i] for i in R])
            if len(hv) >= 3:
                C = ConvexPolygon(tuple(hv), tuple(sorted(pts[i] for i in R)))
                if C not in found:
                    found[C] = None
                    if len(found) > max_polygons:
                        raise LimitExceeded("polygon limit reached", list(found)[:max_polygons])
            return
        if prune and R and X and in_hull(R, X):
            return
        for v in list(Sc):
            S2 = [u for u in Sc if u != v and fits(R + [u, v])]
            X2 = [u for u in X if u != v and fits(R + [u, v])]
            rec(R + [v], S2, X2)
            Sc.remove(v)
            X.append(v)

    rec([], list(range(len(pts))), [])
    return list(found)


def _unscale(C: ConvexPolygon, L: int) -> ConvexPolygon:
    def f(p):
        return point(Fraction(p[0], L), Fraction(p[1], L))

    return ConvexPolygon(tuple(f(p) for p in C.vertices),
                         None if C.generators is None else tuple(sorted(f(p) for p in C.generators)))


# --------------------------------------------------------------------------
# bloating


def _source_parts(source) -> tuple[list[Point] | None, str | None, bool]:
    """Split a source descriptor into (fixed points, dynamic kind, uses V)."""
    if isinstance(source, str):
        parts = [s.strip().upper() for s in source.replace("∪", "+").split("+")]
        dyn = None
        for s in parts:
            if s in ("S1", "S1_OF_C", "S1(C)"):
                dyn = "S1"
            elif s in ("S2", "S2_OF_C", "S2(C)"):
                dyn = "S2"
            elif s != "V":
                raise ValueError(f"unknown point source {s!r}")
        return None, dyn, "V" in parts
    return list(source), None, False


def bloat(P: PolygonWithHoles, C: ConvexPolygon, source, rng: np.random.Generator,
          recompute: bool = True) -> ConvexPolygon:
    """Grow C by adding candidate points in random order while the hull stays inside P.

    ``source`` is a point list or a descriptor string such as ``"V"``, ``"S1"``, ``"V+S2"``.
    S1/S2 candidates are taken relative to the current polygon and refreshed after
    every accepted point unless ``recompute`` is False.
    """
    fixed, dyn, use_v = _source_parts(source)
    if fixed is None:
        fixed = list(P.vertices) if use_v else []
    gens = set(C.generators or C.vertices)
    tried: set[Point] = set()
    once = None
    while True:
        cands = list(fixed)
        if dyn is not None:
            if recompute or once is None:
                once = s1_points(P, C.edges()) if dyn == "S1" else s2_points(P, C.edges())
            cands += once
        cands = [p for p in _dedup(cands) if p not in tried]
        if not cands:
            return C
        accepted = False
        for k in rng.permutation(len(cands)):
            p = cands[int(k)]
            tried.add(p)
            if point_in_convex(C, p) is not Location.OUTSIDE:
                gens.add(p)
                continue
            D = convex_hull(list(C.vertices) + [p])
            if convex_in_pwh(P, D):
                gens.add(p)
                C = ConvexPolygon(D.vertices, tuple(sorted(gens)))
                accepted = True
                if dyn is not None and recompute:
                    break
        # rejections are final (C only grows), so a fixed candidate list needs one pass
        if not accepted or dyn is None or not recompute:
            return C


# --------------------------------------------------------------------------
# collections


@dataclass
class CollectionConfig:
    method: str = "triangulation"          # "triangulation" or "bk"
    points: str = "V"                       # point set for "bk"
    replication: int = 1
    rounds: tuple[str, ...] = ("V",)        # bloat rounds applied to every seed polygon
    seed: int = 0
    max_polygons: int = DEFAULT_MAX_POLYGONS
    time_limit: float | None = DEFAULT_TIME_LIMIT
    recompute: bool = True
    workers: int = 1

    def __post_init__(self):
        if self.method not in ("triangulation", "bk"):
            raise ValueError(f"unknown collection method {self.method!r}")
        if self.replication < 1:
            raise ValueError("replication must be >= 1")
        self.rounds = tuple(self.rounds)


@dataclass
class Collection:
    polygons: list[ConvexPolygon]
    source: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.polygons)

    def __iter__(self):
        return iter(self.polygons)


def _grow(args):
    P, C, rounds, key, recompute = args
    rng = np.random.default_rng(list(key))
    for src in rounds:
        C = bloat(P, C, src, rng, recompute)
    return C


def canonical_order(polys: Iterable[ConvexPolygon]) -> list[ConvexPolygon]:
    uniq = {C: None for C in polys}
    return sorted(uniq, key=lambda C: C.vertices)


def build_collection(P: PolygonWithHoles, config: CollectionConfig | None = None) -> Collection:
    cfg = config or CollectionConfig()
    if cfg.method == "bk":
        seeds = enumerate_maximal_convex(P, point_set(P, cfg.points), cfg.max_polygons, cfg.time_limit)
        jobs = [(P, C, cfg.rounds, (cfg.seed, i, 0), cfg.recompute) for i, C in enumerate(seeds)]
    else:
        tris = triangulate(P)
        jobs = [(P, T, cfg.rounds, (cfg.seed, i, k), cfg.recompute)
                for i, T in enumerate(tris) for k in range(cfg.replication)]
    if not cfg.rounds:
        grown = [j[1] for j in jobs]
    elif cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.workers) as ex:
            grown = list(ex.map(_grow, jobs, chunksize=max(1, len(jobs) // (4 * cfg.workers))))
    else:
        grown = [_grow(j) for j in jobs]
    prov = asdict(cfg)
    prov["rounds"] = list(cfg.rounds)
    prov.pop("workers", None)
    return Collection(canonical_order(grown), prov)

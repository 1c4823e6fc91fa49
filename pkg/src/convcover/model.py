"""Instances, solutions and collections in the CG:SHOP 2023 JSON formats, plus the verifier."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .arrangement import DEFAULT_FACE_CAP, uncovered_components
from .geom import (
    ConvexPolygon,
    DegenerateHull,
    InvalidPolygon,
    Location,
    Point,
    PolygonWithHoles,
    convex_in_pwh,
    point,
    point_in_ring,
    segments_cross_open,
    signed_area2,
)

INSTANCE_TYPE = "CGSHOP2023_Instance"
SOLUTION_TYPE = "CGSHOP2023_Solution"


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    polygon: PolygonWithHoles
    name: str

    @property
    def n(self) -> int:
        return self.polygon.n


@dataclass
class Solution:
    instance_name: str
    polygons: list[ConvexPolygon]
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.polygons)


@dataclass
class VerificationReport:
    convexity_ok: bool
    containment_ok: bool
    coverage_ok: bool
    uncovered_components: int
    size: int

    @property
    def ok(self) -> bool:
        return self.convexity_ok and self.containment_ok and self.coverage_ok

    def as_dict(self) -> dict:
        return {
            "convexity_ok": self.convexity_ok,
            "containment_ok": self.containment_ok,
            "coverage_ok": self.coverage_ok,
            "uncovered_components": self.uncovered_components,
            "size": self.size,
        }


# --------------------------------------------------------------------------
# numbers


def encode_number(v) -> Any:
    v = Fraction(v)
    if v.denominator == 1:
        return v.numerator
    return {"num": v.numerator, "den": v.denominator}


def decode_number(v) -> int | Fraction:
    if isinstance(v, bool):
        raise ParseError(f"not a coordinate: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, float) and v.is_integer():
        return int(v)
    if isinstance(v, dict) and set(v) >= {"num", "den"}:
        num, den = v["num"], v["den"]
        if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool) or den == 0:
            raise ParseError(f"bad rational {v!r}")
        f = Fraction(num, den)
        return f.numerator if f.denominator == 1 else f
    raise ParseError(f"not a coordinate: {v!r}")


def _decode_point(d) -> Point:
    try:
        return point(decode_number(d["x"]), decode_number(d["y"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad point {d!r}") from exc


def _encode_point(p: Point) -> dict:
    return {"x": encode_number(p[0]), "y": encode_number(p[1])}


def _load(data) -> dict:
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data) if isinstance(data, str) else data
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    return obj


# --------------------------------------------------------------------------
# validation


def check_polygon(P: PolygonWithHoles) -> None:
    """Raise InvalidPolygon unless rings are simple, holes disjoint and inside the outer ring."""
    for r in P.rings:
        if len(set(r)) != len(r):
            raise InvalidPolygon("ring repeats a vertex")
        if signed_area2(r) == 0:
            raise InvalidPolygon("ring has zero area")
    edges = [(r[i], r[(i + 1) % len(r)], k, i) for k, r in enumerate(P.rings) for i in range(len(r))]
    for x in range(len(edges)):
        a, b, rk, ri = edges[x]
        for y in range(x + 1, len(edges)):
            c, d, sk, si = edges[y]
            if rk == sk:
                n = len(P.rings[rk])
                if (si - ri) % n in (1, n - 1):
                    # adjacent edges: only the shared vertex may be common
                    shared = b if (si - ri) % n == 1 else a
                    other = d if shared == c else c
                    mine = a if shared == b else b
                    if segments_cross_open(shared, mine, shared, other) or segments_cross_open(shared, other, shared, mine):
                        raise InvalidPolygon("ring folds back on itself")
                    continue
            if _touch(a, b, c, d):
                raise InvalidPolygon("rings intersect or self-intersect")
    for h in P.holes:
        if point_in_ring(P.outer, h[0]) is not Location.INSIDE:
            raise InvalidPolygon("hole outside the outer boundary")
    for i, h in enumerate(P.holes):
        for j, g in enumerate(P.holes):
            if i != j and point_in_ring(g, h[0]) is not Location.OUTSIDE:
                raise InvalidPolygon("nested holes")


def _touch(a, b, c, d) -> bool:
    from .geom import segment_intersection

    return bool(segment_intersection((a, b), (c, d)))


# --------------------------------------------------------------------------
# instances


def parse_instance(data) -> Instance:
    obj = _load(data)
    for key in ("name", "outer_boundary"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}")
    if obj.get("type", INSTANCE_TYPE) != INSTANCE_TYPE:
        raise ParseError(f"unexpected type {obj.get('type')!r}")
    outer = [_decode_point(p) for p in obj["outer_boundary"]]
    holes_raw = obj.get("holes", [])
    if not isinstance(holes_raw, list):
        raise ParseError("holes must be a list")
    holes = [[_decode_point(p) for p in h] for h in holes_raw]
    P = PolygonWithHoles(tuple(outer), tuple(tuple(h) for h in holes), name=str(obj["name"]))
    check_polygon(P)
    if "n" in obj and obj["n"] != P.n:
        raise ParseError(f"field n={obj['n']} disagrees with {P.n} vertices")
    return Instance(P, str(obj["name"]))


def write_instance(inst: Instance) -> bytes:
    P = inst.polygon
    obj = {
        "type": INSTANCE_TYPE,
        "name": inst.name,
        "n": P.n,
        "outer_boundary": [_encode_point(p) for p in P.outer],
        "holes": [[_encode_point(p) for p in h] for h in P.holes],
    }
    return json.dumps(obj, indent=1).encode()


def load_instance(path) -> Instance:
    with open(path, "rb") as f:
        return parse_instance(f.read())


# --------------------------------------------------------------------------
# solutions and collections


def _decode_polygons(raw) -> list[ConvexPolygon]:
    if not isinstance(raw, list):
        raise ParseError("polygons must be a list")
    out = []
    for poly in raw:
        pts = [_decode_point(p) for p in poly]
        if len(pts) < 3:
            raise ParseError("polygon with fewer than 3 vertices")
        # keep the given ring (orientation aside); convexity is the verifier's business
        if signed_area2(pts) < 0:
            pts.reverse()
        try:
            out.append(ConvexPolygon(tuple(pts)))
        except DegenerateHull as exc:
            raise ParseError(str(exc)) from exc
    return out


def write_solution(s: Solution, meta: bool = True) -> bytes:
    if not s.polygons:
        raise ValueError("a solution needs at least one polygon")
    obj = {
        "type": SOLUTION_TYPE,
        "instance": s.instance_name,
        "polygons": [[_encode_point(p) for p in C.vertices] for C in s.polygons],
    }
    if meta and s.meta:
        obj["meta"] = s.meta
    return json.dumps(obj, indent=1).encode()


def parse_solution(data) -> Solution:
    obj = _load(data)
    if obj.get("type", SOLUTION_TYPE) != SOLUTION_TYPE:
        raise ParseError(f"unexpected type {obj.get('type')!r}")
    if "instance" not in obj or "polygons" not in obj:
        raise ParseError("solution needs 'instance' and 'polygons'")
    return Solution(str(obj["instance"]), _decode_polygons(obj["polygons"]), dict(obj.get("meta", {})))


def load_solution(path) -> Solution:
    with open(path, "rb") as f:
        return parse_solution(f.read())


def write_collection(instance_name: str, polys: Sequence[ConvexPolygon], provenance: dict) -> bytes:
    obj = {
        "type": "CGSHOP2023_Collection",
        "instance": instance_name,
        "polygons": [[_encode_point(p) for p in C.vertices] for C in polys],
        "provenance": provenance,
    }
    return json.dumps(obj, indent=1).encode()


def parse_collection(data) -> tuple[str, list[ConvexPolygon], dict]:
    obj = _load(data)
    if "polygons" not in obj:
        raise ParseError("collection needs 'polygons'")
    return str(obj.get("instance", "")), _decode_polygons(obj["polygons"]), dict(obj.get("provenance", {}))


# --------------------------------------------------------------------------
# verification


def verify(inst: Instance | PolygonWithHoles, s: Solution | Sequence[ConvexPolygon],
           cap: int = DEFAULT_FACE_CAP) -> VerificationReport:
    P = inst.polygon if isinstance(inst, Instance) else inst
    polys = s.polygons if isinstance(s, Solution) else list(s)
    convex = all(C.is_strictly_convex() for C in polys)
    contained = convex and all(convex_in_pwh(P, C) for C in polys)
    if not convex:
        # coverage is undefined for non-convex input; -1 marks "not computed"
        return VerificationReport(False, False, False, -1, len(polys))
    n_unc = len(uncovered_components(P, polys, cap))
    return VerificationReport(True, contained, n_unc == 0, n_unc, len(polys))

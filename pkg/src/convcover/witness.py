"""Witness points for the finite set cover.

A directed witness stands for the point ``p + eps * dir`` for an infinitesimal
``eps > 0``; its coverage is decided exactly through local cones.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from .arrangement import DEFAULT_FACE_CAP, Arrangement
from .geom import (
    ConvexPolygon,
    Location,
    Point,
    PolygonWithHoles,
    on_segment,
    point,
    point_in_convex,
    primitive_direction,
)


class WitnessKind(str, enum.Enum):
    PLAIN = "plain"
    DIRECTED = "directed"


class WitnessOrigin(str, enum.Enum):
    ARRANGEMENT = "arrangement"
    VERTEX = "vertex"
    QUICK_VERTEX = "quick_vertex"
    GENERATED = "generated"


@dataclass(frozen=True)
class Witness:
    p: Point
    dir: tuple[int, int] | None = None

    def __post_init__(self):
        if self.dir is not None:
            if self.dir[0] == 0 and self.dir[1] == 0:
                raise ValueError("directed witness needs a nonzero direction")
            object.__setattr__(self, "dir", primitive_direction(*self.dir))

    @property
    def kind(self) -> WitnessKind:
        return WitnessKind.PLAIN if self.dir is None else WitnessKind.DIRECTED

    def as_dict(self) -> dict:
        from .model import encode_number

        d = {"x": encode_number(self.p[0]), "y": encode_number(self.p[1])}
        if self.dir is not None:
            d["dx"], d["dy"] = self.dir
        return d

    @classmethod
    def from_dict(cls, d) -> "Witness":
        from .model import decode_number

        p = point(decode_number(d["x"]), decode_number(d["y"]))
        if "dx" in d:
            return cls(p, (int(d["dx"]), int(d["dy"])))
        return cls(p)


@dataclass
class WitnessSet:
    witnesses: list[Witness]
    origin: WitnessOrigin = WitnessOrigin.GENERATED

    def __post_init__(self):
        self.witnesses = list(dict.fromkeys(self.witnesses))

    def __len__(self):
        return len(self.witnesses)

    def __iter__(self):
        return iter(self.witnesses)

    def __getitem__(self, i):
        return self.witnesses[i]

    def extend(self, ws: Iterable[Witness]) -> int:
        """Add new witnesses; returns how many were actually new."""
        have = set(self.witnesses)
        added = 0
        for w in ws:
            if w not in have:
                have.add(w)
                self.witnesses.append(w)
                added += 1
        return added

    def to_json(self) -> str:
        return json.dumps({"origin": self.origin.value, "witnesses": [w.as_dict() for w in self.witnesses]})

    @classmethod
    def from_json(cls, text) -> "WitnessSet":
        obj = json.loads(text)
        return cls([Witness.from_dict(d) for d in obj["witnesses"]], WitnessOrigin(obj.get("origin", "generated")))


def _cr(u, v):
    return u[0] * v[1] - u[1] * v[0]


def covers(C: ConvexPolygon, w: Witness) -> bool:
    loc = point_in_convex(C, w.p)
    if loc is Location.OUTSIDE:
        return False
    if w.dir is None or loc is Location.INSIDE:
        return True
    vs = C.vertices
    n = len(vs)
    d = w.dir
    p = w.p
    for i in range(n):
        v = vs[i]
        if v == p:
            u, nx = vs[i - 1], vs[(i + 1) % n]
            e_out = (nx[0] - v[0], nx[1] - v[1])
            e_in = (u[0] - v[0], u[1] - v[1])
            return _cr(e_out, d) >= 0 and _cr(d, e_in) >= 0
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if on_segment(p, a, b):
            return _cr((b[0] - a[0], b[1] - a[1]), d) >= 0
    return False


# --------------------------------------------------------------------------
# arrangement-based witnesses


def arrangement_witnesses(P: PolygonWithHoles, C: Sequence[ConvexPolygon], cap: int = DEFAULT_FACE_CAP,
                          arrangement: Arrangement | None = None) -> WitnessSet:
    arr = arrangement or Arrangement(P, list(C), cap)
    return WitnessSet([Witness(arr.faces[f].rep) for f in arr.inside_faces], WitnessOrigin.ARRANGEMENT)


def vertex_witnesses(P: PolygonWithHoles, C: Sequence[ConvexPolygon], cap: int = DEFAULT_FACE_CAP,
                     arrangement: Arrangement | None = None) -> WitnessSet:
    arr = arrangement or Arrangement(P, list(C), cap)
    seen: dict[int, None] = {}
    for v in P.vertices:
        for f in arr.faces_at(v):
            if f >= 0 and arr.faces[f].inside:
                seen.setdefault(f, None)
    return WitnessSet([Witness(arr.faces[f].rep) for f in seen], WitnessOrigin.VERTEX)


# --------------------------------------------------------------------------
# quick vertex witnesses


def _linf_unit(d):
    m = max(abs(d[0]), abs(d[1]))
    return Fraction(d[0]) / m, Fraction(d[1]) / m


def gap_direction(d1, d2):
    """A direction strictly inside the CCW sweep from d1 to d2 (quasi-bisector)."""
    c = _cr(d1, d2)
    if c == 0:
        if d1[0] * d2[0] + d1[1] * d2[1] < 0:
            return (-d1[1], d1[0])
        raise ValueError("empty or full gap")
    a, b = _linf_unit(d1), _linf_unit(d2)
    s = (a[0] + b[0], a[1] + b[1])
    return s if c > 0 else (-s[0], -s[1])


def _ccw_from(d0):
    """Comparator ordering directions by CCW angle measured from d0."""

    def half(d):
        c = _cr(d0, d)
        if c > 0:
            return 0
        if c == 0 and d0[0] * d[0] + d0[1] * d[1] > 0:
            return -1
        return 1 if c < 0 else 0.5  # 0.5: exactly opposite to d0

    def cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        c = _cr(a, b)
        return -1 if c > 0 else (1 if c < 0 else 0)

    return cmp


def _incident_directions(v: Point, polys: Sequence[ConvexPolygon]) -> list[tuple[int, int]]:
    out = []
    for C in polys:
        x0, y0, x1, y1 = C.bbox
        if not (x0 <= v[0] <= x1 and y0 <= v[1] <= y1):
            continue
        vs = C.vertices
        n = len(vs)
        for i in range(n):
            a, b = vs[i], vs[(i + 1) % n]
            if a == v:
                out.append((b[0] - v[0], b[1] - v[1]))
            elif b == v:
                out.append((a[0] - v[0], a[1] - v[1]))
            elif on_segment(v, a, b):
                # edge passing through v: split it there
                out.append((b[0] - v[0], b[1] - v[1]))
                out.append((a[0] - v[0], a[1] - v[1]))
    return out


def quick_vertex_witnesses(P: PolygonWithHoles, C: Sequence[ConvexPolygon]) -> WitnessSet:
    """Directed witnesses, one per angular gap between consecutive edges at each vertex of P."""
    polys = list(C)
    ws = []
    for u, v, w in P.vertex_neighbors():
        d_start = (w[0] - v[0], w[1] - v[1])
        d_end = (u[0] - v[0], u[1] - v[1])
        cmp = _ccw_from(d_start)
        key = cmp_to_key(cmp)
        end_k = key(d_end)
        inner = {}
        for d in _incident_directions(v, polys):
            pd = primitive_direction(*d)
            k = key(pd)
            # strictly inside the interior cone of P at v; P's own edge directions give empty gaps
            if key(primitive_direction(*d_start)) < k < end_k:
                inner[pd] = None
        seq = [d_start] + sorted(inner, key=key) + [d_end]
        for a, b in zip(seq, seq[1:]):
            ws.append(Witness(v, primitive_direction(*gap_direction(a, b))))
    return WitnessSet(ws, WitnessOrigin.QUICK_VERTEX)

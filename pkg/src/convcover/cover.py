"""Finite set cover over witnesses: greedy, simulated annealing and exact branch-and-bound."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .geom import ConvexPolygon
from .witness import Witness, covers


class UncoveredWitness(ValueError):
    def __init__(self, index: int, witness=None):
        super().__init__(f"witness {index} ({witness}) is covered by no set")
        self.index = index
        self.witness = witness


@dataclass
class CoverInstance:
    n_sets: int
    n_witnesses: int
    membership: list[tuple[int, ...]]
    reverse: list[tuple[int, ...]] = field(default=None)

    def __post_init__(self):
        self.membership = [tuple(sorted(m)) for m in self.membership]
        if len(self.membership) != self.n_witnesses:
            raise ValueError("membership needs one row per witness")
        rev = [[] for _ in range(self.n_sets)]
        for w, sets in enumerate(self.membership):
            if not sets:
                raise UncoveredWitness(w)
            for s in sets:
                rev[s].append(w)
        rev = [tuple(r) for r in rev]
        if self.reverse is not None and [tuple(sorted(r)) for r in self.reverse] != rev:
            raise ValueError("reverse index inconsistent with membership")
        self.reverse = rev

    @classmethod
    def from_sets(cls, sets: Sequence[Sequence[int]], n_witnesses: int | None = None) -> "CoverInstance":
        """Build from the witness lists of each set."""
        n_w = n_witnesses if n_witnesses is not None else 1 + max((w for s in sets for w in s), default=-1)
        mem = [[] for _ in range(n_w)]
        for i, s in enumerate(sets):
            for w in s:
                mem[w].append(i)
        return cls(len(sets), n_w, mem)

    def to_json(self) -> str:
        return json.dumps({"n_sets": self.n_sets, "n_witnesses": self.n_witnesses,
                           "rows": [list(m) for m in self.membership]})

    @classmethod
    def from_json(cls, text) -> "CoverInstance":
        obj = json.loads(text)
        return cls(obj["n_sets"], obj["n_witnesses"], [tuple(r) for r in obj["rows"]])

    def is_cover(self, chosen) -> bool:
        ch = set(chosen)
        return all(any(s in ch for s in m) for m in self.membership)


@dataclass
class CoverSolution:
    chosen: list[int]
    lower_bound: int | None = None
    optimal: bool = False

    def __len__(self):
        return len(self.chosen)


@dataclass
class AnnealParams:
    iterations: int = 1000
    removals_per_step: int = 3
    temperature_numerator: Fraction = Fraction(100)
    rng_seed: int = 0

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.removals_per_step < 1:
            raise ValueError("removals_per_step must be >= 1")
        self.temperature_numerator = Fraction(self.temperature_numerator)


def build_cover_instance(polys: Sequence[ConvexPolygon], witnesses: Sequence[Witness]) -> CoverInstance:
    ws = list(witnesses)
    mem = []
    for k, w in enumerate(ws):
        row = [i for i, C in enumerate(polys) if _bbox_has(C, w.p) and covers(C, w)]
        if not row:
            raise UncoveredWitness(k, w)
        mem.append(row)
    return CoverInstance(len(polys), len(ws), mem)


def _bbox_has(C, p):
    x0, y0, x1, y1 = C.bbox
    return x0 <= p[0] <= x1 and y0 <= p[1] <= y1


def _rng(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


# --------------------------------------------------------------------------
# greedy


def _greedy_fill(ci: CoverInstance, chosen: list[int], count: list[int], rng: np.random.Generator) -> None:
    """Extend ``chosen`` until every witness is covered; ``count`` is per-witness cover multiplicity."""
    uncovered = {w for w in range(ci.n_witnesses) if count[w] == 0}
    gain = {}
    for w in uncovered:
        for s in ci.membership[w]:
            gain[s] = gain.get(s, 0) + 1
    while uncovered:
        best = max(gain.values())
        ties = sorted(s for s, g in gain.items() if g == best)
        s = ties[int(rng.integers(len(ties)))] if len(ties) > 1 else ties[0]
        chosen.append(s)
        for w in ci.reverse[s]:
            count[w] += 1
            if w in uncovered:
                uncovered.discard(w)
                for t in ci.membership[w]:
                    gain[t] -= 1
                    if gain[t] == 0:
                        del gain[t]


def _drop_redundant(ci: CoverInstance, chosen: list[int], count: list[int]) -> None:
    for s in list(chosen):
        if all(count[w] >= 2 for w in ci.reverse[s]):
            chosen.remove(s)
            for w in ci.reverse[s]:
                count[w] -= 1


def greedy_cover(ci: CoverInstance, rng=0) -> CoverSolution:
    """Most-uncovered-first greedy with random tie breaks, then removal of redundant sets."""
    rng = _rng(rng)
    chosen: list[int] = []
    count = [0] * ci.n_witnesses
    _greedy_fill(ci, chosen, count, rng)
    _drop_redundant(ci, chosen, count)
    return CoverSolution(chosen)


# --------------------------------------------------------------------------
# simulated annealing


def anneal_cover(ci: CoverInstance, params: AnnealParams | None = None,
                 lower_bound: int | None = None, start: CoverSolution | None = None) -> CoverSolution:
    params = params or AnnealParams()
    rng = np.random.default_rng(params.rng_seed)
    if start is None:
        start = greedy_cover(ci, rng)
    cur = list(start.chosen)
    best = list(cur)
    if lower_bound is None:
        lower_bound = _lower_bound(ci, set(range(ci.n_witnesses)), None)
    for i in range(1, params.iterations + 1):
        if len(best) <= lower_bound or len(cur) <= 1:
            break
        k = min(params.removals_per_step, len(cur) - 1)
        drop = set(int(j) for j in rng.choice(len(cur), size=k, replace=False))
        new = [s for j, s in enumerate(cur) if j not in drop]
        count = [0] * ci.n_witnesses
        for s in new:
            for w in ci.reverse[s]:
                count[w] += 1
        _greedy_fill(ci, new, count, rng)
        _drop_redundant(ci, new, count)
        if len(new) <= len(cur):
            cur = new
        else:
            d = Fraction(len(cur) - len(new), len(cur))
            t = params.temperature_numerator / i
            if rng.random() < math.exp(float(100 * d / t)):
                cur = new
        if len(cur) < len(best):
            best = list(cur)
    return CoverSolution(best, lower_bound, len(best) == lower_bound)


# --------------------------------------------------------------------------
# exact branch-and-bound


def _lower_bound(ci: CoverInstance, uncovered: set[int], allowed: set[int] | None) -> int:
    if not uncovered:
        return 0
    # greedy packing of witnesses no two of which share a set
    used: set[int] = set()
    packed = 0
    for w in sorted(uncovered, key=lambda w: len(ci.membership[w])):
        m = ci.membership[w] if allowed is None else [s for s in ci.membership[w] if s in allowed]
        if not used.intersection(m):
            used.update(m)
            packed += 1
    maxc = 0
    for s in (range(ci.n_sets) if allowed is None else allowed):
        c = sum(1 for w in ci.reverse[s] if w in uncovered)
        if c > maxc:
            maxc = c
    if maxc == 0:
        return 1 << 30
    return max(packed, -(-len(uncovered) // maxc))


class _Timeout(Exception):
    pass


def exact_cover(ci: CoverInstance, time_limit: float | None = 60.0, incumbent: CoverSolution | None = None) -> CoverSolution:
    """Branch-and-bound minimum set cover; ``optimal`` is False when the time limit cut it short."""
    inc = incumbent or greedy_cover(ci, 0)
    best = list(inc.chosen)
    all_w = set(range(ci.n_witnesses))
    root_lb = _lower_bound(ci, all_w, None)
    deadline = None if time_limit is None else time.monotonic() + time_limit
    nodes = 0

    def rec(chosen: list[int], uncovered: set[int], allowed: set[int]):
        nonlocal best, nodes
        nodes += 1
        if deadline is not None and nodes % 64 == 0 and time.monotonic() > deadline:
            raise _Timeout
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + _lower_bound(ci, uncovered, allowed) >= len(best):
            return
        # forced choices: witnesses with a single remaining set
        for w in uncovered:
            opts = [s for s in ci.membership[w] if s in allowed]
            if not opts:
                return
            if len(opts) == 1:
                s = opts[0]
                rec(chosen + [s], uncovered - set(ci.reverse[s]), allowed - {s})
                return
        s = max(sorted(allowed), key=lambda s: sum(1 for w in ci.reverse[s] if w in uncovered))
        rec(chosen + [s], uncovered - set(ci.reverse[s]), allowed - {s})
        rec(chosen, uncovered, allowed - {s})

    try:
        rec([], all_w, set(range(ci.n_sets)))
    except _Timeout:
        return CoverSolution(sorted(best), root_lb, len(best) == root_lb)
    return CoverSolution(sorted(best), len(best), True)

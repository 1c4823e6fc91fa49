"""Phase 2 orchestration: iterated set cover with constraint generation, patching and merging."""

from __future__ import annotations

import enum
import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arrangement import DEFAULT_FACE_CAP, Arrangement, uncovered_components
from .collect import Collection, CollectionConfig, build_collection, canonical_order
from .cover import AnnealParams, CoverSolution, anneal_cover, build_cover_instance, exact_cover, greedy_cover
from .geom import ConvexPolygon, PolygonWithHoles, centroid, convex_hull, convex_in_pwh
from .model import Instance, Solution, verify
from .triangulation import triangulate_region
from .witness import (
    Witness,
    WitnessOrigin,
    WitnessSet,
    arrangement_witnesses,
    quick_vertex_witnesses,
    vertex_witnesses,
)


class PipelineError(RuntimeError):
    pass


class Solver(str, enum.Enum):
    GREEDY = "greedy"
    ANNEAL = "anneal"
    EXACT = "exact"


class PatchMode(str, enum.Enum):
    CONSTRAINT_GEN = "constraint_gen"
    PATCH_AND_STOP = "patch_and_stop"


@dataclass
class PipelineConfig:
    collection: CollectionConfig = field(default_factory=CollectionConfig)
    witnesses: WitnessOrigin = WitnessOrigin.QUICK_VERTEX
    solver: Solver = Solver.EXACT
    max_iterations: int = 20
    patch_mode: PatchMode = PatchMode.CONSTRAINT_GEN
    seed: int = 0
    anneal_iterations: int = 1000
    solver_time_limit: float | None = 60.0
    face_cap: int = DEFAULT_FACE_CAP

    def __post_init__(self):
        self.witnesses = WitnessOrigin(self.witnesses)
        self.solver = Solver(self.solver)
        self.patch_mode = PatchMode(self.patch_mode)
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


@dataclass
class RunReport:
    iterations_used: int = 0
    witness_counts: list[int] = field(default_factory=list)
    sizes: list[int] = field(default_factory=list)
    uncovered_counts: list[int] = field(default_factory=list)
    timings: list[float] = field(default_factory=list)
    collection_size: int = 0
    patched: int = 0
    optimal: list[bool] = field(default_factory=list)
    truncated: bool = False
    relative_size: Fraction | None = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["relative_size"] = None if self.relative_size is None else str(self.relative_size)
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=1)


@dataclass
class UncoveredRegion:
    components: list[PolygonWithHoles]

    def __len__(self):
        return len(self.components)

    def __bool__(self):
        return bool(self.components)

    def __iter__(self):
        return iter(self.components)


def uncovered_region(P: PolygonWithHoles, S: Sequence[ConvexPolygon], cap: int = DEFAULT_FACE_CAP) -> UncoveredRegion:
    return UncoveredRegion(uncovered_components(P, list(S), cap))


def convex_pieces(U: PolygonWithHoles) -> list[ConvexPolygon]:
    """U itself when convex, otherwise its triangles."""
    if not U.holes and len(set(U.outer)) == len(U.outer):
        try:
            C = ConvexPolygon(tuple(U.outer))
        except ValueError:
            C = None
        if C is not None and C.is_strictly_convex():
            return [C]
    return [ConvexPolygon(t) for t in triangulate_region(U.outer, U.holes, delaunay=False)]


def greedy_merge_convex(P: PolygonWithHoles, R: Sequence[ConvexPolygon]) -> list[ConvexPolygon]:
    """Repeatedly replace a pair by the hull of its union while that hull stays in P.

    Pieces with the fewest merge partners go first, so a piece that can only join
    one neighbour is not stranded by an earlier merge of that neighbour.
    """
    live = dict(enumerate(R))
    nxt = len(live)
    hulls: dict[tuple[int, int], ConvexPolygon] = {}

    def try_pair(i, j):
        H = convex_hull(live[i].vertices + live[j].vertices)
        if convex_in_pwh(P, H):
            hulls[(i, j)] = H

    keys = sorted(live)
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            try_pair(keys[a], keys[b])
    while hulls:
        deg: dict[int, int] = {}
        for i, j in hulls:
            deg[i] = deg.get(i, 0) + 1
            deg[j] = deg.get(j, 0) + 1
        i, j = min(hulls, key=lambda p: (min(deg[p[0]], deg[p[1]]), max(deg[p[0]], deg[p[1]]), p))
        H = hulls[(i, j)]
        del live[i], live[j]
        hulls = {p: h for p, h in hulls.items() if i not in p and j not in p}
        others = sorted(live)
        live[nxt] = H
        for k in others:
            try_pair(k, nxt)
        nxt += 1
    return [live[k] for k in sorted(live)]


def patch(P: PolygonWithHoles, S: Sequence[ConvexPolygon], U: UncoveredRegion | None = None) -> list[ConvexPolygon]:
    """Convex polygons that, added to S, cover P."""
    if U is None:
        U = uncovered_region(P, S)
    R = [C for comp in U for C in convex_pieces(comp)]
    return greedy_merge_convex(P, R)


def relative_size(s: Solution | Sequence, best_size: int) -> Fraction:
    if best_size < 1:
        raise ValueError("best_size must be >= 1")
    return Fraction(best_size, len(s))


def _initial_witnesses(P, polys, cfg: PipelineConfig) -> WitnessSet:
    if cfg.witnesses is WitnessOrigin.QUICK_VERTEX:
        return quick_vertex_witnesses(P, polys)
    arr = Arrangement(P, polys, cfg.face_cap)
    if cfg.witnesses is WitnessOrigin.VERTEX:
        return vertex_witnesses(P, polys, arrangement=arr)
    return arrangement_witnesses(P, polys, arrangement=arr)


def _run_solver(ci, cfg: PipelineConfig, it: int) -> CoverSolution:
    rng = np.random.default_rng([cfg.seed, it])
    if cfg.solver is Solver.GREEDY:
        return greedy_cover(ci, rng)
    if cfg.solver is Solver.ANNEAL:
        seed = int(rng.integers(2**31))
        return anneal_cover(ci, AnnealParams(cfg.anneal_iterations, rng_seed=seed))
    return exact_cover(ci, cfg.solver_time_limit)


def solve(inst: Instance | PolygonWithHoles, cfg: PipelineConfig | None = None,
          collection: Collection | Sequence[ConvexPolygon] | None = None,
          best_size: int | None = None) -> tuple[Solution, RunReport]:
    """Build (or take) a collection and extract a small verified cover of P from it."""
    cfg = cfg or PipelineConfig()
    P = inst.polygon if isinstance(inst, Instance) else inst
    name = inst.name if isinstance(inst, Instance) else P.name
    if collection is None:
        collection = build_collection(P, cfg.collection)
    elif not isinstance(collection, Collection):
        collection = Collection(canonical_order(collection), {"method": "given"})
    polys = list(collection.polygons)
    report = RunReport(collection_size=len(polys))
    W = _initial_witnesses(P, polys, cfg)

    chosen: list[ConvexPolygon] = []
    for it in range(1, cfg.max_iterations + 1):
        t0 = time.monotonic()
        ci = build_cover_instance(polys, W.witnesses)
        sol = _run_solver(ci, cfg, it)
        chosen = [polys[i] for i in sorted(sol.chosen)]
        U = uncovered_region(P, chosen, cfg.face_cap)
        report.iterations_used = it
        report.witness_counts.append(len(W))
        report.sizes.append(len(chosen))
        report.uncovered_counts.append(len(U))
        report.optimal.append(sol.optimal)
        report.timings.append(time.monotonic() - t0)
        if not U:
            break
        if cfg.patch_mode is PatchMode.PATCH_AND_STOP or it == cfg.max_iterations:
            extra = patch(P, chosen, U)
            report.patched = len(extra)
            chosen = chosen + extra
            break
        added = W.extend(Witness(centroid(C.vertices)) for comp in U for C in convex_pieces(comp))
        if added == 0:
            raise PipelineError("constraint generation made no progress")

    rep = verify(P, chosen, cfg.face_cap)
    if not rep.ok:
        raise PipelineError(f"internal error: produced an invalid cover {rep}")
    if best_size is not None:
        report.relative_size = relative_size(chosen, best_size)
    meta = {
        "collection": collection.source,
        "solver": cfg.solver.value,
        "witnesses": cfg.witnesses.value,
        "seed": cfg.seed,
        "iterations": report.iterations_used,
    }
    return Solution(name, chosen, meta), report


def merge_solutions(inst: Instance | PolygonWithHoles, solutions: Sequence[Solution],
                    cfg: PipelineConfig | None = None) -> tuple[Solution, RunReport]:
    """Re-solve over the union of several solutions; never worse than the best input."""
    if not solutions:
        raise ValueError("nothing to merge")
    cfg = cfg or PipelineConfig()
    pool = canonical_order(C for s in solutions for C in s.polygons)
    coll = Collection(pool, {"method": "merge", "inputs": [len(s) for s in solutions]})
    merged, report = solve(inst, cfg, coll)
    best_in = min(solutions, key=len)
    if len(merged) > len(best_in):
        merged = Solution(merged.instance_name, list(best_in.polygons), dict(merged.meta, fallback="best_input"))
    merged.meta["merged_from"] = [len(s) for s in solutions]
    return merged, report

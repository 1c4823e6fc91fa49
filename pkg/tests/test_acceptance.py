"""Acceptance criteria, one PASS/FAIL line each.

Run with pytest (lines appear in the summary) or directly: python tests/test_acceptance.py
"""

import itertools
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles
from acceptance_log import report
from corpus import fuzz_corpus, simple_polygons

from convcover.arrangement import Arrangement
from convcover.collect import CollectionConfig, build_collection, enumerate_maximal_convex, point_set
from convcover.cover import AnnealParams, CoverInstance, anneal_cover, exact_cover, greedy_cover
from convcover.fixtures import FIXTURES, LSH, Q1, Q2, T, random_polygon_with_holes
from convcover.geom import ConvexPolygon, PolygonWithHoles
from convcover.model import load_instance, verify
from convcover.pipeline import PipelineConfig, merge_solutions, solve
from convcover.witness import arrangement_witnesses, covers, vertex_witnesses

SOCG_FIXED60 = Path(__file__).parent / "data" / "socg_fixed60.instance.json"


def _hull_sets(polys):
    return {frozenset(C.vertices) for C in polys}


def _covers_exact(P, polys):
    return oracles.covers_region(P.outer, P.holes, [C.vertices for C in polys])


def test_1_enumeration_matches_brute_force():
    t0 = time.monotonic()
    polys = simple_polygons()
    bad = [P.name for P in polys
           if _hull_sets(enumerate_maximal_convex(P, point_set(P, "V"))) != oracles.maximal_vertex_hulls(P.outer)]
    dt = time.monotonic() - t0
    report(1, not bad and len(polys) >= 200 and dt < 300,
           f"{len(polys) - len(bad)}/{len(polys)} polygons equal the oracle in {dt:.1f} s"
           + (f"; mismatches {bad[:5]}" if bad else ""))


def test_2_lsh_fixture():
    found = enumerate_maximal_convex(LSH, point_set(LSH, "V"))
    brute = oracles.maximal_vertex_hulls(LSH.outer)
    three = set(found) == {T, Q1, Q2} and _hull_sets(found) == brute
    opt = min(len(c) for k in range(1, 4) for c in itertools.combinations(found, k) if _covers_exact(LSH, c))
    cfg = PipelineConfig(collection=CollectionConfig(method="bk", rounds=()), solver="exact", witnesses="quick_vertex")
    s, r = solve(LSH, cfg)
    ok = three and opt == 2 and len(s) == 2 and r.iterations_used == 1 and verify(LSH, s).ok
    report(2, ok, f"{len(found)} V-maximal polygons, oracle minimum cover {opt}, "
                  f"pipeline size {len(s)} in {r.iterations_used} iteration(s)")


def test_3_socg_fixed60_numbers():
    if not SOCG_FIXED60.exists():
        report(3, False, f"instance file {SOCG_FIXED60.relative_to(Path(__file__).parent.parent)} is not available; "
                         "cannot check 82 / 1009 / 200")
    t0 = time.monotonic()
    P = load_instance(SOCG_FIXED60).polygon
    coll = enumerate_maximal_convex(P, point_set(P, "V"))
    arr = Arrangement(P, coll)
    n_arr = len(arrangement_witnesses(P, coll, arrangement=arr))
    n_vert = len(vertex_witnesses(P, coll, arrangement=arr))
    dt = time.monotonic() - t0
    report(3, (len(coll), n_arr, n_vert) == (82, 1009, 200) and dt < 60,
           f"{len(coll)} polygons, {n_arr} arrangement witnesses, {n_vert} vertex witnesses in {dt:.1f} s")


def merge_fixtures():
    rng = np.random.default_rng(4242)
    return [random_polygon_with_holes(rng, int(rng.integers(10, 16)), int(rng.integers(2, 5)), grid=60,
                                      name=f"merge{i:02d}") for i in range(20)]


def test_4_merge_never_worse():
    rows = []
    for P in merge_fixtures():
        sols = []
        for seed in range(5):
            cfg = PipelineConfig(collection=CollectionConfig(seed=seed), solver="greedy", seed=seed)
            sols.append(solve(P, cfg)[0])
        m, _ = merge_solutions(P, sols, PipelineConfig(solver="exact"))
        rows.append((min(map(len, sols)), len(m), verify(P, m).ok))
    never_worse = all(m <= b and ok for b, m, ok in rows)
    smaller = sum(m < b for b, m, _ in rows)
    report(4, never_worse and smaller >= 1,
           f"{len(rows)} fixtures, k=5: merged never larger than best input; strictly smaller on {smaller}")


def _minimal(ci, chosen):
    return all(not ci.is_cover([t for t in chosen if t != s]) for s in chosen)


def test_5_set_cover_suite():
    t0 = time.monotonic()
    rng = np.random.default_rng(5)
    fails = 0
    n = 500
    for k in range(n):
        n_sets, n_w = int(rng.integers(1, 16)), int(rng.integers(1, 30))
        dens = rng.uniform(0.1, 0.5)
        rows = [tuple(np.flatnonzero(rng.random(n_sets) < dens)) or (int(rng.integers(n_sets)),) for _ in range(n_w)]
        ci = CoverInstance(n_sets, n_w, rows)
        opt = oracles.min_cover_size([list(r) for r in ci.reverse], n_w)
        g = greedy_cover(ci, k)
        a = anneal_cover(ci, AnnealParams(300, rng_seed=k), start=greedy_cover(ci, k))
        e = exact_cover(ci)
        good = (len(e) == opt and e.optimal and len(a) <= len(g)
                and all(ci.is_cover(s.chosen) and _minimal(ci, s.chosen) for s in (g, a, e)))
        fails += not good
    dt = time.monotonic() - t0
    report(5, fails == 0 and dt < 300, f"{n - fails}/{n} random matrices (n_sets <= 15) agree with exhaustive "
                                       f"search, anneal <= greedy, all minimal and feasible, {dt:.1f} s")


def _small_collection_instances():
    out = []
    for P in list(FIXTURES.values()) + list(simple_polygons()[:60]):
        coll = build_collection(P, CollectionConfig(method="bk", rounds=())).polygons
        if len(coll) <= 6:
            out.append((P, coll))
    return out


def test_6_witness_exactness():
    checked = mismatches = 0
    cases = _small_collection_instances()
    for P, coll in cases:
        W = arrangement_witnesses(P, coll).witnesses
        for k in range(len(coll) + 1):
            for S in itertools.combinations(coll, k):
                by_witness = all(any(covers(C, w) for C in S) for w in W)
                mismatches += by_witness != (bool(S) and _covers_exact(P, S))
                checked += 1
    report(6, mismatches == 0 and len(cases) >= 10,
           f"{len(cases)} instances with |C| <= 6, {checked} subsets, {mismatches} disagreements with exact coverage")


def _strip_case():
    P = PolygonWithHoles([(0, 0), (4, 0), (4, 4), (0, 4)], name="strip")
    rects = [[(0, 0), (4, 0), (4, 1), (0, 1)], [(0, 3), (4, 3), (4, 4), (0, 4)], [(0, 1), (4, 1), (4, 3), (0, 3)]]
    return P, [ConvexPolygon.from_points(r) for r in rects]


def test_7_constraint_generation_terminates():
    cases = [(P, build_collection(P, CollectionConfig(method=m)).polygons)
             for P in fuzz_corpus() for m in ("triangulation", "bk")]
    cases.append(_strip_case())
    hist: dict[int, int] = {}
    bad = []
    for P, coll in cases:
        bound = len(Arrangement(P, coll).inside_faces)
        for solver in ("greedy", "exact"):
            cfg = PipelineConfig(witnesses="quick_vertex", solver=solver, max_iterations=bound + 1)
            s, r = solve(P, cfg, collection=coll)
            hist[r.iterations_used] = hist.get(r.iterations_used, 0) + 1
            if r.iterations_used > bound or r.patched or not verify(P, s).ok:
                bad.append(P.name)
    runs = sum(hist.values())
    within3 = sum(v for k, v in hist.items() if k <= 3)
    dist = ", ".join(f"{k}:{v}" for k, v in sorted(hist.items()))
    report(7, not bad, f"{runs} runs all within the face-count bound; {within3 / runs:.1%} finished in <= 3 "
                       f"iterations (iterations:runs {dist})" + (f"; failures {bad[:5]}" if bad else ""))


COLLECTION_CONFIGS = {
    "bk-V": CollectionConfig(method="bk", rounds=()),
    "bk-V+S1": CollectionConfig(method="bk", points="V+S1", rounds=()),
    "tri-V": CollectionConfig(method="triangulation"),
    "tri-r2-V,V+S1": CollectionConfig(method="triangulation", replication=2, rounds=("V", "V+S1")),
}


def test_8_end_to_end_validity():
    runs = 0
    bad = []
    for P in fuzz_corpus():
        for cname, ccfg in COLLECTION_CONFIGS.items():
            coll = build_collection(P, ccfg)
            sols = []
            for wit, solver, mode in itertools.product(("quick_vertex", "vertex", "arrangement"),
                                                       ("greedy", "anneal", "exact"),
                                                       ("constraint_gen", "patch_and_stop")):
                cfg = PipelineConfig(collection=ccfg, witnesses=wit, solver=solver, patch_mode=mode,
                                     anneal_iterations=200)
                try:
                    s, _ = solve(P, cfg, collection=coll)
                except Exception as e:              # an invalid cover surfaces as a pipeline error
                    bad.append(f"{P.name}/{cname}/{wit}/{solver}/{mode}: {e}")
                    continue
                sols.append(s)
            sols.append(merge_solutions(P, sols[:3], PipelineConfig(solver="greedy"))[0])
            for s in sols:
                runs += 1
                rep = verify(P, s)
                if not (rep.convexity_ok and rep.containment_ok and rep.coverage_ok and rep.uncovered_components == 0):
                    bad.append(f"{P.name}/{cname}: {rep}")
    report(8, not bad, f"{runs} solutions over {len(fuzz_corpus())} corpus polygons x {len(COLLECTION_CONFIGS)} "
                       f"collection configs pass verify" + (f"; failures {bad[:3]}" if bad else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))

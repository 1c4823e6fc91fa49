import json
from fractions import Fraction as F

import pytest

from convcover.collect import CollectionConfig
from convcover.fixtures import FIXTURES, LSH, Q1, Q2, T, UNIT_SQUARE
from convcover.geom import ConvexPolygon, PolygonWithHoles
from convcover.model import Instance, Solution, verify
from convcover.pipeline import (
    PatchMode,
    PipelineConfig,
    convex_pieces,
    greedy_merge_convex,
    merge_solutions,
    patch,
    relative_size,
    solve,
    uncovered_region,
)

from corpus import holed_polygons

SQ = ConvexPolygon.from_points(UNIT_SQUARE.outer)
BIG = PolygonWithHoles([(0, 0), (4, 0), (4, 4), (0, 4)], name="big")
BOTTOM = ConvexPolygon.from_points([(0, 0), (4, 0), (4, 1), (0, 1)])
TOP = ConvexPolygon.from_points([(0, 3), (4, 3), (4, 4), (0, 4)])
MIDDLE = ConvexPolygon.from_points([(0, 1), (4, 1), (4, 3), (0, 3)])


def test_uncovered_region():
    assert not uncovered_region(LSH, [Q1, Q2])
    U = uncovered_region(LSH, [Q1])
    assert len(U) == 1 and ConvexPolygon.from_points(U.components[0].outer) == Q2
    assert not uncovered_region(UNIT_SQUARE, [SQ])


def test_patch_examples():
    assert patch(LSH, [Q1, Q2]) == []
    assert patch(LSH, [Q1]) == [Q2]
    # an L-shaped hole in the cover: 4 triangles merge into 2 convex pieces
    R = patch(LSH, [])
    assert len(R) == 2 and verify(LSH, R).ok


def test_convex_pieces():
    assert convex_pieces(PolygonWithHoles(Q2.vertices)) == [Q2]
    assert len(convex_pieces(LSH)) == 4


def test_greedy_merge_examples():
    halves = [ConvexPolygon.from_points([(0, 0), (1, 0), (1, 1)]), ConvexPolygon.from_points([(0, 0), (1, 1), (0, 1)])]
    assert greedy_merge_convex(UNIT_SQUARE, halves) == [SQ]
    assert set(greedy_merge_convex(LSH, [Q1, T])) == {Q1, T}
    assert greedy_merge_convex(LSH, [Q1]) == [Q1]


def test_relative_size():
    assert relative_size([Q1, Q2], 2) == 1
    assert relative_size([SQ] * 74, 70) == F(35, 37)
    assert relative_size([SQ], 1) == 1
    with pytest.raises(ValueError):
        relative_size([SQ], 0)


def test_solve_square_and_lsh():
    s, r = solve(Instance(UNIT_SQUARE, "sq"))
    assert len(s) == 1 and r.iterations_used == 1
    cfg = PipelineConfig(collection=CollectionConfig(method="bk", rounds=()))
    s, r = solve(Instance(LSH, "lsh"), cfg, best_size=2)
    assert len(s) == 2 and r.iterations_used == 1 and r.relative_size == 1
    assert s.instance_name == "lsh"


@pytest.mark.parametrize("P", list(FIXTURES.values()) + list(holed_polygons()[:4]), ids=lambda P: P.name)
def test_arrangement_witnesses_need_one_iteration(P):
    for method in ("bk", "triangulation"):
        cfg = PipelineConfig(collection=CollectionConfig(method=method), witnesses="arrangement")
        s, r = solve(P, cfg)
        assert r.iterations_used == 1 and r.patched == 0 and verify(P, s).ok


def test_constraint_generation_adds_witnesses():
    cfg = PipelineConfig(patch_mode=PatchMode.CONSTRAINT_GEN)
    s, r = solve(BIG, cfg, collection=[BOTTOM, TOP, MIDDLE])
    assert r.iterations_used == 2 and r.witness_counts == [4, 5] and r.sizes == [2, 3]
    assert r.patched == 0 and len(s) == 3


def test_patch_and_stop():
    cfg = PipelineConfig(patch_mode=PatchMode.PATCH_AND_STOP)
    s, r = solve(BIG, cfg, collection=[BOTTOM, TOP, MIDDLE])
    assert r.iterations_used == 1 and r.patched == 1 and verify(BIG, s).ok and len(s) == 3


def test_max_iterations_falls_back_to_patch():
    cfg = PipelineConfig(max_iterations=1)
    s, r = solve(BIG, cfg, collection=[BOTTOM, TOP, MIDDLE])
    assert r.patched == 1 and verify(BIG, s).ok


def test_merge_examples():
    inst = Instance(LSH, "lsh")
    a = Solution("lsh", [Q1, Q2])
    m, _ = merge_solutions(inst, [a, a])
    assert len(m) == 2
    b = Solution("lsh", [T, Q1])
    m, _ = merge_solutions(inst, [a, b])
    assert len(m) == 2 and verify(LSH, m).ok
    with pytest.raises(ValueError):
        merge_solutions(inst, [])


def test_merge_never_worse_than_best_input():
    # the re-solve is heuristic; the result falls back to the best input when it loses
    P = holed_polygons()[1]
    sols = []
    for seed in range(3):
        cfg = PipelineConfig(collection=CollectionConfig(seed=seed), solver="greedy", seed=seed)
        sols.append(solve(P, cfg)[0])
    m, _ = merge_solutions(P, sols, PipelineConfig(solver="greedy"))
    assert len(m) <= min(len(s) for s in sols) and verify(P, m).ok


def test_report_json_and_determinism():
    P = holed_polygons()[2]
    cfg = PipelineConfig(collection=CollectionConfig(replication=2, seed=5), solver="anneal", seed=5)
    s1, r1 = solve(P, cfg)
    s2, r2 = solve(P, cfg)
    assert s1.polygons == s2.polygons and r1.sizes == r2.sizes
    d = json.loads(r1.to_json())
    assert d["iterations_used"] == r1.iterations_used and d["collection_size"] == r1.collection_size


def test_config_validation():
    with pytest.raises(ValueError):
        PipelineConfig(max_iterations=0)
    with pytest.raises(ValueError):
        PipelineConfig(solver="cplex")
    with pytest.raises(ValueError):
        CollectionConfig(method="grid")

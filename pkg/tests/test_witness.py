from collections import Counter
from fractions import Fraction as F

import numpy as np
import pytest

from convcover.collect import CollectionConfig, build_collection
from convcover.fixtures import DON, FIXTURES, LSH, Q1, Q2, UNIT_SQUARE
from convcover.geom import ConvexPolygon, point
from convcover.witness import (
    Witness,
    WitnessSet,
    arrangement_witnesses,
    covers,
    gap_direction,
    quick_vertex_witnesses,
    vertex_witnesses,
)

from corpus import holed_polygons, simple_polygons

SQ = ConvexPolygon.from_points(UNIT_SQUARE.outer)


def test_covers_plain_and_directed():
    assert covers(SQ, Witness(point(F(1, 2), F(1, 2))))
    assert covers(SQ, Witness(point(0, 0), (1, 1)))
    assert not covers(SQ, Witness(point(0, 0), (-1, 0)))
    assert covers(SQ, Witness(point(0, F(1, 2)), (0, 1)))
    assert not covers(SQ, Witness(point(0, F(1, 2)), (-1, 1)))
    assert not covers(SQ, Witness(point(2, 2)))


def test_directed_covers_matches_epsilon_limit():
    # the cone test agrees with probing p + eps*d for a small explicit eps
    from convcover.geom import Location, point_in_convex
    rng = np.random.default_rng(0)
    C = ConvexPolygon.from_points([(0, 0), (6, 0), (8, 5), (3, 7), (-1, 4)])
    eps = F(1, 1000)
    for _ in range(300):
        p = C.vertices[int(rng.integers(len(C)))] if rng.random() < 0.5 else \
            point(*[F(int(c), 2) for c in rng.integers(-2, 17, size=2)])
        d = tuple(int(c) for c in rng.integers(-3, 4, size=2))
        if d == (0, 0) or point_in_convex(C, p) is Location.OUTSIDE:
            continue
        probe = point(p[0] + eps * d[0], p[1] + eps * d[1])
        assert covers(C, Witness(p, d)) == (point_in_convex(C, probe) is not Location.OUTSIDE)


def test_witness_direction_normalized_and_json():
    w = Witness(point(1, 2), (4, -6))
    assert w.dir == (2, -3)
    ws = WitnessSet([w, Witness(point(F(1, 3), 0)), w])
    assert len(ws) == 2
    back = WitnessSet.from_json(ws.to_json())
    assert back.witnesses == ws.witnesses and back.origin == ws.origin
    assert ws.extend([w, Witness(point(0, 0))]) == 1
    with pytest.raises(ValueError):
        Witness(point(0, 0), (0, 0))


def test_arrangement_witnesses():
    assert len(arrangement_witnesses(UNIT_SQUARE, [SQ])) == 1
    assert len(arrangement_witnesses(LSH, [Q1, Q2])) == 2


def test_vertex_witnesses():
    assert len(vertex_witnesses(UNIT_SQUARE, [SQ])) == 1
    assert len(vertex_witnesses(LSH, [Q1, Q2])) == 2


def test_quick_witnesses_examples():
    assert len(quick_vertex_witnesses(UNIT_SQUARE, [SQ])) == 4
    assert len(quick_vertex_witnesses(LSH, [])) == 6
    ws = quick_vertex_witnesses(LSH, [Q1, Q2])
    per_vertex = Counter(w.p for w in ws)
    assert len(ws) == 8
    assert per_vertex == {(0, 0): 2, (2, 0): 1, (2, 1): 1, (1, 1): 2, (1, 2): 1, (0, 2): 1}


def test_quick_witness_directions_point_into_p():
    from convcover.geom import Location, point_in_pwh
    for P in list(FIXTURES.values()) + list(holed_polygons()[:4]):
        coll = build_collection(P, CollectionConfig()).polygons
        for w in quick_vertex_witnesses(P, coll):
            probe = point(w.p[0] + F(1, 10**6) * w.dir[0], w.p[1] + F(1, 10**6) * w.dir[1])
            assert point_in_pwh(P, probe) is Location.INSIDE


def test_reflex_and_straight_gaps():
    d = gap_direction((1, 0), (0, 1))
    assert d[0] > 0 and d[1] > 0
    d = gap_direction((1, 0), (-1, 0))          # 180 degree gap
    assert d == (0, 1)
    d = gap_direction((0, 1), (1, 0))           # 270 degree (reflex) gap
    assert d[0] < 0 and d[1] < 0


@pytest.mark.parametrize("P", list(FIXTURES.values()) + list(holed_polygons()[:4]) + list(simple_polygons()[:12]),
                         ids=lambda P: P.name)
def test_quick_equivalent_to_vertex_witnesses(P):
    """Covering all quick witnesses <=> covering all vertex-incident cells, for subfamilies of C."""
    coll = build_collection(P, CollectionConfig(replication=2)).polygons
    quick = quick_vertex_witnesses(P, coll)
    vw = vertex_witnesses(P, coll)
    rng = np.random.default_rng(len(coll))
    for _ in range(40):
        S = [C for C in coll if rng.random() < 0.6]
        a = all(any(covers(C, w) for C in S) for w in quick)
        b = all(any(covers(C, w) for C in S) for w in vw)
        assert a == b

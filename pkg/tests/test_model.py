import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convcover.fixtures import DON, LSH, Q1, Q2, UNIT_SQUARE
from convcover.geom import ConvexPolygon, InvalidPolygon, point, signed_area2
from convcover.model import (
    Instance,
    ParseError,
    Solution,
    decode_number,
    encode_number,
    parse_collection,
    parse_instance,
    parse_solution,
    verify,
    write_collection,
    write_instance,
    write_solution,
)


def _inst_json(outer, holes=(), name="x", **extra):
    obj = {"type": "CGSHOP2023_Instance", "name": name,
           "outer_boundary": [{"x": x, "y": y} for x, y in outer],
           "holes": [[{"x": x, "y": y} for x, y in h] for h in holes]}
    obj.update(extra)
    return json.dumps(obj)


def test_parse_square():
    inst = parse_instance(_inst_json(UNIT_SQUARE.outer, n=4))
    assert inst.n == 4 and not inst.polygon.holes


def test_ccw_hole_reoriented():
    inst = parse_instance(_inst_json(DON.outer, [[(2, 2), (4, 2), (4, 4), (2, 4)]]))
    assert signed_area2(inst.polygon.holes[0]) < 0


def test_repeated_vertex_rejected():
    with pytest.raises(InvalidPolygon):
        parse_instance(_inst_json([(0, 0), (1, 0), (1, 1), (1, 0), (0, 1)]))


@pytest.mark.parametrize("outer,holes", [
    ([(0, 0), (2, 2), (2, 0), (0, 2)], []),                       # bow tie
    ([(0, 0), (1, 0), (2, 0)], []),                               # zero area
    ([(0, 0), (4, 0), (4, 4), (0, 4)], [[(3, 3), (5, 3), (5, 5)]]),  # hole crosses outer
    ([(0, 0), (4, 0), (4, 4), (0, 4)], [[(5, 5), (6, 5), (6, 6)]]),  # hole outside
])
def test_invalid_polygons(outer, holes):
    with pytest.raises(InvalidPolygon):
        parse_instance(_inst_json(outer, holes))


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_instance("{not json")
    with pytest.raises(ParseError):
        parse_instance(json.dumps({"name": "x"}))
    with pytest.raises(ParseError):
        parse_instance(_inst_json(UNIT_SQUARE.outer, n=5))
    with pytest.raises(ParseError):
        parse_instance(_inst_json([(0, 0), (True, 0), (1, 1)]))


def test_number_encoding():
    assert encode_number(3) == 3
    assert encode_number(F(1, 2)) == {"num": 1, "den": 2}
    assert decode_number({"num": 2, "den": 4}) == F(1, 2)
    assert decode_number({"num": 4, "den": 2}) == 2
    with pytest.raises(ParseError):
        decode_number({"num": 1, "den": 0})


def test_solution_rational_coordinate():
    C = ConvexPolygon.from_points([(F(1, 2), 3), (0, 0), (1, 0)])
    obj = json.loads(write_solution(Solution("x", [C])))
    xs = [p["x"] for p in obj["polygons"][0]]
    assert {"num": 1, "den": 2} in xs


def test_square_solution_json():
    obj = json.loads(write_solution(Solution("unit_square", [ConvexPolygon.from_points(UNIT_SQUARE.outer)])))
    assert obj["type"] == "CGSHOP2023_Solution" and len(obj["polygons"]) == 1 and len(obj["polygons"][0]) == 4


def test_solution_round_trip():
    s = Solution("lsh", [Q1, Q2], {"seed": 3})
    t = parse_solution(write_solution(s))
    assert t.instance_name == "lsh" and t.polygons == s.polygons and t.meta == {"seed": 3}
    assert [C.vertices for C in t.polygons] == [C.vertices for C in s.polygons]


def test_cw_solution_polygon_accepted():
    raw = {"instance": "lsh", "polygons": [[{"x": x, "y": y} for x, y in reversed(Q1.vertices)]]}
    assert parse_solution(json.dumps(raw)).polygons == [Q1]


def test_instance_and_collection_round_trip():
    inst = Instance(DON, "don")
    assert parse_instance(write_instance(inst)) == inst
    name, polys, prov = parse_collection(write_collection("lsh", [Q1, Q2], {"method": "bk"}))
    assert name == "lsh" and polys == [Q1, Q2] and prov == {"method": "bk"}


def test_verify_examples():
    r = verify(LSH, [Q1, Q2])
    assert r.ok and r.size == 2 and r.uncovered_components == 0
    r = verify(LSH, [Q1])
    assert r.convexity_ok and r.containment_ok and not r.coverage_ok and r.uncovered_components == 1
    assert verify(Instance(UNIT_SQUARE, "sq"), Solution("sq", [ConvexPolygon.from_points(UNIT_SQUARE.outer)])).ok


def test_verify_flags_escape_and_nonconvex():
    big = ConvexPolygon.from_points([(0, 0), (2, 0), (2, 2), (0, 2)])
    r = verify(LSH, [big])
    assert r.convexity_ok and not r.containment_ok and r.coverage_ok
    reflex = ConvexPolygon((point(0, 0), point(2, 0), point(1, 1), point(2, 2), point(0, 2)))
    r = verify(LSH, [reflex])
    assert not r.convexity_ok and not r.ok


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.fractions(-5, 5, max_denominator=7), st.fractions(-5, 5, max_denominator=7)),
                min_size=3, max_size=8))
def test_solution_round_trip_property(pts):
    from convcover.geom import DegenerateHull
    try:
        C = ConvexPolygon.from_points(pts)
    except DegenerateHull:
        return
    s = Solution("p", [C])
    assert parse_solution(write_solution(s)).polygons == [C]

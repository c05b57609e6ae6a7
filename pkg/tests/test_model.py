import json
import random
from fractions import Fraction

import pytest

from fanfree.model import (
    AbstractDrawing,
    CrossingRelation,
    Graph,
    StraightLineDrawing,
    dumps,
    from_json_dict,
    to_json_dict,
    validate_crossings,
    validate_graph,
)


def test_triangle_is_valid():
    assert validate_graph(Graph(3, ((0, 1), (1, 2), (0, 2)))) is None


def test_duplicate_edge_rejected():
    msg = validate_graph(Graph(2, ((0, 1), (0, 1))))
    assert msg is not None and "duplicate" in msg


def test_duplicate_detected_after_canonicalization():
    msg = validate_graph(Graph(2, ((0, 1), (1, 0))))
    assert msg is not None and "duplicate" in msg


def test_self_loop_rejected():
    msg = validate_graph(Graph(4, ((3, 3),)))
    assert msg is not None and "self-loop" in msg


def test_out_of_range_rejected():
    assert "outside" in validate_graph(Graph(3, ((0, 5),)))


def test_edge_count_k6():
    k6 = Graph(6, tuple((u, v) for u in range(6) for v in range(u + 1, 6)))
    assert k6.edge_count() == 15


def test_edge_count_empty():
    assert Graph(5).edge_count() == 0


def test_edge_count_quad_extremal_n12():
    from fanfree.constructions import gen_quad_extremal

    assert gen_quad_extremal(12).graph.edge_count() == 40


def test_canonicalization_idempotent():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 9)
        edges = tuple(
            (rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 12))
        )
        g = Graph(n, edges)
        assert Graph(g.n, g.edges).edges == g.edges
        assert all(u <= v for u, v in g.edges)


def test_crossing_relation_canonical_and_validated():
    g = Graph(4, ((0, 1), (2, 3), (0, 2)))
    c = CrossingRelation(frozenset({(1, 0)}))
    assert c.crosses(0, 1) and c.crosses(1, 0)
    assert validate_crossings(g, c) is None
    adjacent = CrossingRelation(frozenset({(0, 2)}))  # edges share vertex 0
    assert "adjacent" in validate_crossings(g, adjacent)


def test_json_round_trip_graph():
    g = Graph(4, ((0, 1), (2, 3)))
    assert from_json_dict(to_json_dict(g)) == g


def test_json_round_trip_straight():
    d = StraightLineDrawing(
        Graph(2, ((0, 1),)), ((Fraction(1, 3), Fraction(0)), (Fraction(2), Fraction(-5, 7)))
    )
    back = from_json_dict(json.loads(dumps(d)))
    assert back == d


def test_json_round_trip_abstract():
    d = AbstractDrawing(
        Graph(4, ((0, 1), (2, 3))), CrossingRelation(frozenset({(0, 1)})), "external"
    )
    assert from_json_dict(to_json_dict(d)) == d


def test_float_coordinates_rejected():
    with pytest.raises(TypeError):
        StraightLineDrawing(Graph(1, ()), ((0.5, 1),))

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aztecproof.dyadic import HALF, ONE, DyadicWeight
from aztecproof.graph import (
    AxisSpec,
    DanglingEdge,
    EmbeddedPlanarGraph,
    NonBipartite,
    NonPlanar,
    UnsupportedAxis,
    build_graph,
    coloring,
    graph_congruent,
    graph_equal,
    grid_graph,
    is_balanced,
    is_symmetric,
    reduce_forced_edges,
    reflect,
)
from aztecproof.matching import count_matchings_bruteforce

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_single_edge():
    g = build_graph([(0, 0), (1, 0)], [((0, 0), (1, 0))])
    assert g.num_edges == 1
    assert g.weight((1, 0), (0, 0)) == 1


def test_same_parity_edge_rejected():
    with pytest.raises(NonBipartite):
        build_graph([(0, 0), (2, 0)], [((0, 0), (2, 0))])


def test_dangling_edge_rejected():
    with pytest.raises(DanglingEdge):
        build_graph([(0, 0)], [((0, 0), (1, 0))])


def test_crossing_edges_rejected():
    with pytest.raises(NonPlanar):
        build_graph([(0, 0), (2, 1), (0, 1), (2, 0)], [((0, 0), (2, 1)), ((0, 1), (2, 0))])


def test_edge_through_vertex_rejected():
    # (0,0)-(3,0) passes over (1,0)
    with pytest.raises((NonPlanar, NonBipartite)):
        build_graph([(0, 0), (1, 0), (3, 0), (1, 1)], [((0, 0), (3, 0)), ((1, 0), (1, 1))])


def test_four_cycle():
    g = grid_graph(SQUARE)
    assert g.num_edges == 4
    assert is_balanced(g)
    c = coloring(g)
    assert c.white == {(0, 0), (1, 1)}


def test_unbalanced():
    assert not is_balanced(grid_graph([(0, 0), (1, 0), (2, 0)]))


def test_json_round_trip_is_stable():
    g = grid_graph(SQUARE).with_weights({((0, 0), (1, 0)): HALF})
    text = g.to_json()
    doc = json.loads(text)
    assert doc["vertices"][0] == {"x": 0, "y": 0}
    halves = [e for e in doc["edges"] if e["w_exp2"] == 1]
    assert halves == [{"u": [0, 0], "v": [1, 0], "w_mantissa": "1", "w_exp2": 1}]
    assert EmbeddedPlanarGraph.from_json(text) == g
    assert EmbeddedPlanarGraph.from_json(text).to_json() == text


def test_forced_edges_on_a_path():
    g = grid_graph([(0, 0), (1, 0), (2, 0), (3, 0)])
    r, factor, ok = reduce_forced_edges(g)
    assert ok and len(r) == 0 and factor == 1


def test_forced_edges_detect_infeasible():
    g = grid_graph([(0, 0), (1, 0), (2, 0)])
    _, _, ok = reduce_forced_edges(g)
    assert not ok


def test_forced_edge_weight_goes_into_factor():
    g = grid_graph([(0, 0), (1, 0)]).with_weights({((0, 0), (1, 0)): HALF})
    r, factor, ok = reduce_forced_edges(g)
    assert ok and factor == HALF


def test_graph_equal_is_translation_invariant():
    g = grid_graph(SQUARE)
    assert graph_equal(g, g.translate(5, -3))
    assert not graph_equal(g, grid_graph([(0, 0), (1, 0)]))


def test_graph_equal_respects_weights():
    g = grid_graph(SQUARE)
    assert not graph_equal(g, g.with_weights({((0, 0), (1, 0)): HALF}))


def test_congruence_sees_rotations():
    L = grid_graph([(0, 0), (1, 0), (2, 0), (2, 1)])
    rotated = L.map_points(lambda p: (-p[1], p[0]))
    assert not graph_equal(L, rotated)
    assert graph_congruent(L, rotated)


def test_axis_mirrors():
    assert AxisSpec.horizontal(0).mirror((3, 2)) == (3, -2)
    assert AxisSpec.vertical(1.5).mirror((0, 4)) == (3, 4)
    assert AxisSpec("diag-up", 0).mirror((2, 5)) == (5, 2)
    assert AxisSpec("diag-down", 4).mirror((0, 0)) == (2, 2)
    with pytest.raises(UnsupportedAxis):
        AxisSpec("diag-up", 1).mirror((0, 0))
    with pytest.raises(UnsupportedAxis):
        AxisSpec("sideways", 0)


def test_symmetry_check():
    g = grid_graph([(x, y) for x in range(3) for y in range(-1, 2)])
    assert is_symmetric(g, AxisSpec.horizontal(0))
    assert is_symmetric(g, AxisSpec.vertical(1))
    assert reflect(reflect(g, AxisSpec("diag-up", 2)), AxisSpec("diag-up", 2)) == g


def test_add_revalidates():
    g = grid_graph(SQUARE)
    with pytest.raises(NonPlanar):
        # (0,0)-(2,1) cuts the side (1,0)-(1,1)
        g.add([(2, 1)], [((0, 0), (2, 1))])


def test_components():
    g = grid_graph([(0, 0), (1, 0), (5, 5), (5, 6)])
    assert sorted(len(c) for c in g.components()) == [2, 2]


points = st.sets(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=14)


@settings(max_examples=60, deadline=None)
@given(points, st.integers(-9, 9), st.integers(-9, 9))
def test_graph_equal_translation_property(pts, dx, dy):
    g = grid_graph(pts)
    assert graph_equal(g, g.translate(dx, dy))
    assert graph_equal(g.translate(dx, dy), g)


@settings(max_examples=60, deadline=None)
@given(points)
def test_reduction_preserves_count(pts):
    g = grid_graph(pts)
    r, factor, ok = reduce_forced_edges(g)
    expected = count_matchings_bruteforce(g)
    if ok:
        assert factor * count_matchings_bruteforce(r) == expected
        assert all(r.degree(v) != 1 for v in r.vertices)
    else:
        assert expected == 0


def test_reduction_is_deterministic():
    rng = random.Random(3)
    pts = {(rng.randrange(6), rng.randrange(6)) for _ in range(25)}
    g = grid_graph(pts)
    assert reduce_forced_edges(g) == reduce_forced_edges(grid_graph(sorted(pts, reverse=True)))

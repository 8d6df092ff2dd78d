import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from feyngen.graphs import (
    OrderedGraph,
    canonicalize,
    edge_symmetry_factor,
    graph_from_dict,
    graph_to_dict,
    is_connected,
    loop_number,
    permute_vertices,
    symmetry_factor,
    to_dot,
    vertex_symmetry_factor,
)
from feyngen.oracle import brute_force_edge_symmetry_factor, brute_force_symmetry_factor

SELF_LOOP = OrderedGraph(1, ((1, 1),))
THETA = OrderedGraph(2, ((1, 2), (1, 2), (1, 2)))
DUMBBELL = OrderedGraph(2, ((1, 1), (2, 2), (1, 2)))


@st.composite
def small_graphs(draw):
    v = draw(st.integers(min_value=1, max_value=4))
    n_edges = draw(st.integers(min_value=0, max_value=4))
    edges = tuple(
        (draw(st.integers(1, v)), draw(st.integers(1, v))) for _ in range(n_edges)
    )
    n_ext = draw(st.integers(min_value=0, max_value=2))
    externals = tuple((f"x{i}", draw(st.integers(1, v))) for i in range(n_ext))
    return OrderedGraph(v, edges, externals)


def test_graph_normalization_and_validation():
    g = OrderedGraph(2, ((2, 1),), {"x": 2})
    assert g.edges == ((1, 2),)
    assert g.externals == (("x", 2),)
    with pytest.raises(ValueError):
        OrderedGraph(0)
    with pytest.raises(ValueError):
        OrderedGraph(2, ((1, 3),))
    with pytest.raises(ValueError):
        OrderedGraph(2, (), (("x", 1), ("x", 2)))


def test_is_connected():
    assert is_connected(OrderedGraph(2, ((1, 2),)))
    assert not is_connected(OrderedGraph(2))
    assert is_connected(OrderedGraph(3, ((1, 2), (1, 3))))
    assert is_connected(OrderedGraph(1))


def test_loop_number():
    assert loop_number(SELF_LOOP) == 1
    assert loop_number(THETA) == 2
    assert loop_number(OrderedGraph(4, ((1, 2), (2, 3), (3, 4)))) == 0
    with pytest.raises(ValueError):
        loop_number(OrderedGraph(2))


def test_edge_symmetry_factor():
    assert edge_symmetry_factor(OrderedGraph(1, ((1, 1), (1, 1)))) == 8
    assert edge_symmetry_factor(THETA) == 6
    assert edge_symmetry_factor(DUMBBELL) == 4


def test_edge_symmetry_factor_matches_brute_force():
    for g in (SELF_LOOP, THETA, DUMBBELL, OrderedGraph(3, ((1, 2), (2, 3), (1, 3)))):
        assert edge_symmetry_factor(g) == brute_force_edge_symmetry_factor(g)


def test_vertex_symmetry_factor():
    assert vertex_symmetry_factor(OrderedGraph(2, ((1, 2),))) == 2
    assert vertex_symmetry_factor(OrderedGraph(2, ((1, 2),), {"x": 1, "y": 2})) == 1
    assert vertex_symmetry_factor(THETA) == 2


def test_symmetry_factor():
    assert symmetry_factor(SELF_LOOP) == 2
    assert symmetry_factor(THETA) == 12
    assert symmetry_factor(DUMBBELL) == 8


def test_symmetry_factor_matches_joint_brute_force():
    for g in (SELF_LOOP, THETA, DUMBBELL, OrderedGraph(3, ((1, 2), (2, 3)))):
        assert symmetry_factor(g) == brute_force_symmetry_factor(g)


def test_canonicalize_identifies_renumberings():
    a = OrderedGraph(2, ((1, 2),), {"x": 2})
    b = OrderedGraph(2, ((1, 2),), {"x": 1})
    assert canonicalize(a) == canonicalize(b)


def test_canonicalize_idempotent_on_minimal_graph():
    g = canonicalize(DUMBBELL)
    assert canonicalize(g) == g


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_canonicalize_permutation_invariant(g):
    canon = canonicalize(g)
    for perm in itertools.permutations(range(1, g.vertex_count + 1)):
        assert canonicalize(permute_vertices(g, perm)) == canon


@given(small_graphs())
@settings(max_examples=40, deadline=None)
def test_loop_number_is_permutation_invariant(g):
    if not is_connected(g):
        return
    l = loop_number(g)
    assert loop_number(canonicalize(g)) == l
    for perm in itertools.permutations(range(1, g.vertex_count + 1)):
        assert loop_number(permute_vertices(g, perm)) == l


def test_json_round_trip():
    g = OrderedGraph(2, ((1, 1), (1, 2)), {"x": 2})
    doc = graph_to_dict(g, Fraction(1, 2))
    g2, w = graph_from_dict(doc)
    assert g2 == g and w == Fraction(1, 2)


def test_dot_export_mentions_all_parts():
    text = to_dot(OrderedGraph(2, ((1, 1), (1, 2)), {"x": 2}), Fraction(1, 4))
    assert "v1 -- v1" in text
    assert "v1 -- v2" in text
    assert '"x" [shape=diamond]' in text
    assert "// weight 1/4" in text

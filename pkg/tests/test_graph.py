import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mstga.graph import (
    Graph,
    GraphFormatError,
    WeightedGraph,
    clustering_coefficient,
    h_index,
    load_edge_list,
    triangles_at,
    write_edge_list,
)
from oracles import adjacency_matrix, brute_clustering, brute_h_index, brute_triangles


def small_graphs(max_n=8):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n * n),
        )
    )


def test_triangle_text():
    g = load_edge_list(io.StringIO("0 1\n1 2\n0 2"))
    assert (g.n, g.m) == (3, 3)
    assert g.edges == ((0, 1), (0, 2), (1, 2))


def test_karate_size(karate):
    g, truth = karate
    assert (g.n, g.m) == (34, 78)
    assert truth.complete and truth.community_count == 2


def test_duplicates_and_loops_dropped(caplog):
    g = load_edge_list(io.StringIO("a b\nb a\na a"))
    assert (g.n, g.m) == (2, 1)
    assert g.dropped_duplicates + g.dropped_self_loops == 2
    assert "dropped 1 self-loop(s) and 1 duplicate" in caplog.text


def test_string_labels_keep_first_appearance_order():
    g = load_edge_list(io.StringIO("# header\n\nzeta alpha\nalpha mid\n"))
    assert g.labels == ("zeta", "alpha", "mid")
    assert g.index_of("mid") == 2


def test_integer_labels_sorted_numerically():
    g = load_edge_list(io.StringIO("10 2\n2 7\n"))
    assert g.labels == (2, 7, 10)
    assert g.edges == ((0, 1), (0, 2))


def test_leading_zero_tokens_do_not_collide():
    g = load_edge_list(io.StringIO("07 7\n7 8\n"))
    assert g.n == 3


@pytest.mark.parametrize("text,msg", [("", "no edges"), ("# only\n", "no edges"), ("0 1\n0 1 2\n", "line 2"), ("0\n", "line 1")])
def test_bad_input(text, msg):
    with pytest.raises(GraphFormatError, match=msg):
        load_edge_list(io.StringIO(text))


def test_from_edges_rejects_out_of_range():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_weighted_graph_validation(k3):
    WeightedGraph(k3, (0.0, 1.0, 2.0))
    with pytest.raises(ValueError):
        WeightedGraph(k3, (1.0, 1.0))
    with pytest.raises(ValueError):
        WeightedGraph(k3, (1.0, -0.1, 1.0))
    with pytest.raises(ValueError):
        WeightedGraph(k3, (1.0, float("nan"), 1.0))


def test_clustering_examples(k3):
    assert clustering_coefficient(k3, 0) == 1.0
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert clustering_coefficient(path, 1) == 0.0
    assert clustering_coefficient(path, 0) == 0.0


def test_h_index_examples(k3):
    assert h_index(Graph.from_edges(3, [(0, 1)]), 2) == 0
    assert h_index(k3, 0) == 2
    star = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
    assert h_index(star, 0) == 1


@given(small_graphs())
def test_degree_sum_and_symmetry(data):
    n, edges = data
    g = Graph.from_edges(n, edges)
    assert sum(g.degrees) == 2 * g.m
    for u in range(n):
        for v in g.adjacency[u]:
            assert u in g.adjacency[v] and g.has_edge(u, v)
        assert list(g.adjacency[u]) == sorted(g.adjacency[u])
    assert all(u < v for u, v in g.edges)


@given(small_graphs())
def test_clustering_matches_brute_force(data):
    n, edges = data
    g = Graph.from_edges(n, edges)
    a = adjacency_matrix(n, edges)
    for v in range(n):
        assert triangles_at(g, v) == brute_triangles(a, v)
        assert clustering_coefficient(g, v) == pytest.approx(brute_clustering(a, v), abs=1e-15)
        assert h_index(g, v) == brute_h_index(a, v)


@given(small_graphs())
def test_write_load_round_trip(data):
    n, edges = data
    g = Graph.from_edges(n, edges)
    if g.m == 0:
        return
    buf = io.StringIO()
    write_edge_list(g, buf)
    g2 = load_edge_list(io.StringIO(buf.getvalue()))
    as_labels = lambda h: {frozenset((h.labels[u], h.labels[v])) for u, v in h.edges}
    assert as_labels(g2) == as_labels(g)


def test_components():
    g = Graph.from_edges(5, [(0, 3), (1, 2)])
    assert g.components() == [[0, 3], [1, 2], [4]]
    assert g.edge_array().shape == (2, 2)
    assert Graph.from_edges(1, []).edge_array().shape == (0, 2)

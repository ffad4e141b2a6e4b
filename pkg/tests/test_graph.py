import networkx as nx
import pytest
from hypothesis import given

import oracles
from conftest import graphs
from hzcolor.graph import (
    GraphError,
    SimpleGraph,
    complete_graph,
    core,
    core_max_degree,
    cycle_graph,
    edge_key,
    is_hz_candidate,
    is_overfull,
    k5_minus_edge,
    path_graph,
    petersen,
    petersen_star,
)


def test_edge_key_normalizes():
    assert edge_key(3, 1) == (1, 3)
    assert edge_key(1, 3) == (1, 3)


def test_rejects_loops_and_bad_vertices():
    with pytest.raises((GraphError, ValueError)):
        SimpleGraph(3, [(1, 1)])
    with pytest.raises((GraphError, ValueError)):
        SimpleGraph(3, [(0, 3)])


def test_named_graphs():
    p = petersen()
    assert (p.n, p.num_edges) == (10, 15) and p.is_regular(3)
    ps = petersen_star()
    assert (ps.n, ps.num_edges) == (9, 12)
    assert sorted(ps.degrees) == [2, 2, 2] + [3] * 6
    k = k5_minus_edge()
    assert (k.n, k.num_edges, k.max_degree) == (5, 9, 4)
    assert k.vertices_of_degree(4) == (0, 1, 2)


def test_overfull_examples():
    # K5 - e: 9 > 4 * 2
    assert is_overfull(k5_minus_edge())
    assert is_overfull(cycle_graph(5))
    assert not is_overfull(cycle_graph(6))
    # P*: 12 = 3 * 4, not overfull although class 2
    assert not is_overfull(petersen_star())
    assert not is_overfull(complete_graph(4))


def test_core_of_k5_minus_edge():
    view = core(k5_minus_edge())
    assert view.delta == 4
    assert view.v_delta == (0, 1, 2)
    assert view.v_delta_minus_1 == (3, 4)
    assert view.core_subgraph.is_regular(2) and view.core_subgraph.n == 3


def test_hz_candidate_examples():
    assert is_hz_candidate(cycle_graph(7))
    assert is_hz_candidate(petersen_star())
    assert not is_hz_candidate(complete_graph(4))  # core K4 is 3-regular
    assert not is_hz_candidate(SimpleGraph(4, [(0, 1), (2, 3)]))  # disconnected
    assert is_hz_candidate(path_graph(4))


def test_degree_neighborhoods():
    g = k5_minus_edge()
    assert g.neighbors_of_degree(0, 3) == (3, 4)
    assert g.closed_neighbors_of_degree(0, 3) == (0, 3, 4)
    assert g.set_neighbors_of_degree([3, 4], 4) == frozenset({0, 1, 2})


def test_remove_edge_and_vertex():
    g = complete_graph(4)
    h = g.remove_edge(0, 1)
    assert h.num_edges == 5 and not h.has_edge(0, 1)
    with pytest.raises(GraphError):
        h.remove_edge(0, 1)
    assert g.remove_vertex(0) == complete_graph(3)


@given(graphs(max_n=9))
def test_degrees_and_connectivity_match_networkx(g):
    h = oracles.to_nx(g)
    assert list(g.degrees) == [d for _, d in sorted(h.degree())]
    if g.n:
        assert g.is_connected == nx.is_connected(h)
    assert g.max_degree == oracles.max_degree(h)


@given(graphs(min_n=1, max_n=9))
def test_predicates_match_reference(g):
    h = oracles.to_nx(g)
    assert is_overfull(g) == oracles.is_overfull(h)
    assert core_max_degree(g) == oracles.core_max_degree(h)
    assert is_hz_candidate(g) == oracles.is_hz_candidate(h)


@given(graphs(max_n=8))
def test_relabel_preserves_degree_sequence(g):
    perm = list(reversed(range(g.n)))
    h = g.relabel(perm)
    assert sorted(h.degrees) == sorted(g.degrees)
    assert h.relabel(perm) == g

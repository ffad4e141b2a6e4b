import pytest
from hypothesis import given, settings

import oracles
from conftest import graphs
from hzcolor.coloring import validate_proper
from hzcolor.graph import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    k5_minus_edge,
    petersen,
    petersen_star,
)
from hzcolor.oracle import (
    BudgetExceededError,
    DeltaColoringError,
    DeltaColoringStats,
    chromatic_index_exact,
    delta_edge_color,
    find_edge_coloring,
    is_class_two,
    vizing_plus_one_coloring,
)


@pytest.mark.parametrize(
    "g, chi",
    [
        (cycle_graph(5), 3),
        (cycle_graph(6), 2),
        (complete_graph(4), 3),
        (complete_graph(5), 5),
        (complete_graph(6), 5),
        (k5_minus_edge(), 5),
        (petersen(), 4),
        (petersen_star(), 4),
        (complete_bipartite(3, 4), 4),
    ],
)
def test_known_chromatic_indices(g, chi):
    res = chromatic_index_exact(g)
    assert res.chi_prime == chi
    assert validate_proper(res.witness) and res.witness.is_complete()
    assert res.witness.k == chi


@pytest.mark.parametrize("g", [petersen_star(), k5_minus_edge(), cycle_graph(7)])
def test_unpruned_search_agrees(g):
    assert chromatic_index_exact(g, prune=False).chi_prime == chromatic_index_exact(g).chi_prime


def test_budget_exceeded():
    with pytest.raises(BudgetExceededError):
        find_edge_coloring(petersen(), 3, 5, prune=False)


@settings(max_examples=60)
@given(graphs(min_n=2, max_n=7, connected=True))
def test_matches_line_graph_reference(g):
    assert chromatic_index_exact(g).chi_prime == oracles.chromatic_index(oracles.to_nx(g))


@given(graphs(min_n=1, max_n=9))
def test_vizing_uses_delta_plus_one(g):
    c = vizing_plus_one_coloring(g)
    assert c.is_complete() and validate_proper(c)
    assert c.k == g.max_degree + 1


@given(graphs(min_n=2, max_n=9, connected=True))
def test_delta_edge_color_on_class1(g):
    if is_class_two(g):
        with pytest.raises(DeltaColoringError):
            delta_edge_color(g)
        return
    stats = DeltaColoringStats()
    c = delta_edge_color(g, stats=stats)
    assert c.k == g.max_degree and c.is_complete() and validate_proper(c)
    assert oracles.proper_edge_coloring(oracles.to_nx(g), c.edge_colors, c.k)


def test_delta_edge_color_deterministic():
    g = complete_graph(6)
    a = delta_edge_color(g, seed=5)
    b = delta_edge_color(g, seed=5)
    assert a == b

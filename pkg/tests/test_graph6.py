import networkx as nx
import pytest
from hypothesis import given

import oracles
from conftest import graphs
from hzcolor.graph import SimpleGraph, cycle_graph, k5_minus_edge
from hzcolor.graph6 import Graph6Error, from_graph6, read_graph6_file, to_graph6, write_graph6_file


def test_known_strings():
    assert to_graph6(cycle_graph(5)) == "Dhc"
    assert to_graph6(SimpleGraph(1)) == "@"
    assert to_graph6(k5_minus_edge()) == "D~w"


def test_header_variant():
    assert to_graph6(cycle_graph(5), header=True) == ">>graph6<<Dhc"
    assert from_graph6(">>graph6<<Dhc") == cycle_graph(5)


@given(graphs(max_n=12))
def test_round_trip(g):
    assert from_graph6(to_graph6(g)) == g


@given(graphs(max_n=12))
def test_matches_networkx_encoder(g):
    ref = nx.to_graph6_bytes(oracles.to_nx(g), header=False).decode().strip()
    assert to_graph6(g) == ref


def test_large_n_size_field():
    g = SimpleGraph(70, [(0, 69)])
    s = to_graph6(g)
    assert s[0] == "~"
    assert from_graph6(s) == g


@pytest.mark.parametrize("bad", ["", "D", "Dh", "~"])
def test_malformed(bad):
    with pytest.raises(Graph6Error):
        from_graph6(bad)


def test_file_round_trip(tmp_path):
    gs = [cycle_graph(n) for n in range(3, 8)]
    path = tmp_path / "c.g6"
    assert write_graph6_file(path, gs) == 5
    assert list(read_graph6_file(path)) == gs

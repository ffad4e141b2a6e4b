from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import graphs
from hzcolor.canon import canonical_form, certificate, is_isomorphic, isomorphism, orbits
from hzcolor.enumerate import EnumerationLimitError, enumerate_hz_candidates, hz_candidates_from_graph6
from hzcolor.graph import SimpleGraph, complete_graph, cycle_graph, petersen
from hzcolor.graph6 import to_graph6, write_graph6_file

# Candidate counts per order.  n <= 7 is checked against the networkx graph
# atlas below; n = 8, 9 were frozen from an exhaustive run of the generator.
CANDIDATES_BY_N = {2: 1, 3: 2, 4: 5, 5: 19, 6: 98, 7: 776, 8: 10182, 9: 242512}


@given(graphs(max_n=9), st.randoms(use_true_random=False))
def test_certificate_invariant_under_relabeling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert certificate(g) == certificate(h)
    assert canonical_form(g) == canonical_form(h)
    iso = isomorphism(g, h)
    assert iso is not None and g.relabel(iso) == h


@given(graphs(max_n=7), graphs(max_n=7))
def test_isomorphism_matches_networkx(g, h):
    assert is_isomorphic(g, h) == nx.is_isomorphic(oracles.to_nx(g), oracles.to_nx(h))


def test_orbits_of_vertex_transitive_graph():
    assert len(set(orbits(petersen()))) == 1
    path = SimpleGraph(4, [(0, 1), (1, 2), (2, 3)])
    o = orbits(path)
    assert o[0] == o[3] and o[1] == o[2] and o[0] != o[1]


def test_small_golden_list():
    got = sorted(to_graph6(canonical_form(g)) for g in enumerate_hz_candidates(3))
    # P2, P3, C3
    want = sorted(to_graph6(canonical_form(g)) for g in (
        SimpleGraph(2, [(0, 1)]), SimpleGraph(3, [(0, 1), (1, 2)]), cycle_graph(3)))
    assert got == want


def test_counts_match_networkx_atlas():
    ours = Counter(g.n for g in enumerate_hz_candidates(7))
    ref = Counter(h.number_of_nodes() for h in oracles.hz_candidates_atlas(7))
    assert ours == ref
    assert dict(ours) == {n: c for n, c in CANDIDATES_BY_N.items() if n <= 7}


def test_no_isomorphic_duplicates_and_all_candidates():
    certs = set()
    for g in enumerate_hz_candidates(7):
        c = certificate(g)
        assert c not in certs
        certs.add(c)
        assert oracles.is_hz_candidate(oracles.to_nx(g))


def test_n8_count_frozen():
    assert sum(1 for g in enumerate_hz_candidates(8) if g.n == 8) == CANDIDATES_BY_N[8]


def test_c5_present_k4_absent():
    certs = {certificate(g) for g in enumerate_hz_candidates(5)}
    assert certificate(cycle_graph(5)) in certs
    assert certificate(complete_graph(4)) not in certs


def test_enumeration_limits():
    with pytest.raises(EnumerationLimitError):
        list(enumerate_hz_candidates(11))
    with pytest.raises(EnumerationLimitError):
        list(enumerate_hz_candidates(10))


def test_graph6_file_source(tmp_path):
    path = tmp_path / "mixed.g6"
    write_graph6_file(path, [cycle_graph(5), complete_graph(4), SimpleGraph(3, [(0, 1)]), cycle_graph(9)])
    got = list(hz_candidates_from_graph6(path, max_n=8))
    assert got == [cycle_graph(5)]


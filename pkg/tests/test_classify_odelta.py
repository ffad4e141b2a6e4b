import json

import networkx as nx
import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import graphs
from hzcolor.canon import certificate, is_isomorphic
from hzcolor.classify import (
    ClassLabel,
    NotCandidateError,
    check_hz_structure,
    classify,
    is_critical_edge,
    is_petersen_star,
)
from hzcolor.graph import (
    SimpleGraph,
    complete_graph,
    core,
    cycle_graph,
    is_hz_candidate,
    is_overfull,
    k5_minus_edge,
    path_graph,
    petersen_star,
)
from hzcolor.odelta import (
    InfeasibleSpecError,
    ODeltaSpec,
    build_o_delta,
    canonical_spec,
    check_parameters,
    feasible_n1,
    o_delta_specs,
    recognize_o_delta,
    regular_graphs,
    two_regular_graphs,
)
from hzcolor.oracle import chromatic_index_exact


def test_labels():
    assert classify(k5_minus_edge()).to_dict() == {"class": 2, "reason": "Overfull"}
    assert classify(petersen_star()).to_dict() == {"class": 2, "reason": "PetersenStar"}
    assert classify(cycle_graph(5)).to_dict() == {"class": 2, "reason": "Overfull"}
    assert classify(cycle_graph(6)).to_dict() == {"class": 1, "reason": "NotOverfull"}
    assert classify(path_graph(4)).to_dict() == {"class": 1, "reason": "NotOverfull"}
    assert json.dumps(classify(petersen_star()).to_dict(), sort_keys=True) == '{"class": 2, "reason": "PetersenStar"}'


def test_label_consistency_enforced():
    with pytest.raises(ValueError):
        ClassLabel("Class1", "Overfull")
    with pytest.raises(ValueError):
        ClassLabel("Class3", "NotOverfull")


def test_not_candidate():
    with pytest.raises(NotCandidateError):
        classify(complete_graph(4))
    with pytest.raises(NotCandidateError):
        classify(SimpleGraph(4, [(0, 1), (2, 3)]))


def test_petersen_star_recognized_under_relabeling():
    ps = petersen_star()
    assert is_petersen_star(ps.relabel([8, 7, 6, 5, 4, 3, 2, 1, 0]))
    assert is_petersen_star(oracles_to_simple(oracles.petersen_star_nx()))
    assert not is_petersen_star(cycle_graph(9))


def oracles_to_simple(h: nx.Graph) -> SimpleGraph:
    return SimpleGraph(h.number_of_nodes(), list(h.edges))


@given(graphs(min_n=2, max_n=7, connected=True))
def test_classify_matches_reference_oracle(g):
    if not is_hz_candidate(g):
        return
    ref = oracles.chromatic_index(oracles.to_nx(g)) == g.max_degree + 1
    assert classify(g).is_class2 == ref


def test_structure_on_known_hz_graphs():
    for g in (k5_minus_edge(), cycle_graph(5), petersen_star(), build_o_delta(canonical_spec(6, 3))):
        rep = check_hz_structure(g, True)
        assert rep.ok, rep.to_dict()
        assert [c.status for c in rep.clauses] == ["pass"] * 3


def test_structure_vacuous_for_class1():
    rep = check_hz_structure(cycle_graph(6), False)
    assert rep.vacuous and rep.ok


def test_structure_clause_failures_are_reported():
    # C6 is class 1; treating it as class 2 must break the minimum-degree clause
    rep = check_hz_structure(cycle_graph(6), True)
    assert [c.status for c in rep.clauses] == ["pass", "fail", "pass"]
    # a path treated as class 2: its degree-1 ends have no core neighbors
    rep = check_hz_structure(path_graph(4), True)
    assert not rep.ok
    assert {c.name for c in rep.clauses if c.status == "fail"} >= {"c"}


def test_critical_edges_of_class2_graphs():
    for g in (k5_minus_edge(), petersen_star(), cycle_graph(7)):
        assert all(is_critical_edge(g, u, v) for u, v in g.edges)


# -- O_Delta ---------------------------------------------------------------------------


def test_feasible_orders():
    assert feasible_n1(4) == [3]
    assert feasible_n1(5) == [4]
    assert feasible_n1(6) == [3, 5]
    assert feasible_n1(7) == [4, 6]
    assert feasible_n1(8) == [3, 5, 7]


def test_k5_minus_edge_is_o4():
    g = build_o_delta(canonical_spec(4, 3))
    assert is_isomorphic(g, k5_minus_edge())
    assert recognize_o_delta(k5_minus_edge()) is not None


@pytest.mark.parametrize("delta, n1", [(3, 3), (5, 3), (6, 6), (4, 4)])
def test_infeasible_parameters(delta, n1):
    with pytest.raises(InfeasibleSpecError):
        check_parameters(delta, n1)


def test_spec_validation():
    bad = ODeltaSpec(5, 4, ((0, 1), (1, 2), (2, 3)), ((0, 1), (1, 2), (0, 2)))
    with pytest.raises(InfeasibleSpecError):
        build_o_delta(bad)


@pytest.mark.parametrize("delta", range(4, 9))
def test_members_have_the_defining_structure(delta):
    for spec in o_delta_specs(delta):
        g = build_o_delta(spec)
        assert g.n == spec.n and g.n % 2 == 1
        assert sorted(set(g.degrees)) == [delta - 1, delta]
        assert g.is_connected and is_overfull(g)
        assert core(g).core_subgraph.is_regular(2)
        back = recognize_o_delta(g)
        assert back is not None and back.equivalent(spec)


def test_recognize_rejects_non_members():
    assert recognize_o_delta(petersen_star()) is None  # Delta = 3
    assert recognize_o_delta(complete_graph(6)) is None
    assert recognize_o_delta(cycle_graph(7)) is None


@given(st.sampled_from([(d, s) for d in range(4, 9) for s in o_delta_specs(d)]), st.randoms(use_true_random=False))
def test_recognize_is_label_invariant(item, rnd):
    _, spec = item
    g = build_o_delta(spec)
    perm = list(range(g.n))
    rnd.shuffle(perm)
    back = recognize_o_delta(g.relabel(perm))
    assert back is not None and back.equivalent(spec)


@pytest.mark.parametrize("d, m", [(2, 3), (2, 6), (2, 7), (1, 4), (1, 6), (3, 4), (3, 6), (4, 6), (4, 7), (2, 5)])
def test_regular_graph_shapes_match_atlas(d, m):
    ref = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == m and all(x == d for _, x in h.degree())]
    ours = regular_graphs(d, m)
    assert len(ours) == len(ref)
    assert len({certificate(g) for g in ours}) == len(ours)
    if d == 2:
        assert len(two_regular_graphs(m)) == len(ref)


def test_small_members_need_delta_plus_one_colors():
    for delta in range(4, 7):
        for spec in o_delta_specs(delta):
            g = build_o_delta(spec)
            assert chromatic_index_exact(g, prune=False).chi_prime == delta + 1

import random

import pytest
from hypothesis import given, settings, strategies as st

from hzcolor.coloring import PartialColoring, permute_colors, validate_proper
from hzcolor.fans import (
    ColoringTriple,
    FanError,
    KiersteadPathError,
    LollipopError,
    Multifan,
    NotTypicalError,
    build_lollipop,
    delta_coloring_minus_edge,
    enumerate_delta_colorings,
    grow_multifan,
    inducing_structure,
    is_elementary,
    kierstead_paths,
    make_2_inducing,
    multifan_violations,
    normalize_typical,
    pseudo_multifan_from_fan,
    random_kempe_walk,
    rotation_report,
    search_maximum_multifan,
    successor_map,
    validate_kierstead_path,
    validate_pseudo_multifan,
)
from hzcolor.graph import SimpleGraph, edge_key, petersen_star
from hzcolor.odelta import build_o_delta, o_delta_specs
from hzcolor.script import apply_script

ODELTA = [build_o_delta(s) for d in range(4, 8) for s in o_delta_specs(d, 3)]


def make_triple(g, r, s, seed, steps=30):
    base = delta_coloring_minus_edge(g, r, s)
    c = random_kempe_walk(base, random.Random(seed), steps)
    return ColoringTriple(g, r, s, c)


@st.composite
def triples(draw, pool=ODELTA):
    g = draw(st.sampled_from(pool))
    D = g.max_degree
    r = draw(st.sampled_from(g.vertices_of_degree(D)))
    s = draw(st.sampled_from(g.neighbors_of_degree(r, D - 1)))
    return make_triple(g, r, s, draw(st.integers(0, 2**32)), draw(st.integers(0, 40)))


def test_triple_validation(k5e):
    t = make_triple(k5e, 0, 3, 0)
    t.validate()
    assert t.delta == 4
    bad = ColoringTriple(k5e, 3, 0, t.coloring)  # r has degree 3
    assert bad.violations()
    with pytest.raises(FanError):
        bad.validate()


def test_delta_coloring_minus_edge_shape(o5):
    r = o5.vertices_of_degree(5)[0]
    s = o5.neighbors_of_degree(r, 4)[0]
    c = delta_coloring_minus_edge(o5, r, s)
    assert c.k == 5 and c.uncolored_edges == (edge_key(r, s),)
    assert validate_proper(c)


@given(triples())
def test_grown_fan_is_an_elementary_multifan(t):
    f = grow_multifan(t)
    assert not multifan_violations(f)
    assert f.s(1) == t.s1
    assert is_elementary(t.coloring, f.vertices)


@given(triples())
def test_normalized_fan_is_typical(t):
    f = grow_multifan(t)
    tf, perm, order = normalize_typical(f)
    assert not tf.violations()
    assert sorted(perm) == sorted(perm.values()) == list(range(1, t.delta + 1))
    assert set(order) == set(f.sequence) and order[0] == t.s1
    assert tf.coloring.missing(t.r) == {1}
    # colors inducing from 2 occupy positions 2..alpha, those from Delta occupy alpha+1..beta
    ind = inducing_structure(tf)
    for i in range(2, tf.alpha + 1):
        assert ind.inducer[tf.coloring.the_missing(tf.s(i))] == 2
    for i in range(tf.alpha + 1, tf.beta + 1):
        assert ind.inducer[tf.coloring.the_missing(tf.s(i))] == t.delta


def test_normalize_rejects_bad_two(o5):
    t = make_triple(o5, o5.vertices_of_degree(5)[0], o5.neighbors_of_degree(o5.vertices_of_degree(5)[0], 4)[0], 1)
    with pytest.raises(NotTypicalError):
        normalize_typical(grow_multifan(t), two=99)


def test_multifan_violations_detect_bad_sequences(o5):
    r = o5.vertices_of_degree(5)[0]
    s = o5.neighbors_of_degree(r, 4)
    t = make_triple(o5, r, s[0], 2)
    assert multifan_violations(Multifan(t, ())) == ["empty fan"]
    assert "first fan vertex is not s1" in multifan_violations(Multifan(t, (s[1],)))
    assert "repeated vertex" in multifan_violations(Multifan(t, (s[0], s[0])))


def test_kierstead_paths_validate(o5):
    r = o5.vertices_of_degree(5)[0]
    t = make_triple(o5, r, o5.neighbors_of_degree(r, 4)[0], 3)
    paths = list(kierstead_paths(t.coloring, t.r, t.s1))
    assert paths
    for p in paths:
        assert validate_kierstead_path(t.coloring, p.vertices).vertices == p.vertices
    v = paths[0].vertices
    with pytest.raises(KiersteadPathError) as info:
        validate_kierstead_path(t.coloring, v[1:])  # must start on the uncolored edge
    assert info.value.index == 0


def test_maximum_fan_search_on_odelta(o7):
    r = o7.vertices_of_degree(7)[0]
    f, cert = search_maximum_multifan(o7, r, budget=50)
    assert cert.exact and cert.method == "upper_bound"
    assert cert.size == len(f.vertices) == len(o7.neighbors_of_degree(r, 6)) + 1


def test_exhaustive_certificate_on_k5_minus_edge(k5e):
    f, cert = search_maximum_multifan(k5e, 0, exhaustive_limit=10_000)
    assert cert.exhaustive and cert.exact
    assert cert.size == len(f.vertices)


def test_enumerate_delta_colorings_are_proper(k5e):
    seen = list(enumerate_delta_colorings(k5e, 0, 3, 1000))
    assert seen and all(validate_proper(c) for c in seen)
    assert len({tuple(sorted(c.edge_colors.items())) for c in seen}) == len(seen)


@settings(max_examples=40)
@given(triples())
def test_pseudo_multifan_on_odelta(t):
    f = grow_multifan(t)
    _, cert = search_maximum_multifan(t.graph, t.r, budget=50)
    s = pseudo_multifan_from_fan(f, cert)
    assert s.p == t.delta - 2 and s.t == len(f.sequence)
    rep = validate_pseudo_multifan(s, sample_count=10)
    assert rep.elementary_base and rep.counterexample is None
    assert rep.p1 in ("certified", "not_maximum")


@settings(max_examples=60)
@given(triples(pool=[g for g in ODELTA if g.max_degree >= 5]))
def test_make_2_inducing_round_trip(t):
    tf, _, _ = normalize_typical(grow_multifan(t))
    s = pseudo_multifan_from_fan(tf.base, None)
    res = make_2_inducing(s)
    assert res.typical is not None and res.typical.is_two_inducing
    assert set(res.pseudo.vertices) == set(s.vertices)
    assert apply_script(res.coloring, res.inverse) == tf.coloring
    if tf.alpha == tf.beta:
        assert res.coloring == tf.coloring and not res.forward.steps


def test_make_2_inducing_rejects_non_typical(o5):
    r = o5.vertices_of_degree(5)[0]
    t = make_triple(o5, r, o5.neighbors_of_degree(r, 4)[0], 4)
    tf, _, _ = normalize_typical(grow_multifan(t))
    s = pseudo_multifan_from_fan(tf.base, None)
    # r misses color 1 in a typical coloring; swapping names 1 and 3 breaks that
    off = permute_colors(tf.coloring, {1: 3, 3: 1})
    with pytest.raises(NotTypicalError):
        make_2_inducing(s, off)


def test_successor_map_follows_missing_colors():
    # star at r with three leaves colored 1,2,3 and extra pendant edges so each leaf misses one color
    g = SimpleGraph(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)])
    c = PartialColoring(g, 3, {(0, 1): 1, (0, 2): 2, (0, 3): 3, (1, 4): 3, (2, 5): 1, (3, 6): 2}, max_uncolored=0)
    succ, problems = successor_map(c, 0, [1, 2, 3])
    assert succ == {1: 2, 2: 3, 3: 1} and not problems
    succ, problems = successor_map(c, 0, [1, 2])
    assert succ == {1: 2} and len(problems) == 1


@settings(max_examples=40)
@given(triples())
def test_rotation_report_is_consistent(t):
    s = pseudo_multifan_from_fan(grow_multifan(t), None)
    rot = rotation_report(s)
    covered = [v for r in rot.rotations for v in r.vertices]
    assert len(covered) == len(set(covered))
    assert set(covered) <= set(s.rest)
    if rot.ok:
        assert set(covered) == set(s.rest) and not rot.unresolved
    else:
        assert rot.reason


def test_lollipop_validation(o7):
    r = o7.vertices_of_degree(7)[0]
    t = make_triple(o7, r, o7.neighbors_of_degree(r, 6)[0], 6)
    tf, _, _ = normalize_typical(grow_multifan(t))
    u = o7.neighbors_of_degree(r, 7)[0]
    with pytest.raises(LollipopError):
        build_lollipop(tf, u, tf.s(1))  # x must avoid s_1..s_beta
    with pytest.raises(LollipopError):
        build_lollipop(tf, tf.s(1), u)  # u must be a Delta-neighbor


def test_petersen_star_fans():
    g = petersen_star()
    for r in g.vertices_of_degree(3):
        for s in g.neighbors_of_degree(r, 2):
            t = make_triple(g, r, s, r * 10 + s)
            f = grow_multifan(t)
            assert f.sequence == (s,)

import random

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import graphs
from hzcolor.coloring import (
    ColoringError,
    ImproperColoringError,
    PartialColoring,
    StaleChainError,
    SwapPreconditionError,
    chain_through,
    coloring_from_dict,
    coloring_from_json,
    is_stable,
    linked,
    meets_before,
    multi_swap,
    permute_colors,
    shift,
    swap_at,
    swap_at_both,
    swap_subchain,
    validate_proper,
)
from hzcolor.graph import cycle_graph, path_graph
from hzcolor.oracle import vizing_plus_one_coloring


def path_coloring(n=5, colors=(1, 2)):
    """Path 0-1-...-(n-1) colored alternately; k=3 so color 3 is free everywhere."""
    g = path_graph(n)
    return PartialColoring(g, 3, {(i, i + 1): colors[i % 2] for i in range(n - 1)}, max_uncolored=0)


def test_missing_and_present():
    c = path_coloring()
    assert c.present(0) == {1}
    assert c.missing(0) == {2, 3}
    assert c.missing(2) == {3}
    with pytest.raises(ColoringError):
        c.the_missing(0)
    assert c.the_missing(2) == 3


def test_set_color_rejects_conflict():
    c = path_coloring()
    with pytest.raises(ImproperColoringError):
        c.set_color(1, 2, 1)
    with pytest.raises(ColoringError):
        c.set_color(0, 2, 1)


def test_uncolored_bound():
    g = path_graph(3)
    with pytest.raises(ColoringError):
        PartialColoring(g, 2, {(0, 1): 1}, max_uncolored=0)
    c = PartialColoring(g, 2, {(0, 1): 1}, max_uncolored=1)
    assert c.uncolored == (1, 2)


def test_chain_on_path_from_interior():
    c = path_coloring()
    ch = chain_through(c, 2, 1, 2)
    assert ch.kind == "path"
    assert set(ch.vertices) == set(range(5))
    assert ch.endpoints in ((0, 4), (4, 0))


def test_chain_cycle():
    g = cycle_graph(4)
    c = PartialColoring(g, 2, {(0, 1): 1, (1, 2): 2, (2, 3): 1, (0, 3): 2}, max_uncolored=0)
    ch = chain_through(c, 0, 1, 2)
    assert ch.kind == "cycle" and len(ch) == 4 and ch.vertices[0] == 0


def test_meets_before_reads_from_query_endpoint():
    c = path_coloring()
    ch = chain_through(c, 0, 1, 2)
    assert meets_before(ch, 1, 3)
    ch4 = chain_through(c, 4, 1, 2)
    assert meets_before(ch4, 3, 1)
    with pytest.raises(ColoringError):
        meets_before(chain_through(c, 2, 1, 2), 1, 3)


def test_stale_chain_rejected():
    c = path_coloring()
    ch = chain_through(c, 0, 1, 2)
    c.set_color(0, 1, 3)
    with pytest.raises(StaleChainError):
        c.swap_chain(ch)


def test_swap_at_requires_exactly_one_missing():
    c = path_coloring()
    with pytest.raises(SwapPreconditionError):
        swap_at(c, 2, 1, 2)  # both present at 2
    d = swap_at(c, 0, 1, 2)
    assert d.color(0, 1) == 2 and d.color(3, 4) == 1
    assert c.color(0, 1) == 1  # input untouched


def test_swap_at_both_when_linked_swaps_once():
    c = path_coloring()
    d = swap_at_both(c, 0, 4, 1, 2)
    assert d == swap_at(c, 0, 1, 2)


def test_swap_subchain_middle():
    g = path_graph(5)
    c = PartialColoring(g, 3, {(0, 1): 1, (1, 2): 2, (2, 3): 1, (3, 4): 2}, max_uncolored=0)
    # swapping only 0..2 would put color 1 twice at vertex 2
    with pytest.raises(ColoringError):
        swap_subchain(c, 0, 2, 1, 2)
    d = swap_subchain(c, 0, 4, 1, 2)
    assert d == swap_at(c, 0, 1, 2)
    with pytest.raises(SwapPreconditionError):
        swap_subchain(c, 0, 2, 1, 3)


def test_multi_swap_stagewise():
    from hzcolor.graph import SimpleGraph

    g = SimpleGraph(3, [(0, 1), (0, 2)])
    c = PartialColoring(g, 3, {(0, 1): 2, (0, 2): 3}, max_uncolored=0)
    d = multi_swap(c, 0, (1, 2, 3))
    assert (d.color(0, 1), d.color(0, 2)) == (1, 2)
    assert d.missing(0) == {3}
    with pytest.raises(SwapPreconditionError):
        multi_swap(c, 0, (2, 1))
    assert c.missing(0) == {1}


def test_shift():
    from hzcolor.graph import SimpleGraph

    g = SimpleGraph(4, [(0, 1), (0, 2), (2, 3), (1, 3)])
    c = PartialColoring(g, 3, {(0, 2): 1, (2, 3): 2, (1, 3): 3}, max_uncolored=1)
    d = shift(c, 0, (2,))
    assert d.color(0, 2) == 3 and validate_proper(d)
    assert shift(d, 0, (2,)) == c
    g2 = SimpleGraph(5, [(0, 1), (0, 2), (2, 3), (1, 3), (0, 4)])
    c2 = PartialColoring(g2, 3, {(0, 2): 1, (2, 3): 2, (1, 3): 3, (0, 4): 3}, max_uncolored=1)
    with pytest.raises(ImproperColoringError):
        shift(c2, 0, (2,))
    assert c2.color(0, 2) == 1


def test_json_round_trip():
    c = path_coloring()
    d = coloring_from_json(c.to_json(include_graph=True))
    assert d == c
    with pytest.raises(ColoringError):
        coloring_from_dict({"k": 3, "edges": [[0, 1, 1]], "uncolored": None}, path_graph(3))


def test_permute_colors():
    c = path_coloring()
    d = permute_colors(c, {1: 3, 3: 1})
    assert d.color(0, 1) == 3 and d.color(1, 2) == 2
    with pytest.raises(ColoringError):
        permute_colors(c, {1: 2, 2: 2})


def test_is_stable():
    c = path_coloring()
    d = swap_at(c, 0, 1, 2)
    assert is_stable(c, c, range(5))
    assert not is_stable(d, c, [0])
    assert is_stable(d, c, [2])


# -- properties over random colorings ------------------------------------------------------


@st.composite
def colored_graphs(draw):
    g = draw(graphs(min_n=2, max_n=9, connected=True))
    c = vizing_plus_one_coloring(g)
    c.max_uncolored = 1
    # optionally uncolor one edge
    if g.num_edges and draw(st.booleans()):
        u, v = draw(st.sampled_from(g.edges))
        c.set_color(u, v, None)
    return c


@given(colored_graphs(), st.data())
def test_chain_is_the_reference_component(c, data):
    if c.k < 2:
        return
    x = data.draw(st.integers(0, c.graph.n - 1))
    a, b = data.draw(st.lists(st.integers(1, c.k), min_size=2, max_size=2, unique=True))
    ch = chain_through(c, x, a, b)
    ref = oracles.kempe_component(c.edge_colors, x, a, b)
    assert set(ch.vertices) == ref
    # a component with as many edges as vertices is a cycle, otherwise a path
    assert (ch.kind == "cycle") == (len(ch.edges) == len(ref) and len(ref) > 2)


@given(colored_graphs(), st.data())
def test_swap_involution_and_endpoint_missing_sets(c, data):
    if c.k < 2:
        return
    x = data.draw(st.integers(0, c.graph.n - 1))
    a, b = data.draw(st.lists(st.integers(1, c.k), min_size=2, max_size=2, unique=True))
    ch = chain_through(c, x, a, b)
    d = c.copy()
    d.swap_chain(ch)
    assert validate_proper(d)
    changed = {v for v in range(c.graph.n) if c.missing(v) != d.missing(v)}
    if ch.kind == "path" and ch.edges:
        assert changed == {ch.vertices[0], ch.vertices[-1]}
        for v in changed:
            assert d.missing(v) ^ c.missing(v) == {a, b}
    else:
        assert changed == set()
    d.swap_chain(chain_through(d, x, a, b))
    assert d.same_state(c)


@given(colored_graphs(), st.data())
def test_linked_is_symmetric(c, data):
    if c.k < 2:
        return
    x, y = data.draw(st.integers(0, c.graph.n - 1)), data.draw(st.integers(0, c.graph.n - 1))
    a, b = data.draw(st.lists(st.integers(1, c.k), min_size=2, max_size=2, unique=True))
    assert linked(c, x, y, a, b) == linked(c, y, x, a, b)


@given(graphs(min_n=2, max_n=9, connected=True))
def test_vizing_coloring_is_proper_by_reference(g):
    c = vizing_plus_one_coloring(g)
    assert c.k == g.max_degree + 1
    assert oracles.proper_edge_coloring(oracles.to_nx(g), c.edge_colors, c.k)


def test_random_walk_keeps_properness():
    rng = random.Random(3)
    from hzcolor.graph import petersen

    c = vizing_plus_one_coloring(petersen())
    for _ in range(300):
        x = rng.randrange(10)
        a, b = rng.sample(range(1, c.k + 1), 2)
        c.swap_chain(chain_through(c, x, a, b))
        assert validate_proper(c)

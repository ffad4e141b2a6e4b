import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from hzcolor.coloring import PartialColoring, validate_proper
from hzcolor.graph import SimpleGraph, path_graph
from hzcolor.oracle import vizing_plus_one_coloring
from hzcolor.script import (
    MultiSwap,
    RecolorScript,
    ScriptError,
    SetEdge,
    Shift,
    SwapAtBoth,
    SwapChainAt,
    SwapSubchain,
    apply_script,
)


def base():
    g = path_graph(5)
    return PartialColoring(g, 3, {(0, 1): 1, (1, 2): 2, (2, 3): 1, (3, 4): 2}, max_uncolored=0)


def test_script_applies_in_order():
    c = base()
    out = apply_script(c, RecolorScript((SwapChainAt(0, 1, 2), SwapChainAt(0, 2, 3))))
    assert out.color(0, 1) == 3
    assert validate_proper(out)


def test_failing_script_leaves_input_untouched():
    c = base()
    snapshot = c.copy()
    script = RecolorScript((SwapChainAt(0, 1, 2), SetEdge((1, 2), 2)))
    with pytest.raises(ScriptError) as info:
        apply_script(c, script)
    assert info.value.step_index == 1
    assert c.same_state(snapshot)


def test_set_edge_expect():
    c = base()
    with pytest.raises(ScriptError):
        apply_script(c, [SetEdge((0, 1), 3, expect=2)])
    out = apply_script(c, [SetEdge((0, 1), 3, expect=1)])
    assert out.color(0, 1) == 3


def test_intermediate_uncolored_edges_allowed():
    c = base()
    script = [SetEdge((0, 1), None), SetEdge((1, 2), None), SetEdge((0, 1), 2), SetEdge((1, 2), 3)]
    out = apply_script(c, script)
    assert (out.color(0, 1), out.color(1, 2)) == (2, 3)
    with pytest.raises(ScriptError):
        apply_script(c, script[:2])  # final state leaves two uncolored edges


def test_shift_step_inverse():
    g = SimpleGraph(4, [(0, 1), (0, 2), (2, 3), (1, 3)])
    c = PartialColoring(g, 3, {(0, 2): 1, (2, 3): 2, (1, 3): 3}, max_uncolored=1)
    out = apply_script(c, [Shift(0, (2,))])
    assert apply_script(out, [Shift(0, (2,))]) == c


def test_other_steps():
    c = base()
    assert apply_script(c, [SwapAtBoth(0, 4, 1, 2)]) == apply_script(c, [SwapChainAt(0, 1, 2)])
    assert apply_script(c, [SwapSubchain(0, 4, 1, 2)]) == apply_script(c, [SwapChainAt(0, 1, 2)])
    g = SimpleGraph(3, [(0, 1), (0, 2)])
    s = PartialColoring(g, 3, {(0, 1): 2, (0, 2): 3}, max_uncolored=0)
    assert apply_script(s, [MultiSwap(0, (1, 2, 3))]).missing(0) == {3}


def test_matrix_rendering():
    m = RecolorScript((SwapChainAt(0, 1, 2), SetEdge((1, 2), None, expect=2))).matrix()
    assert len(m) == 2 and len(m[0]) == 2
    assert m[1][1] == "2->uncolored"


@given(graphs(min_n=2, max_n=8, connected=True), st.data())
def test_fault_injection_is_atomic(g, data):
    c = vizing_plus_one_coloring(g)
    snapshot = c.copy()
    steps = []
    for _ in range(data.draw(st.integers(0, 3))):
        x = data.draw(st.integers(0, g.n - 1))
        miss, pres = sorted(c.missing(x)), sorted(c.present(x))
        if miss and pres:
            steps.append(SwapChainAt(x, data.draw(st.sampled_from(miss)), data.draw(st.sampled_from(pres))))
            break
    # last step: recolor an edge with a color already at one of its ends
    u, v = data.draw(st.sampled_from(g.edges))
    clash = sorted(c.present(u) - {c.color(u, v)})
    if not clash:
        return
    steps.append(SetEdge((u, v), clash[0]))
    try:
        out = apply_script(c, steps)
    except ScriptError:
        assert c.same_state(snapshot)
    else:
        # the earlier swap may have moved the clashing color away
        assert validate_proper(out)
        assert c.same_state(snapshot)

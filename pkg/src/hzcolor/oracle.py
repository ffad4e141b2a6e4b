"""Exact chromatic index at desk scale, plus constructive (Delta+1) and Delta colorers."""

from __future__ import annotations

import logging
import random
import sys
from dataclasses import dataclass, field

from .coloring import (
    PartialColoring,
    chain_through,
    linked,
    mask_to_set,
    validate_proper,
)
from .graph import Edge, SimpleGraph

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass
class OracleResult:
    chi_prime: int
    witness: PartialColoring
    nodes_explored: int
    delta: int

    @property
    def is_class2(self) -> bool:
        return self.chi_prime == self.delta + 1


def _edge_order(g: SimpleGraph) -> list[Edge]:
    """Descending by min endpoint degree, then lexicographic."""
    deg = g.degrees
    return sorted(g.edges, key=lambda e: (-min(deg[e[0]], deg[e[1]]), e))


def find_edge_coloring(
    g: SimpleGraph,
    k: int,
    node_budget: int = DEFAULT_BUDGET,
    prune: bool = True,
) -> tuple[dict[Edge, int] | None, int]:
    """Backtracking search for a proper k-edge-coloring.

    Returns (coloring or None, nodes explored).  None means exhaustively
    refuted; running out of budget raises BudgetExceededError instead.

    The edge picked at each node is the uncolored one with fewest available
    colors, ties broken by the static order.  Colors never used so far are
    interchangeable, so only the smallest of them is tried.  With ``prune``,
    a node is cut when the colors cannot absorb the remaining edges: color c
    can still take at most floor(|free_c| / 2) edges, where free_c is the set
    of vertices with an uncolored edge that do not yet see c.
    """
    order = _edge_order(g)
    m = len(order)
    n = g.n
    if m == 0:
        return {}, 0
    if k < g.max_degree:
        return None, 0
    eu = [e[0] for e in order]
    ev = [e[1] for e in order]
    full = ((1 << (k + 1)) - 1) & ~1
    used = [0] * n  # color bitmask per vertex
    colmask = [0] * (k + 1)  # vertex bitmask per color
    ucount = [0] * (k + 1)  # edges per color
    udeg = list(g.degrees)
    color = [0] * m
    nodes = 0

    def assign(i: int, c: int) -> None:
        u, v = eu[i], ev[i]
        color[i] = c
        b = 1 << c
        used[u] |= b
        used[v] |= b
        colmask[c] |= (1 << u) | (1 << v)
        ucount[c] += 1
        udeg[u] -= 1
        udeg[v] -= 1

    def unassign(i: int) -> None:
        u, v = eu[i], ev[i]
        c = color[i]
        color[i] = 0
        b = ~(1 << c)
        used[u] &= b
        used[v] &= b
        colmask[c] &= ~((1 << u) | (1 << v))
        ucount[c] -= 1
        udeg[u] += 1
        udeg[v] += 1

    # symmetry breaking: edges at the first max-degree vertex get 1..d
    v0 = max(range(n), key=lambda v: (g.degree(v), -v))
    fixed = [i for i in range(m) if v0 in (eu[i], ev[i])]
    for c, i in enumerate(fixed, start=1):
        assign(i, c)
    remaining = m - len(fixed)

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * m + 100))

    def rec(remaining: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(nodes)
        if remaining == 0:
            return True
        best = -1
        bestcnt = k + 1
        bestavail = 0
        for i in range(m):
            if color[i]:
                continue
            avail = full & ~(used[eu[i]] | used[ev[i]])
            cnt = avail.bit_count()
            if cnt < bestcnt:
                best, bestcnt, bestavail = i, cnt, avail
                if cnt <= 1:
                    break
        if bestcnt == 0:
            return False
        if prune:
            active = 0
            for v in range(n):
                if udeg[v]:
                    active |= 1 << v
            cap = 0
            for c in range(1, k + 1):
                cap += (active & ~colmask[c]).bit_count() >> 1
            if cap < remaining:
                return False
        seen_fresh = False
        avail = bestavail
        while avail:
            b = avail & -avail
            avail ^= b
            c = b.bit_length() - 1
            if ucount[c] == 0:
                if seen_fresh:
                    continue
                seen_fresh = True
            assign(best, c)
            if rec(remaining - 1):
                return True
            unassign(best)
        return False

    ok = rec(remaining)
    if not ok:
        return None, nodes
    return {order[i]: color[i] for i in range(m)}, nodes


def chromatic_index_exact(g: SimpleGraph, node_budget: int = DEFAULT_BUDGET, prune: bool = True) -> OracleResult:
    delta = g.max_degree
    if g.num_edges == 0:
        return OracleResult(0, PartialColoring(g, 0, {}, max_uncolored=0), 0, delta)
    found, nodes = find_edge_coloring(g, delta, node_budget, prune=prune)
    if found is not None:
        w = PartialColoring(g, delta, found, max_uncolored=0)
        return OracleResult(delta, w, nodes, delta)
    w = vizing_plus_one_coloring(g)
    w.max_uncolored = 0
    return OracleResult(delta + 1, w, nodes, delta)


def is_class_two(g: SimpleGraph, node_budget: int = DEFAULT_BUDGET) -> bool:
    return chromatic_index_exact(g, node_budget).is_class2


# -- Delta+1: fan rotation with cd-path inversion -------------------------------


def vizing_plus_one_coloring(g: SimpleGraph) -> PartialColoring:
    """Complete proper (Delta+1)-coloring, edge by edge, no search."""
    k = g.max_degree + 1
    c = PartialColoring(g, k, {}, max_uncolored=None)
    for u, v in g.edges:
        _vizing_color_edge(c, u, v)
    c.max_uncolored = 0
    return c


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _vizing_color_edge(c: PartialColoring, u: int, v: int) -> None:
    common = c.missing_mask(u) & c.missing_mask(v)
    if common:
        c.set_color(u, v, _lowest(common))
        return
    # maximal fan at u starting with v
    fan = [v]
    in_fan = {v}
    while True:
        last_free = c.missing_mask(fan[-1])
        nxt = None
        for w in c.graph.neighbors(u):
            if w in in_fan:
                continue
            cw = c.color(u, w)
            if cw is not None and last_free >> cw & 1:
                nxt = w
                break
        if nxt is None:
            break
        fan.append(nxt)
        in_fan.add(nxt)
    a = _lowest(c.missing_mask(u))
    d = _lowest(c.missing_mask(fan[-1]))
    if a != d and c.missing_mask(u) >> d & 1 == 0:
        c.swap_chain(chain_through(c, u, d, a))
    # first fan vertex where d is free and the prefix is still a fan
    idx = None
    for i, w in enumerate(fan):
        if i > 0:
            cw = c.color(u, w)
            if cw is None or not c.missing_mask(fan[i - 1]) >> cw & 1:
                break
        if c.missing_mask(w) >> d & 1:
            idx = i
            break
    if idx is None:
        raise AssertionError("fan rotation found no free vertex; coloring invariant broken")
    _rotate_fan(c, u, fan[: idx + 1], d)


def _rotate_fan(c: PartialColoring, u: int, prefix: list[int], last_color: int) -> None:
    """u f_j takes the color of u f_{j+1}; u f_last takes ``last_color``."""
    shifted = [c.color(u, prefix[j + 1]) for j in range(len(prefix) - 1)]
    for w in prefix[1:]:
        c.set_color(u, w, None)
    for w, col in zip(prefix, shifted):
        c.set_color(u, w, col)
    c.set_color(u, prefix[-1], last_color)


# -- Delta colorer ----------------------------------------------------------------


@dataclass
class DeltaColoringStats:
    greedy: int = 0
    repaired: int = 0
    stuck: int = 0
    fallback_search: bool = False
    search_nodes: int = 0
    repair_methods: dict[str, int] = field(default_factory=dict)

    def note(self, method: str) -> None:
        self.repair_methods[method] = self.repair_methods.get(method, 0) + 1


class DeltaColoringError(RuntimeError):
    pass


def _grow_fan(c: PartialColoring, u: int, v: int) -> tuple[list[int], list[int]]:
    """Multifan at u w.r.t. uncolored uv (no degree restriction).

    Returns the fan vertices and, for each, the index of the fan vertex that
    missed its edge color (-1 for the first).
    """
    fan = [v]
    parent = [-1]
    union = c.missing_mask(v)
    in_fan = {v}
    grew = True
    while grew:
        grew = False
        for w in c.graph.neighbors(u):
            if w in in_fan:
                continue
            cw = c.color(u, w)
            if cw is None or not union >> cw & 1:
                continue
            for j, s in enumerate(fan):
                if c.missing_mask(s) >> cw & 1:
                    parent.append(j)
                    break
            fan.append(w)
            in_fan.add(w)
            union |= c.missing_mask(w)
            grew = True
            break
    return fan, parent


def _fold(c: PartialColoring, u: int, fan: list[int], parent: list[int], i: int, gamma: int) -> None:
    """Color the fan's uncolored edge by shifting colors down the inducing path to fan[i]."""
    path = [i]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    old = [c.color(u, fan[j]) for j in path[:-1]]
    for j in path[:-1]:
        c.set_color(u, fan[j], None)
    c.set_color(u, fan[path[0]], gamma)
    for t in range(1, len(path)):
        c.set_color(u, fan[path[t]], old[t - 1])


def _try_fan_repair(c: PartialColoring, u: int, v: int, rounds: int = 8) -> str | None:
    for _ in range(rounds):
        fan, parent = _grow_fan(c, u, v)
        miss_u = c.missing_mask(u)
        for i, s in enumerate(fan):
            both = miss_u & c.missing_mask(s)
            if both:
                _fold(c, u, fan, parent, i, _lowest(both))
                return "fold"
        if not miss_u:
            return None
        alpha = _lowest(miss_u)
        owner: dict[int, int] = {}
        swapped = False
        for i, s in enumerate(fan):
            m = c.missing_mask(s)
            while m and not swapped:
                b = m & -m
                m ^= b
                delta = b.bit_length() - 1
                if delta in owner:
                    for cand in (fan[owner[delta]], s):
                        if not linked(c, u, cand, alpha, delta):
                            c.swap_chain(chain_through(c, cand, alpha, delta))
                            swapped = True
                            break
                else:
                    owner[delta] = i
            if swapped:
                break
        if not swapped:
            return None
    return None


def _try_kempe_repair(c: PartialColoring, u: int, v: int) -> str | None:
    for a in mask_to_set(c.missing_mask(u)):
        for b in mask_to_set(c.missing_mask(v)):
            if not linked(c, v, u, a, b):
                c.swap_chain(chain_through(c, v, a, b))
                c.set_color(u, v, a)
                return "kempe"
    for b in mask_to_set(c.missing_mask(v)):
        for a in mask_to_set(c.missing_mask(u)):
            if not linked(c, u, v, b, a):
                c.swap_chain(chain_through(c, u, b, a))
                c.set_color(u, v, b)
                return "kempe"
    return None


def _repair(c: PartialColoring, u: int, v: int, rng: random.Random, attempts: int) -> str | None:
    for _ in range(attempts):
        common = c.missing_mask(u) & c.missing_mask(v)
        if common:
            c.set_color(u, v, _lowest(common))
            return "direct"
        if not c.missing_mask(u) or not c.missing_mask(v):
            return None
        method = _try_kempe_repair(c, u, v)
        if method:
            return method
        for center, other in ((u, v), (v, u)):
            trial = c.copy()
            method = _try_fan_repair(trial, center, other)
            if method and trial.color(u, v) is not None:
                _adopt(c, trial)
                return method
        # perturb with a random Kempe change away from u and v, then retry
        edges = [e for e in c.edge_colors]
        if not edges:
            return None
        x, y = rng.choice(edges)
        a = c.color(x, y)
        b = rng.randint(1, c.k)
        if a != b:
            ch = chain_through(c, x, a, b)
            if u not in ch.vertices and v not in ch.vertices:
                c.swap_chain(ch)
    return None


def _adopt(c: PartialColoring, other: PartialColoring) -> None:
    c._color = other._color
    c._at = other._at
    c._present = other._present
    c._uncolored = other._uncolored
    c._touch()


def delta_edge_color(
    g: SimpleGraph,
    seed: int = 0,
    attempts: int = 20,
    node_budget: int = DEFAULT_BUDGET,
    stats: DeltaColoringStats | None = None,
) -> PartialColoring:
    """Greedy Delta-coloring with multifan/Kempe repair and a bounded-search fallback.

    This is an engineering procedure: a Delta-coloring is known to exist for
    the class-1 inputs it is meant for, but the repair loop itself carries no
    completeness guarantee, hence the search fallback.
    """
    stats = stats if stats is not None else DeltaColoringStats()
    delta = g.max_degree
    c = PartialColoring(g, delta, {}, max_uncolored=None)
    rng = random.Random(seed)
    stuck = []
    for u, v in _edge_order(g):
        common = c.missing_mask(u) & c.missing_mask(v)
        if common:
            c.set_color(u, v, _lowest(common))
            stats.greedy += 1
        else:
            stuck.append((u, v))
    stats.stuck = len(stuck)
    for u, v in stuck:
        method = _repair(c, u, v, rng, attempts)
        if method is None:
            break
        stats.repaired += 1
        stats.note(method)
    if not c.is_complete():
        stats.fallback_search = True
        found, nodes = find_edge_coloring(g, delta, node_budget)
        stats.search_nodes = nodes
        if found is None:
            raise DeltaColoringError("graph has no Delta-edge-coloring (class 2)")
        c = PartialColoring(g, delta, found, max_uncolored=None)
    c.max_uncolored = 0
    if not validate_proper(c):
        raise DeltaColoringError("internal error: produced an improper coloring")
    return c

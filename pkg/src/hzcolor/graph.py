"""Immutable simple graphs and the degree-class views used throughout."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Normalized (min, max) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


class GraphError(ValueError):
    pass


class SimpleGraph:
    """Undirected simple graph on vertices ``0..n-1``.

    Adjacency is stored both as sorted neighbor tuples and as integer
    bitmasks; the latter keep the enumeration and search hot loops cheap.
    Instances are never mutated after construction.
    """

    __slots__ = ("n", "_adj", "_mask", "__dict__")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {(u, v)} out of range for n={n}")
            if v in nbrs[u]:
                raise GraphError(f"parallel edge {edge_key(u, v)}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self._adj = tuple(tuple(sorted(s)) for s in nbrs)
        self._mask = tuple(sum(1 << w for w in s) for s in nbrs)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "SimpleGraph":
        n = len(masks)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if masks[u] >> v & 1]
        return cls(n, edges)

    # -- basic queries -------------------------------------------------

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def mask(self, v: int) -> int:
        return self._mask[v]

    @property
    def masks(self) -> tuple[int, ...]:
        return self._mask

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self._adj)

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._mask[u] >> v & 1)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple((u, v) for u in range(self.n) for v in self._adj[u] if u < v)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.n))

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimpleGraph) and self.n == other.n and self._mask == other._mask

    def __hash__(self) -> int:
        return hash((self.n, self._mask))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.num_edges})"

    # -- degree classes --------------------------------------------------

    def vertices_of_degree(self, i: int) -> tuple[int, ...]:
        """V_i: all vertices of degree exactly ``i``."""
        return tuple(v for v in range(self.n) if len(self._adj[v]) == i)

    def neighbors_of_degree(self, v: int, i: int) -> tuple[int, ...]:
        """N_i(v)."""
        return tuple(w for w in self._adj[v] if len(self._adj[w]) == i)

    def closed_neighbors_of_degree(self, v: int, i: int) -> tuple[int, ...]:
        """N_i[v] = N_i(v) plus v itself."""
        return tuple(sorted(self.neighbors_of_degree(v, i) + (v,)))

    def set_neighbors_of_degree(self, xs: Iterable[int], i: int) -> frozenset[int]:
        """N_i(X) = N_G(X) restricted to V_i."""
        out: set[int] = set()
        for x in xs:
            out.update(self.neighbors_of_degree(x, i))
        return frozenset(out)

    # -- structure ---------------------------------------------------------

    @cached_property
    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= self._mask[b.bit_length() - 1]
            nxt &= ~seen
            seen |= nxt
            frontier = nxt
        return seen == (1 << self.n) - 1

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["SimpleGraph", tuple[int, ...]]:
        """Return G[X] relabeled to 0..|X|-1 together with the original labels."""
        order = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return SimpleGraph(len(order), edges), order

    def remove_edge(self, u: int, v: int) -> "SimpleGraph":
        e = edge_key(u, v)
        if not self.has_edge(*e):
            raise GraphError(f"no edge {e}")
        return SimpleGraph(self.n, [f for f in self.edges if f != e])

    def remove_vertex(self, x: int) -> "SimpleGraph":
        keep = [v for v in range(self.n) if v != x]
        return self.induced_subgraph(keep)[0]

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return SimpleGraph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def is_regular(self, d: int | None = None) -> bool:
        degs = set(self.degrees)
        if not degs:
            return True
        return len(degs) == 1 and (d is None or d in degs)

    def is_cycle(self) -> bool:
        return self.n >= 3 and self.is_connected and self.is_regular(2)

    def is_odd_cycle(self) -> bool:
        return self.is_cycle() and self.n % 2 == 1


# -- degree-class view ----------------------------------------------------


@dataclass(frozen=True)
class DegreeClassView:
    """V_Delta, V_{Delta-1} and the core G_Delta of a graph.

    ``core_subgraph`` is relabeled; ``core_vertices[i]`` is the original
    label of its vertex ``i``.
    """

    graph: SimpleGraph
    delta: int
    v_delta: tuple[int, ...]
    v_delta_minus_1: tuple[int, ...]
    core_subgraph: SimpleGraph
    core_vertices: tuple[int, ...]

    def V(self, i: int) -> tuple[int, ...]:
        return self.graph.vertices_of_degree(i)

    def N(self, i: int, v: int) -> tuple[int, ...]:
        return self.graph.neighbors_of_degree(v, i)

    @property
    def core_max_degree(self) -> int:
        return self.core_subgraph.max_degree

    def classes(self) -> dict[int, tuple[int, ...]]:
        """Partition of V(G) by degree."""
        out: dict[int, list[int]] = {}
        for v, d in enumerate(self.graph.degrees):
            out.setdefault(d, []).append(v)
        return {d: tuple(vs) for d, vs in sorted(out.items())}

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "m": self.graph.num_edges,
            "delta": self.delta,
            "v_delta": list(self.v_delta),
            "v_delta_minus_1": list(self.v_delta_minus_1),
            "core_edges": [[self.core_vertices[u], self.core_vertices[v]] for u, v in self.core_subgraph.edges],
            "core_max_degree": self.core_max_degree,
        }


def core(g: SimpleGraph) -> DegreeClassView:
    if g.n < 1:
        raise GraphError("core() needs at least one vertex")
    delta = g.max_degree
    v_delta = g.vertices_of_degree(delta)
    sub, order = g.induced_subgraph(v_delta)
    return DegreeClassView(
        graph=g,
        delta=delta,
        v_delta=v_delta,
        v_delta_minus_1=g.vertices_of_degree(delta - 1) if delta >= 1 else (),
        core_subgraph=sub,
        core_vertices=order,
    )


def is_overfull(g: SimpleGraph) -> bool:
    """|E(G)| > Delta * floor(n/2)."""
    return g.num_edges > g.max_degree * (g.n // 2)


def core_max_degree(g: SimpleGraph) -> int:
    """Delta(G_Delta) computed straight from the bitmasks."""
    delta = g.max_degree
    cmask = 0
    for v, d in enumerate(g.degrees):
        if d == delta:
            cmask |= 1 << v
    best = 0
    for v in range(g.n):
        if cmask >> v & 1:
            best = max(best, (g.mask(v) & cmask).bit_count())
    return best


def is_hz_candidate(g: SimpleGraph) -> bool:
    """Connected with Delta(G_Delta) <= 2."""
    if g.n < 1:
        return False
    return g.is_connected and core_max_degree(g) <= 2


# -- named graphs -----------------------------------------------------------

# outer 5-cycle 0..4, spokes i -- i+5, inner pentagram 5..9
PETERSEN_EDGES: tuple[Edge, ...] = (
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
)


def petersen() -> SimpleGraph:
    return SimpleGraph(10, PETERSEN_EDGES)


def petersen_star() -> SimpleGraph:
    """P*: the Petersen graph with vertex 0 deleted (9 vertices, 12 edges)."""
    return petersen().remove_vertex(0)


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    return SimpleGraph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def k5_minus_edge() -> SimpleGraph:
    """K5 with the edge {3,4} removed: vertices 0,1,2 have degree 4."""
    return complete_graph(5).remove_edge(3, 4)


def disjoint_union(*graphs: SimpleGraph) -> SimpleGraph:
    edges: list[Edge] = []
    off = 0
    for h in graphs:
        edges.extend((u + off, v + off) for u, v in h.edges)
        off += h.n
    return SimpleGraph(off, edges)

"""The O_Delta family: joins of a 2-regular H1 with a regular H2 on Delta-2 vertices."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import islice
from typing import Iterator

from .canon import certificate, is_isomorphic
from .graph import Edge, SimpleGraph


class InfeasibleSpecError(ValueError):
    pass


@dataclass(frozen=True)
class ODeltaSpec:
    delta: int
    n1: int
    h1_edges: tuple[Edge, ...]
    h2_edges: tuple[Edge, ...]
    # original labels of H1 then H2 vertices when produced by recognize_o_delta
    vertex_order: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def h2_degree(self) -> int:
        return self.delta - 1 - self.n1

    @property
    def h2_order(self) -> int:
        return self.delta - 2

    @property
    def n(self) -> int:
        return self.n1 + self.delta - 2

    def h1(self) -> SimpleGraph:
        return SimpleGraph(self.n1, self.h1_edges)

    def h2(self) -> SimpleGraph:
        return SimpleGraph(self.h2_order, self.h2_edges)

    def validate(self) -> None:
        check_parameters(self.delta, self.n1)
        n1 = self.n1
        try:
            h1, h2 = self.h1(), self.h2()
        except ValueError as exc:
            raise InfeasibleSpecError(str(exc)) from exc
        if not h1.is_regular(2) or h1.n != n1:
            raise InfeasibleSpecError("H1 is not 2-regular on n1 vertices")
        if h2.n and not h2.is_regular(self.h2_degree):
            raise InfeasibleSpecError(f"H2 is not {self.h2_degree}-regular")

    def equivalent(self, other: "ODeltaSpec") -> bool:
        """Equality up to relabeling of H1 and H2."""
        return (
            self.delta == other.delta
            and self.n1 == other.n1
            and is_isomorphic(self.h1(), other.h1())
            and is_isomorphic(self.h2(), other.h2())
        )

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "n1": self.n1,
            "h1_edges": [list(e) for e in self.h1_edges],
            "h2_edges": [list(e) for e in self.h2_edges],
        }


def check_parameters(delta: int, n1: int) -> None:
    """Raise InfeasibleSpecError unless (delta, n1) admits some O_Delta member."""
    if delta < 4:
        raise InfeasibleSpecError(f"delta={delta} < 4")
    if not 3 <= n1 <= delta - 1:
        raise InfeasibleSpecError(f"n1={n1} outside [3, {delta - 1}]")
    if (n1 + delta - 2) % 2 == 0:
        raise InfeasibleSpecError(f"n1+(delta-2)={n1 + delta - 2} is even")
    h2_degree, h2_order = delta - 1 - n1, delta - 2
    if (h2_degree * h2_order) % 2:
        raise InfeasibleSpecError(f"no {h2_degree}-regular graph on {h2_order} vertices (odd degree sum)")


def build_o_delta(spec: ODeltaSpec) -> SimpleGraph:
    """Join H1 (vertices 0..n1-1) with H2 (vertices n1..n-1)."""
    spec.validate()
    n1 = spec.n1
    edges = list(spec.h1_edges)
    edges += [(n1 + u, n1 + v) for u, v in spec.h2_edges]
    edges += [(a, n1 + b) for a in range(n1) for b in range(spec.h2_order)]
    return SimpleGraph(spec.n, edges)


def recognize_o_delta(g: SimpleGraph) -> ODeltaSpec | None:
    n = g.n
    if n % 2 == 0 or n == 0:
        return None
    delta = g.max_degree
    if delta < 4:
        return None
    if set(g.degrees) != {delta, delta - 1}:
        return None
    hi = g.vertices_of_degree(delta)
    lo = g.vertices_of_degree(delta - 1)
    if len(lo) != delta - 2:
        return None
    lo_mask = sum(1 << v for v in lo)
    if any(g.mask(a) & lo_mask != lo_mask for a in hi):
        return None
    h1, _ = g.induced_subgraph(hi)
    h2, _ = g.induced_subgraph(lo)
    if not h1.is_regular(2):
        return None
    if not h2.is_regular(delta - 1 - len(hi)):
        return None
    spec = ODeltaSpec(delta, len(hi), h1.edges, h2.edges, vertex_order=tuple(hi) + tuple(lo))
    try:
        spec.validate()
    except InfeasibleSpecError:
        return None
    return spec


def feasible_n1(delta: int) -> list[int]:
    return [
        n1
        for n1 in range(3, delta)
        if (n1 + delta - 2) % 2 == 1 and ((delta - 1 - n1) * (delta - 2)) % 2 == 0
    ]


# -- regular graph shapes ------------------------------------------------------


def canonical_regular_graph(d: int, m: int) -> SimpleGraph:
    """A fixed d-regular graph on m vertices (circulant, plus antipodal matching for odd d)."""
    if m == 0:
        return SimpleGraph(0)
    if d >= m or (d * m) % 2:
        raise InfeasibleSpecError(f"no {d}-regular graph on {m} vertices")
    edges = set()
    for i in range(m):
        for s in range(1, d // 2 + 1):
            j = (i + s) % m
            edges.add((min(i, j), max(i, j)))
        if d % 2:
            j = (i + m // 2) % m
            edges.add((min(i, j), max(i, j)))
    return SimpleGraph(m, sorted(edges))


def two_regular_graphs(n: int) -> list[SimpleGraph]:
    """All 2-regular graphs on n vertices up to isomorphism (cycle-length partitions)."""
    out = []

    def parts(rest: int, smallest: int) -> Iterator[list[int]]:
        if rest == 0:
            yield []
            return
        for p in range(smallest, rest + 1):
            if rest - p == 0 or rest - p >= p:
                for tail in parts(rest - p, p):
                    yield [p] + tail

    for lengths in parts(n, 3):
        edges, off = [], 0
        for L in lengths:
            edges += [(off + i, off + (i + 1) % L) for i in range(L)]
            off += L
        out.append(SimpleGraph(n, [(min(u, v), max(u, v)) for u, v in edges]))
    return out


def regular_graphs(d: int, m: int, limit: int | None = None) -> list[SimpleGraph]:
    """All d-regular graphs on m vertices up to isomorphism (backtracking; small m only)."""
    if m == 0:
        return [SimpleGraph(0)]
    if d >= m or (d * m) % 2 or d < 0:
        return []
    if d == 2:
        return two_regular_graphs(m)[:limit]
    pairs = [(u, v) for u in range(m) for v in range(u + 1, m)]
    deg = [0] * m
    chosen: list[Edge] = []
    seen: set[bytes] = set()
    out: list[SimpleGraph] = []

    def rec(i: int) -> bool:
        if limit is not None and len(out) >= limit:
            return True
        if all(x == d for x in deg):
            g = SimpleGraph(m, chosen)
            cert = certificate(g)
            if cert not in seen:
                seen.add(cert)
                out.append(g)
            return False
        if i == len(pairs):
            return False
        u, v = pairs[i]
        # vertex u gets no later chance once all pairs starting at u are passed
        if v == m - 1 and deg[u] + 1 < d:
            return False
        if deg[u] < d and deg[v] < d:
            deg[u] += 1
            deg[v] += 1
            chosen.append((u, v))
            stop = rec(i + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
            if stop:
                return True
        if v == m - 1 and deg[u] < d:
            return False
        return rec(i + 1)

    rec(0)
    return out


def o_delta_specs(delta: int, max_shapes: int = 50) -> list[ODeltaSpec]:
    """Feasible specs for one Delta, up to ``max_shapes`` H1/H2 combinations per n1."""
    specs = []
    for n1 in feasible_n1(delta):
        h1s = two_regular_graphs(n1)
        h2s = regular_graphs(delta - 1 - n1, delta - 2)
        combos = ((a, b) for a in h1s for b in h2s)
        for h1, h2 in islice(combos, max_shapes):
            specs.append(ODeltaSpec(delta, n1, h1.edges, h2.edges))
    return specs


def canonical_spec(delta: int, n1: int) -> ODeltaSpec:
    """The ODeltaSpec with H1 a single cycle and H2 the canonical regular graph."""
    check_parameters(delta, n1)
    h1 = SimpleGraph(n1, [(min(i, (i + 1) % n1), max(i, (i + 1) % n1)) for i in range(n1)])
    h2 = canonical_regular_graph(delta - 1 - n1, delta - 2) if delta - 2 > 0 else SimpleGraph(0)
    spec = ODeltaSpec(delta, n1, h1.edges, h2.edges)
    spec.validate()
    return spec

"""Multifans, Kierstead paths, pseudo-multifans, rotations and lollipops.

Everything here is a snapshot over one coloring: the structures hold the
coloring they were built against and never mutate it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterator, Sequence

from .coloring import (
    ColoringError,
    PartialColoring,
    chain_through,
    is_stable,
    linked,
    mask_to_set,
    permute_colors,
    shift,
    validate_proper,
)
from .graph import Edge, SimpleGraph, edge_key
from .oracle import DeltaColoringError, delta_edge_color, find_edge_coloring
from .script import RecolorScript, SetEdge, Shift, apply_script

__all__ = [
    "ColoringTriple",
    "Multifan",
    "TypicalMultifan",
    "InducingStructure",
    "KiersteadPath",
    "PseudoMultifan",
    "MaxFanCertificate",
    "Rotation",
    "RotationReport",
    "Lollipop",
    "shift",
]


class FanError(ValueError):
    pass


class NotTypicalError(FanError):
    pass


# -- coloring triples ------------------------------------------------------------


@dataclass(frozen=True)
class ColoringTriple:
    """(G, r s1, phi): r in V_Delta, s1 in N_{Delta-1}(r), phi a Delta-coloring of G - r s1."""

    graph: SimpleGraph
    r: int
    s1: int
    coloring: PartialColoring

    @property
    def delta(self) -> int:
        return self.graph.max_degree

    def violations(self) -> list[str]:
        g, r, s1, c = self.graph, self.r, self.s1, self.coloring
        out = []
        if g.degree(r) != self.delta:
            out.append(f"d(r)={g.degree(r)} != Delta={self.delta}")
        if not g.has_edge(r, s1):
            out.append("r s1 is not an edge")
        elif g.degree(s1) != self.delta - 1:
            out.append(f"d(s1)={g.degree(s1)} != Delta-1")
        if c.graph != g or c.k != self.delta:
            out.append("coloring is not a Delta-coloring of this graph")
        elif set(c.uncolored_edges) != {edge_key(r, s1)}:
            out.append(f"uncolored edges {c.uncolored_edges} != {{r s1}}")
        elif not validate_proper(c):
            out.append("coloring is not proper")
        return out

    def validate(self) -> None:
        bad = self.violations()
        if bad:
            raise FanError("invalid coloring triple: " + "; ".join(bad))

    def with_coloring(self, c: PartialColoring) -> "ColoringTriple":
        return ColoringTriple(self.graph, self.r, self.s1, c)


def delta_coloring_minus_edge(g: SimpleGraph, r: int, s: int, node_budget: int = 10**7) -> PartialColoring | None:
    """A Delta-coloring of G - rs as a PartialColoring of G with rs uncolored (None if none exists)."""
    h = g.remove_edge(r, s)
    if h.max_degree == g.max_degree:
        try:
            hc = delta_edge_color(h, seed=0, node_budget=node_budget)
        except DeltaColoringError:
            return None
        return PartialColoring(g, g.max_degree, hc.edge_colors, max_uncolored=1)
    found, _ = find_edge_coloring(h, g.max_degree, node_budget)
    if found is None:
        return None
    return PartialColoring(g, g.max_degree, found, max_uncolored=1)


def random_kempe_walk(
    c: PartialColoring,
    rng: random.Random,
    steps: int,
    avoid_endpoints: frozenset[int] = frozenset(),
    avoid_edges: frozenset[Edge] = frozenset(),
) -> PartialColoring:
    """Apply up to ``steps`` random Kempe changes on a copy of ``c``.

    Chains with a path endpoint in ``avoid_endpoints`` or using an edge of
    ``avoid_edges`` are skipped.
    """
    out = c.copy()
    verts = list(range(c.graph.n))
    if c.k < 2 or not verts:
        return out
    for _ in range(steps):
        x = rng.choice(verts)
        a, b = rng.sample(range(1, c.k + 1), 2)
        ch = chain_through(out, x, a, b)
        if not ch.edges:
            continue
        if ch.kind == "path" and (ch.vertices[0] in avoid_endpoints or ch.vertices[-1] in avoid_endpoints):
            continue
        if avoid_edges and any(e in avoid_edges for e in ch.edges):
            continue
        out.swap_chain(ch)
    return out


# -- multifans ---------------------------------------------------------------------


@dataclass(frozen=True)
class Multifan:
    triple: ColoringTriple
    sequence: tuple[int, ...]

    @property
    def r(self) -> int:
        return self.triple.r

    @property
    def coloring(self) -> PartialColoring:
        return self.triple.coloring

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.r,) + self.sequence

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(edge_key(self.r, s) for s in self.sequence)

    def s(self, i: int) -> int:
        """1-indexed s_i."""
        return self.sequence[i - 1]

    def __len__(self) -> int:
        return len(self.sequence)

    def missing_mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= self.coloring.missing_mask(v)
        return m

    def missing_colors(self) -> frozenset[int]:
        return mask_to_set(self.missing_mask())

    def owner(self, color: int) -> int | None:
        """phi-bar^{-1}_F(color): the vertex of F missing ``color`` (first one if several)."""
        for v in self.vertices:
            if self.coloring.missing_mask(v) >> color & 1:
                return v
        return None

    def edge_color(self, v: int) -> int | None:
        return self.coloring.color(self.r, v)

    def to_dict(self) -> dict:
        c = self.coloring
        return {
            "center": self.r,
            "sequence": list(self.sequence),
            "edge_colors": [c.color(self.r, s) for s in self.sequence],
            "missing": {str(v): sorted(c.missing(v)) for v in self.vertices},
        }

    def to_dot(self) -> str:
        return fan_dot(self.coloring, self.r, self.sequence)


def fan_dot(c: PartialColoring, r: int, sequence: Sequence[int], extra: Sequence[Edge] = ()) -> str:
    """Star drawing: center, fan edges labeled by color (dashed if uncolored), missing colors as xlabels."""
    lines = ["graph fan {", f'  {r} [shape=doublecircle, xlabel="{sorted(c.missing(r))}"];']
    for s in sequence:
        lines.append(f'  {s} [xlabel="{sorted(c.missing(s))}"];')
    for u, v in [(r, s) for s in sequence] + list(extra):
        col = c.color(u, v)
        style = 'style=dashed' if col is None else f'label="{col}"'
        lines.append(f"  {u} -- {v} [{style}];")
    lines.append("}")
    return "\n".join(lines)


def grow_multifan(t: ColoringTriple) -> Multifan:
    """Greedy closure: append the lowest-index eligible (Delta-1)-neighbor until none is left."""
    c, g, r = t.coloring, t.graph, t.r
    low = t.delta - 1
    seq = [t.s1]
    used = {t.s1}
    union = c.missing_mask(t.s1)
    while True:
        nxt = None
        for w in g.neighbors(r):
            if w in used or g.degree(w) != low:
                continue
            cw = c.color(r, w)
            if cw is not None and union >> cw & 1:
                nxt = w
                break
        if nxt is None:
            break
        seq.append(nxt)
        used.add(nxt)
        union |= c.missing_mask(nxt)
    return Multifan(t, tuple(seq))


def multifan_violations(f: Multifan, assumption_31: bool = True) -> list[str]:
    t = f.triple
    c, g, r = t.coloring, t.graph, t.r
    out = []
    seq = f.sequence
    if not seq:
        return ["empty fan"]
    if seq[0] != t.s1:
        out.append("first fan vertex is not s1")
    if len(set(seq)) != len(seq) or r in seq:
        out.append("repeated vertex")
    if c.color(r, seq[0]) is not None:
        out.append("r s1 is colored")
    union = 0
    for i, s in enumerate(seq):
        if not g.has_edge(r, s):
            out.append(f"s_{i + 1}={s} is not adjacent to r")
            continue
        if assumption_31 and g.degree(s) != t.delta - 1:
            out.append(f"s_{i + 1}={s} has degree {g.degree(s)} != Delta-1")
        if i > 0:
            col = c.color(r, s)
            if col is None or not union >> col & 1:
                out.append(f"color of r s_{i + 1} is missing at no earlier fan vertex")
        union |= c.missing_mask(s)
    return out


def validate_multifan(f: Multifan) -> bool:
    return not multifan_violations(f)


def is_elementary_mask(c: PartialColoring, vertices: Sequence[int]) -> bool:
    seen = 0
    for v in vertices:
        m = c.missing_mask(v)
        if seen & m:
            return False
        seen |= m
    return True


def is_elementary(c: PartialColoring, vertices) -> bool:
    """Missing-color sets pairwise disjoint."""
    return is_elementary_mask(c, list(vertices))


# -- inducing structure -------------------------------------------------------------


@dataclass(frozen=True)
class InducingStructure:
    """Inducer and position of every missing color of an elementary multifan.

    Colors missed at s1 are their own inducers at position 0; a color missed
    at the i-th vertex of an inducing sequence sits at position i.  Colors
    missed at the center have no inducer.
    """

    inducer: dict[int, int | None]
    position: dict[int, int]
    vertex_of: dict[int, int]
    parent_color: dict[int, int | None]

    def is_inducing(self, color: int, root: int) -> bool:
        return self.inducer.get(color) == root

    def precedes(self, a: int, b: int) -> bool:
        """a < b in the inducing order; False across different sequences."""
        if a == b or self.inducer.get(a) is None or self.inducer.get(a) != self.inducer.get(b):
            return False
        # b's ancestry must pass through a's vertex (or a is the root)
        if self.position[a] >= self.position[b]:
            return False
        x: int | None = b
        while x is not None:
            if self.vertex_of.get(x) == self.vertex_of.get(a) and self.position[x] == self.position[a]:
                return True
            x = self.parent_color.get(x)
        return self.position[a] == 0 and self.inducer[b] == a

    def comparable(self, a: int, b: int) -> bool:
        return self.precedes(a, b) or self.precedes(b, a)

    def inducing_colors(self, root: int) -> list[int]:
        return sorted((c for c, r in self.inducer.items() if r == root), key=lambda c: (self.position[c], c))

    def is_last(self, color: int) -> bool:
        root = self.inducer.get(color)
        if root is None:
            return False
        return not any(self.precedes(color, d) for d in self.inducing_colors(root))

    def last_inducing(self, root: int) -> list[int]:
        return [c for c in self.inducing_colors(root) if self.is_last(c)]


def inducing_structure(f: "Multifan | TypicalMultifan") -> InducingStructure:
    if isinstance(f, TypicalMultifan):
        f = f.base
    c = f.coloring
    if not is_elementary(c, f.vertices):
        raise FanError("inducing structure needs an elementary fan")
    inducer: dict[int, int | None] = {}
    position: dict[int, int] = {}
    vertex_of: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for col in c.missing(f.r):
        inducer[col], position[col], vertex_of[col], parent[col] = None, 0, f.r, None
    s1 = f.sequence[0]
    for col in c.missing(s1):
        inducer[col], position[col], vertex_of[col], parent[col] = col, 0, s1, None
    by_edge_color = {c.color(f.r, s): s for s in f.sequence[1:]}
    frontier = sorted(c.missing(s1))
    while frontier:
        nxt = []
        for col in frontier:
            s = by_edge_color.get(col)
            if s is None:
                continue
            for m in sorted(c.missing(s)):
                inducer[m] = inducer[col]
                position[m] = position[col] + 1
                vertex_of[m] = s
                parent[m] = col
                nxt.append(m)
        frontier = nxt
    return InducingStructure(inducer, position, vertex_of, parent)


# -- typical form ---------------------------------------------------------------------


@dataclass(frozen=True)
class TypicalMultifan:
    base: Multifan
    alpha: int
    beta: int

    @property
    def coloring(self) -> PartialColoring:
        return self.base.coloring

    @property
    def r(self) -> int:
        return self.base.r

    @property
    def delta(self) -> int:
        return self.base.triple.delta

    def s(self, i: int) -> int:
        return self.base.s(i)

    @property
    def is_two_inducing(self) -> bool:
        return self.alpha == self.beta

    def violations(self) -> list[str]:
        return typical_violations(self.base, self.alpha, self.beta)


def typical_violations(f: Multifan, alpha: int, beta: int) -> list[str]:
    c = f.coloring
    D = f.triple.delta
    out = []
    if beta != len(f.sequence):
        out.append(f"beta={beta} != p={len(f.sequence)}")
    if not 1 <= alpha <= beta:
        out.append(f"alpha={alpha} outside [1, beta]")
        return out
    if c.missing(f.r) != {1}:
        out.append(f"missing(r)={sorted(c.missing(f.r))} != {{1}}")
    if c.missing(f.s(1)) != {2, D}:
        out.append(f"missing(s1)={sorted(c.missing(f.s(1)))} != {{2, {D}}}")
    for i in range(2, beta + 1):
        s = f.s(i)
        if i == alpha + 1:
            want_edge, want_miss = D, alpha + 2
        else:
            want_edge, want_miss = i, i + 1
        if c.color(f.r, s) != want_edge:
            out.append(f"color(r s_{i})={c.color(f.r, s)} != {want_edge}")
        if c.missing(s) != {want_miss}:
            out.append(f"missing(s_{i})={sorted(c.missing(s))} != {{{want_miss}}}")
    return out


def normalize_typical(f: Multifan, two: int | None = None) -> tuple[TypicalMultifan, dict[int, int], tuple[int, ...]]:
    """Rename colors and reorder s_2..s_p so the fan is typical.

    Returns the typical fan (over a color-permuted copy of the coloring), the
    color map old -> new, and the new vertex order.  Of the two colors missed
    at s1, the one heading the longer inducing run becomes 2 (ties: the
    smaller original color) unless ``two`` names it explicitly.
    """
    c = f.coloring
    D = f.triple.delta
    if not is_elementary(c, f.vertices):
        raise NotTypicalError("fan is not elementary")
    miss_r = c.missing(f.r)
    miss_s1 = sorted(c.missing(f.s(1)))
    if len(miss_r) != 1 or len(miss_s1) != 2:
        raise NotTypicalError("typical form needs |missing(r)|=1 and |missing(s1)|=2")
    for s in f.sequence[1:]:
        if len(c.missing(s)) != 1:
            raise NotTypicalError(f"fan vertex {s} does not miss exactly one color")
    by_edge_color = {c.color(f.r, s): s for s in f.sequence[1:]}

    def run(root: int) -> list[int]:
        out, col = [], root
        while col in by_edge_color:
            s = by_edge_color[col]
            out.append(s)
            col = c.the_missing(s)
        return out

    runs = {col: run(col) for col in miss_s1}
    if two is None:
        two, big = sorted(miss_s1, key=lambda col: (-len(runs[col]), col))
    elif two in miss_s1:
        big = miss_s1[0] if miss_s1[1] == two else miss_s1[1]
    else:
        raise NotTypicalError(f"color {two} is not missing at s1")
    run_a, run_b = runs[two], runs[big]
    if len(run_a) + len(run_b) + 1 != len(f.sequence):
        raise NotTypicalError("fan vertices are not covered by the two inducing runs")
    alpha = 1 + len(run_a)
    beta = alpha + len(run_b)
    perm = {next(iter(miss_r)): 1, two: 2, big: D}
    for i, s in enumerate(run_a, start=2):
        perm[c.the_missing(s)] = i + 1
    for i, s in enumerate(run_b, start=alpha + 1):
        perm[c.the_missing(s)] = i + 1
    targets = set(perm.values())
    if len(targets) != len(perm):
        raise NotTypicalError("color renaming collides")
    rest_targets = [x for x in range(1, D + 1) if x not in targets]
    rest_sources = [x for x in range(1, D + 1) if x not in perm]
    perm.update(zip(rest_sources, rest_targets))
    order = (f.s(1),) + tuple(run_a) + tuple(run_b)
    newc = permute_colors(c, perm)
    fan = Multifan(f.triple.with_coloring(newc), order)
    tf = TypicalMultifan(fan, alpha, beta)
    bad = tf.violations()
    if bad:
        raise NotTypicalError("; ".join(bad))
    return tf, perm, order


# -- Kierstead paths -----------------------------------------------------------------------


class KiersteadPathError(FanError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"edge {index}: {reason}")
        self.index = index


@dataclass(frozen=True)
class KiersteadPath:
    vertices: tuple[int, ...]
    coloring: PartialColoring

    @property
    def edges(self) -> tuple[Edge, ...]:
        v = self.vertices
        return tuple(edge_key(v[i], v[i + 1]) for i in range(len(v) - 1))

    def to_dict(self) -> dict:
        c = self.coloring
        return {
            "vertices": list(self.vertices),
            "edge_colors": [c.color(*e) for e in self.edges],
            "missing": {str(v): sorted(c.missing(v)) for v in self.vertices},
        }


def validate_kierstead_path(c: PartialColoring, vertices: Sequence[int]) -> KiersteadPath:
    vs = tuple(vertices)
    if len(vs) < 2:
        raise KiersteadPathError(0, "need at least two vertices")
    if len(set(vs)) != len(vs):
        raise KiersteadPathError(0, "repeated vertex")
    g = c.graph
    for i in range(len(vs) - 1):
        if not g.has_edge(vs[i], vs[i + 1]):
            raise KiersteadPathError(i, f"{vs[i]}{vs[i + 1]} is not an edge")
    if c.color(vs[0], vs[1]) is not None:
        raise KiersteadPathError(0, "v0 v1 must be the uncolored edge")
    union = c.missing_mask(vs[0])
    for i in range(1, len(vs) - 1):
        col = c.color(vs[i], vs[i + 1])
        if col is None or not union >> col & 1:
            raise KiersteadPathError(i, f"color {col} of v{i}v{i + 1} is missing at no earlier vertex")
        union |= c.missing_mask(vs[i])
    return KiersteadPath(vs, c)


def build_kierstead_path(t: ColoringTriple, v2: int, v3: int) -> KiersteadPath:
    return validate_kierstead_path(t.coloring, (t.r, t.s1, v2, v3))


def kierstead_paths(c: PartialColoring, v0: int, v1: int) -> Iterator[KiersteadPath]:
    """All 4-vertex Kierstead paths starting with the uncolored edge v0 v1."""
    g = c.graph
    m0 = c.missing_mask(v0)
    m01 = m0 | c.missing_mask(v1)
    for v2 in g.neighbors(v1):
        if v2 == v0:
            continue
        a = c.color(v1, v2)
        if a is None or not m0 >> a & 1:
            continue
        for v3 in g.neighbors(v2):
            if v3 in (v0, v1):
                continue
            b = c.color(v2, v3)
            if b is not None and m01 >> b & 1:
                yield KiersteadPath((v0, v1, v2, v3), c)


# -- maximum multifans ----------------------------------------------------------------------


@dataclass(frozen=True)
class MaxFanCertificate:
    """How far the search for a maximum multifan at r got.

    ``method`` is "exhaustive" (every coloring of every G - r s examined),
    "upper_bound" (a fan covering all of N_{Delta-1}[r] was found) or
    "lower_bound" (budgeted search; the size is only a lower bound).
    """

    center: int
    size: int
    upper_bound: int
    method: str
    colorings_examined: int
    edges_tried: tuple[int, ...]

    @property
    def exact(self) -> bool:
        return self.method in ("exhaustive", "upper_bound")

    @property
    def exhaustive(self) -> bool:
        return self.method == "exhaustive"

    def to_dict(self) -> dict:
        return {
            "center": self.center,
            "size": self.size,
            "upper_bound": self.upper_bound,
            "method": self.method,
            "exact": self.exact,
            "colorings_examined": self.colorings_examined,
            "edges_tried": list(self.edges_tried),
        }


def enumerate_delta_colorings(
    g: SimpleGraph, r: int, s: int, limit: int
) -> Iterator[PartialColoring]:
    """Delta-colorings of G - rs up to renaming of colors (at most ``limit`` + 1 yielded)."""
    h = g.remove_edge(r, s)
    k = g.max_degree
    edges = sorted(h.edges, key=lambda e: (-min(h.degree(e[0]), h.degree(e[1])), e))
    m = len(edges)
    used = [0] * h.n
    color = [0] * m
    full = ((1 << (k + 1)) - 1) & ~1
    count = [0]
    highest = [0]

    def rec(i: int) -> Iterator[dict]:
        if i == m:
            yield {edges[j]: color[j] for j in range(m)}
            return
        u, v = edges[i]
        avail = full & ~(used[u] | used[v])
        top = highest[0]
        while avail:
            b = avail & -avail
            avail ^= b
            col = b.bit_length() - 1
            if col > top + 1:
                break
            color[i] = col
            used[u] |= b
            used[v] |= b
            prev = highest[0]
            highest[0] = max(prev, col)
            yield from rec(i + 1)
            highest[0] = prev
            used[u] &= ~b
            used[v] &= ~b
        color[i] = 0

    for found in rec(0):
        count[0] += 1
        yield PartialColoring(g, k, found, max_uncolored=1)
        if count[0] > limit:
            return


def search_maximum_multifan(
    g: SimpleGraph,
    r: int,
    budget: int = 200,
    seed: int = 0,
    exhaustive_limit: int = 0,
) -> tuple[Multifan, MaxFanCertificate]:
    """Largest multifan at r found over s in N_{Delta-1}(r) and a budget of colorings.

    ``budget`` random Kempe perturbations are tried per start coloring;
    ``budget=0`` returns the greedy fan of the first start coloring.  With
    ``exhaustive_limit > 0`` every coloring of every G - rs is enumerated
    (modulo color renaming) as long as the total stays within the limit,
    which makes the certificate exhaustive.
    """
    delta = g.max_degree
    lows = g.neighbors_of_degree(r, delta - 1)
    if g.degree(r) != delta or not lows:
        raise FanError(f"{r} is not a Delta-vertex with a (Delta-1)-neighbor")
    upper = len(lows) + 1
    rng = random.Random(seed)
    best: Multifan | None = None
    examined = 0
    tried = []

    def consider(t: ColoringTriple) -> bool:
        nonlocal best, examined
        examined += 1
        f = grow_multifan(t)
        if best is None or len(f.vertices) > len(best.vertices):
            best = f
        return len(best.vertices) >= upper

    if exhaustive_limit > 0:
        total = 0
        complete = True
        for s in lows:
            tried.append(s)
            for c in enumerate_delta_colorings(g, r, s, exhaustive_limit - total):
                total += 1
                if total > exhaustive_limit:
                    complete = False
                    break
                consider(ColoringTriple(g, r, s, c))
            if not complete:
                break
        if best is not None and complete:
            return best, MaxFanCertificate(r, len(best.vertices), upper, "exhaustive", examined, tuple(tried))

    for s in lows:
        if s not in tried:
            tried.append(s)
        base = delta_coloring_minus_edge(g, r, s)
        if base is None:
            continue
        if consider(ColoringTriple(g, r, s, base)):
            break
        if budget == 0:
            break
        done = False
        for _ in range(budget):
            c = random_kempe_walk(base, rng, rng.randint(1, 20))
            if consider(ColoringTriple(g, r, s, c)):
                done = True
                break
        if done:
            break
    if best is None:
        raise FanError(f"no Delta-coloring of G - r s exists for any s at r={r}")
    method = "upper_bound" if len(best.vertices) >= upper else "lower_bound"
    return best, MaxFanCertificate(r, len(best.vertices), upper, method, examined, tuple(tried))


# -- pseudo-multifans -------------------------------------------------------------------------


@dataclass(frozen=True)
class PseudoMultifan:
    triple: ColoringTriple
    sequence: tuple[int, ...]
    t: int
    certificate: MaxFanCertificate | None = None

    @property
    def r(self) -> int:
        return self.triple.r

    @property
    def coloring(self) -> PartialColoring:
        return self.triple.coloring

    @property
    def p(self) -> int:
        return len(self.sequence)

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.r,) + self.sequence

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(edge_key(self.r, s) for s in self.sequence)

    @property
    def fan(self) -> Multifan:
        return Multifan(self.triple, self.sequence[: self.t])

    @property
    def rest(self) -> tuple[int, ...]:
        return self.sequence[self.t:]

    def to_dict(self) -> dict:
        c = self.coloring
        return {
            "center": self.r,
            "sequence": list(self.sequence),
            "t": self.t,
            "edge_colors": [c.color(self.r, s) for s in self.sequence],
            "missing": {str(v): sorted(c.missing(v)) for v in self.vertices},
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }

    def to_dot(self) -> str:
        return fan_dot(self.coloring, self.r, self.sequence)


def pseudo_multifan_from_fan(f: Multifan, cert: MaxFanCertificate | None) -> PseudoMultifan:
    """Extend a fan by the rest of N_{Delta-1}(r) in increasing vertex order."""
    g, r = f.triple.graph, f.r
    rest = [s for s in g.neighbors_of_degree(r, f.triple.delta - 1) if s not in f.sequence]
    return PseudoMultifan(f.triple, f.sequence + tuple(rest), len(f.sequence), cert)


@dataclass
class PseudoFanReport:
    p1: str  # "certified" | "lower_bound" | "missing" | "not_a_fan"
    elementary_base: bool
    samples: int
    stable_samples: int
    counterexample: PartialColoring | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.p1 == "certified" and self.elementary_base and self.counterexample is None

    def to_dict(self) -> dict:
        return {
            "p1": self.p1,
            "elementary_base": self.elementary_base,
            "samples": self.samples,
            "stable_samples": self.stable_samples,
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
            "notes": self.notes,
            "passed": self.passed,
        }


def sample_stable_colorings(
    c: PartialColoring,
    vertices: Sequence[int],
    edges: Sequence[Edge],
    count: int,
    rng: random.Random,
    max_swaps: int = 20,
) -> Iterator[PartialColoring]:
    """Random (T, c)-stable colorings reached by Kempe changes that avoid T's endpoints and edges."""
    vs = frozenset(vertices)
    es = frozenset(edges)
    for _ in range(count):
        c2 = random_kempe_walk(c, rng, rng.randint(1, max_swaps), avoid_endpoints=vs, avoid_edges=es)
        if is_stable(c2, c, vs, es):
            yield c2


def validate_pseudo_multifan(
    s: PseudoMultifan, c: PartialColoring | None = None, sample_count: int = 100, seed: int = 0
) -> PseudoFanReport:
    c = c if c is not None else s.coloring
    t = s.triple.with_coloring(c)
    f = Multifan(t, s.sequence[: s.t])
    notes = []
    if multifan_violations(f):
        p1 = "not_a_fan"
        notes.extend(multifan_violations(f))
    elif s.certificate is None:
        p1 = "missing"
    elif not s.certificate.exact:
        p1 = "lower_bound"
    elif s.certificate.size != len(f.vertices):
        p1 = "not_maximum"
        notes.append(f"fan has {len(f.vertices)} vertices, maximum is {s.certificate.size}")
    else:
        p1 = "certified"
    if len(set(s.sequence)) != len(s.sequence) or any(not t.graph.has_edge(s.r, v) for v in s.sequence):
        notes.append("sequence has repeated vertices or non-neighbors of r")
        return PseudoFanReport(p1, False, 0, 0, None, notes)
    elem = is_elementary(c, s.vertices)
    report = PseudoFanReport(p1, elem, 0, 0, None if elem else c, notes)
    if not elem:
        return report
    rng = random.Random(seed)
    report.samples = sample_count
    for c2 in sample_stable_colorings(c, f.vertices, f.edges, sample_count, rng):
        report.stable_samples += 1
        if not is_elementary(c2, s.vertices):
            report.counterexample = c2
            break
    return report


# -- 2-inducing transformation ------------------------------------------------------------------


@dataclass(frozen=True)
class TwoInducingResult:
    pseudo: PseudoMultifan
    coloring: PartialColoring
    forward: RecolorScript
    inverse: RecolorScript
    typical: TypicalMultifan | None

    def __iter__(self):
        return iter((self.pseudo, self.coloring))


def make_2_inducing(s: PseudoMultifan, c: PartialColoring | None = None) -> TwoInducingResult:
    """Turn a typical pseudo-multifan into a 2-inducing one on the same vertex set.

    The embedded fan F(r, s1:s_alpha:s_beta) is rebuilt at the uncolored edge
    r s_beta: uncolor r s_beta, shift s_{alpha+1}..s_{beta-1}, color r s1 by
    Delta.  The new fan order is s_beta, s_{beta-1}, ..., s_{alpha+1}, s1,
    s2, ..., s_alpha.  ``inverse`` undoes the three steps.
    """
    c = c if c is not None else s.coloring
    t = s.triple.with_coloring(c)
    f = Multifan(t, s.sequence[: s.t])
    D = t.delta
    # locate alpha from the typical pattern
    beta = s.t
    alpha = beta
    for i in range(2, beta + 1):
        if c.color(t.r, f.s(i)) == D:
            alpha = i - 1
            break
    bad = typical_violations(f, alpha, beta)
    if bad:
        raise NotTypicalError("; ".join(bad))
    if alpha == beta:
        return TwoInducingResult(s.__class__(t, s.sequence, s.t, s.certificate), c, RecolorScript(), RecolorScript(), TypicalMultifan(f, alpha, beta))
    r = t.r
    s_beta = f.s(beta)
    run = tuple(f.s(i) for i in range(alpha + 1, beta))
    old_beta_color = c.color(r, s_beta)
    forward = RecolorScript((
        SetEdge((r, s_beta), None, expect=old_beta_color),
        Shift(r, run),
        SetEdge((r, f.s(1)), D),
    ))
    inverse = RecolorScript((
        SetEdge((r, f.s(1)), None, expect=D),
        Shift(r, run),
        SetEdge((r, s_beta), old_beta_color),
    ))
    c2 = apply_script(c, forward)
    new_order = (s_beta,) + tuple(reversed(run)) + tuple(f.s(i) for i in range(1, alpha + 1))
    t2 = ColoringTriple(t.graph, r, s_beta, c2)
    f2 = Multifan(t2, new_order)
    if multifan_violations(f2):
        raise FanError("transformed sequence is not a multifan: " + "; ".join(multifan_violations(f2)))
    s2 = PseudoMultifan(t2, new_order + s.sequence[s.t:], s.t, s.certificate)
    try:
        tf, _, _ = normalize_typical(f2)
    except NotTypicalError:
        tf = None
    return TwoInducingResult(s2, c2, forward, inverse, tf)


# -- rotations ---------------------------------------------------------------------------------

PLAIN, STABLE, NEAR_STABLE = "plain", "stable", "near_stable"


@dataclass(frozen=True)
class Rotation:
    vertices: tuple[int, ...]
    flavor: str = PLAIN

    def __len__(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "flavor": self.flavor}


def rotation_violations(
    rot: Rotation, c: PartialColoring, r: int, alpha: int | None = None, beta: int | None = None
) -> list[str]:
    w = rot.vertices
    out = []
    t = len(w)
    if t == 0:
        return ["empty rotation"]
    if len(set(w)) != t:
        out.append("repeated vertex")
    if not is_elementary(c, w):
        out.append("vertex set is not elementary")
    miss = {}
    for v in w:
        try:
            miss[v] = c.the_missing(v)
        except ColoringError as exc:
            out.append(str(exc))
    if out:
        return out
    D = c.k
    if rot.flavor == NEAR_STABLE:
        for i in range(t - 1):
            if c.color(r, w[i + 1]) != miss[w[i]]:
                out.append(f"color(r w_{i + 2}) != missing(w_{i + 1})")
        if alpha is not None and miss[w[-1]] != alpha + 1:
            out.append("missing(w_t) != alpha+1")
        check = w[:-1]
    else:
        for i in range(t):
            if c.color(r, w[i]) != miss[w[i - 1]]:
                out.append(f"color(r w_{i + 1}) != missing(w_{i if i else t})")
        check = w
    if rot.flavor in (STABLE, NEAR_STABLE):
        if beta is None:
            out.append("stable flavors need beta")
            return out
        for v in check:
            if not beta + 2 <= miss[v] <= D - 1:
                out.append(f"missing({v})={miss[v]} outside [beta+2, Delta-1]")
            if not linked(c, r, v, 1, miss[v]):
                out.append(f"r and {v} are not (1,{miss[v]})-linked")
    return out


@dataclass
class RotationReport:
    rotations: list[Rotation]
    ok: bool
    unresolved: tuple[int, ...] = ()
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "rotations": [r.to_dict() for r in self.rotations],
            "unresolved": list(self.unresolved),
            "reason": self.reason,
        }


def successor_map(c: PartialColoring, r: int, vertices: Sequence[int]) -> tuple[dict[int, int], list[str]]:
    """w -> the vertex of ``vertices`` whose edge to r carries missing(w)."""
    by_color = {c.color(r, v): v for v in vertices}
    succ, problems = {}, []
    for w in vertices:
        try:
            m = c.the_missing(w)
        except ColoringError as exc:
            problems.append(str(exc))
            continue
        if m in by_color:
            succ[w] = by_color[m]
        else:
            problems.append(f"no vertex of the set has edge color {m} (missing at {w})")
    return succ, problems


class RotationStructureError(FanError):
    def __init__(self, report: RotationReport):
        super().__init__(f"successor map is not a permutation: {report.reason}")
        self.report = report


def find_rotations(s: PseudoMultifan, c: PartialColoring | None = None, typical: TypicalMultifan | None = None) -> list[Rotation]:
    """Partition s_{t+1}..s_p into rotations; raises RotationStructureError with the report otherwise."""
    report = rotation_report(s, c, typical)
    if not report.ok:
        raise RotationStructureError(report)
    return report.rotations


def rotation_report(s: PseudoMultifan, c: PartialColoring | None = None, typical: TypicalMultifan | None = None) -> RotationReport:
    """Partition s_{t+1}..s_p into rotations via the cycles of the successor map."""
    c = c if c is not None else s.coloring
    D = s.triple.delta
    if s.p != D - 2:
        raise FanError(f"find_rotations needs p = Delta-2 = {D - 2}, got {s.p}")
    rest = list(s.rest)
    if not rest:
        return RotationReport([], True)
    succ, problems = successor_map(c, s.r, rest)
    # cycles of the functional graph
    onto = sorted(succ.values())
    rotations = []
    on_cycle: set[int] = set()
    for start in rest:
        if start in on_cycle or start not in succ:
            continue
        path, pos = [], {}
        x: int | None = start
        while x is not None and x not in pos and x not in on_cycle:
            pos[x] = len(path)
            path.append(x)
            x = succ.get(x)
        if x is not None and x in pos:
            cyc = path[pos[x]:]
            on_cycle.update(cyc)
            # w_l follows w_{l-1} when color(r w_l) = missing(w_{l-1}), i.e. w_l = succ(w_{l-1})
            i0 = cyc.index(min(cyc))
            cyc = cyc[i0:] + cyc[:i0]
            rotations.append(Rotation(tuple(cyc), PLAIN))
    unresolved = tuple(sorted(set(rest) - on_cycle))
    ok = not unresolved and not problems and len(onto) == len(set(onto))
    reason = "; ".join(problems) if problems else ("vertices off every cycle" if unresolved else "")
    if typical is not None and ok:
        classified = []
        for rot in rotations:
            stable = Rotation(rot.vertices, STABLE)
            if not rotation_violations(stable, c, s.r, typical.alpha, typical.beta):
                classified.append(stable)
            else:
                classified.append(rot)
        rotations = classified
    return RotationReport(rotations, ok, unresolved, reason)


# -- lollipops -----------------------------------------------------------------------------------


class LollipopError(FanError):
    pass


@dataclass(frozen=True)
class Lollipop:
    fan: TypicalMultifan
    u: int
    x: int

    @property
    def coloring(self) -> PartialColoring:
        return self.fan.coloring

    @property
    def ru_is_alpha_plus_1(self) -> bool:
        return self.coloring.color(self.fan.r, self.u) == self.fan.alpha + 1

    @property
    def x_misses_alpha_plus_1(self) -> bool:
        return self.coloring.missing(self.x) == {self.fan.alpha + 1}

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.fan.base.vertices + (self.u, self.x)

    @property
    def edges(self) -> tuple[Edge, ...]:
        r = self.fan.r
        return self.fan.base.edges + (edge_key(r, self.u), edge_key(self.u, self.x))

    def to_dict(self) -> dict:
        c = self.coloring
        return {
            "fan": self.fan.base.to_dict(),
            "alpha": self.fan.alpha,
            "beta": self.fan.beta,
            "u": self.u,
            "x": self.x,
            "color_ru": c.color(self.fan.r, self.u),
            "color_ux": c.color(self.u, self.x),
            "missing_x": sorted(c.missing(self.x)),
            "ru_is_alpha_plus_1": self.ru_is_alpha_plus_1,
            "x_misses_alpha_plus_1": self.x_misses_alpha_plus_1,
        }

    def to_dot(self) -> str:
        f = self.fan.base
        return fan_dot(self.coloring, f.r, f.sequence + (self.u,), extra=[(self.u, self.x)])


def build_lollipop(f: TypicalMultifan, u: int, x: int) -> Lollipop:
    g = f.base.triple.graph
    r = f.r
    D = f.delta
    if not g.has_edge(r, u) or g.degree(u) != D:
        raise LollipopError(f"u={u} is not in N_Delta(r)")
    if not g.has_edge(u, x) or g.degree(x) != D - 1:
        raise LollipopError(f"x={x} is not in N_(Delta-1)(u)")
    if x in f.base.sequence[: f.beta]:
        raise LollipopError(f"x={x} belongs to s_1..s_beta")
    if x == r or u in f.base.vertices:
        raise LollipopError("lollipop vertices must be distinct")
    return Lollipop(f, u, x)


def lollipops(f: TypicalMultifan) -> Iterator[Lollipop]:
    g = f.base.triple.graph
    D = f.delta
    for u in g.neighbors_of_degree(f.r, D):
        for x in g.neighbors_of_degree(u, D - 1):
            if x == f.r or x in f.base.sequence:
                continue
            yield Lollipop(f, u, x)


def first(it, n: int = 1):
    return list(islice(it, n))

"""Partial edge colorings with Kempe-chain operations.

Colors are ``1..k``.  Each vertex keeps a bitmask of present colors and a
``color -> neighbor`` map, so chain walks and swaps cost O(chain length).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .graph import Edge, SimpleGraph, edge_key
from .graph6 import from_graph6, to_graph6

_stamp = itertools.count(1)


class ColoringError(ValueError):
    pass


class ImproperColoringError(ColoringError):
    pass


class StaleChainError(ColoringError):
    pass


class SwapPreconditionError(ColoringError):
    pass


def mask_to_set(mask: int) -> frozenset[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return frozenset(out)


def set_to_mask(colors: Iterable[int]) -> int:
    m = 0
    for c in colors:
        m |= 1 << c
    return m


class PartialColoring:
    """An edge k-coloring of G minus its uncolored edges.

    ``max_uncolored`` bounds the number of uncolored edges accepted by
    :func:`validate_proper` (1 for the colorings the recoloring machinery
    works with; ``None`` while a colorer is still building).
    """

    def __init__(
        self,
        graph: SimpleGraph,
        k: int,
        edge_colors: Mapping[Edge, int | None] | None = None,
        max_uncolored: int | None = 1,
    ):
        self.graph = graph
        self.k = k
        self.full = ((1 << (k + 1)) - 1) & ~1
        self.max_uncolored = max_uncolored
        self._color: dict[Edge, int] = {}
        self._at: list[dict[int, int]] = [dict() for _ in range(graph.n)]
        self._present = [0] * graph.n
        self._uncolored: set[Edge] = set(graph.edges)
        for e, c in (edge_colors or {}).items():
            if c is not None:
                self.set_color(e[0], e[1], c)
        if max_uncolored is not None and len(self._uncolored) > max_uncolored:
            raise ColoringError(f"{len(self._uncolored)} uncolored edges, at most {max_uncolored} allowed")
        self.version = next(_stamp)

    # -- queries -----------------------------------------------------------

    def color(self, u: int, v: int) -> int | None:
        return self._color.get(edge_key(u, v))

    def neighbor_via(self, v: int, c: int) -> int | None:
        """The neighbor w with color(vw) == c, if any."""
        return self._at[v].get(c)

    def present_mask(self, v: int) -> int:
        return self._present[v]

    def missing_mask(self, v: int) -> int:
        return self.full & ~self._present[v]

    def present(self, v: int) -> frozenset[int]:
        return mask_to_set(self._present[v])

    def missing(self, v: int) -> frozenset[int]:
        return mask_to_set(self.full & ~self._present[v])

    def the_missing(self, v: int) -> int:
        """The single missing color at v; raises unless |missing(v)| == 1."""
        m = self.full & ~self._present[v]
        if m == 0 or m & (m - 1):
            raise ColoringError(f"vertex {v} misses {sorted(mask_to_set(m))}, not exactly one color")
        return m.bit_length() - 1

    @property
    def uncolored_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self._uncolored))

    @property
    def uncolored(self) -> Edge | None:
        if len(self._uncolored) > 1:
            raise ColoringError("more than one uncolored edge")
        return next(iter(self._uncolored), None)

    @property
    def edge_colors(self) -> dict[Edge, int]:
        return dict(self._color)

    def is_complete(self) -> bool:
        return not self._uncolored

    def colors_used(self) -> frozenset[int]:
        return frozenset(self._color.values())

    # -- mutation ----------------------------------------------------------

    def _touch(self) -> None:
        self.version = next(_stamp)

    def _raw_set(self, e: Edge, c: int) -> None:
        u, v = e
        self._color[e] = c
        self._at[u][c] = v
        self._at[v][c] = u
        self._present[u] |= 1 << c
        self._present[v] |= 1 << c
        self._uncolored.discard(e)

    def _raw_clear(self, e: Edge) -> int:
        u, v = e
        c = self._color.pop(e)
        del self._at[u][c]
        del self._at[v][c]
        self._present[u] &= ~(1 << c)
        self._present[v] &= ~(1 << c)
        self._uncolored.add(e)
        return c

    def set_color(self, u: int, v: int, c: int | None) -> None:
        """Recolor (or uncolor, with ``None``) edge uv, keeping the coloring proper."""
        e = edge_key(u, v)
        if not self.graph.has_edge(*e):
            raise ColoringError(f"{e} is not an edge")
        old = self._color.get(e)
        if c is not None:
            if not 1 <= c <= self.k:
                raise ColoringError(f"color {c} outside [1, {self.k}]")
            for x, y in ((e[0], e[1]), (e[1], e[0])):
                w = self._at[x].get(c)
                if w is not None and w != y:
                    raise ImproperColoringError(f"color {c} already present at {x} (edge {edge_key(x, w)})")
        if old is not None:
            self._raw_clear(e)
        if c is not None:
            self._raw_set(e, c)
        self._touch()

    def copy(self) -> "PartialColoring":
        new = PartialColoring.__new__(PartialColoring)
        new.graph = self.graph
        new.k = self.k
        new.full = self.full
        new.max_uncolored = self.max_uncolored
        new._color = dict(self._color)
        new._at = [dict(d) for d in self._at]
        new._present = list(self._present)
        new._uncolored = set(self._uncolored)
        new.version = self.version
        return new

    def swap_chain(self, chain: "Chain") -> None:
        """In-place Kempe change on ``chain``."""
        if chain.version != self.version:
            raise StaleChainError("chain was extracted from a different coloring state")
        a, b = chain.colors
        if a == b:
            return
        cleared = [(e, self._raw_clear(e)) for e in chain.edges]
        for e, c in cleared:
            self._raw_set(e, b if c == a else a)
        self._touch()

    # -- comparison / export --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PartialColoring)
            and self.graph == other.graph
            and self.k == other.k
            and self._color == other._color
        )

    def same_state(self, other: "PartialColoring") -> bool:
        """Bit-equal internal state, caches included."""
        return (
            self == other
            and self._present == other._present
            and self._at == other._at
            and self._uncolored == other._uncolored
        )

    def __repr__(self) -> str:
        return f"PartialColoring(k={self.k}, colored={len(self._color)}, uncolored={self.uncolored_edges})"

    def to_dict(self, include_graph: bool = False) -> dict:
        unc = self.uncolored_edges
        d = {
            "k": self.k,
            "uncolored": list(unc[0]) if len(unc) == 1 else (None if not unc else [list(e) for e in unc]),
            "edges": [[u, v, c] for (u, v), c in sorted(self._color.items())],
        }
        if include_graph:
            d["graph6"] = to_graph6(self.graph)
        return d

    def to_json(self, include_graph: bool = False) -> str:
        return json.dumps(self.to_dict(include_graph), sort_keys=True)


def coloring_from_dict(data: Mapping, graph: SimpleGraph | None = None) -> PartialColoring:
    """Load the JSON coloring schema; properness is validated on load."""
    if graph is None:
        if "graph6" not in data:
            raise ColoringError("no graph supplied and no graph6 field present")
        graph = from_graph6(data["graph6"])
    colors: dict[Edge, int] = {}
    for u, v, c in data["edges"]:
        e = edge_key(int(u), int(v))
        if e in colors:
            raise ColoringError(f"edge {e} listed twice")
        colors[e] = int(c)
    c = PartialColoring(graph, int(data["k"]), colors, max_uncolored=None)
    unc = data.get("uncolored")
    declared: set[Edge] = set()
    if unc:
        if isinstance(unc[0], (list, tuple)):
            declared = {edge_key(*e) for e in unc}
        else:
            declared = {edge_key(*unc)}
    if declared != set(c.uncolored_edges):
        raise ColoringError(f"declared uncolored {sorted(declared)} != actual {list(c.uncolored_edges)}")
    c.max_uncolored = max(1, len(declared))
    if not validate_proper(c):
        raise ImproperColoringError("loaded coloring is not proper")
    return c


def coloring_from_json(text: str, graph: SimpleGraph | None = None) -> PartialColoring:
    return coloring_from_dict(json.loads(text), graph)


def validate_proper(c: PartialColoring) -> bool:
    """Full rescan: properness plus consistency of the present/missing caches."""
    g = c.graph
    at: list[dict[int, int]] = [dict() for _ in range(g.n)]
    present = [0] * g.n
    for e, col in c._color.items():
        u, v = e
        if not g.has_edge(u, v) or u >= v:
            return False
        if not 1 <= col <= c.k:
            return False
        for x, y in ((u, v), (v, u)):
            if col in at[x]:
                return False
            at[x][col] = y
            present[x] |= 1 << col
    if present != c._present or at != c._at:
        return False
    if c._uncolored != set(g.edges) - set(c._color):
        return False
    if c.max_uncolored is not None and len(c._uncolored) > c.max_uncolored:
        return False
    return True


# -- chains ---------------------------------------------------------------------

PATH = "path"
CYCLE = "cycle"


@dataclass(frozen=True)
class Chain:
    """Snapshot of one (alpha, beta)-component.

    For a path queried at an endpoint, ``vertices`` starts there.  For an
    interior query it starts at the endpoint reached by walking from the query
    vertex toward its smaller neighbor.  Cycles start at the query vertex and
    proceed toward its smaller neighbor.
    """

    colors: tuple[int, int]
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    kind: str
    origin: int
    version: int

    @property
    def endpoints(self) -> tuple[int, int] | None:
        if self.kind != PATH:
            return None
        return self.vertices[0], self.vertices[-1]

    def __contains__(self, v: object) -> bool:
        return v in self.vertices

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def to_dot(self, c: PartialColoring | None = None) -> str:
        lines = [f'graph chain_{self.colors[0]}_{self.colors[1]} {{']
        for v in self.vertices:
            lines.append(f"  {v};")
        for u, v in self.edges:
            col = c.color(u, v) if c is not None else None
            label = f' [label="{col}"]' if col is not None else ""
            lines.append(f"  {u} -- {v}{label};")
        lines.append("}")
        return "\n".join(lines)


def _walk(c: PartialColoring, start: int, first: int, other: int) -> tuple[list[int], bool]:
    """Follow alternating colors from ``start`` beginning with ``first``.

    Returns the visited vertices (start included) and whether the walk
    closed back on ``start``.
    """
    seq = [start]
    cur, col, nxt_col = start, first, other
    at = c._at
    while True:
        w = at[cur].get(col)
        if w is None:
            return seq, False
        if w == start:
            return seq, True
        seq.append(w)
        cur, col, nxt_col = w, nxt_col, col


def chain_through(c: PartialColoring, x: int, alpha: int, beta: int) -> Chain:
    if alpha == beta:
        return Chain((alpha, beta), (x,), (), PATH, x, c.version)
    a = c._at[x].get(alpha)
    b = c._at[x].get(beta)
    if a is None and b is None:
        verts: list[int] = [x]
        kind = PATH
    elif a is None or b is None:
        verts, _ = _walk(c, x, alpha if a is not None else beta, beta if a is not None else alpha)
        kind = PATH
    else:
        first, second = (alpha, beta) if a < b else (beta, alpha)
        one, closed = _walk(c, x, first, second)
        if closed:
            verts, kind = one, CYCLE
        else:
            two, _ = _walk(c, x, second, first)
            verts = list(reversed(one)) + two[1:]
            kind = PATH
    if kind == CYCLE:
        edges = tuple(edge_key(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts)))
    else:
        edges = tuple(edge_key(verts[i], verts[i + 1]) for i in range(len(verts) - 1))
    return Chain((alpha, beta), tuple(verts), edges, kind, x, c.version)


def linked(c: PartialColoring, x: int, y: int, alpha: int, beta: int) -> bool:
    return y in chain_through(c, x, alpha, beta).vertices


def meets_before(chain: Chain, u: int, v: int) -> bool:
    """True iff the path, read from its query endpoint, reaches u before v."""
    if chain.kind != PATH:
        raise ColoringError("meets_before needs a path chain")
    verts = chain.vertices
    if verts[0] != chain.origin:
        verts = tuple(reversed(verts))
        if verts[0] != chain.origin:
            raise ColoringError("chain was not queried at an endpoint")
    try:
        return verts.index(u) < verts.index(v)
    except ValueError:
        raise ColoringError(f"{u} or {v} not on the chain") from None


def kempe_swap(c: PartialColoring, chain: Chain) -> PartialColoring:
    out = c.copy()
    out.swap_chain(chain)
    return out


def _swap_at_inplace(c: PartialColoring, x: int, alpha: int, beta: int) -> None:
    if alpha == beta:
        return
    miss = c.missing_mask(x)
    if bool(miss >> alpha & 1) == bool(miss >> beta & 1):
        raise SwapPreconditionError(f"vertex {x} must miss exactly one of {alpha}, {beta}")
    c.swap_chain(chain_through(c, x, alpha, beta))


def swap_at(c: PartialColoring, x: int, alpha: int, beta: int) -> PartialColoring:
    """The (alpha, beta)-swap at x: Kempe change on P_x(alpha, beta)."""
    out = c.copy()
    _swap_at_inplace(out, x, alpha, beta)
    return out


def _swap_at_both_inplace(c: PartialColoring, x: int, y: int, alpha: int, beta: int) -> None:
    if alpha == beta:
        return
    for v in (x, y):
        miss = c.missing_mask(v)
        if bool(miss >> alpha & 1) == bool(miss >> beta & 1):
            raise SwapPreconditionError(f"vertex {v} must miss exactly one of {alpha}, {beta}")
    was_linked = linked(c, x, y, alpha, beta)
    _swap_at_inplace(c, x, alpha, beta)
    if not was_linked:
        # y's chain is re-derived on the updated coloring
        _swap_at_inplace(c, y, alpha, beta)


def swap_at_both(c: PartialColoring, x: int, y: int, alpha: int, beta: int) -> PartialColoring:
    out = c.copy()
    _swap_at_both_inplace(out, x, y, alpha, beta)
    return out


def _multi_swap_inplace(c: PartialColoring, x: int, colors: Sequence[int]) -> None:
    if len(colors) < 2:
        raise SwapPreconditionError("multi-swap needs at least two colors")
    if not c.missing_mask(x) >> colors[0] & 1:
        raise SwapPreconditionError(f"first color {colors[0]} is not missing at {x}")
    for i in range(1, len(colors)):
        prev, cur = colors[i - 1], colors[i]
        if prev == cur:
            continue
        if not c.missing_mask(x) >> prev & 1 or not c.present_mask(x) >> cur & 1:
            raise SwapPreconditionError(f"stage {i}: need {prev} missing and {cur} present at {x}")
        c.swap_chain(chain_through(c, x, prev, cur))


def multi_swap(c: PartialColoring, x: int, colors: Sequence[int]) -> PartialColoring:
    """(b0,b1)-(b1,b2)-...-(b_{t-1},b_t)-swap at x; all-or-nothing."""
    out = c.copy()
    _multi_swap_inplace(out, x, colors)
    return out


def _swap_subchain_inplace(c: PartialColoring, x: int, y: int, alpha: int, beta: int) -> None:
    ch = chain_through(c, x, alpha, beta)
    if ch.kind != PATH or y not in ch.vertices:
        raise SwapPreconditionError(f"{x} and {y} do not lie on a common ({alpha},{beta})-path")
    i, j = sorted((ch.vertices.index(x), ch.vertices.index(y)))
    edges = [edge_key(ch.vertices[t], ch.vertices[t + 1]) for t in range(i, j)]
    old = [(e, c._raw_clear(e)) for e in edges]
    bad = None
    for e, col in old:
        new = beta if col == alpha else alpha
        u, v = e
        if c._at[u].get(new) is not None or c._at[v].get(new) is not None:
            bad = e
            break
        c._raw_set(e, new)
    if bad is not None:
        for e, _ in old:
            if e in c._color:
                c._raw_clear(e)
        for e, col in old:
            c._raw_set(e, col)
        raise ImproperColoringError(f"swapping subchain P[{x},{y}] breaks properness at {bad}")
    c._touch()


def swap_subchain(c: PartialColoring, x: int, y: int, alpha: int, beta: int) -> PartialColoring:
    """Exchange alpha/beta on the subpath P_[x,y] only."""
    out = c.copy()
    _swap_subchain_inplace(out, x, y, alpha, beta)
    return out


def _shift_inplace(c: PartialColoring, r: int, run: Sequence[int]) -> None:
    if not run:
        return
    new_colors = []
    for s in run:
        if not c.graph.has_edge(r, s):
            raise SwapPreconditionError(f"{s} is not adjacent to {r}")
        new_colors.append(c.the_missing(s))
    if len(set(run)) != len(run):
        raise SwapPreconditionError("shift run repeats a vertex")
    old = [(s, c.color(r, s)) for s in run]
    for s, col in old:
        if col is not None:
            c._raw_clear(edge_key(r, s))
    for idx, (s, col) in enumerate(zip(run, new_colors)):
        if c._at[r].get(col) is not None or c._at[s].get(col) is not None:
            for s2 in run[:idx]:
                c._raw_clear(edge_key(r, s2))
            for s2, old_col in old:
                if old_col is not None:
                    c._raw_set(edge_key(r, s2), old_col)
            raise ImproperColoringError(f"shift step {idx} (vertex {s}) reuses color {col} at {r}")
        c._raw_set(edge_key(r, s), col)
    c._touch()


def shift(c: PartialColoring, r: int, run: Sequence[int]) -> PartialColoring:
    """Recolor every r s_l in ``run`` with the color missing at s_l.

    Missing colors are read before any edge changes; the combined result must
    be proper, otherwise nothing changes and the first offending step is named.
    """
    out = c.copy()
    _shift_inplace(out, r, run)
    return out


def permute_colors(c: PartialColoring, perm: Mapping[int, int]) -> PartialColoring:
    """Rename every color ``a`` to ``perm[a]`` (identity where unspecified)."""
    colors = {e: perm.get(col, col) for e, col in c._color.items()}
    if len(set(perm.values())) != len(perm):
        raise ColoringError("color map is not injective")
    return PartialColoring(c.graph, c.k, colors, max_uncolored=c.max_uncolored)


def is_stable(
    c2: PartialColoring,
    c1: PartialColoring,
    vertices: Iterable[int],
    edges: Iterable[Edge] = (),
) -> bool:
    """Is c2 (T, c1)-stable: same missing sets on T's vertices, same colors on T's edges."""
    if c1.graph != c2.graph or c1.k != c2.k:
        raise ColoringError("colorings live on different graphs or color counts")
    if set(c1.uncolored_edges) != set(c2.uncolored_edges):
        raise ColoringError("colorings have different uncolored edges")
    for v in vertices:
        if c1._present[v] != c2._present[v]:
            return False
    for u, v in edges:
        if c1.color(u, v) != c2.color(u, v):
            return False
    return True

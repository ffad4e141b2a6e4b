"""Connected small-graph generation by canonical augmentation.

A child is formed by adding a vertex ``v`` adjacent to a subset of a
connected parent.  It is kept iff ``v`` lies in the Aut(child)-orbit of the
canonical deletion vertex: the min-degree non-cut vertex of largest
canonical position.  Deleting a non-cut vertex keeps the parent connected, so
only connected graphs are ever stored.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterator

import pynauty

from .graph import SimpleGraph, is_hz_candidate
from .graph6 import read_graph6_file

log = logging.getLogger(__name__)

MAX_N = 10


class EnumerationLimitError(ValueError):
    pass


def _is_cut_vertex(n: int, adj: list[int], v: int) -> bool:
    rest = ((1 << n) - 1) & ~(1 << v)
    if rest == 0:
        return False
    seen = rest & -rest
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            b = f & -f
            f ^= b
            nxt |= adj[b.bit_length() - 1]
        nxt &= rest & ~seen
        seen |= nxt
        frontier = nxt
    return seen != rest


def _core_ok(n: int, adj: list[int], degs: list[int]) -> bool:
    delta = max(degs)
    cmask = 0
    for v in range(n):
        if degs[v] == delta:
            cmask |= 1 << v
    for v in range(n):
        if cmask >> v & 1 and (adj[v] & cmask).bit_count() > 2:
            return False
    return True


def _nauty(n: int, adj: list[int]) -> pynauty.Graph:
    return pynauty.Graph(n, adjacency_dict={v: [w for w in range(n) if adj[v] >> w & 1] for v in range(n)})


def _children(n: int, parent: list[int], final_filter: bool) -> Iterator[list[int]]:
    """Accepted children on n+1 vertices of one parent (bitmask adjacency)."""
    pdeg = [m.bit_count() for m in parent]
    seen: set[bytes] = set()
    new = n
    for S in range(1, 1 << n):
        k = S.bit_count()
        degs = [pdeg[w] + (S >> w & 1) for w in range(n)]
        degs.append(k)
        adj = [parent[w] | ((S >> w & 1) << new) for w in range(n)]
        adj.append(S)
        # the new vertex is never a cut vertex; reject if a smaller-degree non-cut vertex exists
        reject = False
        for w in range(n):
            if degs[w] < k and (degs[w] == 1 or not _is_cut_vertex(n + 1, adj, w)):
                reject = True
                break
        if reject:
            continue
        if final_filter and not _core_ok(n + 1, adj, degs):
            continue
        g = _nauty(n + 1, adj)
        lab = pynauty.canon_label(g)
        orbits = pynauty.autgrp(g)[3]
        m = None
        for i in range(n, -1, -1):
            w = lab[i]
            if degs[w] == k and (w == new or not _is_cut_vertex(n + 1, adj, w)):
                m = w
                break
        if orbits[m] != orbits[new]:
            continue
        cert = pynauty.certificate(g)
        if cert in seen:
            continue
        seen.add(cert)
        yield adj


def enumerate_connected(max_n: int, only_candidates_at_top: bool = False) -> Iterator[tuple[int, list[int]]]:
    """Yield (n, bitmask adjacency) for every connected graph up to isomorphism, 1 <= n <= max_n."""
    level = [[0]]
    yield 1, [0]
    for n in range(1, max_n):
        top = n + 1 == max_n
        nxt = []
        for parent in level:
            for adj in _children(n, parent, final_filter=top and only_candidates_at_top):
                if not top:
                    nxt.append(adj)
                yield n + 1, adj
        level = nxt
        log.debug("level %d: %d graphs", n + 1, len(nxt))


def enumerate_hz_candidates(max_n: int, allow_slow: bool = False) -> Iterator[SimpleGraph]:
    """All connected graphs with at least one edge, n <= max_n and Delta(G_Delta) <= 2."""
    if max_n > MAX_N:
        raise EnumerationLimitError(f"max_n={max_n} exceeds the built-in cap of {MAX_N}")
    if max_n == MAX_N and not allow_slow:
        raise EnumerationLimitError(f"max_n={MAX_N} needs allow_slow=True")
    for n, adj in enumerate_connected(max_n, only_candidates_at_top=True):
        if n < 2:
            continue
        degs = [m.bit_count() for m in adj]
        if _core_ok(n, adj, degs):
            yield SimpleGraph.from_masks(adj)


def hz_candidates_from_graph6(path: str | Path, max_n: int | None = None) -> Iterator[SimpleGraph]:
    """Filter a pre-generated graph6 file down to HZ-candidates."""
    for g in read_graph6_file(path):
        if g.n >= 2 and (max_n is None or g.n <= max_n) and is_hz_candidate(g):
            yield g

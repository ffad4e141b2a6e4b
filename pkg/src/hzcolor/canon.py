"""Canonical labeling and automorphism orbits, backed by nauty (pynauty)."""

from __future__ import annotations

import pynauty

from .graph import SimpleGraph


def _nauty_graph(n: int, masks) -> pynauty.Graph:
    adj = {v: [w for w in range(n) if masks[v] >> w & 1] for v in range(n)}
    return pynauty.Graph(n, adjacency_dict=adj)


def certificate(g: SimpleGraph) -> bytes:
    """Isomorphism-invariant byte string; equal iff the graphs are isomorphic."""
    return g.n.to_bytes(2, "little") + pynauty.certificate(_nauty_graph(g.n, g.masks))


def canonical_labeling(g: SimpleGraph) -> list[int]:
    """``lab[i]`` is the vertex placed at canonical position ``i``."""
    return list(pynauty.canon_label(_nauty_graph(g.n, g.masks)))


def canonical_form(g: SimpleGraph) -> SimpleGraph:
    lab = canonical_labeling(g)
    pos = [0] * g.n
    for i, v in enumerate(lab):
        pos[v] = i
    return g.relabel(pos)


def orbits(g: SimpleGraph) -> list[int]:
    """Orbit id per vertex under Aut(G)."""
    return list(pynauty.autgrp(_nauty_graph(g.n, g.masks))[3])


def is_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges or sorted(g.degrees) != sorted(h.degrees):
        return False
    return certificate(g) == certificate(h)


def isomorphism(g: SimpleGraph, h: SimpleGraph) -> list[int] | None:
    """A map ``phi`` with ``phi[v]`` in h for v in g, or None."""
    if not is_isomorphic(g, h):
        return None
    lg = canonical_labeling(g)
    lh = canonical_labeling(h)
    phi = [0] * g.n
    for i in range(g.n):
        phi[lg[i]] = lh[i]
    return phi

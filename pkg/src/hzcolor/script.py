"""Transactional recoloring scripts.

A script is the programmatic form of a two-row operation matrix: the top row
names what is touched (a chain, a subchain, a shift run, an edge) and the
bottom row what happens to it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from . import coloring as col
from .coloring import ColoringError, PartialColoring, validate_proper
from .graph import Edge, edge_key


@dataclass(frozen=True)
class SwapChainAt:
    vertex: int
    alpha: int
    beta: int

    def apply(self, c: PartialColoring) -> None:
        col._swap_at_inplace(c, self.vertex, self.alpha, self.beta)

    def row(self) -> tuple[str, str]:
        return (f"P_{self.vertex}({self.alpha},{self.beta})", f"{self.alpha}/{self.beta}")


@dataclass(frozen=True)
class SwapAtBoth:
    x: int
    y: int
    alpha: int
    beta: int

    def apply(self, c: PartialColoring) -> None:
        col._swap_at_both_inplace(c, self.x, self.y, self.alpha, self.beta)

    def row(self) -> tuple[str, str]:
        return (f"{self.x},{self.y}", f"{self.alpha}/{self.beta} at both")


@dataclass(frozen=True)
class SwapSubchain:
    x: int
    y: int
    alpha: int
    beta: int

    def apply(self, c: PartialColoring) -> None:
        col._swap_subchain_inplace(c, self.x, self.y, self.alpha, self.beta)

    def row(self) -> tuple[str, str]:
        return (f"P_[{self.x},{self.y}]({self.alpha},{self.beta})", f"{self.alpha}/{self.beta}")


@dataclass(frozen=True)
class Shift:
    center: int
    run: tuple[int, ...]

    def apply(self, c: PartialColoring) -> None:
        col._shift_inplace(c, self.center, self.run)

    def row(self) -> tuple[str, str]:
        run = f"{self.run[0]}:{self.run[-1]}" if self.run else "-"
        return (run, "shift")


@dataclass(frozen=True)
class SetEdge:
    edge: Edge
    color: int | None
    # when given, the edge must currently carry this color ("uv: a -> b")
    expect: int | None = None

    def apply(self, c: PartialColoring) -> None:
        u, v = self.edge
        if self.expect is not None and c.color(u, v) != self.expect:
            raise ColoringError(f"edge {edge_key(u, v)} has color {c.color(u, v)}, expected {self.expect}")
        c.set_color(u, v, self.color)

    def row(self) -> tuple[str, str]:
        u, v = self.edge
        src = "-" if self.expect is None else str(self.expect)
        dst = "uncolored" if self.color is None else str(self.color)
        return (f"{u}{v}", f"{src}->{dst}")


@dataclass(frozen=True)
class MultiSwap:
    vertex: int
    colors: tuple[int, ...]

    def apply(self, c: PartialColoring) -> None:
        col._multi_swap_inplace(c, self.vertex, self.colors)

    def row(self) -> tuple[str, str]:
        return (str(self.vertex), "-".join(f"({a},{b})" for a, b in zip(self.colors, self.colors[1:])) + "-swap")


Step = Union[SwapChainAt, SwapAtBoth, SwapSubchain, Shift, SetEdge, MultiSwap]


@dataclass(frozen=True)
class RecolorScript:
    steps: tuple[Step, ...] = field(default_factory=tuple)

    def __add__(self, other: "RecolorScript") -> "RecolorScript":
        return RecolorScript(self.steps + other.steps)

    def matrix(self) -> list[list[str]]:
        """The two-row rendering: targets on top, operations below."""
        rows = [s.row() for s in self.steps]
        return [[r[0] for r in rows], [r[1] for r in rows]]


class ScriptError(ColoringError):
    def __init__(self, step_index: int, step: Step | None, reason: str):
        super().__init__(f"step {step_index} ({step!r}) failed: {reason}")
        self.step_index = step_index
        self.step = step
        self.reason = reason


def apply_script(c: PartialColoring, script: RecolorScript | Sequence[Step]) -> PartialColoring:
    """Run every step on a copy of ``c``; the input is never modified.

    Intermediate states may hold extra uncolored edges (a script may uncolor
    one edge before coloring another); the final state must satisfy the
    input's uncolored-edge bound.
    """
    steps = script.steps if isinstance(script, RecolorScript) else tuple(script)
    work = c.copy()
    work.max_uncolored = None
    for i, step in enumerate(steps):
        try:
            step.apply(work)
        except (ColoringError, KeyError, IndexError) as exc:
            raise ScriptError(i, step, str(exc)) from exc
        if not validate_proper(work):
            raise ScriptError(i, step, "improper intermediate state")
    work.max_uncolored = c.max_uncolored
    if not validate_proper(work):
        raise ScriptError(len(steps), None, "final state leaves too many uncolored edges")
    return work

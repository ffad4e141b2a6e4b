"""Class 1 / Class 2 labels for HZ-candidates and the structural checks on HZ-graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .canon import certificate
from .graph import SimpleGraph, core, is_hz_candidate, is_overfull, petersen_star
from .graph6 import to_graph6
from .oracle import DEFAULT_BUDGET, DeltaColoringError, delta_edge_color

CLASS1, CLASS2 = "Class1", "Class2"
OVERFULL, ODD_CYCLE, PETERSEN_STAR, NOT_OVERFULL = "Overfull", "OddCycle", "PetersenStar", "NotOverfull"
CLASS2_REASONS = frozenset({OVERFULL, ODD_CYCLE, PETERSEN_STAR})


class NotCandidateError(ValueError):
    """classify() was given a graph that is not connected or whose core has a vertex of degree > 2."""


@dataclass(frozen=True)
class ClassLabel:
    value: str
    reason: str

    def __post_init__(self):
        if self.value not in (CLASS1, CLASS2):
            raise ValueError(f"bad class value {self.value!r}")
        if (self.value == CLASS2) != (self.reason in CLASS2_REASONS):
            raise ValueError(f"reason {self.reason!r} inconsistent with {self.value}")

    @property
    def is_class2(self) -> bool:
        return self.value == CLASS2

    @property
    def number(self) -> int:
        return 2 if self.is_class2 else 1

    def to_dict(self) -> dict:
        return {"class": self.number, "reason": self.reason}


@lru_cache(maxsize=1)
def _petersen_star_certificate() -> bytes:
    return certificate(petersen_star())


def is_petersen_star(g: SimpleGraph) -> bool:
    if g.n != 9 or g.num_edges != 12:
        return False
    return certificate(g) == _petersen_star_certificate()


def classify(g: SimpleGraph) -> ClassLabel:
    if not is_hz_candidate(g):
        raise NotCandidateError("classify needs a connected graph with core maximum degree at most 2")
    if is_overfull(g):
        return ClassLabel(CLASS2, OVERFULL)
    delta = g.max_degree
    if delta == 2 and g.is_odd_cycle():
        return ClassLabel(CLASS2, ODD_CYCLE)
    if delta == 3 and is_petersen_star(g):
        return ClassLabel(CLASS2, PETERSEN_STAR)
    return ClassLabel(CLASS1, NOT_OVERFULL)


@dataclass
class ClauseResult:
    name: str
    status: str  # "pass" | "fail" | "vacuous"
    detail: str = ""
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"clause": self.name, "status": self.status, "detail": self.detail, "witness": self.witness}


@dataclass
class StructureReport:
    graph6: str
    is_class2: bool
    clauses: list[ClauseResult]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.clauses)

    @property
    def vacuous(self) -> bool:
        return all(c.status == "vacuous" for c in self.clauses)

    def to_dict(self) -> dict:
        return {
            "graph6": self.graph6,
            "is_class2": self.is_class2,
            "ok": self.ok,
            "clauses": [c.to_dict() for c in self.clauses],
        }


def is_critical_edge(g: SimpleGraph, u: int, v: int, node_budget: int = DEFAULT_BUDGET) -> bool:
    """Does G - uv have a Delta(G)-edge-coloring?  (Meaningful when G is class 2.)"""
    h = g.remove_edge(u, v)
    if h.max_degree < g.max_degree:
        return True
    try:
        delta_edge_color(h, node_budget=node_budget)
    except DeltaColoringError:
        return False
    return True


def check_hz_structure(g: SimpleGraph, is_class2: bool, node_budget: int = DEFAULT_BUDGET) -> StructureReport:
    """Check the structure every HZ-graph must have.

    (a) every edge is critical and the core is 2-regular, (b) minimum degree
    is Delta-1 unless G is an odd cycle, (c) every vertex has at least two
    neighbors in the core.  With ``is_class2`` false all clauses are vacuous.
    """
    g6 = to_graph6(g)
    names = ("a", "b", "c")
    if not is_class2 or not is_hz_candidate(g):
        return StructureReport(g6, is_class2, [ClauseResult(n, "vacuous", "not an HZ-graph") for n in names])
    delta = g.max_degree
    view = core(g)
    clauses = []

    # (a)
    non_critical = None
    for u, v in g.edges:
        if not is_critical_edge(g, u, v, node_budget):
            non_critical = (u, v)
            break
    bad_core = [v for v in view.core_vertices if view.core_subgraph.degree(view.core_vertices.index(v)) != 2]
    if non_critical is not None:
        clauses.append(ClauseResult("a", "fail", "edge is not critical", {"edge": list(non_critical)}))
    elif bad_core:
        clauses.append(ClauseResult("a", "fail", "core is not 2-regular", {"vertices": bad_core}))
    else:
        clauses.append(ClauseResult("a", "pass"))

    # (b)
    if g.min_degree == delta - 1:
        clauses.append(ClauseResult("b", "pass", "minimum degree is Delta-1"))
    elif delta == 2 and g.is_odd_cycle():
        clauses.append(ClauseResult("b", "pass", "odd cycle"))
    else:
        low = [v for v in range(g.n) if g.degree(v) < delta - 1]
        clauses.append(ClauseResult("b", "fail", f"minimum degree {g.min_degree}", {"vertices": low}))

    # (c)
    cmask = 0
    for v in view.core_vertices:
        cmask |= 1 << v
    few = [v for v in range(g.n) if (g.mask(v) & cmask).bit_count() < 2]
    if few:
        clauses.append(ClauseResult("c", "fail", "vertex with fewer than two core neighbors", {"vertices": few}))
    else:
        clauses.append(ClauseResult("c", "pass"))
    return StructureReport(g6, is_class2, clauses)

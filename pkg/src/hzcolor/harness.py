"""Verification campaigns: census, O_Delta properties, theorem and lemma suites, Kempe invariants.

Every suite returns a VerificationReport.  Reports are deterministic for a
given CampaignConfig (wall time is only included on request), and every
failure carries a witness that replay_witness() can re-evaluate on its own.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator

from .canon import canonical_form, certificate
from .classify import check_hz_structure, classify, is_petersen_star
from .coloring import (
    ColoringError,
    PartialColoring,
    chain_through,
    coloring_from_dict,
    is_stable,
    validate_proper,
)
from .enumerate import enumerate_hz_candidates, hz_candidates_from_graph6
from .fans import (
    ColoringTriple,
    FanError,
    MaxFanCertificate,
    NotTypicalError,
    delta_coloring_minus_edge,
    grow_multifan,
    is_elementary,
    make_2_inducing,
    normalize_typical,
    pseudo_multifan_from_fan,
    random_kempe_walk,
    search_maximum_multifan,
    validate_pseudo_multifan,
)
from .graph import SimpleGraph, core, edge_key, is_hz_candidate, is_overfull, k5_minus_edge, petersen_star
from .graph6 import from_graph6, to_graph6
from .lemmas import LEMMA_IDS, RELAXED_IDS, LemmaInstance, check_lemma_predicates
from .odelta import ODeltaSpec, build_o_delta, feasible_n1, o_delta_specs, recognize_o_delta
from .oracle import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    DeltaColoringError,
    DeltaColoringStats,
    chromatic_index_exact,
    delta_edge_color,
)
from .script import RecolorScript, ScriptError, SetEdge, Shift, SwapAtBoth, SwapChainAt, SwapSubchain, apply_script

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SUITES = ("census", "odelta", "theorems", "lemmas", "kempe", "two-inducing")
PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"
ODELTA_ORACLE_MAX_N = 11
UNPRUNED_MAX_N = 9


def derive_seed(seed: int, *labels) -> int:
    """Split a 64-bit seed by a label path (stable across runs and platforms)."""
    h = hashlib.sha256(repr((seed,) + labels).encode()).digest()
    return int.from_bytes(h[:8], "big")


def make_rng(seed: int, *labels) -> random.Random:
    return random.Random(derive_seed(seed, *labels))


@dataclass
class CampaignConfig:
    suite: str = "census"
    seed: int = 0
    trials: int = 100
    max_n: int = 9
    budget: int = DEFAULT_BUDGET
    out: str | None = None
    min_delta: int = 4
    max_delta: int = 8
    shapes: int = 50
    samples: int = 10
    allow_slow: bool = False
    input: str | None = None

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    def to_dict(self) -> dict:
        """Everything that determines the report; the output path does not."""
        d = asdict(self)
        d.pop("out")
        return d


@dataclass
class CheckStats:
    passed: int = 0
    vacuous: int = 0
    failed: int = 0
    witnesses: list[dict] = field(default_factory=list)

    def record(self, status: str, witness: dict | None = None) -> None:
        if status == PASS:
            self.passed += 1
        elif status == VACUOUS:
            self.vacuous += 1
        elif status == FAIL:
            self.failed += 1
            self.witnesses.append(witness or {})
        else:
            raise ValueError(f"unknown status {status!r}")

    @property
    def total(self) -> int:
        return self.passed + self.vacuous + self.failed

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "vacuous": self.vacuous,
            "fail": self.failed,
            "vacuous_rate": round(self.vacuous / self.total, 6) if self.total else None,
            "witnesses": self.witnesses,
        }


@dataclass
class VerificationReport:
    suite: str
    config: dict
    checks: dict[str, CheckStats] = field(default_factory=dict)
    branch_statistics: dict[str, dict[str, int]] = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    wall_time: float | None = None

    def check(self, name: str) -> CheckStats:
        if name not in self.checks:
            self.checks[name] = CheckStats()
        return self.checks[name]

    def record(self, name: str, status: str, witness: dict | None = None) -> None:
        if status == FAIL:
            witness = {"check": name, "suite": self.suite, **(witness or {})}
        self.check(name).record(status, witness)

    def branch(self, name: str, key: str, count: int = 1) -> None:
        d = self.branch_statistics.setdefault(name, {})
        d[key] = d.get(key, 0) + count

    @property
    def ok(self) -> bool:
        return all(c.failed == 0 for c in self.checks.values())

    @property
    def failures(self) -> list[dict]:
        return [w for c in self.checks.values() for w in c.witnesses]

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "config": self.config,
            "ok": self.ok,
            "checks": {k: self.checks[k].to_dict() for k in sorted(self.checks)},
            "branch_statistics": {k: dict(sorted(v.items())) for k, v in sorted(self.branch_statistics.items())},
            "data": self.data,
        }
        if timing:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    def summary_lines(self) -> list[str]:
        lines = []
        for name in sorted(self.checks):
            c = self.checks[name]
            tag = "FAIL" if c.failed else ("PASS" if c.passed else "VACUOUS")
            lines.append(f"{tag:7} {name}: pass={c.passed} vacuous={c.vacuous} fail={c.failed}")
        return lines


def graph_witness(g: SimpleGraph, c: PartialColoring | None = None, **extra) -> dict:
    w = {"graph6": to_graph6(g)}
    if c is not None:
        w["coloring"] = c.to_dict()
    w.update(extra)
    return w


def coloring_dot(c: PartialColoring, name: str = "coloring") -> str:
    """Whole-graph drawing with edges labeled by color (uncolored edges dashed)."""
    g = c.graph
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f'  {v} [xlabel="{sorted(c.missing(v))}"];')
    for u, v in g.edges:
        col = c.color(u, v)
        attr = "style=dashed" if col is None else f'label="{col}"'
        lines.append(f"  {u} -- {v} [{attr}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def witness_dot(w: dict) -> str:
    g = from_graph6(w["graph6"])
    if "coloring" in w:
        return coloring_dot(coloring_from_dict(w["coloring"], g), "witness")
    lines = ["graph witness {"] + [f"  {u} -- {v};" for u, v in g.edges] + ["}"]
    return "\n".join(lines) + "\n"


def _timed(fn: Callable[[CampaignConfig], VerificationReport]) -> Callable[[CampaignConfig], VerificationReport]:
    def run(cfg: CampaignConfig) -> VerificationReport:
        t0 = time.perf_counter()
        rep = fn(cfg)
        rep.wall_time = round(time.perf_counter() - t0, 3)
        return rep

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# -- census ------------------------------------------------------------------------------


def census_graph_checks(g: SimpleGraph, budget: int, stats: DeltaColoringStats | None = None) -> dict[str, tuple[str, str]]:
    """Per-graph census checks; also used to replay census witnesses."""
    out: dict[str, tuple[str, str]] = {}
    try:
        res = chromatic_index_exact(g, node_budget=budget)
    except BudgetExceededError as exc:
        out["classify_vs_oracle"] = (FAIL, f"oracle budget exceeded: {exc}")
        return out
    label = classify(g)
    agree = label.is_class2 == res.is_class2
    out["classify_vs_oracle"] = (PASS if agree else FAIL, f"classify={label.number} oracle={res.chi_prime - res.delta + 1}")
    delta = g.max_degree
    if res.is_class2:
        explained = is_overfull(g) or (delta == 2 and g.is_odd_cycle()) or (delta == 3 and is_petersen_star(g))
        out["class2_explained"] = (PASS if explained else FAIL, label.reason)
        if delta >= 4:
            out["class2_in_odelta"] = (PASS if recognize_o_delta(g) is not None else FAIL, "")
        else:
            out["class2_in_odelta"] = (VACUOUS, "Delta < 4")
        rep = check_hz_structure(g, True, budget)
        out["hz_structure"] = (PASS if rep.ok else FAIL, json.dumps(rep.to_dict()["clauses"]))
        out["delta_edge_color"] = (VACUOUS, "class 2")
    else:
        out["class2_explained"] = (VACUOUS, "class 1")
        out["class2_in_odelta"] = (VACUOUS, "class 1")
        out["hz_structure"] = (VACUOUS, "class 1")
        try:
            c = delta_edge_color(g, node_budget=budget, stats=stats)
            ok = validate_proper(c) and c.is_complete() and c.k == delta
            out["delta_edge_color"] = (PASS if ok else FAIL, "")
        except (DeltaColoringError, BudgetExceededError) as exc:
            out["delta_edge_color"] = (FAIL, str(exc))
    return out


def _candidates(cfg: CampaignConfig) -> Iterator[SimpleGraph]:
    if cfg.input:
        yield from hz_candidates_from_graph6(cfg.input, cfg.max_n)
    else:
        yield from enumerate_hz_candidates(cfg.max_n, allow_slow=cfg.allow_slow)


@_timed
def run_census(cfg: CampaignConfig) -> VerificationReport:
    """Classify every HZ-candidate with n <= max_n and cross-check against the exact oracle."""
    rep = VerificationReport("census", cfg.to_dict())
    per_n: Counter = Counter()
    class2: list[dict] = []
    fallbacks = 0
    repaired = 0
    for g in _candidates(cfg):
        per_n[g.n] += 1
        st = DeltaColoringStats()
        checks = census_graph_checks(g, cfg.budget, st)
        fallbacks += st.fallback_search
        repaired += st.repaired
        for name, (status, detail) in checks.items():
            rep.record(name, status, graph_witness(g, detail=detail) if status == FAIL else None)
        label = classify(g)
        if label.is_class2:
            rep.branch("class2_reason", label.reason)
            class2.append(
                {
                    "graph6": to_graph6(g),
                    "n": g.n,
                    "m": g.num_edges,
                    "delta": g.max_degree,
                    "reason": label.reason,
                    "overfull": is_overfull(g),
                }
            )
    class2.sort(key=lambda d: (d["n"], d["delta"], d["graph6"]))
    rep.data["candidates_by_n"] = {str(n): per_n[n] for n in sorted(per_n)}
    rep.data["candidates_total"] = sum(per_n.values())
    rep.data["class2"] = class2
    rep.data["delta_edge_color"] = {"search_fallbacks": fallbacks, "repaired_edges": repaired}

    # base cases: Delta=3 non-overfull class 2 is exactly P*, Delta=4 class 2 is exactly K5 - e
    d3 = sorted(d["graph6"] for d in class2 if d["delta"] == 3 and not d["overfull"])
    want3 = [to_graph6(_canon(petersen_star()))] if cfg.max_n >= 9 else []
    d3c = sorted(to_graph6(_canon(from_graph6(s))) for s in d3)
    rep.record("base_case_delta3_is_petersen_star", PASS if d3c == want3 else FAIL, {"found": d3, "expected": want3})
    d4 = sorted(to_graph6(_canon(from_graph6(d["graph6"]))) for d in class2 if d["delta"] == 4)
    want4 = [to_graph6(_canon(k5_minus_edge()))] if cfg.max_n >= 5 else []
    rep.record("base_case_delta4_is_k5_minus_edge", PASS if d4 == want4 else FAIL, {"found": d4, "expected": want4})
    rep.data["delta3_non_overfull_class2"] = d3
    rep.data["delta4_class2"] = d4
    return rep


def _canon(g: SimpleGraph) -> SimpleGraph:
    return canonical_form(g)


# -- O_Delta ---------------------------------------------------------------------------------


def odelta_spec_checks(spec: ODeltaSpec, budget: int, allow_slow: bool = False) -> dict[str, tuple[str, str]]:
    """Construction checks for one O_Delta member.

    The pruned oracle rejects Delta colors as soon as the graph is overfull,
    so small members are also searched without pruning (Delta <= 6, or 7
    with ``allow_slow``; Delta = 8 at n = 9 takes minutes).
    """
    out: dict[str, tuple[str, str]] = {}
    g = build_o_delta(spec)
    view = core(g)
    out["connected"] = (PASS if g.is_connected else FAIL, "")
    two_reg = view.core_subgraph.n > 0 and view.core_subgraph.is_regular() and view.core_subgraph.max_degree == 2
    out["core_2_regular"] = (PASS if two_reg else FAIL, "")
    out["overfull"] = (PASS if is_overfull(g) else FAIL, f"m={g.num_edges} n={g.n} delta={g.max_degree}")
    lab = classify(g) if is_hz_candidate(g) else None
    out["classify_overfull"] = (PASS if lab is not None and lab.reason == "Overfull" else FAIL, str(lab))
    back = recognize_o_delta(g)
    out["recognize_round_trip"] = (PASS if back is not None and back.equivalent(spec) else FAIL, "")
    if g.n <= ODELTA_ORACLE_MAX_N:
        try:
            res = chromatic_index_exact(g, node_budget=budget)
            ok = res.chi_prime == spec.delta + 1
            out["oracle_delta_plus_1"] = (PASS if ok else FAIL, f"chi'={res.chi_prime}")
        except BudgetExceededError as exc:
            out["oracle_delta_plus_1"] = (FAIL, str(exc))
    else:
        out["oracle_delta_plus_1"] = (VACUOUS, f"n={g.n} > {ODELTA_ORACLE_MAX_N}")
    if g.n <= UNPRUNED_MAX_N and spec.delta <= (7 if allow_slow else 6):
        res = chromatic_index_exact(g, node_budget=budget, prune=False)
        out["oracle_unpruned_delta_plus_1"] = (PASS if res.chi_prime == spec.delta + 1 else FAIL, f"chi'={res.chi_prime}")
    else:
        out["oracle_unpruned_delta_plus_1"] = (VACUOUS, "too large for the unpruned search")
    return out


@_timed
def run_odelta_suite(cfg: CampaignConfig) -> VerificationReport:
    """Construction properties of O_Delta for Delta in [min_delta, max_delta]."""
    rep = VerificationReport("odelta", cfg.to_dict())
    per_delta = {}
    for delta in range(max(4, cfg.min_delta), cfg.max_delta + 1):
        specs = o_delta_specs(delta, cfg.shapes)
        per_delta[str(delta)] = {"feasible_n1": feasible_n1(delta), "specs": len(specs)}
        for spec in specs:
            g = build_o_delta(spec)
            for name, (status, detail) in odelta_spec_checks(spec, cfg.budget, cfg.allow_slow).items():
                rep.record(name, status, graph_witness(g, spec=spec.to_dict(), detail=detail) if status == FAIL else None)
    rep.data["specs_by_delta"] = per_delta
    return rep


# -- theorems ---------------------------------------------------------------------------------


def _hz_sources(cfg: CampaignConfig, with_enumeration: bool = True) -> list[tuple[str, SimpleGraph]]:
    seen: dict[bytes, tuple[str, SimpleGraph]] = {}
    for delta in range(max(4, cfg.min_delta), cfg.max_delta + 1):
        for spec in o_delta_specs(delta, cfg.shapes):
            g = build_o_delta(spec)
            seen.setdefault(certificate(g), (f"O{delta}", g))
    if with_enumeration:
        for g in _candidates(cfg):
            if g.max_degree < 2:
                continue
            if is_overfull(g) or classify(g).is_class2:
                res = chromatic_index_exact(g, node_budget=cfg.budget)
                if res.is_class2:
                    seen.setdefault(certificate(g), (f"census n={g.n}", g))
    out = sorted(seen.values(), key=lambda t: (t[1].n, t[1].max_degree, to_graph6(t[1])))
    return out


def theorem_checks(g: SimpleGraph, trials: int, seed: int) -> dict[str, tuple[str, dict]]:
    """Hypothesis/conclusion evaluation of the structural theorems on one HZ-graph."""
    D = g.max_degree
    out: dict[str, tuple[str, dict]] = {}
    vd = g.vertices_of_degree(D)
    low = set(g.vertices_of_degree(D - 1))
    nlow = {v: frozenset(g.neighbors_of_degree(v, D - 1)) for v in vd}
    big = D >= 4

    # 2.3(i): adjacent Delta-vertices share their (Delta-1)-neighborhoods
    pairs = [(u, v) for u in vd for v in g.neighbors(u) if v > u and v in nlow]
    if not big or not pairs:
        out["2.3i"] = (VACUOUS, {"reason": "Delta < 4" if not big else "no adjacent Delta-vertices"})
    else:
        bad = [(u, v) for u, v in pairs if nlow[u] != nlow[v]]
        out["2.3i"] = (FAIL, {"pairs": bad}) if bad else (PASS, {})

    # 2.3(ii): some s and some coloring make N_{Delta-1}[r] elementary
    if not big:
        out["2.3ii"] = (VACUOUS, {"reason": "Delta < 4"})
    else:
        missing_r = []
        for r in vd:
            if not _elementary_witness(g, r, trials, seed):
                missing_r.append(r)
        out["2.3ii"] = (FAIL, {"r": missing_r, "trials": trials, "seed": seed}) if missing_r else (PASS, {})

    # 2.4: adjacent (Delta-1)-vertices share their Delta-neighborhoods
    lpairs = [(x, y) for x in low for y in g.neighbors(x) if y > x and y in low]
    if not big or not lpairs:
        out["2.4"] = (VACUOUS, {"reason": "Delta < 4" if not big else "V_(Delta-1) is independent"})
    else:
        nd = {v: frozenset(g.neighbors_of_degree(v, D)) for v in low}
        bad = [(x, y) for x, y in lpairs if nd[x] != nd[y]]
        out["2.4"] = (FAIL, {"pairs": bad}) if bad else (PASS, {})

    # 2.5: distinct but intersecting (Delta-1)-neighborhoods meet in Delta-3 vertices
    hyp = [(u, r) for u in vd for r in vd if u < r and nlow[u] != nlow[r] and nlow[u] & nlow[r]]
    if D < 7 or not hyp:
        out["2.5"] = (VACUOUS, {"reason": "Delta < 7" if D < 7 else "no pair with distinct intersecting neighborhoods"})
    else:
        bad = [(u, r) for u, r in hyp if len(nlow[u] & nlow[r]) != D - 3]
        out["2.5"] = (FAIL, {"pairs": bad}) if bad else (PASS, {})

    # 2.6: distinct (Delta-1)-neighborhoods force V_{Delta-1} independent
    distinct = len(set(nlow.values())) > 1
    if D < 7 or not distinct:
        out["2.6"] = (VACUOUS, {"reason": "Delta < 7" if D < 7 else "all Delta-vertices share N_(Delta-1)"})
    else:
        out["2.6"] = (FAIL, {"edges": lpairs}) if lpairs else (PASS, {})

    # 2.1: biregular structure (critical edges, 2-regular core, min degree, core neighbors)
    st = check_hz_structure(g, True)
    bad = [c.to_dict() for c in st.clauses if c.status == FAIL]
    out["2.1"] = (FAIL, {"clauses": bad}) if bad else (PASS, {})

    # 2.7: HZ-graph with Delta >= 4 is an O_Delta join
    if not big:
        out["2.7"] = (VACUOUS, {"reason": "Delta < 4"})
    else:
        out["2.7"] = (PASS, {}) if recognize_o_delta(g) is not None else (FAIL, {})
    return out


def _elementary_witness(g: SimpleGraph, r: int, trials: int, seed: int) -> bool:
    D = g.max_degree
    lows = g.neighbors_of_degree(r, D - 1)
    closed = (r,) + lows
    rng = make_rng(seed, "2.3ii", to_graph6(g), r)
    for s in lows:
        base = delta_coloring_minus_edge(g, r, s)
        if base is None:
            continue
        if is_elementary(base, closed):
            return True
        for _ in range(trials):
            c = random_kempe_walk(base, rng, rng.randint(1, 20))
            if is_elementary(c, closed):
                return True
    return False


@_timed
def run_theorem_suite(cfg: CampaignConfig) -> VerificationReport:
    """Structural theorems on O_Delta members and on enumerated class-2 HZ-candidates."""
    rep = VerificationReport("theorems", cfg.to_dict())
    sources = _hz_sources(cfg)
    rep.data["sources"] = dict(Counter(name.split(" ")[0] for name, _ in sources))
    for name, g in sources:
        for thm, (status, info) in theorem_checks(g, cfg.trials, cfg.seed).items():
            rep.record(thm, status, graph_witness(g, source=name, info=info, trials=cfg.trials, seed=cfg.seed) if status == FAIL else None)
            if status == VACUOUS:
                rep.branch(thm, info.get("reason", "vacuous"))
    return rep


# -- lemmas ------------------------------------------------------------------------------------


class _TripleFactory:
    """Seeded coloring triples on a fixed list of HZ-graphs, with cached base colorings and fan certificates."""

    def __init__(self, graphs: list[SimpleGraph], seed: int, label: str, fan_budget: int = 50):
        self.graphs = graphs
        self.rng = make_rng(seed, label)
        self.seed = seed
        self.fan_budget = fan_budget
        self._base: dict[tuple[int, int, int], PartialColoring | None] = {}
        self._cert: dict[tuple[int, int], MaxFanCertificate] = {}

    def certificate(self, gi: int, r: int) -> MaxFanCertificate:
        key = (gi, r)
        if key not in self._cert:
            g = self.graphs[gi]
            _, cert = search_maximum_multifan(g, r, budget=self.fan_budget, seed=derive_seed(self.seed, "fan", gi, r))
            self._cert[key] = cert
        return self._cert[key]

    def draw(self) -> tuple[int, ColoringTriple] | None:
        rng = self.rng
        gi = rng.randrange(len(self.graphs))
        g = self.graphs[gi]
        D = g.max_degree
        r = rng.choice(g.vertices_of_degree(D))
        lows = g.neighbors_of_degree(r, D - 1)
        if not lows:
            return None
        s = rng.choice(lows)
        key = (gi, r, s)
        if key not in self._base:
            self._base[key] = delta_coloring_minus_edge(g, r, s)
        base = self._base[key]
        if base is None:
            return None
        c = random_kempe_walk(base, rng, rng.randint(0, 40))
        return gi, ColoringTriple(g, r, s, c)


def _lemma_graphs(cfg: CampaignConfig) -> list[SimpleGraph]:
    out = []
    for delta in range(max(4, cfg.min_delta), min(cfg.max_delta, 7) + 1):
        for spec in o_delta_specs(delta, cfg.shapes):
            out.append(build_o_delta(spec))
    return out


def _evaluate_lemmas(rep: VerificationReport, factory: _TripleFactory, trials: int, samples: int, suffix: str, seed: int) -> int:
    done = 0
    relaxed: dict[str, Counter] = {lid: Counter() for lid in RELAXED_IDS}
    per_delta: Counter = Counter()
    attempts = 0
    while done < trials and attempts < 10 * trials:
        attempts += 1
        drawn = factory.draw()
        if drawn is None:
            continue
        gi, t = drawn
        inst = LemmaInstance(t, True, factory.certificate(gi, t.r), samples, derive_seed(seed, suffix, done))
        for lid in LEMMA_IDS:
            res = check_lemma_predicates(inst, lid)
            rep.record(f"lemma {lid}{suffix}", res.status, res.counterexample if res.status == FAIL else None)
            for k, v in res.branches.items():
                rep.branch(f"lemma {lid}{suffix}", k, v)
        for lid in RELAXED_IDS:
            relaxed[lid][check_lemma_predicates(inst, lid).status] += 1
        per_delta[str(t.delta)] += 1
        done += 1
    rep.data.setdefault("instances", {})[suffix.strip(" []") or "O_Delta"] = {
        "total": done,
        "by_delta": dict(sorted(per_delta.items())),
    }
    rep.data.setdefault("informational_relaxed_3_5", {})[suffix.strip(" []") or "O_Delta"] = {
        lid: dict(sorted(cnt.items())) for lid, cnt in relaxed.items()
    }
    return done


@_timed
def run_lemma_suite(cfg: CampaignConfig) -> VerificationReport:
    """Literal lemma predicates on seeded coloring triples of O_4..O_7 (plus P* as a separate Delta=3 source)."""
    rep = VerificationReport("lemmas", cfg.to_dict())
    graphs = _lemma_graphs(cfg)
    factory = _TripleFactory(graphs, cfg.seed, "lemmas")
    _evaluate_lemmas(rep, factory, cfg.trials, cfg.samples, "", cfg.seed)
    extra = _TripleFactory([petersen_star()], cfg.seed, "lemmas-pstar")
    _evaluate_lemmas(rep, extra, max(1, cfg.trials // 10), cfg.samples, " [P*]", cfg.seed)
    rep.data["note"] = (
        "3.5~ rows weaken 'maximum multifan' to the greedy fan of the sampled coloring; "
        "they are data, not lemma checks"
    )
    return rep


# -- make_2_inducing --------------------------------------------------------------------------


def two_inducing_checks(t: ColoringTriple, cert: MaxFanCertificate | None, samples: int, seed: int) -> dict[str, tuple[str, str]] | None:
    """Run the 2-inducing transformation on the grown fan of ``t``; None when beta == alpha."""
    f = grow_multifan(t)
    try:
        tf, _, _ = normalize_typical(f)
    except NotTypicalError:
        return None
    if tf.beta == tf.alpha:
        return None
    s = pseudo_multifan_from_fan(tf.base, cert)
    out: dict[str, tuple[str, str]] = {}
    try:
        res = make_2_inducing(s)
    except (FanError, ColoringError) as exc:
        return {"transform": (FAIL, str(exc))}
    out["transform"] = (PASS, "")
    typ = res.typical
    ok = typ is not None and typ.alpha == typ.beta and not typ.violations()
    out["typical_2_inducing"] = (PASS if ok else FAIL, "" if ok else "renamed fan is not typical 2-inducing")
    out["same_vertex_set"] = (PASS if set(res.pseudo.vertices) == set(s.vertices) else FAIL, "")
    back = apply_script(res.coloring, res.inverse)
    edges = set(tf.base.edges) | {edge_key(s.r, tf.s(1)), edge_key(s.r, tf.s(tf.beta))}
    same = all(back.color(*e) == tf.coloring.color(*e) for e in edges)
    out["inverse_restores_fan_edges"] = (PASS if same else FAIL, "")
    out["inverse_restores_all"] = (PASS if back == tf.coloring else FAIL, "")
    maximum = cert is not None and cert.exact and cert.size == len(f.vertices)
    if maximum:
        rep = validate_pseudo_multifan(res.pseudo, res.coloring, samples, seed)
        out["pseudo_multifan_valid"] = (PASS if rep.passed else FAIL, json.dumps(rep.to_dict()))
    else:
        out["pseudo_multifan_valid"] = (VACUOUS, "fan is not a certified maximum multifan")
    return out


@_timed
def run_two_inducing_suite(cfg: CampaignConfig) -> VerificationReport:
    """make_2_inducing on typical fans with beta > alpha over O_Delta triples."""
    rep = VerificationReport("two-inducing", cfg.to_dict())
    graphs = [build_o_delta(s) for d in range(max(5, cfg.min_delta), min(cfg.max_delta, 7) + 1) for s in o_delta_specs(d, cfg.shapes)]
    factory = _TripleFactory(graphs, cfg.seed, "two-inducing")
    instances = pseudo = attempts = 0
    while instances < cfg.trials and attempts < 50 * cfg.trials:
        attempts += 1
        drawn = factory.draw()
        if drawn is None:
            continue
        gi, t = drawn
        cert = factory.certificate(gi, t.r)
        checks = two_inducing_checks(t, cert, cfg.samples, derive_seed(cfg.seed, "two", instances))
        if checks is None:
            continue
        instances += 1
        if checks.get("pseudo_multifan_valid", (VACUOUS,))[0] != VACUOUS:
            pseudo += 1
        for name, (status, detail) in checks.items():
            w = None
            if status == FAIL:
                w = graph_witness(t.graph, t.coloring, r=t.r, s1=t.s1, detail=detail, samples=cfg.samples)
            rep.record(name, status, w)
    rep.data["instances_beta_gt_alpha"] = instances
    rep.data["pseudo_multifan_instances"] = pseudo
    rep.data["draws"] = attempts
    return rep


# -- Kempe machinery ---------------------------------------------------------------------------


def _random_op(c: PartialColoring, rng: random.Random):
    """Pick a random operation; returns (kind, params)."""
    g, k = c.graph, c.k
    kind = rng.choice(("swap", "swap", "swap_both", "subchain", "shift", "script"))
    x = rng.randrange(g.n)
    a, b = rng.sample(range(1, k + 1), 2)
    if kind == "swap":
        return kind, {"x": x, "a": a, "b": b}
    if kind == "swap_both":
        return kind, {"x": x, "y": rng.randrange(g.n), "a": a, "b": b}
    if kind == "subchain":
        ch = chain_through(c, x, a, b)
        verts = ch.vertices
        if ch.kind != "path" or len(verts) < 2:
            return "swap", {"x": x, "a": a, "b": b}
        i, j = sorted(rng.sample(range(len(verts)), 2))
        return kind, {"x": verts[i], "y": verts[j], "a": a, "b": b}
    if kind == "shift":
        r = rng.randrange(g.n)
        nb = list(g.neighbors(r))
        rng.shuffle(nb)
        return kind, {"r": r, "run": nb[: rng.randint(0, min(3, len(nb)))]}
    # legal swaps, chosen by simulating the script on a scratch copy
    steps = []
    work = c.copy()
    for _ in range(rng.randint(1, 4)):
        y = rng.randrange(g.n)
        miss, pres = sorted(work.missing(y)), sorted(work.present(y))
        if not miss or not pres:
            continue
        a2, b2 = rng.choice(miss), rng.choice(pres)
        work.swap_chain(chain_through(work, y, a2, b2))
        steps.append(["swap", y, a2, b2])
    # fault injection: the final step recolors an edge with a color already present at an endpoint
    e = rng.choice(g.edges) if g.edges else None
    return "script", {"steps": steps, "fault_edge": list(e) if e else None, "fault": rng.random() < 0.5}


def _snapshot(c: PartialColoring) -> tuple:
    return (tuple(sorted(c.edge_colors.items())), tuple(c.uncolored_edges), tuple(c.present_mask(v) for v in range(c.graph.n)))


def kempe_op_checks(c: PartialColoring, kind: str, p: dict) -> tuple[dict[str, tuple[str, str]], PartialColoring]:
    """Apply one operation to a copy of c and check the machinery invariants."""
    out: dict[str, tuple[str, str]] = {}
    before = _snapshot(c)
    n = c.graph.n
    if kind == "swap":
        ch = chain_through(c, p["x"], p["a"], p["b"])
        # every vertex of the chain yields the same component
        same = all(set(chain_through(c, v, p["a"], p["b"]).vertices) == set(ch.vertices) for v in ch.vertices)
        out["chain_consistency"] = (PASS if same else FAIL, "")
        c2 = c.copy()
        c2.swap_chain(ch)
        changed = [v for v in range(n) if c2.missing_mask(v) != c.missing_mask(v)]
        if ch.kind == "cycle" or not ch.edges:
            expect = []
        else:
            expect = sorted({ch.vertices[0], ch.vertices[-1]})
        out["endpoint_missing_sets"] = (PASS if sorted(changed) == expect else FAIL, f"changed={changed} expected={expect}")
        c3 = c2.copy()
        c3.swap_chain(chain_through(c2, p["x"], p["a"], p["b"]))
        out["involution"] = (PASS if _snapshot(c3) == before else FAIL, "")
        out["proper"] = (PASS if validate_proper(c2) else FAIL, "")
        result = c2
    elif kind in ("swap_both", "subchain", "shift"):
        if kind == "swap_both":
            step = SwapAtBoth(p["x"], p["y"], p["a"], p["b"])
        elif kind == "subchain":
            step = SwapSubchain(p["x"], p["y"], p["a"], p["b"])
        else:
            step = Shift(p["r"], tuple(p["run"]))
        try:
            result = apply_script(c, RecolorScript((step,)))
            out["proper"] = (PASS if validate_proper(result) else FAIL, "")
            if kind == "shift":
                # restoring the recorded colors of the run returns the original coloring
                r = p["r"]
                undo = [SetEdge((r, v), None) for v in p["run"]]
                undo += [SetEdge((r, v), c.color(r, v)) for v in p["run"] if c.color(r, v) is not None]
                restore = apply_script(result, RecolorScript(tuple(undo)))
                out["shift_inverse"] = (PASS if _snapshot(restore) == before else FAIL, "")
        except ScriptError:
            result = c
            out["atomicity"] = (PASS if _snapshot(c) == before else FAIL, "input changed after a failed step")
            # a failing step applied in place must also undo its own partial work
            work = c.copy()
            work.max_uncolored = None
            try:
                step.apply(work)
                out["step_rollback"] = (VACUOUS, "step succeeds without the final properness check")
            except ColoringError:
                out["step_rollback"] = (PASS if _snapshot(work) == before else FAIL, "partial step left changes behind")
    elif kind == "script":
        steps = [SwapChainAt(y, a, b) for _, y, a, b in p["steps"]]
        fault = p["fault"] and p["fault_edge"] is not None
        if fault:
            u, v = p["fault_edge"]
            present = sorted(c.present(u) - {c.color(u, v)}) or sorted(c.present(v) - {c.color(u, v)})
            col = present[0] if present else 1
            steps.append(SetEdge((u, v), col))
        try:
            result = apply_script(c, RecolorScript(tuple(steps)))
            out["proper"] = (PASS if validate_proper(result) else FAIL, "")
            if fault:
                # the injected step may happen to be legal after the swaps; it must then be proper
                out["atomicity"] = (PASS if validate_proper(result) else FAIL, "")
        except ScriptError as exc:
            result = c
            out["atomicity"] = (PASS if _snapshot(c) == before else FAIL, "input changed after a failed script")
            out["fault_detected"] = (PASS if fault else FAIL, "script without an injected fault failed: " + str(exc))
    else:
        raise ValueError(kind)
    if _snapshot(c) != before:
        out["input_untouched"] = (FAIL, "operation mutated its input")
    else:
        out["input_untouched"] = (PASS, "")
    return out, result


@_timed
def run_kempe_suite(cfg: CampaignConfig) -> VerificationReport:
    """Randomized swap / shift / script operations on seeded triples; ``trials`` operations in total."""
    rep = VerificationReport("kempe", cfg.to_dict())
    graphs = [build_o_delta(s) for d in range(4, 8) for s in o_delta_specs(d, 3)] + [petersen_star()]
    factory = _TripleFactory(graphs, cfg.seed, "kempe")
    rng = make_rng(cfg.seed, "kempe-ops")
    ops = Counter()
    done = 0
    while done < cfg.trials:
        drawn = factory.draw()
        if drawn is None:
            continue
        _, t = drawn
        c = t.coloring
        for _ in range(min(20, cfg.trials - done)):
            kind, params = _random_op(c, rng)
            checks, c2 = kempe_op_checks(c, kind, params)
            ops[kind] += 1
            for name, (status, detail) in checks.items():
                w = graph_witness(c.graph, c, op=kind, params=params, detail=detail) if status == FAIL else None
                rep.record(name, status, w)
            # the triple survives any operation that keeps r s1 the only uncolored edge
            if c2.uncolored_edges == c.uncolored_edges:
                c = c2
            done += 1
        # stability is reflexive and transitive along the walk
        base = t.coloring
        vs = [t.r, t.s1]
        c_mid = random_kempe_walk(base, rng, 5, avoid_endpoints=frozenset(vs))
        c_end = random_kempe_walk(c_mid, rng, 5, avoid_endpoints=frozenset(vs))
        if is_stable(c_mid, base, vs) and is_stable(c_end, c_mid, vs):
            rep.record("stable_transitive", PASS if is_stable(c_end, base, vs) else FAIL, graph_witness(base.graph, base))
        rep.record("stable_reflexive", PASS if is_stable(base, base, vs, [edge_key(t.r, t.s1)]) else FAIL, graph_witness(base.graph, base))
    rep.data["operations"] = dict(sorted(ops.items()))
    rep.data["operations_total"] = done
    return rep


# -- dispatch and replay ----------------------------------------------------------------------

RUNNERS: dict[str, Callable[[CampaignConfig], VerificationReport]] = {
    "census": run_census,
    "odelta": run_odelta_suite,
    "theorems": run_theorem_suite,
    "lemmas": run_lemma_suite,
    "kempe": run_kempe_suite,
    "two-inducing": run_two_inducing_suite,
}


def run_suite(cfg: CampaignConfig) -> VerificationReport:
    return RUNNERS[cfg.suite](cfg)


def replay_witness(w: dict) -> str:
    """Re-evaluate one failure witness from its own payload; returns the status it reproduces."""
    suite, name = w["suite"], w["check"]
    if suite == "lemmas":
        lid = name.split()[1]
        inst = LemmaInstance.from_dict(w["instance"])
        return check_lemma_predicates(inst, lid).status
    g = from_graph6(w["graph6"])
    if suite == "census":
        if name.startswith("base_case"):
            return FAIL if w["found"] != w["expected"] else PASS
        return census_graph_checks(g, DEFAULT_BUDGET)[name][0]
    if suite == "odelta":
        spec = w["spec"]
        s = ODeltaSpec(
            spec["delta"], spec["n1"], tuple(tuple(e) for e in spec["h1_edges"]), tuple(tuple(e) for e in spec["h2_edges"])
        )
        return odelta_spec_checks(s, DEFAULT_BUDGET)[name][0]
    if suite == "theorems":
        return theorem_checks(g, w["trials"], w["seed"])[name][0]
    c = coloring_from_dict(w["coloring"], g)
    if suite == "two-inducing":
        t = ColoringTriple(g, w["r"], w["s1"], c)
        _, cert = search_maximum_multifan(g, t.r, budget=50)
        checks = two_inducing_checks(t, cert, w["samples"], 0) or {}
        return checks.get(name, (PASS, ""))[0]
    if suite == "kempe":
        if name.startswith("stable"):
            return FAIL
        checks, _ = kempe_op_checks(c, w["op"], w["params"])
        return checks.get(name, (PASS, ""))[0]
    raise ValueError(f"cannot replay witnesses of suite {suite!r}")

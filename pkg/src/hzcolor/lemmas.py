"""Literal predicate evaluation for the multifan / Kierstead / pseudo-multifan / lollipop lemmas.

Each evaluator re-derives the lemma's hypotheses from the instance and only
asserts the conclusion where they hold.  A lemma with no instance of its
hypotheses is reported as "vacuous", never as "pass".

Class-2 status is never computed here: the instance carries it, normally
taken from an oracle certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .coloring import PartialColoring, chain_through, coloring_from_dict, linked, meets_before
from .fans import (
    ColoringTriple,
    MaxFanCertificate,
    Multifan,
    NotTypicalError,
    TypicalMultifan,
    grow_multifan,
    inducing_structure,
    is_elementary,
    kierstead_paths,
    lollipops,
    multifan_violations,
    normalize_typical,
    pseudo_multifan_from_fan,
    random_kempe_walk,
    rotation_report,
    rotation_violations,
    sample_stable_colorings,
)
from .graph6 import from_graph6, to_graph6

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"

LEMMA_IDS = (
    "3.1a", "3.1b", "3.2a", "3.2b", "3.3a", "3.3b",
    "3.5a", "3.5b", "3.5c", "3.5d",
    "3.6a", "3.6b", "3.6c", "3.6d", "3.6e",
    "3.7.1", "3.7.2", "3.8", "3.9",
)
# The 3.5 checks with "maximum multifan" weakened to "the greedy fan of this
# coloring".  Not a statement of the lemma; reported as data only.
RELAXED_IDS = ("3.5a~", "3.5b~", "3.5c~", "3.5d~")


class UnknownLemmaError(KeyError):
    pass


@dataclass
class LemmaInstance:
    triple: ColoringTriple
    class2: bool
    max_fan: MaxFanCertificate | None = None
    samples: int = 10
    seed: int = 0

    def to_dict(self) -> dict:
        t = self.triple
        return {
            "graph6": to_graph6(t.graph),
            "r": t.r,
            "s1": t.s1,
            "coloring": t.coloring.to_dict(),
            "class2": self.class2,
            "max_fan": self.max_fan.to_dict() if self.max_fan else None,
            "samples": self.samples,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LemmaInstance":
        g = from_graph6(d["graph6"])
        c = coloring_from_dict(d["coloring"], g)
        mf = d.get("max_fan")
        cert = None
        if mf:
            cert = MaxFanCertificate(
                mf["center"], mf["size"], mf["upper_bound"], mf["method"], mf["colorings_examined"], tuple(mf["edges_tried"])
            )
        return cls(ColoringTriple(g, d["r"], d["s1"], c), d["class2"], cert, d.get("samples", 10), d.get("seed", 0))


@dataclass
class LemmaResult:
    lemma_id: str
    status: str = VACUOUS
    checks: int = 0
    detail: str = ""
    counterexample: dict | None = None
    branches: dict[str, int] = field(default_factory=dict)

    def check(self, ok: bool, what: str, payload: dict | None = None) -> None:
        self.checks += 1
        if ok:
            if self.status == VACUOUS:
                self.status = PASS
            return
        if self.status != FAIL:
            self.status = FAIL
            self.detail = what
            self.counterexample = payload or {}

    def vacuous(self, why: str) -> "LemmaResult":
        if self.checks == 0:
            self.detail = why
        return self

    def branch(self, name: str) -> None:
        self.branches[name] = self.branches.get(name, 0) + 1

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma_id,
            "status": self.status,
            "checks": self.checks,
            "detail": self.detail,
            "counterexample": self.counterexample,
            "branches": dict(sorted(self.branches.items())),
        }


# -- shared derivations -----------------------------------------------------------


def _hz_fan(inst: LemmaInstance) -> Multifan | None:
    if inst.triple.violations():
        return None
    f = grow_multifan(inst.triple)
    return None if multifan_violations(f) else f


def _typical_forms(f: Multifan) -> list[TypicalMultifan]:
    """Both renamings (which color of s1 plays 2), each as a typical fan."""
    out = []
    for two in sorted(f.coloring.missing(f.s(1))):
        try:
            tf, _, _ = normalize_typical(f, two=two)
        except NotTypicalError:
            continue
        out.append(tf)
    return out


def _two_inducing_prefix(tf: TypicalMultifan) -> TypicalMultifan:
    base = Multifan(tf.base.triple, tf.base.sequence[: tf.alpha])
    return TypicalMultifan(base, tf.alpha, tf.alpha)


def _where(c: PartialColoring, **extra) -> dict:
    return {"coloring": c.to_dict(), **extra}


# -- id 3.1 -------------------------------------------------------------------------


def _lemma_31a(inst: LemmaInstance) -> LemmaResult:
    res = LemmaResult("3.1a")
    if not inst.class2:
        return res.vacuous("graph is not class 2")
    f = _hz_fan(inst)
    if f is None:
        return res.vacuous("no valid coloring triple / multifan")
    res.check(is_elementary(f.coloring, f.vertices), "V(F) is not elementary", _where(f.coloring, fan=list(f.vertices)))
    return res


def _lemma_31b(inst: LemmaInstance) -> LemmaResult:
    res = LemmaResult("3.1b")
    if not inst.class2:
        return res.vacuous("graph is not class 2")
    f = _hz_fan(inst)
    if f is None:
        return res.vacuous("no valid coloring triple / multifan")
    c, r = f.coloring, f.r
    for a in sorted(c.missing(r)):
        for s in f.sequence:
            for b in sorted(c.missing(s)):
                res.check(linked(c, r, s, a, b), f"r and {s} are not ({a},{b})-linked", _where(c, s=s, colors=[a, b]))
    return res


# -- id 3.2 -------------------------------------------------------------------------


def _inducing_pairs(f: Multifan):
    c = f.coloring
    ind = inducing_structure(f)
    for si in f.sequence:
        for sj in f.sequence:
            if si == sj:
                continue
            for d in sorted(c.missing(si)):
                for lam in sorted(c.missing(sj)):
                    yield ind, si, sj, d, lam


def _lemma_32a(inst: LemmaInstance) -> LemmaResult:
    res = LemmaResult("3.2a")
    if not inst.class2:
        return res.vacuous("graph is not class 2")
    f = _hz_fan(inst)
    if f is None or not is_elementary(f.coloring, f.vertices):
        return res.vacuous("no elementary multifan")
    c = f.coloring
    for ind, si, sj, d, lam in _inducing_pairs(f):
        if ind.inducer[d] != ind.inducer[lam] and si < sj:
            res.check(linked(c, si, sj, d, lam), f"{si},{sj} not ({d},{lam})-linked", _where(c, pair=[si, sj], colors=[d, lam]))
    return res


def _lemma_32b(inst: LemmaInstance) -> LemmaResult:
    res = LemmaResult("3.2b")
    if not inst.class2:
        return res.vacuous("graph is not class 2")
    f = _hz_fan(inst)
    if f is None or not is_elementary(f.coloring, f.vertices):
        return res.vacuous("no elementary multifan")
    c = f.coloring
    for ind, si, sj, d, lam in _inducing_pairs(f):
        if ind.inducer[d] == ind.inducer[lam] and ind.precedes(d, lam) and not linked(c, si, sj, d, lam):
            res.branch("unlinked")
            ok = f.r in chain_through(c, sj, lam, d)
            res.check(ok, f"r not on P_{sj}({lam},{d})", _where(c, pair=[si, sj], colors=[d, lam]))
    return res.vacuous("no unlinked pair delta < lambda in one inducing sequence")


# -- id 3.3 -------------------------------------------------------------------------


def _paths(inst: LemmaInstance):
    t = inst.triple
    for v0, v1 in ((t.r, t.s1), (t.s1, t.r)):
        yield from kierstead_paths(t.coloring, v0, v1)


def _lemma_33a(inst: LemmaInstance) -> LemmaResult:
    res = LemmaResult("3.3a")
    if not inst.class2 or inst.triple.violations():
        return res.vacuous("graph is not class 2 or triple invalid")
    g, c, D = inst.triple.graph, inst.triple.coloring, inst.triple.delta
    for k in _paths(inst):
        v = k.vertices
        if min(g.degree(v[1]), g.degree(v[2])) < D:
            res.check(is_elementary(c, v), "V(K) is not elementary", _where(c, path=list(v)))
    return res.vacuous("no 4-vertex Kierstead path with min(d(v1), d(v2)) < Delta")


def _lemma_33b(inst: LemmaInstance) -> LemmaResult:
    res = LemmaResult("3.3b")
    if not inst.class2 or inst.triple.violations():
        return res.vacuous("graph is not class 2 or triple invalid")
    g, c, D = inst.triple.graph, inst.triple.coloring, inst.triple.delta
    for k in _paths(inst):
        v = k.vertices
        if min(g.degree(v[1]), g.degree(v[2])) >= D:
            continue
        used = {c.color(v[1], v[2]), c.color(v[2], v[3])}
        for a in sorted(c.missing(v[0])):
            if a in used:
                res.branch("alpha_on_path")
                continue
            for d in sorted(c.missing(v[3])):
                res.check(linked(c, v[3], v[0], a, d), f"v3, v0 not ({a},{d})-linked", _where(c, path=list(v), colors=[a, d]))
    return res.vacuous("no Kierstead path meeting the hypotheses")


# -- id 3.5 -------------------------------------------------------------------------


def _pseudo_setup(inst: LemmaInstance, lemma_id: str, relaxed: bool):
    """Derive (typical fan, pseudo-multifan) or a vacuous result."""
    res = LemmaResult(lemma_id)
    if not inst.class2:
        return res.vacuous("graph is not class 2"), None, None
    f = _hz_fan(inst)
    if f is None:
        return res.vacuous("no valid coloring triple / multifan"), None, None
    if not relaxed:
        cert = inst.max_fan
        if cert is None or not cert.exact or cert.center != f.r:
            return res.vacuous("no exact maximum-multifan certificate (P1 unknown)"), None, None
        if len(f.vertices) != cert.size:
            return res.vacuous("fan is not maximum at r (P1 fails)"), None, None
    D = inst.triple.delta
    if len(inst.triple.graph.neighbors_of_degree(f.r, D - 1)) != D - 2:
        return res.vacuous("|N_(Delta-1)(r)| != Delta-2"), None, None
    forms = _typical_forms(f)
    if not forms:
        return res.vacuous("fan cannot be made typical"), None, None
    tf = forms[0]
    s = pseudo_multifan_from_fan(tf.base, inst.max_fan)
    if s.t == s.p:
        return res.vacuous("maximum multifan already covers N_(Delta-1)[r]"), None, None
    c = tf.coloring
    if not is_elementary(c, s.vertices):
        return res.vacuous("V(S) not elementary (P2 fails)"), None, None
    rng = random.Random(inst.seed)
    for c2 in sample_stable_colorings(c, s.fan.vertices, s.fan.edges, inst.samples, rng):
        if not is_elementary(c2, s.vertices):
            return res.vacuous("V(S) not elementary under a stable coloring (P2 fails)"), None, None
    return res, tf, s


def _lemma_35(part: str, relaxed: bool = False) -> Callable[[LemmaInstance], LemmaResult]:
    lemma_id = "3.5" + part + ("~" if relaxed else "")

    def run(inst: LemmaInstance) -> LemmaResult:
        res, tf, s = _pseudo_setup(inst, lemma_id, relaxed)
        if s is None:
            return res
        c, r = tf.coloring, s.r
        if part == "a":
            rep = rotation_report(s, c)
            ok = rep.ok and all(not rotation_violations(rot, c, r) for rot in rep.rotations)
            covered = sorted(v for rot in rep.rotations for v in rot.vertices)
            ok = ok and covered == sorted(s.rest)
            res.check(ok, "s_(t+1)..s_(Delta-2) not partitioned into rotations", _where(c, report=rep.to_dict()))
            return res
        fan_miss = s.fan.missing_colors()
        owner = {col: v for v in s.vertices for col in c.missing(v)}
        for sj in s.rest:
            for d in sorted(c.missing(sj)):
                if part == "b":
                    res.check(linked(c, sj, r, 1, d), f"{sj}, r not (1,{d})-linked", _where(c, s_j=sj, delta=d))
                elif part == "c":
                    for gam in sorted(fan_miss - {1}):
                        y = owner[gam]
                        z = c.neighbor_via(r, gam)
                        ch = chain_through(c, y, gam, d)
                        ok = ch.kind == "path" and sj in ch and r in ch and z is not None and z in ch
                        ok = ok and meets_before(ch, z, r)
                        res.check(ok, f"P_y({gam},{d}) fails at y={y}", _where(c, s_j=sj, y=y, z=z, colors=[gam, d]))
                elif part == "d":
                    for ds in sorted(set(owner) - fan_miss - {d}):
                        y = owner[ds]
                        ch = chain_through(c, y, d, ds)
                        same = sj in ch
                        on = r in ch or chain_through(c, r, d, ds).kind == "cycle"
                        res.check(same and on, f"P_y({d},{ds}) fails at y={y}", _where(c, s_j=sj, y=y, colors=[d, ds]))
        return res

    return run


# -- lollipop lemmas ----------------------------------------------------------------------


def _lollipop_setup(inst: LemmaInstance, lemma_id: str):
    res = LemmaResult(lemma_id)
    if not inst.class2:
        return res.vacuous("graph is not class 2"), []
    f = _hz_fan(inst)
    if f is None:
        return res.vacuous("no valid coloring triple / multifan"), []
    return res, _typical_forms(f)


def _lemma_36(part: str) -> Callable[[LemmaInstance], LemmaResult]:
    def run(inst: LemmaInstance) -> LemmaResult:
        res, forms = _lollipop_setup(inst, "3.6" + part)
        for tf in forms:
            c, r, a, D = tf.coloring, tf.r, tf.alpha, tf.delta
            ind = inducing_structure(tf)
            owner = {col: v for v in tf.base.vertices for col in c.missing(v)}
            s_alpha = tf.s(a)
            for lp in lollipops(tf):
                u, x = lp.u, lp.x
                if not (lp.ru_is_alpha_plus_1 and lp.x_misses_alpha_plus_1):
                    continue
                tau = c.color(u, x)
                where = _where(c, u=u, x=x, alpha=a, beta=tf.beta, fan=list(tf.base.vertices))
                if part == "a":
                    ok = tau != 1 and chain_through(c, r, 1, tau).has_edge(u, x)
                    res.check(ok, "ux not on P_r(1, phi(ux))", where)
                    continue
                if ind.inducer.get(tau) != 2:
                    res.branch("tau_not_2_inducing")
                    continue
                if part == "b":
                    c2 = c.copy()
                    c2.max_uncolored = None
                    c2.set_color(u, x, None)
                    ch = chain_through(c2, x, 1, tau)
                    res.check(ch.kind == "path" and set(ch.endpoints) == {x, r}, "P_x(1,tau) does not end at r", where)
                elif part == "c":
                    for d in ind.inducing_colors(2):
                        if ind.precedes(tau, d):
                            ch = chain_through(c, tf.s(1), d, D)
                            res.check(r in ch and owner[d] in ch, f"r not on P_s1({d},Delta)", where)
                elif part == "d":
                    for d in ind.inducing_colors(D):
                        ch = chain_through(c, s_alpha, a + 1, d)
                        res.check(r in ch and owner[d] in ch, f"r not on P_s_alpha(alpha+1,{d})", where)
                elif part == "e":
                    for d in ind.inducing_colors(2):
                        if ind.precedes(d, tau):
                            ch = chain_through(c, s_alpha, d, a + 1)
                            res.check(r in ch and owner[d] in ch, f"r not on P_s_alpha({d},alpha+1)", where)
        return res.vacuous("no lollipop with phi(ru)=alpha+1 and missing(x)=alpha+1")

    return run


def _stable_chain_witnesses(c: PartialColoring, r: int, tau1: int, samples, keep) -> set[int] | None:
    common: set[int] | None = None
    for c2 in samples:
        if not keep(c2):
            continue
        vs = set(chain_through(c2, r, 1, tau1).vertices)
        common = vs if common is None else common & vs
    return common


def _rotation_walk(c: PartialColoring, r: int, w1: int, pool: set[int], beta: int, stop: set[int]):
    """Follow w_(i+1) = the pool vertex with color(r w_(i+1)) = missing(w_i) from w1.

    Returns the walk and the final missing color (None if the walk broke).
    """
    D = c.k
    by_color = {c.color(r, v): v for v in pool}
    walk = [w1]
    while True:
        m = c.missing(walk[-1])
        if len(m) != 1:
            return walk, None
        (col,) = m
        if col in stop:
            return walk, col
        if not beta + 2 <= col <= D - 1:
            return walk, None
        nxt = by_color.get(col)
        if nxt is None or nxt in walk:
            return walk, None
        walk.append(nxt)


def _lemma_37(part: str) -> Callable[[LemmaInstance], LemmaResult]:
    lemma_id = "3.7." + part

    def run(inst: LemmaInstance) -> LemmaResult:
        res, forms = _lollipop_setup(inst, lemma_id)
        rng = random.Random(inst.seed)
        for tf in forms:
            c, r, a, b, D = tf.coloring, tf.r, tf.alpha, tf.beta, tf.delta
            g = tf.base.triple.graph
            pool = set(g.neighbors_of_degree(r, D - 1)) - set(tf.base.sequence)
            fan_v = set(tf.base.vertices)
            for lp in lollipops(tf):
                u, x = lp.u, lp.x
                if not lp.ru_is_alpha_plus_1:
                    continue
                if part == "2" and not lp.x_misses_alpha_plus_1:
                    continue
                for w1 in sorted(pool):
                    tau1 = c.color(r, w1)
                    if not b + 2 <= tau1 <= D - 1:
                        continue
                    if part == "1":
                        samples = [c] + list(sample_stable_colorings(c, tf.base.vertices, tf.base.edges, inst.samples, rng))
                        common = _stable_chain_witnesses(c, r, tau1, samples, lambda c2: c2.color(r, u) == a + 1)
                    else:
                        lv, le = lp.vertices, lp.edges
                        samples = [c]
                        for _ in range(inst.samples):
                            c2 = random_kempe_walk(c, rng, rng.randint(1, 20), avoid_endpoints=frozenset({r, x}))
                            if _only_one_star_changes(c, c2) and _stable(c2, c, lv, le):
                                samples.append(c2)
                        common = _stable_chain_witnesses(c, r, tau1, samples, lambda c2: True)
                    if not common or not (common - fan_v - {w1}):
                        res.branch("hypothesis_w_unmet")
                        continue
                    where = _where(c, u=u, x=x, w1=w1, tau1=tau1, alpha=a, beta=b, sampled_hypothesis=True)
                    stop = {tau1} if part == "1" else {tau1, a + 1}
                    walk, end = _rotation_walk(c, r, w1, pool, b, stop)
                    if end is None:
                        res.check(False, "no sequence w_1..w_t closes", {**where, "walk": walk})
                        continue
                    inner = walk if (part == "1" or end == tau1) else walk[:-1]
                    ok = all(linked(c, r, w, 1, c.the_missing(w)) for w in inner)
                    res.branch("tau1" if end == tau1 else "alpha+1")
                    res.check(ok, "some r, w_i not (1, missing(w_i))-linked", {**where, "walk": walk})
        return res.vacuous("no lollipop / w1 meeting the hypotheses")

    return run


def _stable(c2: PartialColoring, c: PartialColoring, vertices, edges) -> bool:
    from .coloring import is_stable

    return is_stable(c2, c, vertices, edges)


def _only_one_star_changes(c: PartialColoring, c2: PartialColoring) -> bool:
    """Conservative filter: every recolored edge swapped 1 with some color."""
    for e, col in c.edge_colors.items():
        new = c2.color(*e)
        if new != col and 1 not in (new, col):
            return False
    return True


def _lemma_38(inst: LemmaInstance) -> LemmaResult:
    res, forms = _lollipop_setup(inst, "3.8")
    g = inst.triple.graph
    for full in forms:
        tf = _two_inducing_prefix(full)
        c, a, D = tf.coloring, tf.alpha, tf.delta
        for lp in lollipops(tf):
            u, x = lp.u, lp.x
            if lp.ru_is_alpha_plus_1 and lp.x_misses_alpha_plus_1 and c.color(u, x) == D:
                ok = not g.has_edge(u, tf.s(1)) and not g.has_edge(u, tf.s(a))
                res.check(ok, "u adjacent to s1 or s_alpha", _where(c, u=u, x=x, alpha=a, fan=list(tf.base.vertices)))
    return res.vacuous("no lollipop with phi(ru)=alpha+1, missing(x)=alpha+1, phi(ux)=Delta")


def _lemma_39(inst: LemmaInstance) -> LemmaResult:
    res, forms = _lollipop_setup(inst, "3.9")
    g = inst.triple.graph
    for full in forms:
        tf = _two_inducing_prefix(full)
        c, a, r = tf.coloring, tf.alpha, tf.r
        ind = inducing_structure(tf)
        owner = {col: v for v in tf.base.vertices for col in c.missing(v)}
        by_edge = {c.color(r, s): s for s in tf.base.sequence[1:]}
        for lp in lollipops(tf):
            u, x = lp.u, lp.x
            mu = c.color(u, x)
            if not (lp.ru_is_alpha_plus_1 and lp.x_misses_alpha_plus_1) or ind.inducer.get(mu) != 2:
                continue
            bad = [v for v in (owner.get(mu), by_edge.get(mu)) if v is not None and g.has_edge(u, v)]
            res.check(not bad, f"u adjacent to {bad}", _where(c, u=u, x=x, mu=mu, alpha=a, fan=list(tf.base.vertices)))
    return res.vacuous("no lollipop with phi(ux) a 2-inducing color")


EVALUATORS: dict[str, Callable[[LemmaInstance], LemmaResult]] = {
    "3.1a": _lemma_31a,
    "3.1b": _lemma_31b,
    "3.2a": _lemma_32a,
    "3.2b": _lemma_32b,
    "3.3a": _lemma_33a,
    "3.3b": _lemma_33b,
    "3.5a": _lemma_35("a"),
    "3.5b": _lemma_35("b"),
    "3.5c": _lemma_35("c"),
    "3.5d": _lemma_35("d"),
    "3.5a~": _lemma_35("a", relaxed=True),
    "3.5b~": _lemma_35("b", relaxed=True),
    "3.5c~": _lemma_35("c", relaxed=True),
    "3.5d~": _lemma_35("d", relaxed=True),
    "3.6a": _lemma_36("a"),
    "3.6b": _lemma_36("b"),
    "3.6c": _lemma_36("c"),
    "3.6d": _lemma_36("d"),
    "3.6e": _lemma_36("e"),
    "3.7.1": _lemma_37("1"),
    "3.7.2": _lemma_37("2"),
    "3.8": _lemma_38,
    "3.9": _lemma_39,
}


def check_lemma_predicates(instance: LemmaInstance, lemma_id: str) -> LemmaResult:
    try:
        fn = EVALUATORS[lemma_id]
    except KeyError:
        raise UnknownLemmaError(f"unknown lemma id {lemma_id!r}; known: {', '.join(EVALUATORS)}") from None
    res = fn(instance)
    if res.status == FAIL and res.counterexample is not None:
        res.counterexample = {"instance": instance.to_dict(), **res.counterexample}
    return res


def replay(witness: dict, lemma_id: str) -> LemmaResult:
    """Re-evaluate a lemma from a counterexample payload alone."""
    return check_lemma_predicates(LemmaInstance.from_dict(witness["instance"]), lemma_id)

"""Command-line interface: classify, color, gen-odelta, enumerate, census, verify, replay.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .classify import NotCandidateError, classify
from .enumerate import EnumerationLimitError, MAX_N, enumerate_hz_candidates
from .graph6 import Graph6Error, from_graph6, read_graph6_file, to_graph6
from .harness import SUITES, CampaignConfig, coloring_dot, replay_witness, run_suite, witness_dot
from .odelta import InfeasibleSpecError, build_o_delta, canonical_spec, o_delta_specs
from .oracle import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    DeltaColoringError,
    chromatic_index_exact,
    delta_edge_color,
    vizing_plus_one_coloring,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("hzcolor")


class UsageError(Exception):
    pass


def _read_graphs(args) -> list:
    if args.graph6:
        try:
            return [from_graph6(s) for s in args.graph6]
        except Graph6Error as exc:
            raise UsageError(f"bad graph6 string: {exc}") from exc
    if not args.input:
        raise UsageError("give a graph with --input FILE.g6 or --graph6 STRING")
    path = Path(args.input)
    if not path.exists():
        raise UsageError(f"input file not found: {path}")
    try:
        graphs = list(read_graph6_file(path))
    except Graph6Error as exc:
        raise UsageError(f"{path}: {exc}") from exc
    if not graphs:
        raise UsageError(f"{path} holds no graphs")
    return graphs


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    lines = []
    for g in _read_graphs(args):
        try:
            label = classify(g)
        except NotCandidateError as exc:
            raise UsageError(f"{to_graph6(g)}: {exc}") from exc
        if args.json:
            lines.append(json.dumps(label.to_dict(), sort_keys=True))
        else:
            lines.append(f"{to_graph6(g)}\tclass {label.number}\t{label.reason}")
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_color(args) -> int:
    outputs = []
    for i, g in enumerate(_read_graphs(args)):
        try:
            if args.mode == "exact":
                c = chromatic_index_exact(g, node_budget=args.budget).witness
            elif args.mode == "vizing":
                c = vizing_plus_one_coloring(g)
            else:
                c = delta_edge_color(g, seed=args.seed, node_budget=args.budget)
        except (DeltaColoringError, BudgetExceededError) as exc:
            print(f"error: {to_graph6(g)}: {exc}", file=sys.stderr)
            return EXIT_FAIL
        if args.dot:
            dot_path = Path(args.dot)
            if i:
                dot_path = dot_path.with_name(f"{dot_path.stem}_{i}{dot_path.suffix}")
            dot_path.write_text(coloring_dot(c))
        d = c.to_dict()
        if args.json:
            outputs.append(json.dumps({"graph6": to_graph6(g), "colors": c.k, "coloring": d}, sort_keys=True))
        else:
            edges = " ".join(f"{u}-{v}:{col}" for u, v, col in d["edges"])
            outputs.append(f"{to_graph6(g)}\t{c.k} colors\t{edges}")
    _write("\n".join(outputs) + "\n", args.out)
    return EXIT_OK


def cmd_gen_odelta(args) -> int:
    try:
        if args.all:
            specs = o_delta_specs(args.delta, args.shapes)
            if args.n1 is not None:
                specs = [s for s in specs if s.n1 == args.n1]
        else:
            if args.n1 is None:
                raise UsageError("--n1 is required unless --all is given")
            specs = [canonical_spec(args.delta, args.n1)]
    except InfeasibleSpecError as exc:
        raise UsageError(f"no O_Delta member for delta={args.delta}, n1={args.n1}: {exc}") from exc
    if not specs:
        raise UsageError(f"no feasible O_Delta member for delta={args.delta}")
    if args.json:
        text = "\n".join(json.dumps({**s.to_dict(), "graph6": to_graph6(build_o_delta(s))}, sort_keys=True) for s in specs)
    else:
        text = "\n".join(to_graph6(build_o_delta(s)) for s in specs)
    _write(text + "\n", args.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    try:
        graphs = enumerate_hz_candidates(args.max_n, allow_slow=args.allow_slow)
        if args.out:
            count = 0
            with open(args.out, "w", encoding="ascii") as fh:
                for g in graphs:
                    fh.write(to_graph6(g) + "\n")
                    count += 1
            print(f"{count} graphs written to {args.out}", file=sys.stderr)
        else:
            for g in graphs:
                sys.stdout.write(to_graph6(g) + "\n")
    except EnumerationLimitError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK


def _config(args, suite: str) -> CampaignConfig:
    if args.input and not Path(args.input).exists():
        raise UsageError(f"input file not found: {args.input}")
    if args.max_n > MAX_N:
        raise UsageError(f"--max-n {args.max_n} exceeds the built-in cap of {MAX_N}")
    if args.max_n == MAX_N and not args.allow_slow:
        raise UsageError(f"--max-n {MAX_N} needs --allow-slow")
    try:
        return CampaignConfig(
            suite=suite,
            seed=args.seed,
            trials=args.trials,
            max_n=args.max_n,
            budget=args.budget,
            out=args.out,
            min_delta=args.min_delta,
            max_delta=args.max_delta,
            shapes=args.shapes,
            samples=args.samples,
            allow_slow=args.allow_slow,
            input=args.input,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _run(args, suite: str) -> int:
    cfg = _config(args, suite)
    rep = run_suite(cfg)
    if args.json or args.out:
        _write(rep.to_json(timing=args.timing), args.out)
    if not args.json or args.out:
        for line in rep.summary_lines():
            print(line, file=sys.stderr if args.json else sys.stdout)
        if args.timing:
            print(f"wall time {rep.wall_time:.1f}s", file=sys.stderr)
    if args.dot:
        dot_dir = Path(args.dot)
        dot_dir.mkdir(parents=True, exist_ok=True)
        for i, w in enumerate(rep.failures):
            (dot_dir / f"witness_{i:04d}.dot").write_text(witness_dot(w))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_census(args) -> int:
    return _run(args, "census")


def cmd_verify(args) -> int:
    return _run(args, args.suite)


def cmd_replay(args) -> int:
    path = Path(args.input)
    if not path.exists():
        raise UsageError(f"input file not found: {path}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from exc
    if isinstance(data, dict) and "checks" in data:
        witnesses = [w for c in data["checks"].values() for w in c["witnesses"]]
    elif isinstance(data, list):
        witnesses = data
    else:
        witnesses = [data]
    reproduced = 0
    for w in witnesses:
        status = replay_witness(w)
        reproduced += status == "fail"
        print(f"{w.get('suite')}\t{w.get('check')}\t{status}")
    print(f"{reproduced}/{len(witnesses)} witnesses reproduce a failure")
    return EXIT_FAIL if reproduced else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hzcolor",
        description="Edge-coloring toolkit for graphs whose core has maximum degree at most 2",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_input(p):
        p.add_argument("--input", help="graph6 file (one graph per line)")
        p.add_argument("--graph6", action="append", help="graph6 string (repeatable)")

    def common(p):
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--json", action="store_true", help="JSON output")

    p = sub.add_parser("classify", help="class 1 / class 2 label with its reason")
    graph_input(p)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("color", help="edge-color a graph")
    graph_input(p)
    common(p)
    p.add_argument("--mode", choices=("exact", "vizing", "delta"), default="exact",
                   help="exact: optimal by search; vizing: Delta+1 colors; delta: Delta colors (class 1 only)")
    p.add_argument("--dot", help="write a DOT drawing of the coloring")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("gen-odelta", help="generate O_Delta members as graph6")
    common(p)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--n1", type=int, help="order of the 2-regular part")
    p.add_argument("--all", action="store_true", help="every feasible spec (up to --shapes per n1)")
    p.add_argument("--shapes", type=int, default=50)
    p.set_defaults(func=cmd_gen_odelta)

    p = sub.add_parser("enumerate", help="connected graphs with core maximum degree <= 2, as graph6")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--out")
    p.add_argument("--allow-slow", action="store_true", help=f"permit max-n = {MAX_N}")
    p.set_defaults(func=cmd_enumerate)

    def campaign(p):
        common(p)
        p.add_argument("--input", help="graph6 file to use instead of the built-in enumeration")
        p.add_argument("--seed", type=int, default=0, help="64-bit campaign seed")
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--max-n", type=int, default=9)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="oracle node budget")
        p.add_argument("--min-delta", type=int, default=4)
        p.add_argument("--max-delta", type=int, default=8)
        p.add_argument("--shapes", type=int, default=50, help="H1/H2 shape choices per O_Delta order")
        p.add_argument("--samples", type=int, default=10, help="stable colorings sampled per instance")
        p.add_argument("--allow-slow", action="store_true", help=f"permit max-n = {MAX_N} and slower oracle checks")
        p.add_argument("--timing", action="store_true", help="include wall time (reports are then not byte-stable)")
        p.add_argument("--dot", help="directory for DOT drawings of failure witnesses")

    p = sub.add_parser("census", help="classify every candidate up to --max-n and cross-check the oracle")
    campaign(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="run a verification suite")
    campaign(p)
    p.add_argument("--suite", choices=SUITES, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("replay", help="re-evaluate failure witnesses from a report or witness JSON")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def cli_main(argv: list[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Exit status: 0 partition found / check passed, 1 no partition / check
failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import BenchConfig, ConfigError, emit_report, run_suite, write_traces
from .combinatorics import SolverRefusal
from .graph import Graph, GraphFormatError, generate, parse_graph, verify_three_partition, write_graph
from .solvers import (
    domatic_number_dp,
    solve_auto,
    solve_bounded_det,
    solve_bounded_rand,
    solve_branching,
    solve_brute_force,
    solve_dp,
)
from .state import ContractViolation

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_graph(text)
    except GraphFormatError as e:
        raise UsageError(f"{path}: {e}") from None


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


def cmd_solve(args) -> int:
    g = _read_graph(args.input)
    algo = args.algo
    if algo == "brute":
        out = solve_brute_force(g)
    elif algo == "dp":
        out = solve_dp(g)
    elif algo == "branch":
        out = solve_branching(g)
    elif algo == "bounded":
        out = solve_bounded_det(g)
    elif algo == "rand":
        out = solve_bounded_rand(g, c=args.c, seed=args.seed)
    else:
        out = solve_auto(g)
    print(json.dumps(out.to_json(stats=args.stats, traces=args.traces)))
    return EXIT_OK if out.found else EXIT_NO


def cmd_delta(args) -> int:
    g = _read_graph(args.input)
    print(domatic_number_dp(g))
    return EXIT_OK


def cmd_gen(args) -> int:
    params = {"cycle": ("k",), "path": ("k",), "complete": ("k",),
              "random": ("n", "max_degree", "seed"), "regular": ("n", "degree", "seed")}[args.kind]
    kw = {}
    for p in params:
        val = getattr(args, p)
        if val is None:
            raise UsageError(f"gen --kind {args.kind} needs --{p.replace('_', '-')}")
        kw[p] = val
    g = generate(args.kind, **kw)
    desc = " ".join(f"{k}={v}" for k, v in kw.items())
    _write(args.out, write_graph(g, [f"{args.kind} {desc}"]))
    return EXIT_OK


def _load_partition(path: str) -> list[list[int]]:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON ({e.msg})") from None
    # accept either the bare schema or a full `solve` output
    if isinstance(doc, dict) and "partition" in doc:
        doc = doc["partition"]
    if not isinstance(doc, dict) or any(k not in doc for k in ("D1", "D2", "D3")):
        raise UsageError(f"{path}: expected an object with keys D1, D2, D3")
    blocks = [doc[k] for k in ("D1", "D2", "D3")]
    if not all(isinstance(b, list) and all(isinstance(v, int) for v in b) for b in blocks):
        raise UsageError(f"{path}: blocks must be lists of integer vertex ids")
    return blocks


def cmd_verify(args) -> int:
    g = _read_graph(args.input)
    blocks = _load_partition(args.partition)
    ok = verify_three_partition(g, *blocks)
    print("ok" if ok else "fail")
    return EXIT_OK if ok else EXIT_NO


def cmd_bench(args) -> int:
    try:
        config = BenchConfig.from_json(Path(args.config).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {args.config}: {e.strerror}") from None
    except (json.JSONDecodeError, ConfigError) as e:
        raise UsageError(f"{args.config}: {e}") from None
    fmt = args.format or ("json" if args.out.endswith(".json") else "csv")
    records = run_suite(config, keep_traces=bool(args.traces))
    _write(args.out, emit_report(records, fmt))
    if args.traces:
        _write(args.traces, write_traces(records))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="domatic", description="Three-way dominating partitions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="decide and print a partition as JSON")
    p.add_argument("--algo", choices=["brute", "dp", "branch", "bounded", "rand", "auto"], default="auto")
    p.add_argument("--input", required=True)
    p.add_argument("--c", type=float, default=3.0, help="confidence for --algo rand (error <= e^-c)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stats", action="store_true")
    p.add_argument("--traces", action="store_true", help="include maxgap/surplus traces in stats")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("delta", help="print the domatic number")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("gen", help="write a generated graph")
    p.add_argument("--kind", required=True, choices=["cycle", "path", "complete", "random", "regular"])
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a candidate partition")
    p.add_argument("--input", required=True)
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run a benchmark sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--traces", help="also write branching traces (JSON) here")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"domatic: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ContractViolation, SolverRefusal, ValueError) as e:
        print(f"domatic: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Four subcommands: ``match`` decides/counts/enumerates matchings, ``reduce``
turns a graph file into a pattern/text instance, ``encode-fo`` exports the
first-order form of an instance, and ``verify`` runs the property suites.

Exit codes: 0 affirmative / all checks passed, 1 negative result or a
refuted property (with counterexample), 2 usage error, 3 parse or
validation error, 4 resource budget exceeded.

Pattern and text arguments are taken inline; an argument starting with
'@' names a file to read instead.  The brute-force budget may also be set
through the PERMPAT_BUDGET environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys

from .core import BudgetExceededError, Embedding, ValidationError
from .folog import encode_formula, encode_structure, export_instance, model_check
from .matcher import (
    DEFAULT_BUDGET,
    MatchRequest,
    Mode,
    first_embedding,
    match_backtracking,
    match_bruteforce,
    match_dispatch,
)
from .reduction import KRangeError, format_trace, reduce
from .textio import (
    ParseError,
    parse_graph,
    parse_pattern,
    parse_permutation,
    serialize_pattern,
    serialize_permutation,
)
from .verify import run_suites

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_BUDGET = 4


def _read_arg(arg: str) -> str:
    if arg.startswith("@"):
        with open(arg[1:], "r", encoding="utf-8") as handle:
            return handle.read()
    return arg


def _budget(args: argparse.Namespace) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("PERMPAT_BUDGET")
    if env is not None and env.isdigit():
        return int(env)
    return DEFAULT_BUDGET


def _format_positions(e: Embedding) -> str:
    return "(" + ",".join(str(p) for p in e.positions) + ")"


def _cmd_match(args: argparse.Namespace) -> int:
    pattern = parse_pattern(_read_arg(args.pattern))
    text = parse_permutation(_read_arg(args.text))
    engine = args.engine
    budget = _budget(args)
    if engine == "fo" and (args.count or args.all):
        print("error: the fo engine only decides; drop --count/--all", file=sys.stderr)
        return EXIT_USAGE

    if args.count:
        if engine == "brute":
            count = match_bruteforce(MatchRequest(pattern, text, Mode.COUNT), budget=budget)
        elif engine == "backtrack":
            count = match_backtracking(MatchRequest(pattern, text, Mode.COUNT))
        else:
            count = match_dispatch(MatchRequest(pattern, text, Mode.COUNT))
        print(count)
        return EXIT_OK if count > 0 else EXIT_NEGATIVE

    if args.all:
        if engine == "brute":
            found = match_bruteforce(
                MatchRequest(pattern, text, Mode.ENUMERATE_ALL), budget=budget
            )
        elif engine == "backtrack":
            found = match_backtracking(MatchRequest(pattern, text, Mode.ENUMERATE_ALL))
        else:
            found = match_dispatch(MatchRequest(pattern, text, Mode.ENUMERATE_ALL))
        for e in found:
            print(_format_positions(e))
        return EXIT_OK if found else EXIT_NEGATIVE

    if engine == "fo":
        witness = model_check(encode_structure(text), encode_formula(pattern))
        embedding = Embedding(witness) if witness is not None else None
    elif engine == "brute":
        embedding = first_embedding(pattern, text, engine="brute", budget=budget)
    elif engine == "backtrack":
        embedding = first_embedding(pattern, text, engine="backtrack")
    else:  # auto: decide via dispatch, then fetch a witness for the report
        if match_dispatch(MatchRequest(pattern, text, Mode.DECIDE)):
            embedding = first_embedding(pattern, text)
        else:
            embedding = None
    if embedding is None:
        print("NO MATCH")
        return EXIT_NEGATIVE
    print(f"MATCH {_format_positions(embedding)}")
    return EXIT_OK


def _cmd_reduce(args: argparse.Namespace) -> int:
    with open(args.graph, "r", encoding="utf-8") as handle:
        graph, file_k = parse_graph(handle.read())
    k = args.k if args.k is not None else file_k
    if k is None:
        print("error: no k given (neither -k nor a 'k' line in the graph file)",
              file=sys.stderr)
        return EXIT_USAGE
    trace = reduce(graph, k)
    with open(args.output + ".pattern", "w", encoding="utf-8") as handle:
        handle.write(serialize_pattern(trace.stage3_pattern) + "\n")
    with open(args.output + ".text", "w", encoding="utf-8") as handle:
        handle.write(serialize_permutation(trace.stage3_text) + "\n")
    if args.trace:
        with open(args.output + ".trace", "w", encoding="utf-8") as handle:
            handle.write(format_trace(trace))
    print(f"|P| = {len(trace.stage3_pattern)}")
    print(f"|T| = {len(trace.stage3_text)}")
    return EXIT_OK


def _cmd_encode_fo(args: argparse.Namespace) -> int:
    pattern = parse_pattern(_read_arg(args.pattern))
    text = parse_permutation(_read_arg(args.text))
    payload = export_instance(encode_structure(text), encode_formula(pattern))
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(payload + "\n")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.max_n < 1 or args.max_k < 1 or args.max_l < 1 or args.samples < 0:
        print("error: contradictory bounds (all maxima must be >= 1, samples >= 0)",
              file=sys.stderr)
        return EXIT_USAGE
    results = run_suites(
        suite=args.suite,
        max_n=args.max_n,
        max_k=args.max_k,
        max_l=args.max_l,
        samples=args.samples,
        seed=args.seed,
    )
    failed = False
    for r in results:
        if r.ok:
            print(f"ok {r.detail}")
        else:
            failed = True
            print(f"FAIL {r.name}: {r.detail}")
            if r.counterexample:
                print(f"  counterexample {r.counterexample}")
    return EXIT_NEGATIVE if failed else EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permpat",
        description="Generalized permutation pattern matching toolbox",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_match = sub.add_parser("match", help="decide/count/enumerate matchings")
    p_match.add_argument("-p", "--pattern", required=True,
                         help="pattern, inline or @file (bracket or dash syntax)")
    p_match.add_argument("-t", "--text", required=True, help="text permutation, inline or @file")
    group = p_match.add_mutually_exclusive_group()
    group.add_argument("--count", action="store_true", help="print the exact matching count")
    group.add_argument("--all", action="store_true",
                       help="print every embedding, lexicographically")
    p_match.add_argument("--engine", choices=["auto", "brute", "backtrack", "fo"],
                         default="auto")
    p_match.add_argument("--budget", type=int, default=None,
                         help="candidate budget for the brute engine")
    p_match.set_defaults(func=_cmd_match)

    p_reduce = sub.add_parser("reduce", help="build a matching instance from a graph")
    p_reduce.add_argument("graph", help="graph file ('p <l> <m>' header format)")
    p_reduce.add_argument("-k", type=int, default=None,
                          help="independent set size (default: the file's k line)")
    p_reduce.add_argument("-o", "--output", required=True,
                          help="output prefix for .pattern/.text[/.trace]")
    p_reduce.add_argument("--trace", action="store_true", help="also write the stage trace")
    p_reduce.set_defaults(func=_cmd_reduce)

    p_fo = sub.add_parser("encode-fo", help="export the first-order form of an instance")
    p_fo.add_argument("-p", "--pattern", required=True)
    p_fo.add_argument("-t", "--text", required=True)
    p_fo.add_argument("-o", "--output", required=True)
    p_fo.set_defaults(func=_cmd_encode_fo)

    p_verify = sub.add_parser("verify", help="run the property suites")
    p_verify.add_argument("--suite", choices=["engines", "reduction", "fo", "all"],
                          default="all")
    p_verify.add_argument("--max-n", type=int, default=6, dest="max_n")
    p_verify.add_argument("--max-k", type=int, default=4, dest="max_k")
    p_verify.add_argument("--max-l", type=int, default=6, dest="max_l")
    p_verify.add_argument("--samples", type=int, default=200)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())

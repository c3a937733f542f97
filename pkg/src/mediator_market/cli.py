"""Command line: ``market generate | run | bench``."""

from __future__ import annotations

import argparse
import sys
import time

from .bench import InfeasibleInstance, bench, make_report, summarize, summary_yaml, timed_replay
from .instance_gen import GenParams, generate
from .market import ScriptAborted
from .script_io import ScriptError, parse_script, serialize_script

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_ABORT = 2


def _nat(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {value}")
    return value


def _positive(text: str) -> int:
    value = _nat(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--users", type=_positive, required=True)
    p.add_argument("--items", type=_positive, required=True)
    p.add_argument("--transactions", type=_nat, required=True)
    p.add_argument("--seed", type=_nat, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="market", description="Mediator market engine.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic script")
    _add_instance_args(gen)
    gen.add_argument("--output", "-o", required=True)

    run = sub.add_parser("run", help="replay a script from the empty market")
    run.add_argument("--input", "-i", required=True)
    run.add_argument("--strict", action="store_true", help="abort at the first failed operation")

    b = sub.add_parser("bench", help="time repeated replays of a generated instance")
    _add_instance_args(b)
    b.add_argument("--repeat", type=_positive, default=3)
    return parser


def _params(args) -> GenParams:
    return GenParams(args.users, args.items, args.transactions, args.seed)


def cmd_generate(args) -> int:
    text = serialize_script(generate(_params(args)))
    try:
        with open(args.output, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as err:
        print(f"market generate: {err}", file=sys.stderr)
        return 1
    return EXIT_OK


def cmd_run(args) -> int:
    start = time.perf_counter()
    try:
        with open(args.input, encoding="utf-8") as f:
            text = f.read()
    except OSError as err:
        print(f"market run: {err}", file=sys.stderr)
        return EXIT_ABORT
    t0 = time.perf_counter()
    try:
        ops = parse_script(text)
    except ScriptError as err:
        print(f"market run: {args.input}: {err}", file=sys.stderr)
        return EXIT_ABORT
    parse_time = time.perf_counter() - t0
    try:
        log, exec_time = timed_replay(ops, strict=args.strict)
    except ScriptAborted as err:
        print(f"market run: {err}", file=sys.stderr)
        return EXIT_ABORT
    total = time.perf_counter() - start
    report = make_report(log, exec_time, parse_time, total)
    sys.stdout.write(report.to_yaml())
    return EXIT_FAILURES if report.failures else EXIT_OK


def cmd_bench(args) -> int:
    try:
        reports = bench(_params(args), args.repeat)
    except InfeasibleInstance as err:
        print(f"market bench: {err}", file=sys.stderr)
        return EXIT_FAILURES
    docs = [r.to_yaml() for r in reports] + [summary_yaml(summarize(reports))]
    sys.stdout.write("---\n".join(docs))
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "run": cmd_run, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("generate", "bench"):
        try:
            _params(args)
        except ValueError as err:
            parser.error(str(err))
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())

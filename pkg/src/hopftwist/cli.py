"""Command-line interface.

    hopftwist check <file> [--degree N] [--max-order N] [--report text|machine]
    hopftwist verify-example <key> [...]
    hopftwist list-examples

Exit codes: 0 all checks passed (warnings allowed), 1 some check failed,
2 input error.
"""

from __future__ import annotations

import argparse
import sys

from .catalog import (CATALOG_KEYS, RunOptions, list_examples, load_example,
                      run_tasks, verify_example)
from .document import load_definition
from .poly import EngineError, InputError


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--degree", type=int, default=4,
                   help="default degree bound for pair checks (triples use one less)")
    p.add_argument("--max-order", type=int, default=64,
                   help="iteration cap for exponential twist series")
    p.add_argument("--report", choices=("text", "machine"), default="text")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hopftwist",
        description="Exact checks for twisted coordinate Hopf algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run the tasks of a definition document")
    p_check.add_argument("file")
    _add_common(p_check)

    p_verify = sub.add_parser("verify-example", help="run a built-in example")
    p_verify.add_argument("key", choices=CATALOG_KEYS)
    _add_common(p_verify)

    sub.add_parser("list-examples", help="list built-in example keys")

    args = parser.parse_args(argv)
    try:
        if args.command == "list-examples":
            for line in list_examples():
                print(line)
            return 0
        opts = RunOptions(degree=args.degree, max_order=args.max_order,
                          report=args.report)
        if args.command == "check":
            try:
                with open(args.file) as fh:
                    text = fh.read()
            except OSError as exc:
                print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
                return 2
            doc = load_definition(text, max_order=opts.max_order)
            report, status = run_tasks(doc, opts)
        else:
            report, status = verify_example(args.key, opts)
        sys.stdout.write(report)
        return status
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point: ``soldered check FILE`` and ``soldered example NAME``.

Exit status is 0 when every check passes, 1 when any check fails or errors,
and 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from ..errors import ParseError, ScriptNameError, UnknownExample
from .builtins import EXAMPLES, builtin_example, example_names
from .runner import run
from .script import parse_script

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="soldered", description="Exact soldering and Dirac-submanifold checks.")
    parser.add_argument("--list-examples", action="store_true", help="list built-in example scripts")
    parser.add_argument("--json", action="store_true", help="machine-readable report")
    parser.add_argument("--verbose", action="store_true", help="all witnesses and outputs")
    sub = parser.add_subparsers(dest="command")
    p_check = sub.add_parser("check", help="run a check script")
    p_check.add_argument("file", type=Path)
    p_example = sub.add_parser("example", help="run a built-in example")
    p_example.add_argument("name")
    for p in (p_check, p_example):
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.list_examples:
        for name in example_names():
            print(f"{name:22} {EXAMPLES[name][0]}")
        return EXIT_OK
    try:
        if args.command == "check":
            script = parse_script(args.file.read_text(encoding="utf-8"))
        elif args.command == "example":
            script = builtin_example(args.name)
        else:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
    except (ParseError, ScriptNameError, UnknownExample, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run(script)
    print(report.to_json(args.verbose) if args.json else report.to_text(args.verbose))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

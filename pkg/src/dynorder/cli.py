"""Command line interface.

Exit status: 0 on success, 2 when the diagram has violations (or the
requested result does not apply to it), 1 on parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import DynorderError, ParseError, SchemaError
from .examples import example_names, get_example
from .io import dumps, parse_document
from .report import SECTIONS, Analysis, to_dot, to_json, to_text

COMMANDS = {
    "validate": ("validation",),
    "order": ("order",),
    "filtration": ("filtration",),
    "classify": ("classification",),
    "energy": ("energy",),
    "report": SECTIONS,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dynorder", description="Dynamically ordered energy functions of Morse-Smale diagrams.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in list(COMMANDS) + ["examples"]:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group()
        src.add_argument("--input", metavar="PATH", help="diagram JSON file, '-' for stdin")
        src.add_argument("--example", metavar="NAME", help="built-in diagram (see the examples command)")
        p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    return parser


def _load(args):
    if args.example:
        try:
            return get_example(args.example)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if args.input is None:
        raise UsageError("one of --input or --example is required")
    if args.input == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            data = Path(args.input).read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    return parse_document(data)


def _examples(args, out) -> int:
    if args.example:
        try:
            out.write(dumps(get_example(args.example)))
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        return 0
    if args.format == "json":
        out.write(json.dumps(example_names()) + "\n")
    else:
        out.write("\n".join(example_names()) + "\n")
    return 0


def run_cli(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "examples":
            return _examples(args, out)
        diagram = _load(args)
    except UsageError as exc:
        err.write(f"dynorder: {exc}\n")
        return 1
    except (ParseError, SchemaError) as exc:
        err.write(f"dynorder: invalid document: {exc}\n")
        return 1

    analysis = Analysis(diagram)
    if args.format == "dot":
        out.write(to_dot(diagram))
        return 0 if analysis.valid else 2

    render = to_json if args.format == "json" else to_text
    if not analysis.valid:
        out.write(render(analysis.sections(["validation"])))
        return 2
    payload = analysis.sections(COMMANDS[args.command])
    out.write(render(payload))
    if args.command == "classify" and not payload["classification"]["applicable"]:
        err.write(f"dynorder: {payload['classification']['reason']}\n")
        return 2
    return 0


def main() -> None:
    try:
        sys.exit(run_cli())
    except DynorderError as exc:
        sys.stderr.write(f"dynorder: {exc}\n")
        sys.exit(2)


if __name__ == "__main__":
    main()

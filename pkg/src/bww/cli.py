"""``bww`` command line: check | query | export | closure.

Exit status: 0 success, 1 validation errors, 2 lex/parse/resolve/build
failure, 3 bad invocation, I/O failure or unknown name in a query.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import export, query
from . import semantics as sem
from .diagnostics import Diagnostic, Severity, use_color
from .errors import FrontendError, ModelError
from .kernel import Model
from .syntax import load_source
from .validator import has_errors, validate

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_SYNTAX = 2
EXIT_USAGE = 3


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _Exit(EXIT_USAGE)


def _emit(diags: Sequence[Diagnostic], fmt: str):
    if fmt == "json":
        print(json.dumps([d.to_json() for d in diags], indent=2), file=sys.stderr)
    else:
        color = use_color(sys.stderr)
        for d in diags:
            print(d.render(color), file=sys.stderr)


def _load(path: str, fmt: str = "text") -> Model:
    try:
        source = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"bww: cannot read {path}: {exc}", file=sys.stderr)
        raise _Exit(EXIT_USAGE)
    try:
        return load_source(source, path)
    except FrontendError as exc:
        _emit(exc.diagnostics, fmt)
    except ModelError as exc:
        _emit([Diagnostic("B1", Severity.ERROR, str(exc), span=exc.span)], fmt)
    raise _Exit(EXIT_SYNTAX)


def run_check(path: str, fmt: str = "text") -> int:
    model = _load(path, fmt)
    diags = validate(model)
    if fmt == "json" or diags:
        _emit(diags, fmt)
    return EXIT_INVALID if has_errors(diags) else EXIT_OK


def run_query(path: str, expr: str, trace: bool = False) -> int:
    model = _load(path)
    try:
        result = query.evaluate(model, expr)
    except (query.QueryError, ModelError) as exc:
        print(f"bww: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(query.format_value(result.value))
    if trace:
        for step in result.trace:
            print(f"  {step}")
    return EXIT_OK


def run_export(path: str, out: Optional[str] = None) -> int:
    model = _load(path)
    text = export.dumps(model)
    if out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        print(f"bww: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def run_closure(path: str) -> int:
    model = _load(path)
    for line in sorted(f"{a} -> {b}" for a, b in sem.precedes_closure(model)):
        print(line)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="bww", description="Check and query BWW-ML models.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    c = sub.add_parser("check", help="validate a model and print diagnostics")
    c.add_argument("path")
    c.add_argument("--format", choices=("text", "json"), default="text")

    q = sub.add_parser("query", help="evaluate one supplementary function")
    q.add_argument("path")
    q.add_argument("expr", help='e.g. "possesses?(book1, Title)"')
    q.add_argument("--trace", action="store_true", help="print the facts behind the answer")

    e = sub.add_parser("export", help="write the model as JSON")
    e.add_argument("path")
    e.add_argument("-o", "--output", default=None)

    cl = sub.add_parser("closure", help="print the precedes closure")
    cl.add_argument("path")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = make_parser().parse_args(argv)
        if args.command == "check":
            return run_check(args.path, args.format)
        if args.command == "query":
            return run_query(args.path, args.expr, args.trace)
        if args.command == "export":
            return run_export(args.path, args.output)
        return run_closure(args.path)
    except _Exit as exc:
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: batch scripts and an interactive loop."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .config import Caps
from .errors import IteriteError, ParseError
from .lang.session import HELP_TEXT, Session
from .lang.syntax import parse

EXIT_OK, EXIT_EVAL, EXIT_PARSE = 0, 1, 2


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="iterite",
        description="Evaluate constructions on iterative multisets with finite symmetry. "
                    "Without --script, commands are read from standard input.",
        epilog=HELP_TEXT,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--script", metavar="PATH", help="run commands from PATH and exit")
    p.add_argument("--json", action="store_true", help="print one JSON object per command")
    p.add_argument("--max-group-order", type=_positive, metavar="N",
                   help="largest permutation group to enumerate "
                        "(default: $ITERITE_MAX_GROUP_ORDER or 10000)")
    p.add_argument("--max-points", type=_positive, metavar="N",
                   help="largest G-set carrier (default 1000)")
    p.add_argument("--max-depth", type=_positive, metavar="N",
                   help="deepest element rank (default 16)")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _caps(args) -> Caps:
    base = Caps.from_env()
    overrides = {k: v for k, v in (("max_group_order", args.max_group_order),
                                   ("max_points", args.max_points),
                                   ("max_depth", args.max_depth)) if v is not None}
    return replace(base, **overrides)


def describe(err: IteriteError) -> str:
    name = type(err).__name__
    if isinstance(err, ParseError) or err.span is None:
        return f"{name}: {err}"
    line, col = err.span
    return f"{name}: {err} (at line {line}, column {col})"


def _emit(outcome, as_json: bool, out) -> None:
    print(outcome.json_line() if as_json else outcome.text, file=out)


def run_script(text: str, session: Session, as_json: bool = False, out=None, err=None) -> int:
    """Parse every line first, then execute in order, stopping at the first failure."""
    out = out or sys.stdout
    err = err or sys.stderr
    commands = []
    try:
        for lineno, line in enumerate(text.splitlines(), start=1):
            cmd = parse(line, lineno)
            if cmd is not None:
                commands.append(cmd)
    except ParseError as exc:
        print(describe(exc), file=err)
        return EXIT_PARSE
    for cmd in commands:
        try:
            outcome = session.execute(cmd)
        except ParseError as exc:  # from a loaded session file
            print(describe(exc), file=err)
            return EXIT_PARSE
        except IteriteError as exc:
            print(describe(exc), file=err)
            return EXIT_EVAL
        _emit(outcome, as_json, out)
    return EXIT_OK


def repl(session: Session, as_json: bool = False, stdin=None, out=None, err=None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    err = err or sys.stderr
    interactive = stdin.isatty()
    status = EXIT_OK
    lineno = 0
    while True:
        if interactive:
            print("iterite> ", end="", file=out, flush=True)
        line = stdin.readline()
        if not line:
            break
        lineno += 1
        try:
            outcome = session.run(line, lineno)
        except ParseError as exc:
            print(describe(exc), file=err)
            status = EXIT_PARSE
            continue
        except IteriteError as exc:
            print(describe(exc), file=err)
            status = EXIT_EVAL
            continue
        if outcome is not None:
            _emit(outcome, as_json, out)
    if interactive:
        print(file=out)
        return EXIT_OK
    return status


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    session = Session(caps=_caps(args))
    if args.script is None:
        return repl(session, args.json)
    try:
        text = Path(args.script).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"IoError: cannot read {args.script}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_EVAL
    return run_script(text, session, args.json)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

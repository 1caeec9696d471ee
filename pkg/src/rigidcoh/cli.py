"""Command-line frontend: run, check, and emit the bundled corpus.

Exit codes: 0 on success, 1 when any task fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from .errors import DanglingReference, ParseError, SchemaError
from .runner import all_succeeded, render_text, run
from .taskio import canonical_json, parse


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        print(f"error: cannot read {path}: {e}", file=sys.stderr)
        raise SystemExit(2)


def _parse_or_exit(text: str):
    try:
        return parse(text)
    except (ParseError, SchemaError, DanglingReference) as e:
        print(f"error [{e.code}]: {e}", file=sys.stderr)
        raise SystemExit(2)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="rigidcoh",
        description="Finite-level rigid Galois cohomology task runner.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a task document")
    p_run.add_argument("file", help="path to a JSON task document")
    p_run.add_argument("--jobs", type=int, default=1, help="parallel task evaluation")
    p_run.add_argument("--format", choices=("json", "text"), default="json")

    p_check = sub.add_parser("check", help="parse and validate a document only")
    p_check.add_argument("file", help="path to a JSON task document")

    sub.add_parser("examples", help="emit the bundled worked-examples corpus")

    args = parser.parse_args(argv)

    if args.command == "examples":
        text = resources.files("rigidcoh.data").joinpath("corpus.json").read_text("utf-8")
        sys.stdout.write(text)
        return 0

    if args.command == "check":
        doc = _parse_or_exit(_read(args.file))
        print(f"ok: {len(doc.tasks)} task(s), all references resolve")
        return 0

    doc = _parse_or_exit(_read(args.file))
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    results = run(doc, parallelism=args.jobs)
    if args.format == "json":
        sys.stdout.write(canonical_json(results))
    else:
        sys.stdout.write(render_text(results))
    return 0 if all_succeeded(results) else 1


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front door.

Subcommands::

    schemacut decompose SCHEMA.json [--strategy I|II|auto] [--out R.json]
                        [--sql VIEWS.sql] [--dot G.dot]
                        [--max-paths N] [--max-width N]
    schemacut check INSTANCE.json [--strategy I|II|auto]
    schemacut chains SCHEMA.json --set A,B[,...]
    schemacut bench GRID.json [--strategies I,II] [--timeout SECONDS] [--csv OUT.csv]
    schemacut export-dot SCHEMA.json [--out G.dot]

Exit codes: 0 success, 1 input or usage error, 2 policy inconsistent,
3 post-decomposition verification failure.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bench import load_grid, results_to_csv, run_benchmark
from .consistency import ConsistencyTimeout, check, load_cc_instance
from .decompose import WidthBoundExceeded, sql_views
from .fdg import build_fdg, export_dot
from .joinchain import PathLimits, join_chains
from .model import SchemaError, load_schema
from .pipeline import report_to_dict, secure_decompose

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INCONSISTENT = 2
EXIT_VERIFY = 3


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT


def _write_or_print(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _edge_label(ref) -> str:
    return f"{''.join(ref[0])}->{''.join(ref[1])}"


def cmd_decompose(args: argparse.Namespace) -> int:
    try:
        schema, policy = load_schema(args.schema)
    except (SchemaError, OSError) as exc:
        return _fail(str(exc))

    limits = PathLimits(max_paths_per_target=args.max_paths)
    try:
        report = secure_decompose(
            schema,
            policy,
            limits=limits,
            strategy=args.strategy,
            max_width=args.max_width,
        )
    except (WidthBoundExceeded, SchemaError) as exc:
        return _fail(str(exc))
    except ConsistencyTimeout:
        return _fail("consistency check timed out")

    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)

    doc = json.dumps(report_to_dict(report), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(doc, encoding="utf-8")
    else:
        print(doc, end="")

    if not report.consistency.consistent:
        print("policy inconsistent: no cut satisfies the required sets", file=sys.stderr)
        return EXIT_INCONSISTENT

    if args.sql:
        Path(args.sql).write_text(sql_views(report.result), encoding="utf-8")
    if args.dot:
        cut_refs = set(report.consistency.cut or ())
        Path(args.dot).write_text(export_dot(build_fdg(schema), cut_refs), encoding="utf-8")

    fragments = len(report.result.fragments)
    cut_size = len(report.consistency.cut or ())
    required_ok = all(ok for _, ok in report.required_verified)
    summary = (
        f"fragments={fragments} cut={cut_size} "
        f"secure={str(report.security_verified).lower()} "
        f"required_ok={str(required_ok).lower()}"
    )
    print(summary, file=sys.stderr if not args.out else sys.stdout)

    if not report.security_verified or not required_ok:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    try:
        instance = load_cc_instance(args.instance)
    except (SchemaError, OSError) as exc:
        return _fail(str(exc))
    try:
        result = check(instance, args.strategy, timeout_s=args.timeout)
    except ConsistencyTimeout:
        return _fail("consistency check timed out")
    doc = {
        "consistent": result.consistent,
        "cut": sorted(result.cut) if result.cut is not None else None,
        "preserved": [sorted(c) for c in result.preserved] if result.preserved else None,
    }
    print(json.dumps(doc, indent=2))
    return EXIT_OK if result.consistent else EXIT_INCONSISTENT


def cmd_chains(args: argparse.Namespace) -> int:
    try:
        schema, _ = load_schema(args.schema)
    except (SchemaError, OSError) as exc:
        return _fail(str(exc))
    targets = [a for a in args.set.split(",") if a]
    if not targets:
        return _fail("--set needs at least one attribute")
    limits = PathLimits(max_paths_per_target=args.max_paths)
    try:
        family = join_chains(build_fdg(schema), targets, limits)
    except SchemaError as exc:
        return _fail(str(exc))
    if len(set(targets)) == 1:
        print("warning: a single attribute is trivially associable", file=sys.stderr)
    if family.truncated:
        print("warning: enumeration truncated by limits", file=sys.stderr)
    doc = {
        "set": list(family.source_set),
        "chains": [
            {
                "ancestor": "".join(chain.ancestor),
                "edges": sorted(_edge_label(ref) for ref in chain.edges),
            }
            for chain in family.chains
        ],
        "truncated": family.truncated,
    }
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        names, grid = load_grid(args.grid)
    except (SchemaError, OSError, ValueError) as exc:
        return _fail(str(exc))
    strategies = [s for s in args.strategies.split(",") if s]
    for s in strategies:
        if s not in ("I", "II", "auto"):
            return _fail(f"unknown strategy {s!r}")
    results = run_benchmark(grid, strategies, timeout_s=args.timeout)
    text = results_to_csv(results, names)
    _write_or_print(text, args.csv)
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    try:
        schema, _ = load_schema(args.schema)
    except (SchemaError, OSError) as exc:
        return _fail(str(exc))
    _write_or_print(export_dot(build_fdg(schema)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schemacut",
        description="Secure decomposition of relational schema external layers.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a schema against its policy")
    p.add_argument("schema")
    p.add_argument("--strategy", choices=["I", "II", "auto"], default="auto")
    p.add_argument("--out", help="write the report JSON here instead of stdout")
    p.add_argument("--sql", help="write CREATE VIEW lines here")
    p.add_argument("--dot", help="write the graph (cut edges highlighted) here")
    p.add_argument("--max-paths", type=int, default=10_000)
    p.add_argument("--max-width", type=int, default=24)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check", help="consistency-check an abstract instance")
    p.add_argument("instance")
    p.add_argument("--strategy", choices=["I", "II", "auto"], default="auto")
    p.add_argument("--timeout", type=float, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("chains", help="enumerate join chains for an attribute set")
    p.add_argument("schema")
    p.add_argument("--set", required=True, help="comma-separated attribute names")
    p.add_argument("--max-paths", type=int, default=10_000)
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("bench", help="run a benchmark grid")
    p.add_argument("grid")
    p.add_argument("--strategies", default="I,II")
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--csv", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export-dot", help="export a schema's dependency graph as DOT")
    p.add_argument("schema")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; fold into the input-error code
        # unless it is --help/--version (exit 0).
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front end.

    cptgroups verify [--json] [--only CHECK_ID] [--max-order N]
    cptgroups table NAME [--format text|csv|json]
    cptgroups identify NAME
    cptgroups fingerprint NAME
    cptgroups export-dot DIAGRAM PATH|-
    cptgroups list [groups|maps|diagrams|checks]

Exit codes: 0 pass, 1 verification failure, 2 usage or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .atlas import Atlas, AtlasBuildError, build_atlas
from .catalog import NotInCatalog, identify
from .diagrams import BUILTIN, Malformed, to_dot
from .groups import DEFAULT_MAX_ORDER, CapExceeded, GroupError, cayley_table, fingerprint
from .verify import check_ids, run_checks

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cptgroups", description="Build and verify the CPT group atlas.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run every check and report")
    v.add_argument("--json", action="store_true", help="machine-readable report")
    v.add_argument("--only", metavar="CHECK_ID", help="run a single check")
    v.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="closure cap (default %(default)s)")

    t = sub.add_parser("table", help="print a Cayley table")
    t.add_argument("name")
    t.add_argument("--format", choices=("text", "csv", "json"), default="text")

    i = sub.add_parser("identify", help="catalog name and fingerprint of a group")
    i.add_argument("name")

    f = sub.add_parser("fingerprint", help="isomorphism invariants of a group")
    f.add_argument("name")

    e = sub.add_parser("export-dot", help="write a diagram as graphviz text")
    e.add_argument("diagram", choices=sorted(BUILTIN))
    e.add_argument("path", help="output file, or - for stdout")

    ls = sub.add_parser("list", help="list available names")
    ls.add_argument("what", nargs="?", choices=("groups", "maps", "diagrams", "checks"), default="groups")
    return p


def _group(at: Atlas, name: str):
    try:
        return at.groups[name]
    except KeyError:
        raise UsageError(f"unknown group {name!r}; try 'list groups'") from None


def cmd_verify(args, at: Optional[Atlas]) -> int:
    if at is None:
        at = build_atlas(max_order=args.max_order)
    try:
        report = run_checks(at, only=args.only)
    except KeyError:
        raise UsageError(f"unknown check id {args.only!r}; try 'list checks'") from None
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_table(args, at: Atlas) -> int:
    table = cayley_table(_group(at, args.name))
    if args.format == "csv":
        sys.stdout.write(table.to_csv())
    elif args.format == "json":
        print(json.dumps({"group": args.name, **table.as_dict()}, indent=2, ensure_ascii=False))
    else:
        print(table.to_text())
    return EXIT_OK


def cmd_identify(args, at: Atlas) -> int:
    g = _group(at, args.name)
    print(identify(g))
    print(json.dumps(fingerprint(g).as_dict(), sort_keys=False))
    return EXIT_OK


def cmd_fingerprint(args, at: Atlas) -> int:
    print(json.dumps(fingerprint(_group(at, args.name)).as_dict(), indent=2))
    return EXIT_OK


def cmd_export_dot(args, at: Atlas) -> int:
    text = to_dot(BUILTIN[args.diagram](at))
    if args.path == "-":
        sys.stdout.write(text)
    else:
        with open(args.path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_list(args, at: Atlas) -> int:
    if args.what == "groups":
        for name, g in at.groups.items():
            print(f"{name}\t{g.order}")
    elif args.what == "maps":
        for name, f in at.maps.items():
            print(f"{name}\t{f.domain.name} -> {f.codomain.name}")
    elif args.what == "diagrams":
        print("\n".join(BUILTIN))
    else:
        print("\n".join(check_ids(at)))
    return EXIT_OK


_COMMANDS = {
    "table": cmd_table,
    "identify": cmd_identify,
    "fingerprint": cmd_fingerprint,
    "export-dot": cmd_export_dot,
    "list": cmd_list,
}


def main(argv: Optional[list] = None, atlas: Optional[Atlas] = None) -> int:
    """Entry point. ``atlas`` substitutes a prebuilt (possibly tampered) atlas."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        if args.command == "verify":
            return cmd_verify(args, atlas)
        return _COMMANDS[args.command](args, atlas if atlas is not None else build_atlas())
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except NotInCatalog as exc:
        print(f"error: not in catalog: {exc}", file=sys.stderr)
    except (CapExceeded, Malformed, AtlasBuildError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except GroupError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""ns-bound command line, backed by the same tool functions the MCP server exposes.

    ns-bound invariants FILE [--check-smooth]
    ns-bound bound FILE [--paper-faithful] [--check-smooth] [--exact] [--json PATH]
    ns-bound gotzmann (--hp EXPR | FILE)
    ns-bound verify [--r A..B] [--d A..B] [--only NAME] [--all] [--json PATH]
    ns-bound schema

Exit codes: 0 success, 2 usage/parse/precondition error, 3 resource limit,
4 verification discrepancy, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable

from dotenv import load_dotenv
from fastmcp import FastMCP

ROOT = Path(__file__).resolve().parents[1]

load_dotenv(ROOT / ".env")

sys.path.insert(0, str(ROOT))

from nsbound import report  # noqa: E402
from tools import register_all_tools  # noqa: E402

logger = logging.getLogger("ns-bound")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_DISCREPANCY = 4

_EXIT_CODES = {
    "parse": EXIT_USAGE,
    "precondition": EXIT_USAGE,
    "improper": EXIT_USAGE,
    "not_admissible": EXIT_USAGE,
    "resource": EXIT_RESOURCE,
}


class CommandFailed(Exception):
    def __init__(self, payload: dict[str, Any]):
        self.payload = payload
        super().__init__(payload.get("error", "unknown error"))

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES.get(self.payload.get("error_type"), EXIT_ERROR)


def _tool_fns() -> dict[str, Callable[..., str]]:
    server = FastMCP("ns-bound-cli")
    register_all_tools(server)
    return {tool.name: tool.fn for tool in server._tool_manager._tools.values()}


def _call(tool: str, **kwargs) -> dict[str, Any]:
    fns = _tool_fns()
    if tool not in fns:
        raise RuntimeError(f"ns-bound tool {tool!r} not found")
    payload = json.loads(fns[tool](**kwargs))
    if "error" in payload:
        raise CommandFailed(payload)
    return payload


def _limits(args) -> dict[str, Any]:
    return {"max_pairs": args.max_pairs, "max_degree": args.max_degree}


def _emit(doc: dict[str, Any], text: str, json_path: str | None):
    report.validate(doc)
    if json_path:
        serialized = report.dumps(doc) + "\n"
        if json_path == "-":
            sys.stdout.write(serialized)
            return
        Path(json_path).write_text(serialized)
        logger.info("wrote %s", json_path)
    print(text)


def cmd_invariants(args) -> int:
    doc = _call(
        "ideal", action="invariants", path=args.file, order=args.order,
        check_smooth=args.check_smooth, **_limits(args),
    )
    _emit(doc, report.render_invariants(doc), args.json)
    return EXIT_OK


def cmd_bound(args) -> int:
    doc = _call(
        "bound", action="full", path=args.file, order=args.order,
        paper_faithful=args.paper_faithful, check_smooth=args.check_smooth,
        precision=args.precision, **_limits(args),
    )
    _emit(doc, report.render_bound(doc, exact=args.exact), args.json)
    return EXIT_OK


def cmd_gotzmann(args) -> int:
    if bool(args.hp) == bool(args.file):
        raise CommandFailed(
            {"error": "give exactly one of --hp EXPR or FILE", "error_type": "precondition"}
        )
    doc = _call("gotzmann", action="decompose", hp=args.hp, path=args.file)
    _emit(doc, report.render_gotzmann(doc), args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    only = ",".join(args.only) if args.only else None
    doc = _call(
        "verify", action="run", r_range=args.r, d_range=args.d, t_range=args.t,
        n_range=args.n, only=only, include_all=args.all, precision=args.precision,
    )
    _emit(doc, report.render_verify(doc), args.json)
    return EXIT_OK if doc["all_hold"] else EXIT_DISCREPANCY


def cmd_schema(args) -> int:
    print(report.dumps(report.JSON_SCHEMA))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None, help="Working precision in bits")
    common.add_argument("--max-pairs", type=int, default=None, help="Groebner S-pair budget")
    common.add_argument("--max-degree", type=int, default=None, help="Groebner degree budget")
    common.add_argument("--json", metavar="PATH", default=None, help="Write the JSON report")
    common.add_argument("--debug", action="store_true", help="Enable debugging")

    parser = argparse.ArgumentParser(
        prog="ns-bound", description="Explicit bounds for torsion in Neron-Severi groups"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="dim, degree and Hilbert polynomial")
    p.add_argument("file")
    p.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    p.add_argument("--check-smooth", action="store_true")
    p.set_defaults(handler=cmd_invariants)

    p = sub.add_parser("bound", parents=[common], help="torsion bounds for an ideal")
    p.add_argument("file")
    p.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    p.add_argument("--paper-faithful", action="store_true", help="closed-form chain only")
    p.add_argument("--check-smooth", action="store_true")
    p.add_argument("--exact", action="store_true", help="print exact values in full")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("gotzmann", parents=[common], help="Gotzmann decomposition")
    p.add_argument("file", nargs="?")
    p.add_argument("--hp", help='Hilbert polynomial, e.g. "2t+1"')
    p.set_defaults(handler=cmd_gotzmann)

    p = sub.add_parser("verify", parents=[common], help="check the inequality chains")
    p.add_argument("--r", help="r range A..B (default 3..8)")
    p.add_argument("--d", help="d range A..B (default 2..8)")
    p.add_argument("--t", help="t range A..B (default 8r, 8r+1, 8r+7, 16r, 64r)")
    p.add_argument("--n", help="n range A..B (default 1..64)")
    p.add_argument("--only", action="append", help="run only this check (repeatable)")
    p.add_argument("--all", action="store_true", help="include the opt-in checks")
    p.set_defaults(handler=cmd_verify, precision=128)

    p = sub.add_parser("schema", parents=[common], help="print the report JSON schema")
    p.set_defaults(handler=cmd_schema)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.debug else logging.INFO,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except CommandFailed as exc:
        print(f"ns-bound: error: {exc}", file=sys.stderr)
        if "trace" in exc.payload:
            for step in exc.payload["trace"]:
                print(
                    f"  degree {step['degree']}: {step['steps']} step(s), "
                    f"remainder {step['remainder']}",
                    file=sys.stderr,
                )
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

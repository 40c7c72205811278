"""Command line: ``check``, ``inspect`` and ``explain``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for usage
and schema errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checks import BUDGETS, CHECKS, SUITES, run_suite
from .clone_algebra import FinAlgebra, spectrum
from .duality import AlgHom, check_naturality_alg, is_isomorphism
from .errors import SchemaError
from .fileformat import ingest
from .finspace import FinSpace, UniformMap, is_separated
from .galois import is_supercomplete
from .tower import Tower, classify, hyper_complete_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clonedual", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", help="run a verification suite")
    check.add_argument("suite", help=f"one of: {', '.join(sorted(SUITES))}")
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--budget", choices=BUDGETS, default="small")
    check.add_argument("--report", type=Path, help="write the report here instead of stdout")

    inspect = sub.add_parser("inspect", help="validate an instance file and summarize it")
    inspect.add_argument("file", type=Path)

    explain = sub.add_parser("explain", help="describe what a check verifies")
    explain.add_argument("check_id")
    return parser


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _cmd_check(args) -> int:
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; known: {', '.join(sorted(SUITES))}", file=sys.stderr)
        return EXIT_USAGE
    report = run_suite(args.suite, args.seed, args.budget)
    text = render_report(report)
    if args.report:
        args.report.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    for entry in report["checks"]:
        line = f"{entry['verdict'].upper():4} {entry['check_id']} ({entry['instances']} instances)"
        print(line, file=sys.stderr)
    return EXIT_OK if report["summary"]["failed"] == 0 else EXIT_FAIL


def summarize(obj) -> dict:
    if isinstance(obj, FinSpace):
        return {
            "kind": "space",
            "points": obj.point_count,
            "finest": list(obj.finest.block_id),
            "blocks": obj.finest.block_count,
            "separated": is_separated(obj),
            "supercomplete": is_supercomplete(obj) if obj.point_count else False,
        }
    if isinstance(obj, FinAlgebra):
        return {
            "kind": "algebra",
            "index": obj.index_size,
            "finest_kernel": list(obj.finest_kernel.block_id),
            "spectrum_points": spectrum(obj).point_count,
        }
    if isinstance(obj, Tower):
        rep = classify(obj)
        return {
            "kind": "tower",
            "levels": list(obj.levels),
            "stabilization_level": rep.stabilization_level,
            "discrete_at_truncation": rep.discrete_at_truncation,
            "metrizable_presentation": rep.metrizable_presentation,
            "lpc_equals_pc": hyper_complete_check(obj),
        }
    if isinstance(obj, UniformMap):
        return {
            "kind": "map",
            "values": list(obj.values),
            "injective": obj.is_injective(),
            "surjective": obj.is_surjective(),
        }
    assert isinstance(obj, AlgHom)
    return {
        "kind": "hom",
        "block_map": list(obj.block_map),
        "isomorphism": is_isomorphism(obj),
        "natural": check_naturality_alg(obj),
    }


def _cmd_inspect(args) -> int:
    try:
        obj = ingest(args.file)
    except OSError as exc:
        print(f"{args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(json.dumps(summarize(obj), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def explain(check_id: str) -> str:
    check = CHECKS[check_id]
    suites = sorted(s for s, ids in SUITES.items() if check_id in ids and s != "all")
    return (
        f"{check.check_id}\n"
        f"  statement: {check.statement}\n"
        f"  procedure: {check.procedure}\n"
        f"  suites:    {', '.join(suites)}\n"
    )


def _cmd_explain(args) -> int:
    if args.check_id not in CHECKS:
        print(f"unknown check {args.check_id!r}; known: {', '.join(sorted(CHECKS))}",
              file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(explain(args.check_id))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"check": _cmd_check, "inspect": _cmd_inspect, "explain": _cmd_explain}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())

import argparse
import sys

from hyperlat.cli.common import emit
from hyperlat.core.utils import to_jsonable
from hyperlat.services.verify import SUITES, run_all


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("verify", help="Run the identity check suites")
    parser.add_argument("--suite", action="append", choices=sorted(SUITES) + ["all"], help="repeatable; default all")
    parser.add_argument("--full", action="store_true", help="include the expensive checks")
    parser.add_argument("--json", dest="output")
    parser.set_defaults(handler=run_verify)


def run_verify(args: argparse.Namespace) -> int:
    names = None if not args.suite or "all" in args.suite else args.suite
    reports = run_all(full=args.full, names=names)
    for report in reports:
        status = "ok" if report.passed else "FAILED"
        sys.stderr.write(f"{report.suite}: {len(report.checks) - len(report.failures)}/{len(report.checks)} {status}\n")
        for check in report.failures:
            sys.stderr.write(f"  failed: {check.name}\n")
    emit({"passed": all(r.passed for r in reports), "suites": [r.model_dump() for r in reports]}, args.output)
    return 0 if all(r.passed for r in reports) else 1

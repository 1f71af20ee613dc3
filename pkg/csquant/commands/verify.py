import argparse
import logging
import os

from csquant.checks import GROUPS, run_verification
from csquant.commands import emit
from csquant.errors import UsageError
from csquant.export import EXPORT_SUFFIXES, export_report, save_verification_report

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="Run the verification suite; exit 0 iff every check passes")
    parser.add_argument("--tol", type=float, help="override the tolerance of every '<=' check")
    parser.add_argument("--only", action="append", choices=GROUPS, help="run only this group (repeatable)")
    parser.add_argument("--export", metavar="PATH", help="also write the report as .xlsx or .pdf")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.tol is not None and not args.tol > 0:
        raise UsageError(f"--tol must be positive, got {args.tol}")
    if args.export and os.path.splitext(args.export)[1].lower() not in EXPORT_SUFFIXES:
        raise UsageError(f"--export must end in {' or '.join(EXPORT_SUFFIXES)}, got {args.export!r}")
    report = run_verification(only=args.only, tol=args.tol)
    path = save_verification_report(report)
    logger.info("Saved verification report to %s", path)
    if args.export:
        export_report(report, args.export)
    emit(report)
    return 0 if report.ok else 1

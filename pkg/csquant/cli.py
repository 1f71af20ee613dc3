"""Command-line entry point: `python main.py {circle,sphere,fuzzy,verify} ...`

stdout carries the JSON (or CSV) payload only; logs go to stderr.
Exit codes: 0 success, 1 verification or numerical failure, 2 usage error.
"""

import argparse
import logging
import sys
from typing import List, Optional

from csquant import __version__
from csquant.commands import circle, fuzzy, sphere, verify
from csquant.config import get_settings
from csquant.errors import ConfigError, CsqError, UsageError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csquant",
        description="Coherent-state quantization of the circle, the 2-sphere and the fuzzy sphere",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs on stderr")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Include commands
    circle.register(subparsers)
    sphere.register(subparsers)
    fuzzy.register(subparsers)
    verify.register(subparsers)
    return parser


def configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, get_settings().log_level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE

    try:
        configure_logging(args.verbose)
        return args.handler(args)
    except (ConfigError, UsageError) as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CsqError, ValueError) as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

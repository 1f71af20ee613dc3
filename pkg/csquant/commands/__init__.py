"""One module per CLI command; each exposes register(subparsers) and run(args)."""

import sys
from typing import Any

from csquant.export import dumps


def emit(payload: Any) -> None:
    sys.stdout.write(dumps(payload))
    sys.stdout.write("\n")

import argparse
import math

import numpy as np

from csquant.commands import emit
from csquant.errors import UsageError
from csquant.frames import identity_residual
from csquant.model_circle import (
    SYMBOL_BASIS,
    CircleModel,
    circle_matrix_decomposition,
    circle_symbols,
    symmetric_matrix,
)
from csquant.models import Report
from csquant.quantizer import combine, lower_symbol

IDENTITY_TOL = 1e-12
SYMBOL_TOL = 1e-10


def register(subparsers) -> None:
    parser = subparsers.add_parser("circle", help="Quantize the 2x2 symmetric matrix (a b; b d) on the circle")
    parser.add_argument("--a", type=float, default=1.0)
    parser.add_argument("--b", type=float, default=0.0)
    parser.add_argument("--d", type=float, default=1.0)
    parser.add_argument("--samples", type=int, default=8, help="number of equally spaced sample angles")
    parser.set_defaults(handler=run)


def build_report(a: float, b: float, d: float, samples: int) -> Report:
    if samples < 1:
        raise UsageError(f"--samples must be positive, got {samples}")
    model = CircleModel.build()
    matrix = symmetric_matrix(a, b, d)
    lower, upper = circle_symbols(a, b, d)
    angles = np.arange(samples) * (2.0 * math.pi / samples)

    computed_lower = np.real(lower_symbol(model.frame, matrix)(angles))
    requantized = model.quantize_real(combine(upper.coefficients, SYMBOL_BASIS))
    c0, c1, c3 = circle_matrix_decomposition(matrix)

    return Report(
        model="circle",
        quantities={
            "matrix": matrix,
            "decomposition": {"sigma0": c0, "sigma1": c1, "sigma3": c3},
            "angles": angles,
            "lower_symbol": lower(angles),
            "upper_symbol": upper(angles),
        },
        residuals={
            "identity": identity_residual(model.frame),
            "lower_symbol_vs_quantizer": float(np.max(np.abs(computed_lower - lower(angles)))),
            "quantize_upper_symbol": requantized.distance(matrix),
        },
        tolerances_used={
            "identity": IDENTITY_TOL,
            "lower_symbol_vs_quantizer": SYMBOL_TOL,
            "quantize_upper_symbol": SYMBOL_TOL,
        },
    )


def run(args: argparse.Namespace) -> int:
    emit(build_report(args.a, args.b, args.d, args.samples))
    return 0

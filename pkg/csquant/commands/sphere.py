import argparse
import math

import numpy as np

from csquant.checks import A_PHI_GOLDEN, A_THETA_GOLDEN
from csquant.commands import emit
from csquant.errors import UsageError
from csquant.harmonics import X3
from csquant.model_sphere import (
    PRINTED_COMMUTATOR_CONSTANT,
    SphereSpinHalfModel,
    angle_operators,
    commutator_report,
    coordinate_operators,
    phase_alternative_equivalence,
    sigma_symbol_residuals,
    sigma_symbols,
)
from csquant.models import Report
from csquant.operators import PAULI
from csquant.quantizer import quantize

ACTIONS = ("ops", "symbols", "commutator", "phase-check")


def register(subparsers) -> None:
    parser = subparsers.add_parser("sphere", help="Spin-1/2 quantization of the 2-sphere")
    parser.add_argument("action", choices=ACTIONS)
    parser.add_argument("--samples", type=int, default=5, help="sample points for the symbols action")
    parser.set_defaults(handler=run)


def sample_points(samples: int):
    """theta from the north to the south pole, phi stepping around the equator"""
    if samples < 2:
        raise UsageError(f"--samples must be at least 2, got {samples}")
    theta = np.linspace(0.0, math.pi, samples)
    phi = np.arange(samples) * (2.0 * math.pi / samples)
    return theta, phi


def ops_report(model: SphereSpinHalfModel) -> Report:
    a_theta, a_phi = angle_operators(model)
    x1, x2, x3 = coordinate_operators(model)
    return Report(
        model="sphere",
        quantities={"A_theta": a_theta, "A_phi": a_phi, "A_x1": x1, "A_x2": x2, "A_x3": x3},
        residuals={
            "A_theta": a_theta.distance(A_THETA_GOLDEN),
            "A_phi": a_phi.distance(A_PHI_GOLDEN),
            "A_x": max(op.distance(sigma / 3.0) for op, sigma in zip((x1, x2, x3), PAULI[1:])),
        },
        tolerances_used={"A_theta": 1e-8, "A_phi": 1e-8, "A_x": 1e-10},
    )


def symbols_report(model: SphereSpinHalfModel, samples: int) -> Report:
    theta, phi = sample_points(samples)
    table = {}
    for k, (lower, upper) in sigma_symbols(model).items():
        table[f"sigma{k}"] = {"lower": np.real(lower(theta, phi)), "upper": np.real(upper(theta, phi))}
    residuals = sigma_symbol_residuals(model)
    return Report(
        model="sphere",
        quantities={"theta": theta, "phi": phi, "symbols": table},
        residuals=residuals,
        tolerances_used={name: 1e-10 for name in residuals},
    )


def commutator_payload(model: SphereSpinHalfModel) -> Report:
    report = commutator_report(model)
    theta, phi = sample_points(5)
    return Report(
        model="sphere",
        quantities={
            "commutator": report.matrix,
            "structure": "i*c*sigma1",
            "c": report.constant,
            "lower_symbol_of_commutator": {
                "theta": theta,
                "phi": phi,
                "values": report.lower_symbol(theta, phi),
            },
            "lower_symbol_of_square": report.square_lower_value,
        },
        residuals={"off_sigma1": report.off_sigma1, "square_symbol_spread": report.square_lower_spread},
        tolerances_used={"off_sigma1": 1e-10, "square_symbol_spread": 1e-10},
        notes={
            "paper_discrepancy": (
                f"printed constant pi^2/64 = {PRINTED_COMMUTATOR_CONSTANT:.12g}; the printed A_theta and A_phi "
                f"imply c = pi^2/16 = {math.pi ** 2 / 16:.12g}; computed c / printed = {report.discrepancy_ratio:.12g}"
            ),
        },
    )


def phase_check_report(model: SphereSpinHalfModel) -> Report:
    alternative = SphereSpinHalfModel.build(phase_alternative=True)
    rule = model.rule(1)
    a_x3, alt_x3 = quantize(model.frame, rule, X3), quantize(alternative.frame, rule, X3)
    return Report(
        model="sphere",
        quantities={"A_x3": a_x3, "A_x3_alternative": alt_x3},
        residuals={"projector_difference": phase_alternative_equivalence(model), "A_x3_difference": a_x3.distance(alt_x3)},
        tolerances_used={"projector_difference": 1e-12, "A_x3_difference": 1e-12},
    )


def run(args: argparse.Namespace) -> int:
    model = SphereSpinHalfModel.build()
    if args.action == "ops":
        report = ops_report(model)
    elif args.action == "symbols":
        report = symbols_report(model, args.samples)
    elif args.action == "commutator":
        report = commutator_payload(model)
    else:
        report = phase_check_report(model)
    emit(report)
    return 0

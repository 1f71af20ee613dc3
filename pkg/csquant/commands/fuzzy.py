import argparse
import sys
from typing import Tuple

from csquant import fuzzy
from csquant.commands import emit
from csquant.config import get_settings
from csquant.errors import UsageError
from csquant.export import tensor_payload, write_tensor, write_tensor_csv
from csquant.harmonics import X1, X2, X3
from csquant.models import Report

ACTIONS = ("report", "operator", "madore", "truncation", "tensor")
BUILTIN_OBSERVABLES = {"x1": X1, "x2": X2, "x3": X3}


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "fuzzy",
        help="(L+1)-dimensional coherent-state quantization of the sphere (fuzzy sphere)",
        description=(
            "Spherical harmonics are orthonormal under sin(theta) dtheta dphi / 4pi, "
            "i.e. sqrt(4pi) times the usual normalization."
        ),
    )
    parser.add_argument("action", nargs="?", choices=ACTIONS, default="report")
    parser.add_argument("--L", type=int, default=1, dest="L")
    parser.add_argument("--r", type=float, default=1.0, help="fuzzy-sphere radius entering kappa")
    parser.add_argument("--f", help="x1, x2, x3 or harmonic coefficients 'l,m,re,im;...'")
    parser.add_argument("--ell", type=int, help="harmonic degree for the truncation table (default L+1)")
    parser.add_argument("--export-tensor", metavar="PATH", help="write the coefficient tensor (.json or .csv)")
    parser.add_argument("--format", choices=("json", "csv"), default="json", help="output format of the tensor action")
    parser.set_defaults(handler=run)


def operator_section(fs: fuzzy.FuzzySphere, text: str) -> Tuple[dict, dict]:
    """Quantize a built-in coordinate or a harmonic sum given on the command line"""
    name = text.strip().lower()
    if name in BUILTIN_OBSERVABLES:
        op = fuzzy.quantize_fuzzy(fs, BUILTIN_OBSERVABLES[name])
        return {"f": name, "operator": op}, {}
    try:
        coefficients = fuzzy.parse_coefficients(text)
    except ValueError as e:
        raise UsageError(f"--f: {e}") from e
    operator = fuzzy.operator_from_coefficients(fs, coefficients)
    residual = fuzzy.harmonic_equivalence_residual(fs, coefficients)
    return {"f": text, "operator": operator}, {"tensor_vs_direct": residual}


def madore_section(fs: fuzzy.FuzzySphere) -> dict:
    comparison = fuzzy.madore_compare(fs)
    multiple, radius_residual = fuzzy.radius_relation(fs)
    return {
        "lambda": list(comparison.lambdas),
        "expected_lambda": comparison.expected_lambda,
        "kappa": comparison.kappa,
        "lambda_over_kappa": comparison.radius_multiple,
        "fit_residual": comparison.residual,
        "radius_multiple": multiple,
        "radius_residual": radius_residual,
    }


def truncation_section(fs: fuzzy.FuzzySphere, ell: int) -> dict:
    table = fuzzy.truncation_table(fs, ell)
    return {"ell": ell, "m": list(table), "norms": list(table.values())}


def run(args: argparse.Namespace) -> int:
    max_l = get_settings().max_l
    if args.L < 0:
        raise UsageError(f"--L must be non-negative, got {args.L}")
    if not args.r > 0:
        raise UsageError(f"--r must be positive, got {args.r}")
    if args.ell is not None and args.ell < 0:
        raise UsageError(f"--ell must be non-negative, got {args.ell}")
    if args.L > max_l:
        raise UsageError(f"--L {args.L} exceeds the configured maximum {max_l} (CSQ_MAX_L)")
    fs = fuzzy.build_fuzzy(args.L, args.r)
    if args.export_tensor:
        write_tensor(fs.coefficient_tensor, args.export_tensor)

    if args.action == "tensor":
        if args.format == "csv":
            write_tensor_csv(fs.coefficient_tensor, sys.stdout)
        else:
            emit(tensor_payload(fs.coefficient_tensor))
        return 0

    ell = args.L + 1 if args.ell is None else args.ell
    quantities = {"L": fs.L, "r": fs.r, "dim": fs.dim}
    residuals = {"identity": fs.identity_residual}
    tolerances = {"identity": fuzzy.IDENTITY_TOL}

    if args.action == "operator" and not args.f:
        raise UsageError("the operator action needs --f")
    if args.action in ("report", "operator") and args.f:
        section, extra = operator_section(fs, args.f)
        quantities.update(section)
        residuals.update(extra)
        tolerances.update({name: 1e-9 for name in extra})
    if args.action in ("report", "madore"):
        section = madore_section(fs)
        quantities["madore"] = section
        residuals["madore_fit"] = section["fit_residual"]
        tolerances["madore_fit"] = 1e-10
    if args.action in ("report", "truncation"):
        quantities["truncation"] = truncation_section(fs, ell)

    emit(Report(model="fuzzy", quantities=quantities, residuals=residuals, tolerances_used=tolerances))
    return 0

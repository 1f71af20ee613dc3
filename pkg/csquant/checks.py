"""The verification suite behind `verify`: every stated identity, checked and recorded.

Each group returns a list of CheckRecord; a group that raises is recorded as a
single failed record, and the remaining groups still run.
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from csquant import fuzzy, model_sphere, oracle
from csquant.frames import identity_residual, injection_norms, kernel, reproduce, weyl_wigner
from csquant.harmonics import COORDINATES, ONE, PHI, THETA, X1, X2, X3, harmonic_indices
from csquant.model_circle import CircleModel, circle_matrix_decomposition, circle_symbols, symmetric_matrix
from csquant.model_circle import SYMBOL_BASIS as CIRCLE_SYMBOL_BASIS
from csquant.models import CheckRecord, CheckStatus, Comparison, VerificationReport
from csquant.operators import PAULI, SIGMA_1, HermitianOperator, commutator, eig
from csquant.quantizer import ClassicalObservable, berezin_lieb_check, combine, lower_symbol, quantize, upper_symbol

logger = logging.getLogger(__name__)

CONVEX_FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "x^2": np.square,
    "x^4": lambda t: np.power(t, 4),
    "exp": np.exp,
}

GROUPS = (
    "identity",
    "circle",
    "sphere",
    "commutator",
    "fuzzy-bridge",
    "truncation",
    "yhat",
    "berezin-lieb",
    "properties",
    "oracle",
)

A_THETA_GOLDEN = (math.pi / 8) * np.diag([3.0, 5.0]).astype(complex)
A_PHI_GOLDEN = (math.pi / 4) * np.array([[4, 1j], [-1j, 4]])


def record(
    category: str,
    check: str,
    residual: float,
    tolerance: float,
    comparison: Comparison = Comparison.AT_MOST,
    details: Optional[str] = None,
) -> CheckRecord:
    residual = float(residual)
    if comparison == Comparison.AT_MOST:
        ok = residual <= tolerance
    else:
        ok = residual >= tolerance
    return CheckRecord(
        category=category,
        check=check,
        status=CheckStatus.PASS if ok else CheckStatus.FAIL,
        residual=residual,
        tolerance=tolerance,
        comparison=comparison,
        details=details,
    )


def _max_abs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _sphere_points(rng: np.random.Generator, count: int):
    theta = np.arccos(rng.uniform(-1.0, 1.0, count))
    phi = rng.uniform(0.0, 2.0 * math.pi, count)
    return theta, phi


def _random_hermitian(rng: np.random.Generator, n: int) -> HermitianOperator:
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return HermitianOperator((m + m.conj().T) / 2)


def check_identity() -> List[CheckRecord]:
    results = []
    circle = CircleModel.build()
    results.append(record("identity", "circle weighted identity", identity_residual(circle.frame), 1e-12))
    results.append(
        record(
            "identity",
            "circle weight N = 1 (plain identity coincides)",
            identity_residual(circle.frame, weighted=False),
            1e-12,
        )
    )
    sphere = model_sphere.SphereSpinHalfModel.build()
    results.append(record("identity", "sphere weighted identity", identity_residual(sphere.frame), 1e-12))
    for L in range(0, 9):
        fs = fuzzy.build_fuzzy(L)
        results.append(record("identity", f"fuzzy L={L} weighted identity", fs.identity_residual, 1e-10))
    return results


def check_circle() -> List[CheckRecord]:
    results = []
    model = CircleModel.build()
    rng = np.random.default_rng(2)
    angles = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)

    lower_worst = upper_worst = roundtrip_worst = decomposition_worst = 0.0
    for _ in range(20):
        a, b, d = rng.uniform(-2.0, 2.0, 3)
        matrix = symmetric_matrix(a, b, d)
        closed_lower, closed_upper = circle_symbols(a, b, d)
        lower_worst = max(lower_worst, _max_abs(lower_symbol(model.frame, matrix)(angles), closed_lower(angles)))
        fitted = upper_symbol(model.frame, model.rule(), matrix, CIRCLE_SYMBOL_BASIS)
        upper_worst = max(upper_worst, _max_abs(fitted(angles), closed_upper(angles)))

        upper_observable = combine(closed_upper.coefficients, CIRCLE_SYMBOL_BASIS)
        roundtrip_worst = max(roundtrip_worst, model.quantize_real(upper_observable).distance(matrix))

        c0, c1, c3 = circle_matrix_decomposition(matrix)
        sigma_0, sigma_1, _, sigma_3 = PAULI
        decomposition_worst = max(decomposition_worst, matrix.distance(c0 * sigma_0 + c1 * sigma_1 + c3 * sigma_3))

    results.append(record("circle", "closed-form lower symbol vs quantizer (64 angles)", lower_worst, 1e-10))
    results.append(record("circle", "closed-form upper symbol vs least squares", upper_worst, 1e-10))
    results.append(record("circle", "quantize(upper symbol) = A (20 random matrices)", roundtrip_worst, 1e-10))
    results.append(record("circle", "Pauli decomposition reconstruction", decomposition_worst, 1e-12))

    pinned = quantize(model.frame, model.rule(2), CIRCLE_SYMBOL_BASIS[1])
    results.append(record("circle", "imaginary parts pinned to zero", float(np.max(np.abs(pinned.entries.imag))), 1e-14))
    return results


def check_sphere(model: Optional[model_sphere.SphereSpinHalfModel] = None, angles=None) -> List[CheckRecord]:
    results = []
    model = model or model_sphere.SphereSpinHalfModel.build()
    results.append(record("sphere", "projector decomposition in Pauli matrices", model.projector_decomposition_residual(), 1e-12))

    for name, residual in model_sphere.sigma_symbol_residuals(model).items():
        results.append(record("sphere", f"sigma symbol {name}", residual, 1e-10))

    ops = model_sphere.coordinate_operators(model)
    worst = max(op.distance(sigma / 3.0) for op, sigma in zip(ops, PAULI[1:]))
    results.append(record("sphere", "A_{x^i} = sigma_i / 3", worst, 1e-10))

    rule = model.rule(1)
    upper_consistency = max(
        quantize(model.frame, rule, combine([3.0], [x])).distance(sigma) for x, sigma in zip(COORDINATES, PAULI[1:])
    )
    results.append(record("sphere", "quantize(3 x^i) = sigma_i", upper_consistency, 1e-10))

    sample = model.rule(2).coords
    constraint = sum(np.real(lower_symbol(model.frame, sigma)(*sample)) ** 2 for sigma in PAULI[1:])
    results.append(record("sphere", "sum of squared lower symbols = 1", _max_abs(constraint, 1.0), 1e-12))

    a_theta, a_phi = angles or model_sphere.angle_operators(model)
    results.append(record("sphere", "A_theta = (pi/8) diag(3,5)", a_theta.distance(A_THETA_GOLDEN), 1e-8))
    results.append(record("sphere", "A_phi = (pi/4)(4 i; -i 4)", a_phi.distance(A_PHI_GOLDEN), 1e-8))
    spectrum = eig(a_theta)
    results.append(
        record("sphere", "A_theta eigenvalues (3pi/8, 5pi/8)", _max_abs(spectrum.eigenvalues, [3 * math.pi / 8, 5 * math.pi / 8]), 1e-8)
    )

    results.append(record("sphere", "Phi' family gives the same projectors", model_sphere.phase_alternative_equivalence(model), 1e-12))
    alternative = model_sphere.SphereSpinHalfModel.build(phase_alternative=True)
    results.append(
        record(
            "sphere",
            "A_{x^3} identical under Phi and Phi'",
            quantize(model.frame, rule, X3).distance(quantize(alternative.frame, rule, X3)),
            1e-12,
        )
    )
    for name, residual in model_sphere.coordinate_commutators(model).items():
        results.append(record("sphere", f"coordinate commutator {name} = (2i/9) eps sigma", residual, 1e-10))
    return results


def check_commutator(model: Optional[model_sphere.SphereSpinHalfModel] = None, angles=None) -> List[CheckRecord]:
    results = []
    model = model or model_sphere.SphereSpinHalfModel.build()
    angles = angles or model_sphere.angle_operators(model)
    report = model_sphere.commutator_report(model, angles)
    a_theta, a_phi = angles

    results.append(record("commutator", "[A_phi, A_theta] has only a sigma_1 component", report.off_sigma1, 1e-10))
    direct = a_phi.entries @ a_theta.entries - a_theta.entries @ a_phi.entries
    direct_constant = float((np.trace(SIGMA_1 @ direct) / 2j).real)
    results.append(
        record("commutator", "constant agrees with the direct matrix product", abs(report.constant - direct_constant), 1e-10)
    )
    results.append(
        record(
            "commutator",
            "constant c > 0",
            report.constant,
            0.0,
            Comparison.AT_LEAST,
            details=f"c = {report.constant:.12g}; printed constant pi^2/64 = {report.printed_constant:.12g}",
        )
    )
    results.append(
        record(
            "commutator",
            "constant equals pi^2/16 implied by the golden matrices",
            abs(report.constant - math.pi ** 2 / 16),
            1e-8,
        )
    )

    coords = model.rule(2).coords
    expected = 1j * report.constant * X1(*coords)
    results.append(
        record("commutator", "lower symbol = i c sin(theta) cos(phi)", _max_abs(report.lower_symbol(*coords), expected), 1e-10)
    )
    results.append(record("commutator", "lower symbol of the square is constant", report.square_lower_spread, 1e-10))
    results.append(
        record("commutator", "lower symbol of the square = -c^2", abs(report.square_lower_value + report.constant ** 2), 1e-10)
    )
    return results


def check_fuzzy_bridge() -> List[CheckRecord]:
    results = []
    one = fuzzy.build_fuzzy(1)
    results.append(record("fuzzy-bridge", "L=1 conj(A_{x^k}) = sigma_k / 3", fuzzy.spin_half_bridge(one), 1e-10))

    sphere = model_sphere.SphereSpinHalfModel.build()
    coords = sphere.rule(2).coords
    conjugate = _max_abs(one.frame.projector(*coords), np.conj(sphere.frame.projector(*coords)))
    results.append(record("fuzzy-bridge", "L=1 projectors are the conjugates of the spin-1/2 ones", conjugate, 1e-12))

    comparison = fuzzy.madore_compare(one)
    results.append(record("fuzzy-bridge", "L=1 Madore fit residual", comparison.residual, 1e-10))
    results.append(record("fuzzy-bridge", "L=1 lambda = 2/3", max(abs(v - 2.0 / 3.0) for v in comparison.lambdas), 1e-10))
    results.append(record("fuzzy-bridge", "L=1 lambda = kappa", abs(comparison.lambdas[0] - comparison.kappa), 1e-10))

    for L in (2, 3, 4):
        comparison = fuzzy.madore_compare(fuzzy.build_fuzzy(L))
        results.append(record("fuzzy-bridge", f"L={L} Madore fit residual", comparison.residual, 1e-10))
        results.append(
            record(
                "fuzzy-bridge",
                f"L={L} lambda = 2/(L+2)",
                max(abs(v - comparison.expected_lambda) for v in comparison.lambdas),
                1e-10,
                details=f"kappa = {comparison.kappa:.12g}, lambda/kappa = {comparison.radius_multiple:.12g}",
            )
        )

    two = fuzzy.build_fuzzy(2)
    a_x3 = fuzzy.quantize_fuzzy(two, X3)
    labels = np.array([float(i) for i in two.theta_basis.labels])
    results.append(record("fuzzy-bridge", "L=2 A_{x^3} diagonal = -2i/(L+2)", a_x3.distance(np.diag(-2.0 * labels / 4.0)), 1e-10))
    return results


def check_truncation(max_L: int = 6) -> List[CheckRecord]:
    results = []
    for L in range(max_L + 1):
        fs = fuzzy.build_fuzzy(L)
        for ell in (L + 1, L + 2):
            worst = max(fuzzy.truncation_table(fs, ell).values())
            results.append(record("truncation", f"L={L} A_Y vanishes for l={ell}", worst, 1e-10))
        kept = min(fuzzy.truncation_check(fs, ell, m) for ell, m in harmonic_indices(L))
        results.append(record("truncation", f"L={L} A_Y nonzero for l <= L", kept, 1e-8, Comparison.AT_LEAST))
    return results


def check_yhat(max_L: int = 6) -> List[CheckRecord]:
    results = []
    rng = np.random.default_rng(7)
    for L in range(max_L + 1):
        fs = fuzzy.build_fuzzy(L)
        basis = fuzzy.yhat_basis(fs)
        results.append(
            record("yhat", f"L={L} smallest singular value", basis.smallest_singular_value, 1e-8, Comparison.AT_LEAST)
        )
        target = rng.normal(size=(L + 1, L + 1)) + 1j * rng.normal(size=(L + 1, L + 1))
        results.append(record("yhat", f"L={L} random matrix reconstruction", basis.reconstruct(target)[1], 1e-8))
        results.append(record("yhat", f"L={L} selection rule", fs.coefficient_tensor.selection_residual(), fuzzy.SELECTION_TOL))
        rank = fuzzy.madore_basis_rank(fs)
        results.append(
            record("yhat", f"L={L} monomials in J span M^(L+1)", abs(rank - (L + 1) ** 2), 0.0, details=f"rank {rank}")
        )
    return results


def _bounds_records(label: str, bounds, slack: float = 1e-9) -> CheckRecord:
    return record(
        "berezin-lieb",
        label,
        bounds.violation,
        slack,
        details=(
            f"lower={bounds.lower:.12g} trace={bounds.trace:.12g} upper={bounds.upper:.12g} "
            f"(plain mu: {bounds.unweighted_lower:.12g}, {bounds.unweighted_upper:.12g})"
        ),
    )


def check_berezin_lieb(angles=None) -> List[CheckRecord]:
    results = []
    sphere = model_sphere.SphereSpinHalfModel.build()
    a_theta, a_phi = angles or model_sphere.angle_operators(sphere)
    symbols = model_sphere.sigma_symbols(sphere)
    operators = [(f"sigma_{k}", HermitianOperator(PAULI[k]), symbols[k][1]) for k in range(4)]
    operators += [("A_theta", a_theta, THETA), ("A_phi", a_phi, PHI)]
    for name, op, upper in operators:
        for g_name, g in CONVEX_FUNCTIONS.items():
            bounds = berezin_lieb_check(sphere.frame, None, op, g, upper=upper, strict=False)
            results.append(_bounds_records(f"sphere {name}, g={g_name}", bounds))

    sigma_3 = berezin_lieb_check(sphere.frame, None, HermitianOperator(PAULI[3]), np.square, upper=symbols[3][1])
    results.append(
        record(
            "berezin-lieb",
            "sphere sigma_3, g=x^2 values (2/3, 2, 6)",
            _max_abs([sigma_3.lower, sigma_3.trace, sigma_3.upper], [2.0 / 3.0, 2.0, 6.0]),
            1e-10,
        )
    )

    circle = CircleModel.build()
    for a, b, d in ((1.0, 0.0, -1.0), (1.0, 0.0, 1.0), (0.5, 0.8, -0.3), (2.0, -1.0, 0.0)):
        matrix = symmetric_matrix(a, b, d)
        upper = circle_symbols(a, b, d)[1]
        for g_name, g in CONVEX_FUNCTIONS.items():
            bounds = berezin_lieb_check(circle.frame, None, matrix, g, upper=upper, strict=False)
            results.append(_bounds_records(f"circle ({a:g} {b:g}; {b:g} {d:g}), g={g_name}", bounds))

    diag = berezin_lieb_check(circle.frame, None, symmetric_matrix(1.0, 0.0, -1.0), np.square, upper=circle_symbols(1, 0, -1)[1])
    results.append(
        record(
            "berezin-lieb",
            "circle diag(1,-1), g=x^2 values (1, 2, 4)",
            _max_abs([diag.lower, diag.trace, diag.upper], [1.0, 2.0, 4.0]),
            1e-10,
        )
    )

    fs = fuzzy.build_fuzzy(2)
    for g_name, g in CONVEX_FUNCTIONS.items():
        bounds = berezin_lieb_check(fs.frame, None, fuzzy.quantize_fuzzy(fs, X3), g, upper=X3, strict=False)
        results.append(_bounds_records(f"fuzzy L=2 A_(x^3), g={g_name}", bounds))
    return results


def check_properties() -> List[CheckRecord]:
    results = []
    rng = np.random.default_rng(11)

    sphere = model_sphere.SphereSpinHalfModel.build()
    rule = sphere.rule(1)
    mixed = combine([2.0, -3.0, 0.5], [X1, X3, ONE])
    linear = 2.0 * quantize(sphere.frame, rule, X1) - 3.0 * quantize(sphere.frame, rule, X3) + 0.5 * quantize(sphere.frame, rule, ONE)
    results.append(record("properties", "quantizer linearity", quantize(sphere.frame, rule, mixed).distance(linear), 1e-10))

    quadratic = ClassicalObservable(
        lambda theta, phi: X3(theta, phi) ** 2 + X1(theta, phi) * X2(theta, phi),
        "x3^2 + x1 x2",
        degree=2,
    )
    square_rule = sphere.rule(2)
    op = quantize(sphere.frame, square_rule, quadratic)
    fitted = upper_symbol(sphere.frame, square_rule, op, [ONE, *COORDINATES, quadratic])
    results.append(record("properties", "f is an upper symbol of A_f", fitted.residual, 1e-8))

    for L in range(0, 9):
        fs = fuzzy.build_fuzzy(L)
        theta, phi = _sphere_points(rng, 1000)
        results.append(record("properties", f"L={L} Theta partition of unity", fs.theta_basis.partition_residual(theta, phi), 1e-12))
        results.append(record("properties", f"L={L} Theta norms 1/(L+1)", fs.theta_basis.norm_residual(), 1e-10))
        observables = [X1, X2, X3, combine([1.0, 2.0], [X1, X3])]
        results.append(record("properties", f"L={L} A_f Hermitian for real f", fuzzy.hermitian_residual(fs, observables), 1e-10))
        multiple, residual = fuzzy.radius_relation(fs)
        results.append(record("properties", f"L={L} sum of A_(x^k)^2 is a multiple of Id", residual, 1e-10))
        results.append(record("properties", f"L={L} radius multiple L/(L+2)", abs(multiple - L / (L + 2)), 1e-10))

    for L in range(0, 13):
        spins = fuzzy.SpinMatrices.build(L)
        results.append(record("properties", f"L={L} spin commutation", spins.commutation_residual(), 1e-12))
        results.append(record("properties", f"L={L} Casimir", spins.casimir_residual(), 1e-12))

    for L in range(0, 5):
        fs = fuzzy.build_fuzzy(L)
        indices = harmonic_indices(L)
        values = rng.normal(size=len(indices)) + 1j * rng.normal(size=len(indices))
        coefficients = dict(zip(indices, values))
        results.append(
            record("properties", f"L={L} F from the tensor equals direct quantization", fuzzy.harmonic_equivalence_residual(fs, coefficients), 1e-9)
        )

    for name, frame in (("sphere", sphere.frame), ("fuzzy L=3", fuzzy.build_fuzzy(3).frame)):
        x = _sphere_points(rng, 50)
        y = _sphere_points(rng, 50)
        k = kernel(frame)
        results.append(record("properties", f"{name} kernel Hermiticity", _max_abs(k.matrix(x, y), k.matrix(y, x).T.conj()), 1e-12))

        psi = rng.normal(size=frame.dim) + 1j * rng.normal(size=frame.dim)
        injected = weyl_wigner(frame, psi)
        reproduced = reproduce(frame, frame.rule(), injected)
        results.append(record("properties", f"{name} kernel reproduces injected vectors", _max_abs(reproduced(*x), injected(*x)), 1e-10))
        weighted, _ = injection_norms(frame, frame.rule(), psi)
        results.append(record("properties", f"{name} injection is an isometry", abs(weighted - float(np.vdot(psi, psi).real)), 1e-10))

    a, b = _random_hermitian(rng, 6), _random_hermitian(rng, 6)
    results.append(record("properties", "trace of a commutator vanishes", abs(np.trace(commutator(a, b))), 1e-10))
    spectrum = eig(a)
    results.append(record("properties", "eigendecomposition reconstructs", a.distance(spectrum.reconstruct()), 1e-9))
    unitary, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    rotated = eig(unitary @ a.entries @ unitary.conj().T)
    results.append(record("properties", "eigenvalues invariant under unitary conjugation", _max_abs(rotated.eigenvalues, spectrum.eigenvalues), 1e-9))
    return results


def check_oracle(grid: Optional[oracle.OracleGrid] = None) -> List[CheckRecord]:
    results = []
    grid = grid or oracle.OracleGrid()
    for L in range(1, 5):
        fs = fuzzy.build_fuzzy(L)
        comparison = fuzzy.madore_compare(fs)
        results.append(
            record("oracle", f"L={L} lambda", abs(oracle.lambda_constant(grid, L) - comparison.lambdas[2]), oracle.AGREEMENT_TOL)
        )
        norms = oracle.theta_norms(grid, L)
        implemented = np.real(np.diag(fs.frame.family.gram(fs.rule()))) / (L + 1)
        results.append(record("oracle", f"L={L} Theta norms", _max_abs(norms, implemented), oracle.AGREEMENT_TOL))

    sphere = model_sphere.SphereSpinHalfModel.build()
    upper = model_sphere.sigma_symbols(sphere)[3][1]
    bounds = berezin_lieb_check(sphere.frame, None, HermitianOperator(PAULI[3]), np.square, upper=upper)
    brute = oracle.sphere_berezin_lieb_sigma3(grid)
    results.append(
        record(
            "oracle",
            "sphere sigma_3 Berezin-Lieb values",
            _max_abs([bounds.lower, bounds.trace, bounds.upper], [brute["lower"], brute["trace"], brute["upper"]]),
            oracle.AGREEMENT_TOL,
        )
    )

    circle = CircleModel.build()
    bounds = berezin_lieb_check(circle.frame, None, symmetric_matrix(1.0, 0.0, -1.0), np.square, upper=circle_symbols(1, 0, -1)[1])
    brute = oracle.circle_berezin_lieb_diag(grid)
    results.append(
        record(
            "oracle",
            "circle diag(1,-1) Berezin-Lieb values",
            _max_abs([bounds.lower, bounds.trace, bounds.upper], [brute["lower"], brute["trace"], brute["upper"]]),
            oracle.AGREEMENT_TOL,
        )
    )
    return results


def _failure(group: str, error: Exception) -> CheckRecord:
    return CheckRecord(
        category=group,
        check=f"{group} suite",
        status=CheckStatus.FAIL,
        residual=float("nan"),
        tolerance=0.0,
        details=f"{type(error).__name__}: {error}",
    )


def apply_tolerance(records: Sequence[CheckRecord], tol: float) -> List[CheckRecord]:
    """Re-judge every '<=' record against tol"""
    adjusted = []
    for r in records:
        if r.comparison == Comparison.AT_MOST:
            r = record(r.category, r.check, r.residual, tol, r.comparison, r.details)
        adjusted.append(r)
    return adjusted


def run_verification(only: Optional[Sequence[str]] = None, tol: Optional[float] = None) -> VerificationReport:
    """Run the selected groups (all by default) and summarize"""
    selected = list(only) if only else list(GROUPS)
    unknown = sorted(set(selected) - set(GROUPS))
    if unknown:
        raise ValueError(f"Unknown verification groups {unknown}; choose from {', '.join(GROUPS)}")

    sphere = None
    angles = None

    def shared_angles():
        nonlocal sphere, angles
        if angles is None:
            sphere = model_sphere.SphereSpinHalfModel.build()
            angles = model_sphere.angle_operators(sphere)
        return sphere, angles

    runners = {
        "identity": check_identity,
        "circle": check_circle,
        "sphere": lambda: check_sphere(*shared_angles()),
        "commutator": lambda: check_commutator(*shared_angles()),
        "fuzzy-bridge": check_fuzzy_bridge,
        "truncation": check_truncation,
        "yhat": check_yhat,
        "berezin-lieb": lambda: check_berezin_lieb(shared_angles()[1]),
        "properties": check_properties,
        "oracle": check_oracle,
    }

    records: List[CheckRecord] = []
    for index, group in enumerate(g for g in GROUPS if g in selected):
        logger.info("Verifying %s (%d%%)", group, 100 * index // len(selected))
        try:
            records.extend(runners[group]())
        except Exception as e:
            logger.exception("Verification group %s raised", group)
            records.append(_failure(group, e))

    if tol is not None:
        records = apply_tolerance(records, tol)
    failed = [r for r in records if r.status == CheckStatus.FAIL]
    for r in failed:
        logger.warning("FAILED %s / %s: residual %.3e vs %s %.3e", r.category, r.check, r.residual, r.comparison.value, r.tolerance)
    logger.info("Verification done (100%%): %d passed, %d failed", len(records) - len(failed), len(failed))
    return VerificationReport(ok=not failed, passed=len(records) - len(failed), failed=len(failed), records=records)

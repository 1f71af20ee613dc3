"""The quantization map f -> A_f, lower and upper symbols, Berezin-Lieb bounds.

A_f = int mu(dx) N(x) f(x) |x><x| in the weighted convention of csquant.frames.
Every integral takes an explicit QuadratureRule or, with rule=None, runs
adaptively to the configured tolerance.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from csquant.errors import DimensionError, NumericalError, ObservableError, UnrepresentableError
from csquant.frames import CoherentFrame
from csquant.operators import HermitianOperator, MatrixLike, as_matrix, trace_function
from csquant.quad import QuadratureRule, converge, evaluate, integrate, integrate_adaptive

logger = logging.getLogger(__name__)

ASYMMETRY_WARNING = 1e-10
REAL_TOL = 1e-12
UPPER_SYMBOL_TOL = 1e-8


@dataclass(frozen=True)
class ClassicalObservable:
    """A function on the observation set.

    degree is the trigonometric degree when f is a polynomial in
    (cos theta, sin theta e^{+-i phi}); None marks non-polynomial functions
    such as the coordinates theta and phi.
    """

    evaluator: Callable[..., np.ndarray]
    description: str
    is_real: bool = True
    degree: Optional[int] = None

    def __call__(self, *coords: np.ndarray) -> np.ndarray:
        return self.evaluator(*coords)


def combine(coefficients: Sequence[complex], observables: Sequence[ClassicalObservable]) -> ClassicalObservable:
    """Linear combination sum_k c_k f_k"""
    coefficients = [complex(c) for c in coefficients]
    observables = list(observables)
    if len(coefficients) != len(observables):
        raise DimensionError(f"{len(coefficients)} coefficients for {len(observables)} observables")

    def evaluator(*coords):
        total = 0.0
        for c, f in zip(coefficients, observables):
            if c != 0:
                total = total + c * np.asarray(f(*coords), dtype=complex)
        return np.broadcast_to(total, np.broadcast(*coords).shape)

    degrees = [f.degree for c, f in zip(coefficients, observables) if c != 0]
    return ClassicalObservable(
        evaluator,
        " + ".join(f"({c:g})*{f.description}" for c, f in zip(coefficients, observables) if c != 0) or "0",
        is_real=all(c.imag == 0 and f.is_real for c, f in zip(coefficients, observables)),
        degree=None if any(d is None for d in degrees) else max(degrees, default=0),
    )


class SymbolKind(str, Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class SymbolFunction:
    evaluator: Callable[..., np.ndarray]
    kind: SymbolKind
    description: str = ""
    coefficients: Optional[Tuple[complex, ...]] = None
    non_unique: bool = False
    residual: float = 0.0

    def __call__(self, *coords: np.ndarray) -> np.ndarray:
        return self.evaluator(*coords)


def _values(rule: QuadratureRule, f: ClassicalObservable) -> np.ndarray:
    values = evaluate(rule, f)
    if f.is_real:
        imaginary = float(np.max(np.abs(values.imag))) if values.size else 0.0
        if imaginary > REAL_TOL:
            raise ObservableError(f"Observable {f.description!r} declared real has imaginary part {imaginary:.3e}")
        values = values.real.astype(complex)
    return values


def quantize_matrix(
    frame: CoherentFrame,
    rule: Optional[QuadratureRule],
    f: ClassicalObservable,
    tol: Optional[float] = None,
) -> np.ndarray:
    """[A_f]_ij = int mu N f state_i conj(state_j), for real or complex f"""

    def moment(r: QuadratureRule) -> np.ndarray:
        return frame.weighted_moment(r, _values(r, f))

    if rule is None:
        return converge(frame.domain, moment, tol)
    return moment(rule)


def quantize(
    frame: CoherentFrame,
    rule: Optional[QuadratureRule],
    f: ClassicalObservable,
    tol: Optional[float] = None,
) -> HermitianOperator:
    if not f.is_real:
        raise ObservableError(f"quantize needs a real observable, {f.description!r} is complex; use quantize_matrix")
    raw = quantize_matrix(frame, rule, f, tol)
    op = HermitianOperator(raw, tol=np.inf)
    if op.asymmetry > ASYMMETRY_WARNING:
        logger.warning("Quantized %s has asymmetry %.3e; quadrature may be inadequate", f.description, op.asymmetry)
    return op


def lower_symbol(frame: CoherentFrame, op: MatrixLike) -> SymbolFunction:
    """x -> <x|O|x> with the normalized state"""
    matrix = as_matrix(op)
    if matrix.shape != (frame.dim, frame.dim):
        raise DimensionError(f"Operator of shape {matrix.shape} on a frame of dimension {frame.dim}")
    matrix = matrix.copy()

    def evaluator(*coords):
        s = frame.state(*coords)
        return np.einsum("...i,ij,...j->...", s.conj(), matrix, s)

    return SymbolFunction(evaluator, SymbolKind.LOWER, "lower symbol")


def upper_symbol(
    frame: CoherentFrame,
    rule: Optional[QuadratureRule],
    op: MatrixLike,
    candidate_basis: Sequence[ClassicalObservable],
    tol: Optional[float] = None,
) -> SymbolFunction:
    """Least-squares f = sum c_k b_k with A_f = O inside the candidate basis"""
    target = as_matrix(op)
    if target.shape != (frame.dim, frame.dim):
        raise DimensionError(f"Operator of shape {target.shape} on a frame of dimension {frame.dim}")
    basis = list(candidate_basis)
    if not basis:
        raise UnrepresentableError("Empty candidate basis", residual=float(np.max(np.abs(target))))

    quantized = [quantize_matrix(frame, rule, b, tol) for b in basis]
    design = np.stack([q.ravel() for q in quantized], axis=1)
    rhs = target.ravel()

    # Real functions and a Hermitian target: solve for real coefficients
    real_problem = all(b.is_real for b in basis) and np.allclose(target, target.conj().T, atol=1e-12)
    if real_problem:
        solution, _, rank, _ = np.linalg.lstsq(
            np.vstack([design.real, design.imag]), np.concatenate([rhs.real, rhs.imag]), rcond=None
        )
        coefficients = solution.astype(complex)
    else:
        coefficients, _, rank, _ = np.linalg.lstsq(design, rhs, rcond=None)

    residual = float(np.max(np.abs(design @ coefficients - rhs)))
    if residual > UPPER_SYMBOL_TOL:
        raise UnrepresentableError(f"No upper symbol in the candidate basis (residual {residual:.3e})", residual)
    non_unique = int(rank) < len(basis)
    if non_unique:
        logger.info("Upper symbol is not unique: rank %d for %d candidates", rank, len(basis))

    symbol = combine(coefficients, basis)
    return SymbolFunction(
        symbol.evaluator,
        SymbolKind.UPPER,
        symbol.description,
        coefficients=tuple(complex(c) for c in coefficients),
        non_unique=non_unique,
        residual=residual,
    )


@dataclass(frozen=True)
class BerezinLiebBounds:
    """int g(lower) dnu <= Tr g(O) <= int g(upper) dnu with dnu = N dmu.

    The plain-mu integrals are kept for documentation only.
    """

    lower: float
    trace: float
    upper: float
    unweighted_lower: float
    unweighted_upper: float

    @property
    def violation(self) -> float:
        return max(0.0, self.lower - self.trace, self.trace - self.upper)

    def holds(self, slack: float = 1e-9) -> bool:
        return self.violation <= slack


def _symbol_integrals(
    frame: CoherentFrame,
    rule: Optional[QuadratureRule],
    symbol: Callable[..., np.ndarray],
    g: Callable[[np.ndarray], np.ndarray],
    tol: Optional[float],
) -> Tuple[float, float]:
    def weighted(*coords):
        return g(np.real(symbol(*coords))) * frame.weight(*coords)

    def plain(*coords):
        return g(np.real(symbol(*coords)))

    if rule is None:
        return (
            integrate_adaptive(frame.domain, weighted, tol).real,
            integrate_adaptive(frame.domain, plain, tol).real,
        )
    return integrate(rule, weighted).real, integrate(rule, plain).real


def berezin_lieb_check(
    frame: CoherentFrame,
    rule: Optional[QuadratureRule],
    op: HermitianOperator,
    g: Callable[[np.ndarray], np.ndarray],
    upper: Optional[Callable[..., np.ndarray]] = None,
    candidate_basis: Optional[Sequence[ClassicalObservable]] = None,
    slack: float = 1e-9,
    strict: bool = True,
    tol: Optional[float] = None,
) -> BerezinLiebBounds:
    if upper is None:
        if not candidate_basis:
            raise UnrepresentableError("No upper symbol available for the Berezin-Lieb check")
        upper = upper_symbol(frame, rule, op, candidate_basis, tol)

    lower_weighted, lower_plain = _symbol_integrals(frame, rule, lower_symbol(frame, op), g, tol)
    upper_weighted, upper_plain = _symbol_integrals(frame, rule, upper, g, tol)
    bounds = BerezinLiebBounds(
        lower=lower_weighted,
        trace=trace_function(op, g),
        upper=upper_weighted,
        unweighted_lower=lower_plain,
        unweighted_upper=upper_plain,
    )
    if not bounds.holds(slack):
        message = f"Berezin-Lieb ordering violated by {bounds.violation:.3e}: {bounds}"
        if strict:
            raise NumericalError(message)
        logger.warning(message)
    return bounds

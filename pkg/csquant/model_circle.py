"""Real quantization of the circle into R^2 with the measure dtheta/pi.

|theta> = (cos theta, sin theta); N(theta) = 1, so the weighted and plain
identities coincide. The real Hilbert space is carried by the complex
machinery with imaginary parts pinned to zero.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from csquant.errors import NotHermitianError
from csquant.frames import CoherentFrame, OrthoFamily, make_frame
from csquant.operators import SIGMA_0, SIGMA_1, SIGMA_3, HermitianOperator, as_matrix
from csquant.quad import CIRCLE, QuadratureRule
from csquant.quantizer import ClassicalObservable, SymbolFunction, SymbolKind, quantize

REAL_PIN_TOL = 1e-14

ONE = ClassicalObservable(lambda theta: np.ones_like(theta), "1", degree=0)
COS_2THETA = ClassicalObservable(lambda theta: np.cos(2 * theta), "cos(2 theta)", degree=2)
SIN_2THETA = ClassicalObservable(lambda theta: np.sin(2 * theta), "sin(2 theta)", degree=2)
SYMBOL_BASIS = (ONE, COS_2THETA, SIN_2THETA)


def circle_family() -> OrthoFamily:
    return OrthoFamily(
        CIRCLE,
        (lambda theta: np.cos(theta), lambda theta: np.sin(theta)),
        ("cos(theta)", "sin(theta)"),
        product_degree=2,
    )


@dataclass(frozen=True)
class CircleModel:
    frame: CoherentFrame
    pauli_basis: Tuple[np.ndarray, np.ndarray, np.ndarray] = (SIGMA_0, SIGMA_1, SIGMA_3)

    @classmethod
    def build(cls) -> "CircleModel":
        return cls(make_frame(circle_family()))

    def rule(self, extra_degree: int = 2) -> QuadratureRule:
        return self.frame.rule(extra_degree)

    def quantize_real(self, f: ClassicalObservable, rule: Optional[QuadratureRule] = None) -> HermitianOperator:
        """quantize with the imaginary part asserted below 1e-14 and dropped"""
        if rule is None and f.degree is not None:
            rule = self.rule(f.degree)
        op = quantize(self.frame, rule, f)
        imaginary = float(np.max(np.abs(op.entries.imag)))
        if imaginary > REAL_PIN_TOL:
            raise NotHermitianError(f"Circle operator has imaginary part {imaginary:.3e}", imaginary)
        return HermitianOperator(op.entries.real)


def symmetric_matrix(a: float, b: float, d: float) -> HermitianOperator:
    return HermitianOperator(np.array([[a, b], [b, d]], dtype=float))


def circle_symbols(a: float, b: float, d: float) -> Tuple[SymbolFunction, SymbolFunction]:
    """Closed-form lower and upper symbols of (a b; b d).

    The upper symbol carries 2b sin(2 theta): sin(2 theta) quantizes to sigma_1/2.
    """
    mean, half_diff = (a + d) / 2.0, (a - d) / 2.0

    def lower(theta):
        return mean + half_diff * np.cos(2 * theta) + b * np.sin(2 * theta)

    def upper(theta):
        return mean + (a - d) * np.cos(2 * theta) + 2.0 * b * np.sin(2 * theta)

    return (
        SymbolFunction(lower, SymbolKind.LOWER, f"lower symbol of ({a:g} {b:g}; {b:g} {d:g})"),
        SymbolFunction(
            upper,
            SymbolKind.UPPER,
            f"upper symbol of ({a:g} {b:g}; {b:g} {d:g})",
            coefficients=(complex(mean), complex(a - d), complex(2.0 * b)),
        ),
    )


def circle_matrix_decomposition(matrix) -> Tuple[float, float, float]:
    """(c0, c1, c3) with A = c0 sigma_0 + c1 sigma_1 + c3 sigma_3"""
    m = as_matrix(matrix)
    if m.shape != (2, 2):
        raise NotHermitianError(f"Expected a 2x2 symmetric matrix, got shape {m.shape}")
    skew = abs(m[0, 1] - m[1, 0])
    if skew > 1e-12 or float(np.max(np.abs(m.imag))) > REAL_PIN_TOL:
        raise NotHermitianError(f"Matrix is not real symmetric (asymmetry {skew:.3e})", skew)
    a, b, d = m[0, 0].real, m[0, 1].real, m[1, 1].real
    return (a + d) / 2.0, b, (a - d) / 2.0

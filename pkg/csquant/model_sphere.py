"""Spin-1/2 quantization of the 2-sphere into C^2.

Family {sqrt2 cos(theta/2), sqrt2 sin(theta/2) e^{i phi}}, N(x) = 2, so
N |x><x| = sigma_0 + cos(theta) sigma_3 + sin(theta) cos(phi) sigma_1 + sin(theta) sin(phi) sigma_2.
The coordinate phi is taken on the branch [0, 2pi).
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from csquant.frames import CoherentFrame, OrthoFamily, make_frame
from csquant.harmonics import COORDINATES, ONE, PHI, THETA
from csquant.operators import PAULI, SIGMA_1, HermitianOperator, commutator, pauli_components
from csquant.quad import SPHERE, QuadratureRule
from csquant.quantizer import SymbolFunction, SymbolKind, lower_symbol, quantize, upper_symbol

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
PRINTED_COMMUTATOR_CONSTANT = math.pi ** 2 / 64

SIGMA_SYMBOL_BASIS = (ONE,) + COORDINATES


def spin_half_family(phase_alternative: bool = False) -> OrthoFamily:
    """Phi family, or the Phi' family differing by the global phase e^{-i phi/2}"""
    if phase_alternative:
        functions = (
            lambda theta, phi: SQRT2 * np.cos(theta / 2) * np.exp(-0.5j * phi),
            lambda theta, phi: SQRT2 * np.sin(theta / 2) * np.exp(0.5j * phi),
        )
        labels = ("sqrt2 cos(theta/2) e^{-i phi/2}", "sqrt2 sin(theta/2) e^{i phi/2}")
    else:
        functions = (
            lambda theta, phi: SQRT2 * np.cos(theta / 2) + 0.0 * phi,
            lambda theta, phi: SQRT2 * np.sin(theta / 2) * np.exp(1j * phi),
        )
        labels = ("sqrt2 cos(theta/2)", "sqrt2 sin(theta/2) e^{i phi}")
    return OrthoFamily(SPHERE, functions, labels, product_degree=1)


def _closed_form_projector(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    sigma_0, sigma_1, sigma_2, sigma_3 = PAULI
    c, s1, s2 = np.cos(theta), np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi)
    return (
        sigma_0
        + c[..., None, None] * sigma_3
        + s1[..., None, None] * sigma_1
        + s2[..., None, None] * sigma_2
    )


@dataclass(frozen=True)
class SphereSpinHalfModel:
    frame: CoherentFrame
    pauli: Tuple[np.ndarray, ...] = PAULI

    @classmethod
    def build(cls, phase_alternative: bool = False) -> "SphereSpinHalfModel":
        return cls(make_frame(spin_half_family(phase_alternative)))

    def rule(self, extra_degree: int = 1) -> QuadratureRule:
        return self.frame.rule(extra_degree)

    def projector_decomposition_residual(self, rule: Optional[QuadratureRule] = None) -> float:
        rule = rule or self.rule()
        theta, phi = rule.coords
        difference = self.frame.projector(theta, phi) - _closed_form_projector(theta, phi)
        return float(np.max(np.abs(difference)))


def sigma_symbols(model: SphereSpinHalfModel) -> Dict[int, Tuple[SymbolFunction, SymbolFunction]]:
    """Closed-form (lower, upper) symbols of sigma_0..sigma_3; upper = 3 * lower for i >= 1"""
    lowers = {
        0: lambda theta, phi: np.ones(np.broadcast(theta, phi).shape),
        1: lambda theta, phi: np.sin(theta) * np.cos(phi),
        2: lambda theta, phi: np.sin(theta) * np.sin(phi),
        3: lambda theta, phi: np.cos(theta) + 0.0 * phi,
    }
    table = {}
    for k, lower in lowers.items():
        factor = 1.0 if k == 0 else 3.0

        def upper(theta, phi, lower=lower, factor=factor):
            return factor * lower(theta, phi)

        table[k] = (
            SymbolFunction(lower, SymbolKind.LOWER, f"lower symbol of sigma_{k}"),
            SymbolFunction(upper, SymbolKind.UPPER, f"upper symbol of sigma_{k}"),
        )
    return table


def sigma_symbol_residuals(model: SphereSpinHalfModel, rule: Optional[QuadratureRule] = None) -> Dict[str, float]:
    """Closed forms against quantizer.lower_symbol / upper_symbol at the rule nodes"""
    rule = rule or model.rule(2)
    coords = rule.coords
    residuals = {}
    for k, (lower, upper) in sigma_symbols(model).items():
        computed_lower = lower_symbol(model.frame, model.pauli[k])
        computed_upper = upper_symbol(model.frame, model.rule(), model.pauli[k], SIGMA_SYMBOL_BASIS)
        residuals[f"lower_sigma{k}"] = float(np.max(np.abs(computed_lower(*coords) - lower(*coords))))
        residuals[f"upper_sigma{k}"] = float(np.max(np.abs(computed_upper(*coords) - upper(*coords))))
    return residuals


def coordinate_operators(model: SphereSpinHalfModel) -> Tuple[HermitianOperator, HermitianOperator, HermitianOperator]:
    """A_{x^i}, each equal to sigma_i / 3"""
    rule = model.rule(1)
    return tuple(quantize(model.frame, rule, x) for x in COORDINATES)


def coordinate_commutators(model: SphereSpinHalfModel) -> Dict[str, float]:
    """[A_{x^i}, A_{x^j}] against (2i/9) eps_ijk sigma_k"""
    ops = coordinate_operators(model)
    residuals = {}
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        expected = (2j / 9.0) * model.pauli[k + 1]
        actual = commutator(ops[i], ops[j])
        residuals[f"[x{i + 1},x{j + 1}]"] = float(np.max(np.abs(actual - expected)))
    return residuals


def angle_operators(model: SphereSpinHalfModel, tol: Optional[float] = None) -> Tuple[HermitianOperator, HermitianOperator]:
    """(A_theta, A_phi) by adaptive quadrature"""
    a_theta = quantize(model.frame, None, THETA, tol)
    a_phi = quantize(model.frame, None, PHI, tol)
    return a_theta, a_phi


@dataclass(frozen=True)
class CommutatorReport:
    """[A_phi, A_theta] = i c sigma_1 with c measured from the matrices"""

    matrix: np.ndarray
    constant: float
    off_sigma1: float
    lower_symbol: SymbolFunction
    square_lower_value: complex
    square_lower_spread: float
    printed_constant: float = PRINTED_COMMUTATOR_CONSTANT

    @property
    def discrepancy_ratio(self) -> float:
        return self.constant / self.printed_constant


def commutator_report(
    model: SphereSpinHalfModel,
    angles: Optional[Tuple[HermitianOperator, HermitianOperator]] = None,
) -> CommutatorReport:
    a_theta, a_phi = angles or angle_operators(model)
    matrix = commutator(a_phi, a_theta)
    c0, c1, c2, c3 = pauli_components(matrix)
    # i c sigma_1: the sigma_1 component is purely imaginary
    constant = c1.imag
    off = float(np.max(np.abs(matrix - 1j * constant * SIGMA_1)))

    square = matrix @ matrix
    rule = model.rule(2)
    square_values = lower_symbol(model.frame, square)(*rule.coords)
    report = CommutatorReport(
        matrix=matrix,
        constant=constant,
        off_sigma1=off,
        lower_symbol=lower_symbol(model.frame, matrix),
        square_lower_value=complex(np.mean(square_values)),
        square_lower_spread=float(np.max(np.abs(square_values - np.mean(square_values)))),
    )
    logger.info("[A_phi, A_theta] = i*%.12g*sigma_1 (printed constant %.12g)", constant, PRINTED_COMMUTATOR_CONSTANT)
    return report


def phase_alternative_equivalence(model: SphereSpinHalfModel, rule: Optional[QuadratureRule] = None) -> float:
    """Max over nodes of |N|x><x|_Phi - N|x><x|_Phi'|"""
    alternative = SphereSpinHalfModel.build(phase_alternative=True)
    rule = rule or model.rule(2)
    difference = model.frame.projector(*rule.coords) - alternative.frame.projector(*rule.coords)
    return float(np.max(np.abs(difference)))

"""Orthonormal families, coherent states and the reproducing kernel.

States are normalized with 1/sqrt(N(x)) and the resolution of the identity
carries the weight N(x):  int mu(dx) N(x) |x><x| = Id.  Components use
phi_i(x) un-conjugated, so the reproducing subspace of L^2 is spanned by the
conjugated states.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from csquant.config import get_settings
from csquant.errors import DegeneratePointError, DimensionError, FamilyError
from csquant.quad import Domain, QuadratureRule, build_rule, evaluate

logger = logging.getLogger(__name__)

Coords = Tuple[np.ndarray, ...]
PointFunction = Callable[..., np.ndarray]


@dataclass(frozen=True)
class OrthoFamily:
    """Finite orthonormal family on a measured domain.

    product_degree bounds the trigonometric degree of every product
    conj(phi_i) phi_j; it sizes the exact rule used for the Gram check.
    """

    domain: Domain
    functions: Tuple[PointFunction, ...]
    labels: Tuple[str, ...]
    product_degree: int
    gram_residual: float = field(init=False, default=float("nan"))

    def __post_init__(self):
        if len(self.functions) < 1:
            raise FamilyError("A family needs at least one function")
        if len(self.labels) != len(self.functions):
            raise FamilyError(f"{len(self.labels)} labels for {len(self.functions)} functions")
        rule = build_rule(self.domain, self.product_degree)
        residual = float(np.max(np.abs(self.gram(rule) - np.eye(self.size))))
        object.__setattr__(self, "gram_residual", residual)
        tol = get_settings().gram_tol
        if residual > tol:
            raise FamilyError(f"Gram matrix differs from identity by {residual:.3e} (tolerance {tol:g})", residual)

    @property
    def size(self) -> int:
        return len(self.functions)

    def values(self, *coords: np.ndarray) -> np.ndarray:
        """Matrix of phi_i(x_k), shape (points, size)"""
        shape = np.broadcast(*coords).shape
        columns = [np.broadcast_to(np.asarray(f(*coords), dtype=complex), shape) for f in self.functions]
        return np.stack(columns, axis=-1)

    def weight(self, *coords: np.ndarray) -> np.ndarray:
        return np.sum(np.abs(self.values(*coords)) ** 2, axis=-1)

    def gram(self, rule: QuadratureRule) -> np.ndarray:
        values = self.values(*rule.coords)
        return (values.conj().T * rule.weights) @ values


@dataclass(frozen=True)
class CoherentFrame:
    family: OrthoFamily

    @property
    def domain(self) -> Domain:
        return self.family.domain

    @property
    def dim(self) -> int:
        return self.family.size

    def rule(self, extra_degree: int = 0) -> QuadratureRule:
        """Exact rule for products of two states times a degree-extra_degree function"""
        return build_rule(self.domain, self.family.product_degree + extra_degree)

    def weight(self, *coords: np.ndarray) -> np.ndarray:
        return self.family.weight(*coords)

    def state(self, *coords: np.ndarray) -> np.ndarray:
        """Normalized |x> components, shape (points, dim)"""
        values = self.family.values(*coords)
        norm = np.sqrt(np.sum(np.abs(values) ** 2, axis=-1))
        return values / norm[..., None]

    def projector(self, *coords: np.ndarray) -> np.ndarray:
        """weight(x) |x><x|, shape (points, dim, dim)"""
        values = self.family.values(*coords)
        # N |x><x| = phi phi^dagger
        return values[..., :, None] * values[..., None, :].conj()

    def weighted_moment(self, rule: QuadratureRule, f_values: np.ndarray) -> np.ndarray:
        """sum_k w_k N(x_k) f(x_k) |x_k><x_k|"""
        values = self.family.values(*rule.coords)
        coefficients = rule.weights * f_values
        return (values.T * coefficients) @ values.conj()


def make_frame(family: OrthoFamily) -> CoherentFrame:
    rule = build_rule(family.domain, family.product_degree)
    weights = family.weight(*rule.coords)
    degenerate = np.argwhere(~(weights > 0))
    if degenerate.size:
        node = rule.node(int(degenerate[0][0]))
        raise DegeneratePointError(f"Weight N(x) vanishes at node {node}", node=node)
    return CoherentFrame(family)


def identity_residual(frame: CoherentFrame, rule: Optional[QuadratureRule] = None, weighted: bool = True) -> float:
    """Max-norm distance of int mu [N] |x><x| from the identity"""
    rule = rule or frame.rule()
    states = frame.state(*rule.coords)
    factors = rule.weights * (frame.weight(*rule.coords) if weighted else 1.0)
    moment = (states.T * factors) @ states.conj()
    return float(np.max(np.abs(moment - np.eye(frame.dim))))


def check_identity(frame: CoherentFrame, rule: Optional[QuadratureRule] = None) -> float:
    return identity_residual(frame, rule, weighted=True)


class Kernel:
    """K(x, y) = <x|y>"""

    def __init__(self, frame: CoherentFrame):
        self.frame = frame

    def __call__(self, x: Coords, y: Coords) -> np.ndarray:
        sx = self.frame.state(*x)
        sy = self.frame.state(*y)
        return np.sum(sx.conj() * sy, axis=-1)

    def matrix(self, x: Coords, y: Coords) -> np.ndarray:
        """All pairs: entry [a, b] = K(x_a, y_b)"""
        return self.frame.state(*x).conj() @ self.frame.state(*y).T


def kernel(frame: CoherentFrame) -> Kernel:
    return Kernel(frame)


def reproduce(frame: CoherentFrame, rule: QuadratureRule, psi: PointFunction) -> PointFunction:
    """x -> int mu(dy) N(y) K(x, y) Psi(y)"""
    states = frame.state(*rule.coords)
    factors = rule.weights * frame.weight(*rule.coords) * evaluate(rule, psi)
    # c_i = int N state_i Psi
    coefficients = states.T @ factors

    def reproduced(*coords: np.ndarray) -> np.ndarray:
        return frame.state(*coords).conj() @ coefficients

    return reproduced


def weyl_wigner(frame: CoherentFrame, psi: Sequence[complex]) -> PointFunction:
    """Psi(x) = <x|psi>"""
    vector = np.asarray(psi, dtype=complex)
    if vector.shape != (frame.dim,):
        raise DimensionError(f"Vector of length {vector.shape} for a frame of dimension {frame.dim}")

    def injected(*coords: np.ndarray) -> np.ndarray:
        return frame.state(*coords).conj() @ vector

    return injected


def injection_norms(frame: CoherentFrame, rule: QuadratureRule, psi: Sequence[complex]) -> Tuple[float, float]:
    """(int N |Psi|^2 dmu, int |Psi|^2 dmu); the weighted one equals ||psi||^2"""
    values = np.abs(evaluate(rule, weyl_wigner(frame, psi))) ** 2
    weighted = float(np.dot(rule.weights, values * frame.weight(*rule.coords)))
    unweighted = float(np.dot(rule.weights, values))
    return weighted, unweighted

"""Quadrature on the circle and the 2-sphere.

Exact rules are Gauss-Legendre in u = cos(theta) times a uniform azimuthal
grid shifted by half a step, so no node ever sits on the phi = 0 cut.
Adaptive rules are Gauss-Legendre in theta and in phi and converge
spectrally for integrands analytic on the closed coordinate box, which
covers the coordinate functions theta and phi themselves.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple

import numpy as np

from csquant.config import get_settings
from csquant.errors import CapacityError, ConvergenceError, EvaluationError

logger = logging.getLogger(__name__)

ADAPTIVE_START_NODES = 8


class DomainKind(str, Enum):
    CIRCLE = "circle"
    SPHERE = "sphere"


@dataclass(frozen=True)
class Domain:
    kind: DomainKind

    @property
    def measure_normalization(self) -> float:
        # dtheta/pi over [0, 2pi) has mass 2; sin(theta) dtheta dphi / 4pi has mass 1
        return 2.0 if self.kind == DomainKind.CIRCLE else 1.0

    @property
    def ndim(self) -> int:
        return 1 if self.kind == DomainKind.CIRCLE else 2


CIRCLE = Domain(DomainKind.CIRCLE)
SPHERE = Domain(DomainKind.SPHERE)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes as coordinate arrays (theta,) or (theta, phi) with positive weights.

    exact_degree is None for adaptive rules, which are never exact.
    """

    domain: Domain
    coords: Tuple[np.ndarray, ...]
    weights: np.ndarray
    exact_degree: Optional[int]

    @property
    def size(self) -> int:
        return int(self.weights.shape[0])

    def node(self, index: int) -> Tuple[float, ...]:
        return tuple(float(c[index]) for c in self.coords)


def _check_capacity(count: int) -> None:
    limit = get_settings().max_nodes
    if count > limit:
        raise CapacityError(f"Quadrature rule needs {count} nodes, limit is {limit} (CSQ_MAX_NODES)")


def _offset_grid(count: int) -> np.ndarray:
    """Uniform grid on [0, 2pi) shifted by half a step"""
    return (np.arange(count) + 0.5) * (2.0 * math.pi / count)


def build_rule(domain: Domain, degree: int) -> QuadratureRule:
    """Rule integrating every trigonometric polynomial of degree <= degree exactly"""
    if degree < 0:
        raise ValueError(f"degree must be non-negative, got {degree}")

    n_phi = degree + 1
    if domain.kind == DomainKind.CIRCLE:
        _check_capacity(n_phi)
        theta = _offset_grid(n_phi)
        weights = np.full(n_phi, domain.measure_normalization / n_phi)
        logger.debug("Built circle rule: degree=%d nodes=%d", degree, n_phi)
        return QuadratureRule(domain, (_frozen(theta),), _frozen(weights), degree)

    # Gauss-Legendre with n nodes is exact up to polynomial degree 2n - 1 in u
    n_u = math.ceil((degree + 2) / 2)
    _check_capacity(n_u * n_phi)
    u, w_u = np.polynomial.legendre.leggauss(n_u)
    phi = _offset_grid(n_phi)

    theta_grid, phi_grid = np.meshgrid(np.arccos(u), phi, indexing="ij")
    # int du dphi / 4pi: w_u sums to 2, the phi grid to 2pi
    weights = np.outer(w_u, np.full(n_phi, 2.0 * math.pi / n_phi)) / (4.0 * math.pi)
    logger.debug("Built sphere rule: degree=%d nodes=%dx%d", degree, n_u, n_phi)
    return QuadratureRule(
        domain,
        (_frozen(theta_grid.ravel()), _frozen(phi_grid.ravel())),
        _frozen(weights.ravel()),
        degree,
    )


def adaptive_rule(domain: Domain, n: int) -> QuadratureRule:
    """Gauss-Legendre tensor rule with n nodes per coordinate"""
    if n < 1:
        raise ValueError(f"node count must be positive, got {n}")
    x, w = np.polynomial.legendre.leggauss(n)

    if domain.kind == DomainKind.CIRCLE:
        _check_capacity(n)
        theta = math.pi * (x + 1.0)
        # dtheta/pi with dtheta = pi dx
        return QuadratureRule(domain, (_frozen(theta),), _frozen(w.copy()), None)

    _check_capacity(n * n)
    theta = 0.5 * math.pi * (x + 1.0)
    phi = math.pi * (x + 1.0)
    theta_grid, phi_grid = np.meshgrid(theta, phi, indexing="ij")
    w_theta = 0.5 * math.pi * w * np.sin(theta)
    w_phi = math.pi * w
    weights = np.outer(w_theta, w_phi) / (4.0 * math.pi)
    return QuadratureRule(
        domain,
        (_frozen(theta_grid.ravel()), _frozen(phi_grid.ravel())),
        _frozen(weights.ravel()),
        None,
    )


def evaluate(rule: QuadratureRule, f: Callable[..., np.ndarray]) -> np.ndarray:
    """Evaluate f at every node, rejecting non-finite values"""
    values = np.asarray(f(*rule.coords), dtype=complex)
    if values.ndim == 0:
        values = np.full(rule.size, complex(values))
    bad = ~np.isfinite(values)
    if bad.any():
        index = int(np.argwhere(bad)[0][0])
        node = rule.node(index)
        raise EvaluationError(f"Non-finite value at node {node}", node=node)
    return values


def integrate(rule: QuadratureRule, f: Callable[..., np.ndarray]) -> complex:
    values = evaluate(rule, f)
    return complex(np.dot(rule.weights, values))


def converge(
    domain: Domain,
    compute: Callable[[QuadratureRule], np.ndarray],
    tol: Optional[float] = None,
    max_doublings: Optional[int] = None,
) -> np.ndarray:
    """Double the adaptive rule until two successive results agree within tol.

    compute maps a rule to a scalar or an array; agreement is measured in the
    max norm.
    """
    settings = get_settings()
    tol = settings.adaptive_tol if tol is None else tol
    max_doublings = settings.max_doublings if max_doublings is None else max_doublings
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")

    n = ADAPTIVE_START_NODES
    previous = np.asarray(compute(adaptive_rule(domain, n)))
    for doubling in range(1, max_doublings + 1):
        n *= 2
        try:
            rule = adaptive_rule(domain, n)
        except CapacityError as e:
            raise ConvergenceError(
                f"Adaptive integration hit the node limit after {doubling - 1} doublings: {e}",
                previous=previous,
                current=previous,
            ) from e
        current = np.asarray(compute(rule))
        change = float(np.max(np.abs(current - previous))) if current.size else 0.0
        logger.debug("Adaptive %s n=%d change=%.3e", domain.kind.value, n, change)
        if change < tol:
            if doubling > 6:
                logger.info("Adaptive integration needed %d doublings (n=%d)", doubling, n)
            return current
        previous = current

    raise ConvergenceError(
        f"Adaptive integration did not converge to {tol:g} after {max_doublings} doublings",
        previous=previous,
        current=current,
    )


def integrate_adaptive(
    domain: Domain,
    f: Callable[..., np.ndarray],
    tol: Optional[float] = None,
    max_doublings: Optional[int] = None,
) -> complex:
    result = converge(domain, lambda rule: integrate(rule, f), tol, max_doublings)
    return complex(result)

"""Brute-force midpoint-grid integrals, independent of csquant.quad.

Used to recompute the derived constants of the library from scratch.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

logger = logging.getLogger(__name__)

MIN_POINTS = 1_000_000
AGREEMENT_TOL = 1e-6


@dataclass(frozen=True)
class OracleGrid:
    n_theta: int = 4000
    n_phi: int = 256
    n_circle: int = 1_000_000

    def __post_init__(self):
        if self.n_theta * self.n_phi < MIN_POINTS or self.n_circle < MIN_POINTS:
            raise ValueError(f"Oracle grids need at least {MIN_POINTS} points")

    def sphere(self, f: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> complex:
        """int f sin(theta) dtheta dphi / 4pi, evaluated one theta row at a time"""
        h_theta = math.pi / self.n_theta
        h_phi = 2.0 * math.pi / self.n_phi
        theta = (np.arange(self.n_theta) + 0.5) * h_theta
        phi = (np.arange(self.n_phi) + 0.5) * h_phi
        total = 0.0 + 0.0j
        for chunk in np.array_split(np.arange(self.n_theta), 16):
            t, p = np.meshgrid(theta[chunk], phi, indexing="ij")
            total += np.sum(f(t, p) * np.sin(t))
        return complex(total * h_theta * h_phi / (4.0 * math.pi))

    def circle(self, f: Callable[[np.ndarray], np.ndarray]) -> complex:
        """int f dtheta / pi over [0, 2pi)"""
        h = 2.0 * math.pi / self.n_circle
        theta = (np.arange(self.n_circle) + 0.5) * h
        return complex(np.sum(f(theta)) * h / math.pi)


def _theta_squared(L: int, k: int) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    coefficient = math.comb(L, k)

    def density(theta, phi):
        return coefficient * np.cos(theta / 2) ** (2 * (L - k)) * np.sin(theta / 2) ** (2 * k) + 0.0 * phi

    return density


def theta_norms(grid: OracleGrid, L: int) -> List[float]:
    """int |Theta_i|^2 dmu for every label; each should be 1/(L+1)"""
    return [grid.sphere(_theta_squared(L, k)).real for k in range(L + 1)]


def lambda_constant(grid: OracleGrid, L: int) -> float:
    """CS coordinate scaling from the top-left entry of A_{x^3}: (L+1) int cos(theta) |Theta|^2 = lambda L / 2"""
    if L < 1:
        raise ValueError("lambda is defined for L >= 1")
    density = _theta_squared(L, 0)
    entry = (L + 1) * grid.sphere(lambda t, p: np.cos(t) * density(t, p)).real
    return 2.0 * entry / L


def sphere_berezin_lieb_sigma3(grid: OracleGrid) -> Dict[str, float]:
    """sigma_3 on the spin-1/2 sphere with g = x^2 and dnu = 2 dmu"""
    return {
        "lower": 2.0 * grid.sphere(lambda t, p: np.cos(t) ** 2 + 0.0 * p).real,
        "trace": 2.0,
        "upper": 2.0 * grid.sphere(lambda t, p: (3.0 * np.cos(t)) ** 2 + 0.0 * p).real,
    }


def circle_berezin_lieb_diag(grid: OracleGrid) -> Dict[str, float]:
    """diag(1, -1) on the circle with g = x^2; N = 1"""
    return {
        "lower": grid.circle(lambda t: np.cos(2 * t) ** 2).real,
        "trace": 2.0,
        "upper": grid.circle(lambda t: (2.0 * np.cos(2 * t)) ** 2).real,
    }

"""Observables on the sphere: Cartesian coordinates, angles and spherical harmonics.

Spherical harmonics are orthonormal under mu = sin(theta) dtheta dphi / 4pi,
i.e. sqrt(4 pi) times the usual convention, with the Condon-Shortley phase.
"""

import math
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, lpmv

from csquant.quantizer import ClassicalObservable


def _x1(theta, phi):
    return np.sin(theta) * np.cos(phi)


def _x2(theta, phi):
    return np.sin(theta) * np.sin(phi)


def _x3(theta, phi):
    return np.cos(theta) + 0.0 * phi


X1 = ClassicalObservable(_x1, "x1 = sin(theta) cos(phi)", degree=1)
X2 = ClassicalObservable(_x2, "x2 = sin(theta) sin(phi)", degree=1)
X3 = ClassicalObservable(_x3, "x3 = cos(theta)", degree=1)
COORDINATES = (X1, X2, X3)

ONE = ClassicalObservable(lambda theta, phi: np.ones(np.broadcast(theta, phi).shape), "1", degree=0)
THETA = ClassicalObservable(lambda theta, phi: theta + 0.0 * phi, "theta")
PHI = ClassicalObservable(lambda theta, phi: phi + 0.0 * theta, "phi in [0, 2pi)")


@lru_cache(maxsize=None)
def _normalization(ell: int, m: int) -> float:
    # sqrt((2l+1) (l-m)!/(l+m)!), the 4pi of the usual convention absorbed by mu
    return math.sqrt(2 * ell + 1) * math.exp(0.5 * (gammaln(ell - m + 1) - gammaln(ell + m + 1)))


def spherical_harmonic(ell: int, m: int) -> ClassicalObservable:
    """Y^l_m with int |Y^l_m|^2 dmu = 1"""
    if ell < 0 or abs(m) > ell:
        raise ValueError(f"Invalid harmonic indices l={ell}, m={m}")
    order = abs(m)
    norm = _normalization(ell, order)

    def evaluator(theta, phi):
        value = norm * lpmv(order, ell, np.cos(theta)) * np.exp(1j * order * phi)
        if m < 0:
            # Y^l_{-m} = (-1)^m conj(Y^l_m)
            value = (-1) ** order * np.conj(value)
        return value

    return ClassicalObservable(evaluator, f"Y^{ell}_{m}", is_real=(m == 0), degree=ell)


def harmonic_indices(ell_max: int):
    """(l, m) pairs with l <= ell_max in the usual order"""
    return [(ell, m) for ell in range(ell_max + 1) for m in range(-ell, ell + 1)]

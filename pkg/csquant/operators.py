"""Dense Hermitian matrix algebra: commutators, cyclic Jacobi eigensolver, spectral functions."""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np

from csquant.config import get_settings
from csquant.errors import DimensionError, NotHermitianError, NumericalError
from csquant.models import MatrixPayload

logger = logging.getLogger(__name__)

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_0, SIGMA_1, SIGMA_2, SIGMA_3)

for _sigma in PAULI:
    _sigma.setflags(write=False)

_JACOBI_TOL = 1e-14


class HermitianOperator:
    """Dense complex matrix with entries[j, i] == conj(entries[i, j]) stored exactly.

    Construction symmetrizes (A + A^dagger)/2 and rejects inputs whose
    asymmetry exceeds tol.
    """

    def __init__(self, entries, tol: Optional[float] = None):
        matrix = np.array(entries, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"Expected a square matrix, got shape {matrix.shape}")
        tol = get_settings().hermitian_tol if tol is None else tol
        self.asymmetry = asymmetry(matrix)
        if self.asymmetry > tol:
            raise NotHermitianError(f"Matrix asymmetry {self.asymmetry:.3e} exceeds {tol:g}", self.asymmetry)
        matrix = 0.5 * (matrix + matrix.conj().T)
        matrix.setflags(write=False)
        self._entries = matrix

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def dim(self) -> int:
        return self._entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.array(self._entries, dtype=dtype)

    def __add__(self, other: "HermitianOperator") -> "HermitianOperator":
        return HermitianOperator(self._entries + as_matrix(other))

    def __sub__(self, other: "HermitianOperator") -> "HermitianOperator":
        return HermitianOperator(self._entries - as_matrix(other))

    def __mul__(self, scalar: float) -> "HermitianOperator":
        if isinstance(scalar, complex) and scalar.imag != 0:
            raise NotHermitianError("Multiplying by a non-real scalar breaks Hermiticity")
        return HermitianOperator(self._entries * float(np.real(scalar)))

    __rmul__ = __mul__

    def trace(self) -> float:
        return float(np.trace(self._entries).real)

    def distance(self, other) -> float:
        """Max-norm of the entrywise difference"""
        return float(np.max(np.abs(self._entries - as_matrix(other))))

    def to_payload(self) -> MatrixPayload:
        return MatrixPayload.from_matrix(self._entries)

    @classmethod
    def from_payload(cls, payload: MatrixPayload) -> "HermitianOperator":
        return cls(payload.to_matrix())

    def __repr__(self) -> str:
        return f"HermitianOperator(dim={self.dim})"


MatrixLike = Union[HermitianOperator, np.ndarray]


def as_matrix(value: MatrixLike) -> np.ndarray:
    if isinstance(value, HermitianOperator):
        return value.entries
    return np.asarray(value, dtype=complex)


def asymmetry(matrix: np.ndarray) -> float:
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.conj().T)))


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def commutator(a: MatrixLike, b: MatrixLike) -> np.ndarray:
    """AB - BA; anti-Hermitian when both arguments are Hermitian"""
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionError(f"Commutator of shapes {ma.shape} and {mb.shape}")
    result = ma @ mb - mb @ ma
    if isinstance(a, HermitianOperator) and isinstance(b, HermitianOperator):
        skew = float(np.max(np.abs(result + result.conj().T))) if result.size else 0.0
        if skew > 1e-10:
            raise NumericalError(f"Commutator of Hermitian operators is not anti-Hermitian ({skew:.3e})")
    return result


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return math.sqrt(float(np.sum(np.abs(off) ** 2)))


def eig(op: MatrixLike, max_sweeps: Optional[int] = None) -> Spectrum:
    """Cyclic complex Jacobi eigendecomposition, eigenvalues ascending"""
    a = np.array(as_matrix(op), dtype=complex)
    if not isinstance(op, HermitianOperator):
        a = HermitianOperator(a).entries.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    max_sweeps = get_settings().jacobi_max_sweeps if max_sweeps is None else max_sweeps
    scale = math.sqrt(float(np.sum(np.abs(a) ** 2)))

    sweeps = 0
    threshold = _JACOBI_TOL * max(n, 1) * scale
    while _off_norm(a) > threshold:
        if sweeps >= max_sweeps:
            raise NumericalError(f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal {_off_norm(a):.3e})")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                # Phase column q so the (p, q) entry becomes real, then a real rotation zeroes it
                phase = apq / r
                angle = 0.5 * math.atan2(2.0 * r, (a[q, q] - a[p, p]).real)
                c, s = math.cos(angle), math.sin(angle)
                w = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ w
                a[idx, :] = w.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ w
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    logger.debug("Jacobi converged: dim=%d sweeps=%d", n, sweeps)
    return Spectrum(values[order], v[:, order], sweeps)


def apply_function(op: MatrixLike, g: Callable[[np.ndarray], np.ndarray]) -> HermitianOperator:
    """V g(Lambda) V^dagger"""
    spectrum = eig(op)
    mapped = np.asarray(g(spectrum.eigenvalues), dtype=float)
    if not np.all(np.isfinite(mapped)):
        raise NumericalError(f"Function is not finite on the spectrum {spectrum.eigenvalues.tolist()}")
    v = spectrum.eigenvectors
    return HermitianOperator((v * mapped) @ v.conj().T)


def trace_function(op: MatrixLike, g: Callable[[np.ndarray], np.ndarray]) -> float:
    """Tr g(O)"""
    spectrum = eig(op)
    mapped = np.asarray(g(spectrum.eigenvalues), dtype=float)
    if not np.all(np.isfinite(mapped)):
        raise NumericalError(f"Function is not finite on the spectrum {spectrum.eigenvalues.tolist()}")
    return float(np.sum(mapped))


def pauli_components(matrix: MatrixLike) -> Tuple[complex, complex, complex, complex]:
    """Coefficients c_k with M = sum_k c_k sigma_k"""
    m = as_matrix(matrix)
    if m.shape != (2, 2):
        raise DimensionError(f"Pauli decomposition needs a 2x2 matrix, got {m.shape}")
    return tuple(complex(np.trace(sigma @ m) / 2.0) for sigma in PAULI)

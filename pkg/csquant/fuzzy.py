"""The (L+1)-dimensional coherent-state model of the sphere and its fuzzy-sphere reading.

Rows and columns are indexed by k = 0..L, the label i = k - L/2 ascending.
The family is sqrt(L+1) * Theta_i, so N(x) = L+1 and state(x)_k = Theta_k(x).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from csquant.errors import DimensionError, NumericalError
from csquant.frames import CoherentFrame, OrthoFamily, identity_residual, make_frame
from csquant.harmonics import COORDINATES, harmonic_indices, spherical_harmonic
from csquant.operators import PAULI, HermitianOperator, as_matrix, commutator
from csquant.quad import SPHERE, QuadratureRule, build_rule, evaluate
from csquant.quantizer import ClassicalObservable, combine, quantize, quantize_matrix

logger = logging.getLogger(__name__)

IDENTITY_TOL = 1e-10
SELECTION_TOL = 1e-12
RANK_TOL = 1e-8

HarmonicCoefficients = Mapping[Tuple[int, int], complex]


def label(L: int, k: int) -> Fraction:
    """Label i = k - L/2 of row k"""
    return Fraction(2 * k - L, 2)


@dataclass(frozen=True)
class ThetaBasis:
    L: int

    @property
    def size(self) -> int:
        return self.L + 1

    @property
    def labels(self) -> Tuple[Fraction, ...]:
        return tuple(label(self.L, k) for k in range(self.size))

    def function(self, k: int):
        """Theta_i with i = k - L/2: sqrt(C(L,k)) cos^{L-k}(theta/2) sin^k(theta/2) e^{-ik phi}"""
        L = self.L
        if not 0 <= k <= L:
            raise DimensionError(f"Row index {k} outside 0..{L}")
        root = math.sqrt(math.comb(L, k))

        def theta_k(theta, phi):
            return root * np.cos(theta / 2) ** (L - k) * np.sin(theta / 2) ** k * np.exp(-1j * k * phi)

        return theta_k

    def values(self, theta, phi) -> np.ndarray:
        """Shape (points, L+1)"""
        shape = np.broadcast(theta, phi).shape
        return np.stack(
            [np.broadcast_to(self.function(k)(theta, phi), shape) for k in range(self.size)], axis=-1
        )

    def partition_residual(self, theta, phi) -> float:
        """max |sum_i |Theta_i|^2 - 1|"""
        return float(np.max(np.abs(np.sum(np.abs(self.values(theta, phi)) ** 2, axis=-1) - 1.0)))

    def norm_residual(self, rule: Optional[QuadratureRule] = None) -> float:
        """Gram of the Theta functions against Id/(L+1)"""
        rule = rule or build_rule(SPHERE, self.L)
        values = self.values(*rule.coords)
        gram = (values.conj().T * rule.weights) @ values
        return float(np.max(np.abs(gram - np.eye(self.size) / self.size)))

    def family(self) -> OrthoFamily:
        scale = math.sqrt(self.size)
        functions = tuple(
            (lambda theta, phi, f=self.function(k): scale * f(theta, phi)) for k in range(self.size)
        )
        labels = tuple(f"sqrt({self.size}) Theta_{i}" for i in self.labels)
        return OrthoFamily(SPHERE, functions, labels, product_degree=self.L)


@dataclass(frozen=True)
class SpinMatrices:
    """Spin-L/2 matrices in the ascending-m basis: J3 = diag(m), J+ raises the row index"""

    L: int
    j1: np.ndarray
    j2: np.ndarray
    j3: np.ndarray

    @classmethod
    def build(cls, L: int) -> "SpinMatrices":
        spin = L / 2.0
        m = np.arange(L + 1) - spin
        raising = np.zeros((L + 1, L + 1), dtype=complex)
        for k in range(L):
            raising[k + 1, k] = math.sqrt(spin * (spin + 1) - m[k] * (m[k] + 1))
        lowering = raising.conj().T
        matrices = ((raising + lowering) / 2, (raising - lowering) / 2j, np.diag(m).astype(complex))
        for matrix in matrices:
            matrix.setflags(write=False)
        return cls(L, *matrices)

    @property
    def all(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.j1, self.j2, self.j3

    @property
    def casimir(self) -> float:
        spin = self.L / 2.0
        return spin * (spin + 1)

    def commutation_residual(self) -> float:
        """max over cyclic (i, j, k) of |[J_i, J_j] - i J_k|"""
        j = self.all
        return max(
            float(np.max(np.abs(commutator(j[a], j[b]) - 1j * j[c])))
            for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1))
        )

    def casimir_residual(self) -> float:
        total = sum(m @ m for m in self.all)
        return float(np.max(np.abs(total - self.casimir * np.eye(self.L + 1))))


@dataclass(frozen=True)
class CoefficientTensor:
    """C[l, m, i, j] = int mu Y^l_m conj(Theta_i) Theta_j, stored at [l, m + ell_max, k_i, k_j]"""

    L: int
    ell_max: int
    entries: np.ndarray

    def get(self, ell: int, m: int) -> np.ndarray:
        if not 0 <= ell <= self.ell_max or abs(m) > ell:
            raise DimensionError(f"(l, m) = ({ell}, {m}) outside the tensor (ell_max={self.ell_max})")
        return self.entries[ell, m + self.ell_max]

    def yhat(self, ell: int, m: int) -> np.ndarray:
        """A_{Y^l_m}: entry (j, i) is (L+1) C[l, m, i, j]"""
        return (self.L + 1) * self.get(ell, m).T

    def indices(self) -> List[Tuple[int, int]]:
        return harmonic_indices(self.ell_max)

    def selection_residual(self) -> float:
        """Largest entry where m + i - j != 0"""
        worst = 0.0
        for ell, m in self.indices():
            block = self.get(ell, m)
            for a in range(self.L + 1):
                for b in range(self.L + 1):
                    if m + a - b != 0:
                        worst = max(worst, abs(block[a, b]))
        return worst

    def rows(self) -> Iterator[Tuple[int, int, Fraction, Fraction, float, float]]:
        """(l, m, i, j, re, im) in (l, m, i, j) order"""
        for ell, m in self.indices():
            block = self.get(ell, m)
            for a in range(self.L + 1):
                for b in range(self.L + 1):
                    value = block[a, b]
                    yield ell, m, label(self.L, a), label(self.L, b), float(value.real), float(value.imag)


def coefficient_tensor_for(basis: ThetaBasis, ell_max: int) -> CoefficientTensor:
    """Exact quadrature of degree 2L + ell_max"""
    if ell_max < 0:
        raise ValueError(f"ell_max must be non-negative, got {ell_max}")
    rule = build_rule(SPHERE, 2 * basis.L + ell_max)
    theta_values = basis.values(*rule.coords)
    entries = np.zeros((ell_max + 1, 2 * ell_max + 1, basis.size, basis.size), dtype=complex)
    for ell, m in harmonic_indices(ell_max):
        y = evaluate(rule, spherical_harmonic(ell, m))
        entries[ell, m + ell_max] = (theta_values.conj().T * (rule.weights * y)) @ theta_values
    entries.setflags(write=False)
    logger.debug("Coefficient tensor: L=%d ell_max=%d nodes=%d", basis.L, ell_max, rule.size)
    return CoefficientTensor(basis.L, ell_max, entries)


@dataclass(frozen=True)
class FuzzySphere:
    L: int
    r: float
    theta_basis: ThetaBasis
    frame: CoherentFrame
    spin_matrices: SpinMatrices
    coefficient_tensor: CoefficientTensor
    identity_residual: float

    @property
    def dim(self) -> int:
        return self.L + 1

    @property
    def kappa(self) -> Optional[float]:
        """Madore radius parameter: 2r/3 at L = 1, 2r / sqrt(L^2 + 2L) above; undefined for L = 0"""
        if self.L == 0:
            return None
        if self.L == 1:
            # L = 1 follows the two-state convention kappa = lambda = 2r/3
            return 2.0 * self.r / 3.0
        return 2.0 * self.r / math.sqrt(self.L ** 2 + 2 * self.L)

    def rule(self, extra_degree: int = 0) -> QuadratureRule:
        return self.frame.rule(extra_degree)


def build_fuzzy(L: int, r: float = 1.0) -> FuzzySphere:
    if L < 0:
        raise ValueError(f"L must be non-negative, got {L}")
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    basis = ThetaBasis(L)
    frame = make_frame(basis.family())
    residual = identity_residual(frame)
    if residual > IDENTITY_TOL:
        raise NumericalError(f"Fuzzy frame L={L} misses the identity by {residual:.3e}")
    logger.info("Built fuzzy sphere L=%d (identity residual %.3e)", L, residual)
    return FuzzySphere(
        L=L,
        r=float(r),
        theta_basis=basis,
        frame=frame,
        spin_matrices=SpinMatrices.build(L),
        coefficient_tensor=coefficient_tensor_for(basis, L),
        identity_residual=residual,
    )


def _rule_for(fs: FuzzySphere, f: ClassicalObservable) -> Optional[QuadratureRule]:
    return None if f.degree is None else fs.rule(f.degree)


def quantize_fuzzy(fs: FuzzySphere, f: ClassicalObservable, rule: Optional[QuadratureRule] = None) -> HermitianOperator:
    """[A_f]_{ji} = (L+1) int mu f conj(Theta_i) Theta_j"""
    return quantize(fs.frame, rule or _rule_for(fs, f), f)


def quantize_fuzzy_matrix(fs: FuzzySphere, f: ClassicalObservable, rule: Optional[QuadratureRule] = None) -> np.ndarray:
    return quantize_matrix(fs.frame, rule or _rule_for(fs, f), f)


def coefficient_tensor(fs: FuzzySphere, ell_max: Optional[int] = None) -> CoefficientTensor:
    if ell_max is None or ell_max == fs.coefficient_tensor.ell_max:
        return fs.coefficient_tensor
    return coefficient_tensor_for(fs.theta_basis, ell_max)


def operator_from_coefficients(
    fs: FuzzySphere,
    coefficients: HarmonicCoefficients,
    tensor: Optional[CoefficientTensor] = None,
) -> np.ndarray:
    """F = sum_l sum_m f_lm Yhat^l_m over every supplied (l, m)"""
    if coefficients:
        needed = max(ell for ell, _ in coefficients)
        if tensor is None or tensor.ell_max < needed:
            tensor = coefficient_tensor(fs, max(needed, fs.L))
    tensor = tensor or fs.coefficient_tensor
    result = np.zeros((fs.dim, fs.dim), dtype=complex)
    for (ell, m), value in sorted(coefficients.items()):
        result += complex(value) * tensor.yhat(ell, m)
    return result


def harmonic_sum(coefficients: HarmonicCoefficients) -> ClassicalObservable:
    """sum f_lm Y^l_m as an observable"""
    items = sorted(coefficients.items())
    return combine([v for _, v in items], [spherical_harmonic(ell, m) for (ell, m), _ in items])


@dataclass(frozen=True)
class YhatBasis:
    indices: Tuple[Tuple[int, int], ...]
    matrices: Tuple[np.ndarray, ...]
    smallest_singular_value: float

    def reconstruct(self, target) -> Tuple[np.ndarray, float]:
        """Least-squares coefficients of target in the basis and the max residual"""
        design = np.stack([m.ravel() for m in self.matrices], axis=1)
        rhs = np.asarray(target, dtype=complex).ravel()
        coefficients = np.linalg.lstsq(design, rhs, rcond=None)[0]
        return coefficients, float(np.max(np.abs(design @ coefficients - rhs)))


def yhat_basis(fs: FuzzySphere) -> YhatBasis:
    tensor = fs.coefficient_tensor
    indices = tuple(harmonic_indices(fs.L))
    matrices = tuple(tensor.yhat(ell, m) for ell, m in indices)
    design = np.stack([m.ravel() for m in matrices], axis=1)
    singular = np.linalg.svd(design, compute_uv=False)
    smallest = float(singular.min())
    if smallest <= RANK_TOL:
        raise NumericalError(f"Yhat family is rank deficient for L={fs.L} (smallest singular value {smallest:.3e})")
    return YhatBasis(indices, matrices, smallest)


def truncation_check(fs: FuzzySphere, ell: int, m: int) -> float:
    """Frobenius norm of A_{Y^l_m}; vanishes for l > L"""
    if ell < 0 or abs(m) > ell:
        raise ValueError(f"Invalid harmonic indices l={ell}, m={m}")
    rule = fs.rule(ell)
    return float(np.linalg.norm(quantize_matrix(fs.frame, rule, spherical_harmonic(ell, m))))


def truncation_table(fs: FuzzySphere, ell: int) -> Dict[int, float]:
    return {m: truncation_check(fs, ell, m) for m in range(-ell, ell + 1)}


def coordinate_operators(fs: FuzzySphere) -> Tuple[HermitianOperator, ...]:
    rule = fs.rule(1)
    return tuple(quantize_fuzzy(fs, x, rule) for x in COORDINATES)


def _relabel(matrix: np.ndarray) -> np.ndarray:
    """P conj(A) P with P reversing the row order"""
    return np.conj(as_matrix(matrix))[::-1, ::-1]


@dataclass(frozen=True)
class MadoreComparison:
    L: int
    lambdas: Tuple[Optional[float], Optional[float], Optional[float]]
    residual: float
    kappa: Optional[float]
    expected_lambda: float

    @property
    def radius_multiple(self) -> Optional[float]:
        """lambda / kappa; exactly 1 at L = 1, below 1 for L >= 2"""
        if self.kappa is None or self.lambdas[0] is None:
            return None
        return self.lambdas[0] / self.kappa


def madore_compare(fs: FuzzySphere) -> MadoreComparison:
    """Fit P conj(A_{x^k}) P = lambda_k J_k"""
    lambdas = []
    residual = 0.0
    for op, j in zip(coordinate_operators(fs), fs.spin_matrices.all):
        b = _relabel(op.entries)
        norm = float(np.vdot(j, j).real)
        if norm == 0.0:
            lambdas.append(None)
            residual = max(residual, float(np.max(np.abs(b))))
            continue
        scale = float(np.vdot(j, b).real / norm)
        lambdas.append(scale)
        residual = max(residual, float(np.max(np.abs(b - scale * j))))
    comparison = MadoreComparison(
        L=fs.L,
        lambdas=tuple(lambdas),
        residual=residual,
        kappa=fs.kappa,
        expected_lambda=2.0 / (fs.L + 2),
    )
    logger.info("Madore comparison L=%d: lambda=%s kappa=%s", fs.L, comparison.lambdas, comparison.kappa)
    return comparison


def madore_basis_rank(fs: FuzzySphere) -> int:
    """Rank of the ordered monomials J1^a J2^b J3^c, a + b + c <= L"""
    j1, j2, j3 = fs.spin_matrices.all
    powers = [[np.linalg.matrix_power(j, p) for p in range(fs.L + 1)] for j in (j1, j2, j3)]
    columns = []
    for a in range(fs.L + 1):
        for b in range(fs.L + 1 - a):
            for c in range(fs.L + 1 - a - b):
                word = powers[0][a] @ powers[1][b] @ powers[2][c]
                norm = np.linalg.norm(word)
                if norm > 0:
                    columns.append(word.ravel() / norm)
    return int(np.linalg.matrix_rank(np.stack(columns, axis=1)))


def spin_half_bridge(fs: FuzzySphere) -> float:
    """L = 1: max |conj(A_{x^k}) - sigma_k / 3|"""
    if fs.L != 1:
        raise DimensionError(f"The spin-1/2 bridge needs L = 1, got L = {fs.L}")
    return max(
        float(np.max(np.abs(np.conj(op.entries) - sigma / 3.0)))
        for op, sigma in zip(coordinate_operators(fs), PAULI[1:])
    )


def radius_relation(fs: FuzzySphere) -> Tuple[float, float]:
    """(c, residual) with sum_k A_{x^k}^2 = c Id; c = L/(L+2)"""
    total = sum(op.entries @ op.entries for op in coordinate_operators(fs))
    multiple = float(np.trace(total).real) / fs.dim
    return multiple, float(np.max(np.abs(total - multiple * np.eye(fs.dim))))


def parse_coefficients(text: str) -> Dict[Tuple[int, int], complex]:
    """'l,m,re,im;...' into {(l, m): re + i im}"""
    coefficients: Dict[Tuple[int, int], complex] = {}
    for chunk in filter(None, (part.strip() for part in text.split(";"))):
        fields = [field.strip() for field in chunk.split(",")]
        if len(fields) != 4:
            raise ValueError(f"Expected 'l,m,re,im', got {chunk!r}")
        ell, m = int(fields[0]), int(fields[1])
        if ell < 0 or abs(m) > ell:
            raise ValueError(f"Invalid harmonic indices l={ell}, m={m}")
        coefficients[(ell, m)] = coefficients.get((ell, m), 0) + complex(float(fields[2]), float(fields[3]))
    if not coefficients:
        raise ValueError(f"No coefficients in {text!r}")
    return coefficients


def harmonic_equivalence_residual(fs: FuzzySphere, coefficients: HarmonicCoefficients) -> float:
    """Tensor path F against direct quadrature of the harmonic sum"""
    direct = quantize_fuzzy_matrix(fs, harmonic_sum(coefficients))
    return float(np.max(np.abs(operator_from_coefficients(fs, coefficients) - direct)))


def hermitian_residual(fs: FuzzySphere, observables: Sequence[ClassicalObservable]) -> float:
    """Largest asymmetry of raw A_f over real observables"""
    worst = 0.0
    for f in observables:
        raw = quantize_fuzzy_matrix(fs, f)
        worst = max(worst, float(np.max(np.abs(raw - raw.conj().T))))
    return worst

import math

import numpy as np
import pytest

from csquant.errors import NotHermitianError
from csquant.model_circle import (
    COS_2THETA,
    ONE,
    SIN_2THETA,
    SYMBOL_BASIS,
    circle_matrix_decomposition,
    circle_symbols,
    symmetric_matrix,
)
from csquant.operators import SIGMA_1, SIGMA_3
from csquant.quantizer import combine, lower_symbol, upper_symbol

ANGLES = np.linspace(0.0, 2 * math.pi, 64, endpoint=False)


def test_weight_is_one(circle_model):
    assert np.allclose(circle_model.frame.weight(ANGLES), 1.0, atol=1e-15)


def test_basis_quantizations(circle_model):
    assert circle_model.quantize_real(ONE).distance(np.eye(2)) < 1e-14
    assert circle_model.quantize_real(COS_2THETA).distance(SIGMA_3 / 2) < 1e-14
    assert circle_model.quantize_real(SIN_2THETA).distance(SIGMA_1 / 2) < 1e-14


def test_quantized_operators_are_real(circle_model):
    op = circle_model.quantize_real(combine([0.3, -1.2, 0.7], SYMBOL_BASIS))
    assert np.max(np.abs(op.entries.imag)) == 0.0


@pytest.mark.parametrize(
    "a, b, d, theta, expected_lower",
    [
        (1.0, 0.0, 1.0, 0.7, 1.0),
        (1.0, 0.0, -1.0, 0.0, 1.0),
        (1.0, 0.0, -1.0, math.pi / 2, -1.0),
        (0.0, 1.0, 0.0, math.pi / 4, 1.0),
    ],
)
def test_lower_symbol_examples(a, b, d, theta, expected_lower):
    lower, _ = circle_symbols(a, b, d)
    assert lower(theta) == pytest.approx(expected_lower, abs=1e-15)


def test_identity_has_constant_symbols():
    lower, upper = circle_symbols(1.0, 0.0, 1.0)
    assert np.allclose(lower(ANGLES), 1.0)
    assert np.allclose(upper(ANGLES), 1.0)


def test_closed_forms_match_quantizer(circle_model, rng):
    for _ in range(10):
        a, b, d = rng.uniform(-2.0, 2.0, 3)
        matrix = symmetric_matrix(a, b, d)
        lower, upper = circle_symbols(a, b, d)
        assert np.allclose(lower_symbol(circle_model.frame, matrix)(ANGLES), lower(ANGLES), atol=1e-12)
        fitted = upper_symbol(circle_model.frame, circle_model.rule(), matrix, SYMBOL_BASIS)
        assert np.allclose(fitted(ANGLES), upper(ANGLES), atol=1e-10)
        requantized = circle_model.quantize_real(combine(upper.coefficients, SYMBOL_BASIS))
        assert requantized.distance(matrix) < 1e-12


@pytest.mark.parametrize(
    "matrix, expected",
    [
        (np.diag([3.0, 5.0]), (4.0, 0.0, -1.0)),
        (SIGMA_1, (0.0, 1.0, 0.0)),
        (np.zeros((2, 2)), (0.0, 0.0, 0.0)),
    ],
)
def test_decomposition(matrix, expected):
    assert circle_matrix_decomposition(matrix) == pytest.approx(expected)


def test_decomposition_rejects_asymmetric():
    with pytest.raises(NotHermitianError):
        circle_matrix_decomposition(np.array([[1.0, 2.0], [0.0, 1.0]]))

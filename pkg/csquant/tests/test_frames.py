import math

import numpy as np
import pytest

from csquant.errors import DegeneratePointError, DimensionError, FamilyError
from csquant.frames import (
    OrthoFamily,
    identity_residual,
    injection_norms,
    kernel,
    make_frame,
    reproduce,
    weyl_wigner,
)
from csquant.harmonics import spherical_harmonic
from csquant.quad import CIRCLE


def test_non_orthonormal_family_rejected():
    with pytest.raises(FamilyError) as excinfo:
        OrthoFamily(CIRCLE, (np.cos, np.cos), ("cos", "cos again"), product_degree=2)
    assert excinfo.value.residual == pytest.approx(1.0)


def test_label_count_must_match():
    with pytest.raises(FamilyError):
        OrthoFamily(CIRCLE, (np.cos, np.sin), ("cos",), product_degree=2)


def test_vanishing_weight_is_degenerate():
    step = OrthoFamily(CIRCLE, (lambda t: (t < math.pi).astype(float),), ("step",), product_degree=1)
    with pytest.raises(DegeneratePointError) as excinfo:
        make_frame(step)
    assert excinfo.value.node == pytest.approx((3 * math.pi / 2,))


def test_resolution_of_identity(circle_model, sphere_model):
    assert identity_residual(circle_model.frame) < 1e-12
    assert identity_residual(sphere_model.frame) < 1e-12
    # N = 2 on the sphere: the plain integral gives Id / 2
    assert identity_residual(sphere_model.frame, weighted=False) == pytest.approx(0.5, abs=1e-12)


def test_states_are_normalized(sphere_model, sphere_points):
    states = sphere_model.frame.state(*sphere_points)
    assert np.allclose(np.sum(np.abs(states) ** 2, axis=-1), 1.0, atol=1e-14)


def test_projector_trace_is_weight(sphere_model, sphere_points):
    projectors = sphere_model.frame.projector(*sphere_points)
    assert np.allclose(np.trace(projectors, axis1=-2, axis2=-1), 2.0, atol=1e-13)


def test_kernel_diagonal_and_hermitian(sphere_model, sphere_points):
    k = kernel(sphere_model.frame)
    theta, phi = sphere_points
    x, y = (theta[:50], phi[:50]), (theta[50:100], phi[50:100])
    assert np.allclose(k(x, x), 1.0, atol=1e-14)
    assert np.allclose(k.matrix(x, y), k.matrix(y, x).conj().T, atol=1e-14)
    assert np.all(np.abs(k.matrix(x, y)) <= 1.0 + 1e-12)


def test_kernel_reproduces_injected_vectors(sphere_model, sphere_points, rng):
    frame = sphere_model.frame
    psi = rng.normal(size=2) + 1j * rng.normal(size=2)
    injected = weyl_wigner(frame, psi)
    reproduced = reproduce(frame, frame.rule(), injected)
    assert np.allclose(reproduced(*sphere_points), injected(*sphere_points), atol=1e-12)


def test_injection_is_isometric_for_weighted_measure(sphere_model, rng):
    frame = sphere_model.frame
    psi = rng.normal(size=2) + 1j * rng.normal(size=2)
    weighted, unweighted = injection_norms(frame, frame.rule(), psi)
    norm = float(np.vdot(psi, psi).real)
    assert weighted == pytest.approx(norm, rel=1e-12)
    assert unweighted == pytest.approx(norm / 2, rel=1e-12)


def test_weyl_wigner_dimension_mismatch(sphere_model):
    with pytest.raises(DimensionError):
        weyl_wigner(sphere_model.frame, [1.0, 0.0, 0.0])


def test_circle_kernel_is_cosine_of_difference(circle_model, rng):
    theta = rng.uniform(0.0, 2.0 * math.pi, 64)
    other = rng.uniform(0.0, 2.0 * math.pi, 64)
    k = kernel(circle_model.frame)
    assert np.allclose(k((theta,), (other,)), np.cos(theta - other), atol=1e-14)
    assert np.allclose(k.matrix((theta,), (other,)), np.cos(theta[:, None] - other[None, :]), atol=1e-14)


def test_sphere_kernel_vanishes_at_antipodes(sphere_model, sphere_points):
    k = kernel(sphere_model.frame)
    assert abs(k((np.array([0.0]), np.array([0.0])), (np.array([math.pi]), np.array([0.0])))[0]) < 1e-15
    theta, phi = sphere_points
    antipodes = (math.pi - theta, phi + math.pi)
    assert np.max(np.abs(k((theta, phi), antipodes))) < 1e-12


def test_circle_reproduces_its_states(circle_model, rng):
    frame = circle_model.frame
    theta = rng.uniform(0.0, 2.0 * math.pi, 100)

    def psi(t):
        return np.conj(frame.state(t)[..., 0]) * np.sqrt(frame.weight(t))

    reproduced = reproduce(frame, frame.rule(), psi)
    assert np.max(np.abs(reproduced(theta) - np.cos(theta))) < 1e-10


def test_circle_higher_frequency_is_projected_out(circle_model, rng):
    frame = circle_model.frame
    theta = rng.uniform(0.0, 2.0 * math.pi, 100)
    reproduced = reproduce(frame, frame.rule(3), lambda t: np.cos(3 * t))
    assert np.max(np.abs(reproduced(theta))) < 1e-12


def test_spin_half_subspace_is_strict(sphere_model, sphere_points):
    frame = sphere_model.frame
    y50 = spherical_harmonic(5, 0)
    reproduced = reproduce(frame, frame.rule(5), y50)
    residual = np.max(np.abs(reproduced(*sphere_points) - y50(*sphere_points)))
    assert residual > 0.1

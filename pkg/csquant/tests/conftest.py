import math

import numpy as np
import pytest

from csquant import fuzzy
from csquant.model_circle import CircleModel
from csquant.model_sphere import SphereSpinHalfModel, angle_operators

_FUZZY_CACHE = {}


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Default CSQ_* settings and a private artifacts directory for every test"""
    for key in (
        "CSQ_MAX_L",
        "CSQ_ADAPTIVE_TOL",
        "CSQ_MAX_DOUBLINGS",
        "CSQ_MAX_NODES",
        "CSQ_JACOBI_MAX_SWEEPS",
        "CSQ_LOG_LEVEL",
    ):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("CSQ_ARTIFACTS_DIR", str(tmp_path / "artifacts"))


@pytest.fixture(scope="session")
def circle_model():
    return CircleModel.build()


@pytest.fixture(scope="session")
def sphere_model():
    return SphereSpinHalfModel.build()


@pytest.fixture(scope="session")
def angle_ops(sphere_model):
    return angle_operators(sphere_model)


@pytest.fixture(scope="session")
def fuzzy_sphere():
    def build(L):
        if L not in _FUZZY_CACHE:
            _FUZZY_CACHE[L] = fuzzy.build_fuzzy(L)
        return _FUZZY_CACHE[L]

    return build


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def sphere_points(rng):
    theta = np.arccos(rng.uniform(-1.0, 1.0, 200))
    phi = rng.uniform(0.0, 2.0 * math.pi, 200)
    return theta, phi

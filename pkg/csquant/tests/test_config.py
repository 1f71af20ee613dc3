import pytest

from csquant.config import get_settings
from csquant.errors import ConfigError


def test_defaults(monkeypatch):
    monkeypatch.delenv("CSQ_ARTIFACTS_DIR")
    settings = get_settings()
    assert settings.max_l == 16
    assert settings.adaptive_tol == 1e-10
    assert settings.max_nodes == 4_000_000
    assert settings.artifacts_dir == "artifacts"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("CSQ_MAX_L", "4")
    monkeypatch.setenv("CSQ_ADAPTIVE_TOL", "1e-6")
    monkeypatch.setenv("CSQ_LOG_LEVEL", "")
    settings = get_settings()
    assert settings.max_l == 4
    assert settings.adaptive_tol == 1e-6
    assert settings.log_level == "WARNING"


@pytest.mark.parametrize("key, value", [("CSQ_MAX_L", "-1"), ("CSQ_ADAPTIVE_TOL", "0"), ("CSQ_MAX_DOUBLINGS", "x")])
def test_invalid_values(monkeypatch, key, value):
    monkeypatch.setenv(key, value)
    with pytest.raises(ConfigError):
        get_settings()

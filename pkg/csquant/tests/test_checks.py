import logging
import math

import pytest

from csquant import checks
from csquant.models import CheckStatus, Comparison


def test_record_judges_both_directions():
    assert checks.record("g", "small", 1e-13, 1e-12).status == CheckStatus.PASS
    assert checks.record("g", "large", 1e-11, 1e-12).status == CheckStatus.FAIL
    assert checks.record("g", "positive", 0.5, 0.0, Comparison.AT_LEAST).status == CheckStatus.PASS
    assert checks.record("g", "nan", math.nan, 1.0).status == CheckStatus.FAIL


def test_apply_tolerance_only_touches_upper_bounds():
    records = [
        checks.record("g", "residual", 1e-13, 1e-12),
        checks.record("g", "singular value", 0.5, 1e-8, Comparison.AT_LEAST),
    ]
    adjusted = checks.apply_tolerance(records, 1e-30)
    assert adjusted[0].status == CheckStatus.FAIL
    assert adjusted[0].tolerance == 1e-30
    assert adjusted[1] == records[1]


def test_unknown_group():
    with pytest.raises(ValueError):
        checks.run_verification(only=["nonsense"])


@pytest.mark.parametrize("group", checks.GROUPS)
def test_group_passes(group):
    report = checks.run_verification(only=[group])
    failures = [f"{r.check}: {r.residual} {r.comparison.value} {r.tolerance} {r.details}" for r in report.records if r.status == CheckStatus.FAIL]
    assert report.ok, failures
    assert report.passed == len(report.records) > 0
    assert {r.category for r in report.records} == {group}


def test_tight_tolerance_fails_residual_checks():
    report = checks.run_verification(only=["sphere"], tol=1e-30)
    assert not report.ok
    assert report.failed > 0


def test_raising_group_is_recorded(monkeypatch):
    def broken():
        raise RuntimeError("boom")

    monkeypatch.setattr(checks, "check_identity", broken)
    report = checks.run_verification(only=["identity", "circle"])
    assert not report.ok
    failure = [r for r in report.records if r.category == "identity"]
    assert len(failure) == 1
    assert "RuntimeError: boom" in failure[0].details
    assert any(r.category == "circle" and r.status == CheckStatus.PASS for r in report.records)


def test_progress_is_logged(caplog):
    with caplog.at_level(logging.INFO, logger="csquant.checks"):
        report = checks.run_verification(only=["identity", "circle"])
    messages = [r.getMessage() for r in caplog.records if r.name == "csquant.checks"]
    assert "Verifying identity (0%)" in messages
    assert "Verifying circle (50%)" in messages
    assert messages[-1] == f"Verification done (100%): {report.passed} passed, {report.failed} failed"

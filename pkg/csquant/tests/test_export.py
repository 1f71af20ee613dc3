import csv
import io
import json
import os
from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError

from csquant import export
from csquant.checks import record
from csquant.models import CheckStatus, Comparison, Report, VerificationReport
from csquant.operators import SIGMA_2, HermitianOperator


@pytest.fixture
def report():
    records = [
        record("identity", "circle weighted identity", 1e-16, 1e-12),
        record("yhat", "L=1 smallest singular value", 0.5, 1e-8, Comparison.AT_LEAST),
        record("circle", "a failing check", 1.0, 1e-12),
    ]
    return VerificationReport(ok=False, passed=2, failed=1, records=records)


def test_round_float():
    assert export.round_float(1 / 3) == 0.3333333333333
    assert export.round_float(-0.0) == 0.0
    assert export.round_float(float("nan")) == "nan"
    assert export.round_float(float("inf")) == "inf"


@pytest.mark.parametrize("value", [1 / 3, 2 / 3 * np.pi, -1e-20, 12345.678901234567])
def test_round_float_matches_e12_format(value):
    rounded = export.round_float(value)
    assert rounded == float(f"{value:.12e}")
    assert f"{rounded:.12e}" == f"{value:.12e}"


def test_dumps_writes_rounded_numbers():
    text = export.dumps({"x": 1 / 3, "y": 2.0 / 3.0})
    assert '"x": 0.3333333333333' in text
    assert '"y": 0.6666666666667' in text
    assert "e-01" not in text


def test_to_jsonable_values():
    assert export.to_jsonable(1 + 2j) == {"re": 1.0, "im": 2.0}
    assert export.to_jsonable(Fraction(-1, 2)) == "-1/2"
    assert export.to_jsonable(np.array([1.0, 2.0])) == [1.0, 2.0]
    assert export.to_jsonable(np.int64(3)) == 3
    assert export.to_jsonable(np.bool_(True)) is True
    assert export.to_jsonable(CheckStatus.PASS) == "Pass"


def test_matrices_become_payloads():
    payload = export.to_jsonable(HermitianOperator(SIGMA_2))
    assert payload == {"dim": 2, "re": [[0.0, 0.0], [0.0, 0.0]], "im": [[0.0, -1.0], [1.0, 0.0]]}
    assert export.to_jsonable(np.eye(2))["dim"] == 2


def test_dumps_is_deterministic(report):
    first = export.dumps(report)
    assert first == export.dumps(report)
    parsed = json.loads(first)
    assert list(parsed) == ["ok", "passed", "failed", "records"]
    assert parsed["records"][1]["comparison"] == ">="


def test_report_requires_tolerances():
    with pytest.raises(ValidationError):
        Report(model="circle", residuals={"identity": 0.0})


def test_tensor_csv(fuzzy_sphere):
    stream = io.StringIO()
    export.write_tensor_csv(fuzzy_sphere(1).coefficient_tensor, stream)
    rows = list(csv.reader(io.StringIO(stream.getvalue())))
    assert rows[0] == ["ell", "m", "i", "j", "re", "im"]
    assert len(rows) == 1 + 16
    assert rows[1][:4] == ["0", "0", "-1/2", "-1/2"]
    assert float(rows[1][4]) == pytest.approx(0.5)


def test_tensor_payload(fuzzy_sphere):
    payload = export.tensor_payload(fuzzy_sphere(2).coefficient_tensor)
    assert payload["labels"] == ["-1", "0", "1"]
    assert set(payload["tensor"]) == {"0", "1", "2"}
    assert set(payload["tensor"]["2"]) == {"-2", "-1", "0", "1", "2"}
    assert len(payload["tensor"]["1"]["0"]["re"]) == 3


def test_write_tensor_by_suffix(fuzzy_sphere, tmp_path):
    tensor = fuzzy_sphere(1).coefficient_tensor
    csv_path = tmp_path / "out" / "tensor.csv"
    json_path = tmp_path / "tensor.json"
    export.write_tensor(tensor, str(csv_path))
    export.write_tensor(tensor, str(json_path))
    assert csv_path.read_text().startswith("ell,m,i,j,re,im")
    assert json.loads(json_path.read_text())["L"] == 1


def test_save_verification_report(report, tmp_path):
    path = export.save_verification_report(report)
    assert path == os.path.join(str(tmp_path / "artifacts"), export.REPORT_FILENAME)
    assert json.loads(open(path).read())["failed"] == 1


def test_export_xlsx(report, tmp_path):
    pytest.importorskip("xlsxwriter")
    path = tmp_path / "report.xlsx"
    export.export_report(report, str(path))
    assert path.stat().st_size > 0


def test_export_pdf(report, tmp_path):
    pytest.importorskip("reportlab")
    path = tmp_path / "nested" / "report.pdf"
    export.export_report(report, str(path))
    assert path.read_bytes().startswith(b"%PDF")


def test_export_rejects_unknown_suffix(report, tmp_path):
    with pytest.raises(ValueError):
        export.export_report(report, str(tmp_path / "report.txt"))

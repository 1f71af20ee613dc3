import json
import math

import pytest

from csquant import __version__
from csquant.cli import main


def run_json(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    assert code == 0, captured.err
    return json.loads(captured.out)


def test_version(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_missing_command():
    assert main([]) == 2


def test_circle_identity(capsys):
    payload = run_json(capsys, "circle", "--a", "1", "--b", "0", "--d", "1")
    assert payload["model"] == "circle"
    assert payload["quantities"]["lower_symbol"] == [1.0] * 8
    assert payload["quantities"]["upper_symbol"] == [1.0] * 8
    assert payload["quantities"]["decomposition"] == {"sigma0": 1.0, "sigma1": 0.0, "sigma3": 0.0}
    for name, residual in payload["residuals"].items():
        assert residual <= payload["tolerances_used"][name]


def test_circle_diagonal_samples(capsys):
    payload = run_json(capsys, "circle", "--a", "1", "--b", "0", "--d", "-1", "--samples", "4")
    lower = payload["quantities"]["lower_symbol"]
    assert lower[0] == pytest.approx(1.0)
    assert lower[1] == pytest.approx(-1.0)
    assert payload["quantities"]["upper_symbol"][0] == pytest.approx(2.0)


def test_circle_output_is_deterministic(capsys):
    main(["circle", "--a", "0.3", "--b", "-0.7", "--d", "2"])
    first = capsys.readouterr().out
    main(["circle", "--a", "0.3", "--b", "-0.7", "--d", "2"])
    assert capsys.readouterr().out == first


def test_circle_bad_number(capsys):
    assert main(["circle", "--a", "x"]) == 2
    assert capsys.readouterr().out == ""


def test_circle_bad_samples():
    assert main(["circle", "--samples", "0"]) == 2


def test_sphere_ops(capsys):
    payload = run_json(capsys, "sphere", "ops")
    quantities = payload["quantities"]
    assert quantities["A_theta"]["re"][0][0] == pytest.approx(3 * math.pi / 8, abs=1e-8)
    assert quantities["A_theta"]["re"][1][1] == pytest.approx(5 * math.pi / 8, abs=1e-8)
    assert quantities["A_phi"]["im"][0][1] == pytest.approx(math.pi / 4, abs=1e-8)
    assert quantities["A_x3"]["re"][0][0] == pytest.approx(1 / 3)
    assert quantities["A_x3"]["re"][1][1] == pytest.approx(-1 / 3)
    assert abs(quantities["A_x3"]["re"][0][1]) < 1e-14


def test_sphere_symbols(capsys):
    payload = run_json(capsys, "sphere", "symbols")
    symbols = payload["quantities"]["symbols"]
    assert symbols["sigma3"]["lower"][0] == pytest.approx(1.0)
    assert symbols["sigma3"]["upper"][0] == pytest.approx(3.0)
    assert symbols["sigma0"]["upper"] == [1.0] * 5


def test_sphere_commutator(capsys):
    payload = run_json(capsys, "sphere", "commutator")
    assert payload["quantities"]["structure"] == "i*c*sigma1"
    assert payload["quantities"]["c"] == pytest.approx(math.pi ** 2 / 16, abs=1e-8)
    assert "paper_discrepancy" in payload["notes"]


def test_sphere_phase_check(capsys):
    payload = run_json(capsys, "sphere", "phase-check")
    assert payload["residuals"]["projector_difference"] < 1e-12


def test_sphere_unknown_action():
    assert main(["sphere", "bogus"]) == 2


def test_fuzzy_coordinate(capsys):
    payload = run_json(capsys, "fuzzy", "--L", "1", "--f", "x3")
    operator = payload["quantities"]["operator"]
    assert operator["dim"] == 2
    assert operator["re"][0][0] == pytest.approx(1 / 3)
    assert operator["re"][1][1] == pytest.approx(-1 / 3)


def test_fuzzy_harmonic_coefficients(capsys):
    payload = run_json(capsys, "fuzzy", "--L", "2", "--f", "1,0,1,0;3,1,0.5,0", "operator")
    assert payload["residuals"]["tensor_vs_direct"] < 1e-9
    assert payload["quantities"]["operator"]["dim"] == 3


def test_fuzzy_operator_needs_f():
    assert main(["fuzzy", "--L", "1", "operator"]) == 2


def test_fuzzy_bad_coefficients():
    assert main(["fuzzy", "--L", "1", "--f", "1,5,1,0"]) == 2


def test_fuzzy_madore(capsys):
    madore = run_json(capsys, "fuzzy", "--L", "2", "madore")["quantities"]["madore"]
    assert madore["lambda"] == [pytest.approx(0.5)] * 3
    assert madore["kappa"] == pytest.approx(0.7071067811865, abs=1e-12)
    assert madore["radius_multiple"] == pytest.approx(0.5)


def test_fuzzy_madore_L1_kappa_equals_lambda(capsys):
    madore = run_json(capsys, "fuzzy", "--L", "1", "madore")["quantities"]["madore"]
    assert madore["lambda"] == [pytest.approx(2 / 3, abs=1e-12)] * 3
    assert madore["kappa"] == pytest.approx(0.6666666666667, abs=1e-12)
    assert madore["lambda_over_kappa"] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("argv", [["--L", "-1"], ["--L", "1", "--r", "0"], ["--L", "1", "truncation", "--ell", "-1"]])
def test_fuzzy_rejects_bad_arguments(argv, capsys):
    assert main(["fuzzy", *argv]) == 2
    assert "error:" in capsys.readouterr().err


def test_fuzzy_truncation(capsys):
    truncation = run_json(capsys, "fuzzy", "--L", "1", "truncation", "--ell", "2")["quantities"]["truncation"]
    assert truncation["m"] == [-2, -1, 0, 1, 2]
    assert max(truncation["norms"]) < 1e-10


def test_fuzzy_tensor_csv(capsys):
    assert main(["fuzzy", "--L", "1", "tensor", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "ell,m,i,j,re,im"
    assert len(lines) == 17


def test_fuzzy_tensor_json(capsys):
    payload = run_json(capsys, "fuzzy", "--L", "2", "tensor")
    assert payload["L"] == 2
    assert payload["labels"] == ["-1", "0", "1"]


def test_fuzzy_export_tensor(capsys, tmp_path):
    path = tmp_path / "tensor.csv"
    run_json(capsys, "fuzzy", "--L", "1", "madore", "--export-tensor", str(path))
    assert path.read_text().splitlines()[0] == "ell,m,i,j,re,im"


def test_fuzzy_L_limit(monkeypatch):
    assert main(["fuzzy", "--L", "99"]) == 2
    monkeypatch.setenv("CSQ_MAX_L", "0")
    assert main(["fuzzy", "--L", "1"]) == 2


def test_invalid_configuration(monkeypatch):
    monkeypatch.setenv("CSQ_MAX_L", "many")
    assert main(["fuzzy", "--L", "1"]) == 2


def test_verify_identity(capsys, tmp_path):
    payload = run_json(capsys, "verify", "--only", "identity")
    assert payload["ok"] is True
    assert payload["failed"] == 0
    assert (tmp_path / "artifacts" / "verification_report.json").exists()


def test_verify_tight_tolerance(capsys):
    assert main(["verify", "--only", "sphere", "--tol", "1e-30"]) == 1
    assert json.loads(capsys.readouterr().out)["ok"] is False


def test_verify_rejects_non_positive_tolerance():
    assert main(["verify", "--only", "identity", "--tol", "0"]) == 2


def test_verify_unknown_group():
    assert main(["verify", "--only", "nonsense"]) == 2


def test_verify_export(capsys, tmp_path):
    pytest.importorskip("xlsxwriter")
    path = tmp_path / "report.xlsx"
    run_json(capsys, "verify", "--only", "identity", "--export", str(path))
    assert path.exists()


def test_verify_rejects_unknown_export_suffix(tmp_path):
    assert main(["verify", "--only", "identity", "--export", str(tmp_path / "report.docx")]) == 2
    assert not (tmp_path / "artifacts" / "verification_report.json").exists()


def test_internal_value_error_is_a_failure(monkeypatch, capsys):
    def broken(*args):
        raise ValueError("math domain error")

    monkeypatch.setattr("csquant.commands.circle.build_report", broken)
    assert main(["circle"]) == 1
    assert "ValueError: math domain error" in capsys.readouterr().err

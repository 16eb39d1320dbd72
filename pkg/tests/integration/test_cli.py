import csv
import json
from pathlib import Path

import pytest

import main
from src.core import config as paths
from src.core import surgery, verifiers
from src.core.continuation import default_path, continue_log
from src.core.surgery import filling_residual
from src.models.holonomy import Side
from src.models.surgery import FillingCoeffs
from src.errors import NoConvergence
from src.models.reports import VerificationReport, CheckResult


def _run(capsys, *argv):
    code = main.run(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.integration
def test_solve_beta_json(capsys):
    code, out = _run(capsys, "solve", "--side", "beta", "--p", "0", "--q", "2", "--json")

    assert code == main.EXIT_OK
    record = json.loads(out)
    assert record["side"] == "beta"
    assert record["param"]["re"] == pytest.approx(0.5, abs=1e-10)
    assert record["param"]["im"] == pytest.approx(1.2071067811865475, abs=1e-10)
    assert record["volume"] == pytest.approx(3.6638623767, abs=1e-9)
    assert record["orientation"] == "+0+00+0+"
    assert record["cone_order"] == 2


@pytest.mark.integration
def test_solve_both_sides_json(capsys):
    code, out = _run(capsys, "solve", "--side", "both", "--p", "5", "--q", "1", "--p2", "3", "--q2", "-4", "--json")

    assert code == main.EXIT_OK
    alpha, beta = json.loads(out)
    assert (alpha["side"], beta["side"]) == ("alpha", "beta")
    assert (beta["p"], beta["q"]) == (3, -4)
    assert alpha["core_length"]["re"] > 0
    assert alpha["volume"] == pytest.approx(beta["volume"])


@pytest.mark.integration
def test_solve_table_output(capsys):
    code, out = _run(capsys, "solve", "--side", "alpha", "--p", "5", "--q", "1")

    assert code == main.EXIT_OK
    assert "Filling solutions" in out


@pytest.mark.integration
def test_zero_zero_is_invalid_input(capsys):
    code, out = _run(capsys, "solve", "--p", "0", "--q", "0", "--json")

    assert code == main.EXIT_INVALID_INPUT
    assert json.loads(out)["error"] == "ValueError"


@pytest.mark.integration
def test_non_convergence_exit_code(capsys, monkeypatch):
    def fail(*args, **kwargs):
        raise NoConvergence("all starts failed")

    monkeypatch.setattr(surgery, "solve_filling", fail)
    code, out = _run(capsys, "solve", "--p", "5", "--q", "1", "--json")

    assert code == main.EXIT_NO_CONVERGENCE
    assert json.loads(out) == {"error": "NoConvergence", "message": "all starts failed"}


@pytest.mark.integration
def test_verify_octagon_passes(capsys, tmp_path: Path):
    report_path = tmp_path / "octagon.json"
    code, out = _run(capsys, "verify", "octagon", "--samples", "30", "--seed", "4", "--json", "--report", str(report_path))

    assert code == main.EXIT_OK
    summary = json.loads(out)
    assert summary["passed"] is True
    assert summary["seed"] == 4
    assert VerificationReport.model_validate_json(report_path.read_text(encoding="utf-8")).passed


@pytest.mark.integration
def test_verify_failure_exit_code(capsys, monkeypatch):
    failing = VerificationReport(
        theorem="corollary",
        checks=[CheckResult(name="volume is half the complete volume", tolerance=1e-9, samples=1, failures=1)],
    )
    monkeypatch.setattr(verifiers, "verify_corollary", lambda settings: failing)

    code, out = _run(capsys, "verify", "corollary")

    assert code == main.EXIT_VERIFY_FAILED
    assert "FAIL" in out


@pytest.mark.integration
def test_scan_writes_csv(capsys, tmp_path: Path):
    out_path = tmp_path / "scan.csv"
    code, _ = _run(
        capsys, "scan", "--side", "beta", "--p-range", "0:0:1", "--q-range", "-2:2:2",
        "--out", str(out_path), "--threads", "2",
    )

    assert code == main.EXIT_OK
    with open(out_path, newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert [row["status"] for row in rows] == ["ok", "degenerate", "ok"]
    assert float(rows[0]["volume"]) == pytest.approx(3.6638623767, abs=1e-9)


@pytest.mark.integration
def test_scan_rejects_bad_range(capsys):
    code, _ = _run(capsys, "scan", "--p-range", "1:0:1", "--q-range", "0:1:1")

    assert code == main.EXIT_INVALID_INPUT


@pytest.mark.integration
def test_octagon_figure(capsys, tmp_path: Path):
    out_path = tmp_path / "octagon.svg"
    code, out = _run(capsys, "octagon", "--omega", "0.9,0.1", "--tiles", "2", "--out", str(out_path), "--json")

    assert code == main.EXIT_OK
    assert json.loads(out)["tiles"] == 2
    assert "<svg" in out_path.read_text(encoding="utf-8")


@pytest.mark.integration
def test_octagon_outside_square_is_invalid(capsys, tmp_path: Path):
    code, _ = _run(capsys, "octagon", "--omega", "1.5,0.5", "--out", str(tmp_path / "x.svg"))

    assert code == main.EXIT_INVALID_INPUT


@pytest.mark.integration
def test_config_file_is_applied(capsys, tmp_path: Path):
    config = tmp_path / "solver.yaml"
    config.write_text("solver:\n  newton_tol: 1.0e-6\n", encoding="utf-8")

    code, out = _run(capsys, "--config", str(config), "solve", "--p", "0", "--q", "2", "--json")

    assert code == main.EXIT_OK
    assert json.loads(out)["residual"] < 1e-6


@pytest.mark.integration
def test_solve_json_record_re_solves(capsys):
    code, out = _run(capsys, "solve", "--side", "alpha", "--p", "-3", "--q", "4", "--json")

    assert code == main.EXIT_OK
    record = json.loads(out)
    param = complex(record["param"]["re"], record["param"]["im"])
    log_hol = continue_log(default_path(param), Side(record["side"]))
    residual = filling_residual(FillingCoeffs(record["p"], record["q"]), log_hol)
    assert abs(residual) < 1e-10

    again = surgery.solve_filling(FillingCoeffs(record["p"], record["q"]), Side.ALPHA, start=param)
    assert again.residual < 1e-10
    assert again.param == pytest.approx(param, abs=1e-10)


@pytest.mark.integration
def test_scan_negative_ranges_independent_of_threads(capsys, tmp_path: Path):
    outputs = []
    for threads in ("1", "4"):
        out_path = tmp_path / f"scan_{threads}.csv"
        code, _ = _run(
            capsys, "scan", "--side", "beta", "--p-range", "-6:6:6", "--q-range", "-6:6:6",
            "--out", str(out_path), "--threads", threads,
        )
        assert code == main.EXIT_OK
        outputs.append(out_path.read_bytes())

    assert outputs[0] == outputs[1]
    rows = outputs[0].decode("utf-8").splitlines()
    assert len(rows) == 1 + 9
    assert rows[1].startswith(",,-6,-6,")


@pytest.mark.integration
def test_join_range_values():
    argv = ["scan", "--p-range", "-6:6:3", "--q-range=-2:2:2", "--threads", "2"]

    assert main.join_range_values(argv) == ["scan", "--p-range=-6:6:3", "--q-range=-2:2:2", "--threads", "2"]


@pytest.mark.integration
def test_usage_error_is_invalid_input(capsys):
    with pytest.raises(SystemExit) as exc:
        main.run(["solve", "--p", "1"])

    assert exc.value.code == main.EXIT_INVALID_INPUT
    assert "--q" in capsys.readouterr().err


@pytest.mark.integration
def test_verify_report_defaults_to_reports_dir(capsys, tmp_path: Path, monkeypatch):
    monkeypatch.chdir(tmp_path)

    code, _ = _run(capsys, "verify", "octagon", "--report", "--samples", "20")

    assert code == main.EXIT_OK
    saved = tmp_path / paths.REPORTS_DIR / "octagon.json"
    assert VerificationReport.model_validate_json(saved.read_text(encoding="utf-8")).theorem == "octagon"


@pytest.mark.integration
def test_shipped_settings_file_is_read(capsys, tmp_path: Path, monkeypatch):
    broken = tmp_path / "solver.yaml"
    broken.write_text("solver:\n  newton_tol: -1\n", encoding="utf-8")
    monkeypatch.setattr(paths, "DEFAULT_SETTINGS_FILE", broken)

    code, out = _run(capsys, "solve", "--p", "0", "--q", "2", "--json")

    assert code == main.EXIT_INVALID_INPUT
    assert json.loads(out)["error"] == "SettingsLoadError"

import csv
import json

import numpy as np

from alpha_synthesis.main import main
from alpha_synthesis.models import KernelOperator
from alpha_synthesis.services.grid_service import make_line_grid
from alpha_synthesis.services.storage_service import read_ncfk, write_ncfk


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.reader(f))


def test_verify_suite_writes_report(tmp_path):
    out = tmp_path / "hoelder.json"
    assert main(["verify", "hoelder", "--n", "16", "--seed", "2", "--out", str(out)]) == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["suite"] == "hoelder"
    assert report["pass"] is True
    assert report["grid"]["n"] == 16


def test_unknown_suite_is_a_usage_error(tmp_path, capsys):
    assert main(["verify", "nope", "--out", str(tmp_path / "r.json")]) == 2
    assert "usage" in capsys.readouterr().err
    assert not (tmp_path / "r.json").exists()


def test_missing_command_is_a_usage_error():
    assert main([]) == 2


def test_nonzero_trace_exit_code(tmp_path, capsys):
    code = main(["synthesis-decay", "--x", "gauss-proj", "--n", "64", "--csv", str(tmp_path / "d.csv")])
    assert code == 4
    assert "tr(X)" in capsys.readouterr().err


def test_unknown_operator_exit_code(tmp_path):
    code = main(["synthesis-decay", "--x", str(tmp_path / "absent.ncfk"), "--csv", str(tmp_path / "d.csv")])
    assert code == 3


def test_corrupted_operator_file_exit_code(tmp_path):
    bad = tmp_path / "bad.ncfk"
    bad.write_bytes(b"NCFK" + b"\x00" * 4)
    assert main(["find-rho", "--x", str(bad), "--eps", "1", "--out", str(tmp_path / "rho.ncfk")]) == 3


def test_synthesis_decay_writes_table_and_sidecar(tmp_path):
    table = tmp_path / "decay.csv"
    assert main(["synthesis-decay", "--x", "hermite01", "--n", "64", "--levels", "1", "--csv", str(table)]) == 0
    rows = read_rows(table)
    assert rows[0] == ["delta", "lp_norm", "bound", "s1_norm"]
    assert [float(r[0]) for r in rows[1:]] == [1.0]
    report = json.loads((tmp_path / "decay.csv.json").read_text(encoding="utf-8"))
    names = [c["name"] for c in report["checks"]]
    assert "lp_bound_delta_1" in names
    assert any(name.startswith("pointwise_delta_1_") for name in names)
    assert report["pass"] is True


def test_synthesis_decay_reports_rising_lp_column(tmp_path):
    table = tmp_path / "decay.csv"
    code = main(["synthesis-decay", "--x", "hermite01", "--p", "1.5", "--levels", "6", "--csv", str(table)])
    assert code == 1
    assert [float(r[0]) for r in read_rows(table)[1:]] == [1.0, 0.5, 0.25]
    report = json.loads((tmp_path / "decay.csv.json").read_text(encoding="utf-8"))
    checks = {c["name"]: c["pass"] for c in report["checks"]}
    assert checks["lp_slope_positive"] is False
    assert all(passed for name, passed in checks.items() if name.startswith("lp_bound_delta_"))
    quantities = {q["name"]: q["value"] for q in report["quantities"]}
    assert quantities["truncated"] is True


def test_find_rho_writes_plane_and_metadata(tmp_path):
    out = tmp_path / "rho.ncfk"
    assert main(["find-rho", "--x", "hermite01", "--n", "64", "--eps", "100", "--out", str(out)]) == 0
    metadata = json.loads((tmp_path / "rho.ncfk.json").read_text(encoding="utf-8"))
    assert metadata["delta0"] == 1.0
    assert metadata["final_norm"] < 100
    assert metadata["V"] >= 1.0
    assert read_ncfk(out).grid.shape == (64, 64)


def test_find_rho_resolution_exceeded(tmp_path, capsys):
    out = tmp_path / "rho.ncfk"
    assert main(["find-rho", "--x", "hermite01", "--n", "32", "--eps", "1e-6", "--out", str(out)]) == 5
    assert "meilleure norme" in capsys.readouterr().err
    assert not out.exists()
    report = json.loads((tmp_path / "rho.ncfk.report.json").read_text(encoding="utf-8"))
    assert report["pass"] is False


def test_bench_skips_large_grids(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--n", "16", "128", "--csv", str(out)]) == 0
    rows = read_rows(out)
    assert rows[0] == ["n", "direct_ms", "spectral_ms", "s1_disagreement"]
    assert rows[1][0] == "16" and float(rows[1][3]) < 1e-8
    assert rows[2][0] == "128" and rows[2][1] == "skipped" and rows[2][3] == "skipped"
    assert "sur 1 grilles" in capsys.readouterr().out


def test_bench_reports_disagreement_trend(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--n", "16", "32", "--csv", str(out)]) == 0
    summary = capsys.readouterr().out.splitlines()[-1]
    assert summary.startswith("Désaccord S1")
    assert "sur 2 grilles" in summary
    assert all(float(row[3]) < 1e-8 for row in read_rows(out)[1:])


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "synthesis-decay" in capsys.readouterr().out


def test_find_rho_on_zero_operator_file(tmp_path):
    source = tmp_path / "zero.ncfk"
    write_ncfk(source, KernelOperator.zero(make_line_grid(32)))
    out = tmp_path / "rho.ncfk"
    assert main(["find-rho", "--x", str(source), "--eps", "0.1", "--out", str(out)]) == 0
    metadata = json.loads((tmp_path / "rho.ncfk.json").read_text(encoding="utf-8"))
    assert metadata["final_norm"] == 0.0
    assert metadata["delta0"] == 1.0


def test_find_rho_on_rough_kernel_reports_resolution(tmp_path, capsys):
    grid = make_line_grid(32)
    rng = np.random.default_rng(7)
    matrix = rng.standard_normal((32, 32)) + 1j * rng.standard_normal((32, 32))
    matrix -= np.eye(32) * (np.trace(matrix) / 32)
    source = tmp_path / "rough.ncfk"
    write_ncfk(source, KernelOperator.from_matrix(grid, matrix))
    out = tmp_path / "rho.ncfk"
    assert main(["find-rho", "--x", str(source), "--eps", "0.1", "--out", str(out)]) == 5
    err = capsys.readouterr().err
    assert "Résolution insuffisante" in err
    assert "Traceback" not in err
    assert not out.exists()
    report = json.loads((tmp_path / "rho.ncfk.report.json").read_text(encoding="utf-8"))
    assert report["pass"] is False
    assert "hermite_projection_resolved" in [c["name"] for c in report["checks"]]


def without_timestamp(path):
    data = json.loads(path.read_text(encoding="utf-8"))
    data.pop("created_at")
    return data


def test_commands_are_deterministic_for_a_seed(tmp_path):
    runs = []
    for name in ("a", "b"):
        table = tmp_path / f"{name}.csv"
        report = tmp_path / f"{name}.json"
        decay = ["synthesis-decay", "--x", "random-tracezero", "--n", "64", "--levels", "1", "--seed", "5"]
        code = main(decay + ["--csv", str(table)])
        assert main(["verify", "hoelder", "--n", "16", "--seed", "5", "--out", str(report)]) == 0
        sidecar = without_timestamp(tmp_path / f"{name}.csv.json")
        runs.append((code, table.read_bytes(), sidecar, without_timestamp(report)))
    assert runs[0] == runs[1]


def test_find_rho_on_default_grid(tmp_path):
    out = tmp_path / "rho.ncfk"
    assert main(["find-rho", "--x", "hermite01", "--eps", "2", "--out", str(out)]) == 0
    metadata = json.loads((tmp_path / "rho.ncfk.json").read_text(encoding="utf-8"))
    assert metadata["final_norm"] < 2.0
    assert metadata["delta0"] in (1.0, 0.5, 0.25)

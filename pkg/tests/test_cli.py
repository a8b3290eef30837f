"""CLI surface: output conventions, files, exit codes."""

import json

import pytest

from prefsense import cli
from prefsense.verification import CheckResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCompose:
    def test_example_value(self, capsys):
        code, out, _ = run(capsys, "compose", "--p-ik", "0.9801", "--p-kj", "0.02")
        assert code == 0
        assert "0.501279" in out

    def test_json_full_precision(self, capsys):
        code, out, _ = run(capsys, "compose", "--p-ik", "0.9801", "--p-kj", "0.02", "--json")
        payload = json.loads(out)
        assert payload["composed"] == pytest.approx(0.5012786415711945, abs=1e-15)

    def test_probit_link(self, capsys):
        code, out, _ = run(capsys, "compose", "--p-ik", "0.5", "--p-kj", "0.5", "--link", "probit")
        assert code == 0
        assert "0.5" in out

    def test_invalid_probability_exits_one(self, capsys):
        code, _, err = run(capsys, "compose", "--p-ik", "1.5", "--p-kj", "0.5")
        assert code == 1
        assert "error" in err

    def test_boundary_probability_exits_one(self, capsys):
        code, _, err = run(capsys, "compose", "--p-ik", "1.0", "--p-kj", "0.5")
        assert code == 1


class TestGradRegionArea:
    def test_grad_bt(self, capsys):
        code, out, _ = run(capsys, "grad", "bt", "--p-ik", "0.99", "--p-kj", "0.02")
        assert code == 0
        assert "22.3703" in out

    def test_grad_requires_point(self, capsys):
        code, _, err = run(capsys, "grad", "bt")
        assert code == 1

    def test_region_bt_example(self, capsys):
        code, out, _ = run(capsys, "region", "bt", "--M", "20", "--p-kj", "0.02")
        assert code == 0
        assert "case1" in out
        assert "0.988224" in out

    def test_region_bt_empty(self, capsys):
        code, out, _ = run(capsys, "region", "bt", "--M", "20", "--p-kj", "0.5")
        assert code == 0
        assert "empty" in out

    def test_region_pl(self, capsys):
        code, out, _ = run(
            capsys, "region", "pl", "--M", "2", "--alpha", "1.01", "--beta", "0.99",
            "--p-uv", "0.05",
        )
        assert code == 0
        assert "interval" in out

    def test_region_threshold_guard(self, capsys):
        code, _, err = run(capsys, "region", "bt", "--M", "0.5", "--p-kj", "0.3")
        assert code == 1

    def test_area_bt(self, capsys):
        code, out, _ = run(
            capsys, "area", "bt", "--M", "2", "--n-samples", "50000", "--seed", "8"
        )
        assert code == 0
        assert "0.0739191" in out
        assert "discrepancy" in out

    def test_area_pl_json(self, capsys):
        code, out, _ = run(
            capsys, "area", "pl", "--M", "2", "--alpha", "1.01", "--beta", "0.99", "--json"
        )
        payload = json.loads(out)
        assert payload["closed_form"] == pytest.approx(0.040433, abs=1e-5)
        assert payload["discrepancy"] < 1e-6


class TestWitness:
    def test_logistic(self, capsys):
        code, out, _ = run(capsys, "witness", "--link", "logistic", "--M", "10")
        assert code == 0
        assert "witness point" in out

    def test_probit_json(self, capsys):
        code, out, _ = run(
            capsys, "witness", "--link", "probit", "--M", "100", "--delta", "0.5", "--json"
        )
        payload = json.loads(out)
        assert payload["derivative"] > 100.0


class TestRaster:
    def test_csv(self, capsys, tmp_path):
        out_file = tmp_path / "grid.csv"
        code, out, _ = run(
            capsys, "raster", "bt", "--out", str(out_file), "--format", "csv",
            "--resolution", "64",
        )
        assert code == 0
        assert out_file.exists()
        header = out_file.read_text().split("\n", 1)[0]
        assert header == "x,y,value,class"

    def test_svg(self, capsys, tmp_path):
        out_file = tmp_path / "grid.svg"
        code, out, _ = run(
            capsys, "raster", "pl", "--out", str(out_file), "--format", "svg",
            "--resolution", "64", "--which", "d_vu",
        )
        assert code == 0
        assert out_file.read_text().count('id="class-') == 6

    def test_custom_thresholds(self, capsys, tmp_path):
        out_file = tmp_path / "grid.csv"
        code, out, _ = run(
            capsys, "raster", "bt", "--out", str(out_file), "--format", "csv",
            "--resolution", "64", "--thresholds", "2,5",
        )
        assert code == 0

    def test_bad_resolution(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "raster", "bt", "--out", str(tmp_path / "x.csv"), "--resolution", "8"
        )
        assert code == 1


class TestData:
    def test_gen_fit_round_trip(self, capsys, tmp_path):
        data = tmp_path / "d.jsonl"
        code, out, _ = run(
            capsys, "gen-data", "--permutation", "dog,bird,cat", "--p12", "0.9",
            "--p23", "0.2", "--n", "2000", "--seed", "4", "--out", str(data),
        )
        assert code == 0
        assert data.exists()
        fit_out = tmp_path / "fit.json"
        code, out, _ = run(
            capsys, "fit", "--in", str(data), "--options", "dog,bird,cat",
            "--out", str(fit_out), "--json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["converged"]
        assert payload["predictions"]["dog>bird"] == pytest.approx(0.9, abs=0.03)
        assert json.loads(fit_out.read_text())["scores"] == payload["scores"]

    def test_gen_data_rejects_endpoint(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "gen-data", "--permutation", "a,b,c", "--p12", "0.99",
            "--p23", "0.0", "--n", "10", "--seed", "0", "--out", str(tmp_path / "d.jsonl"),
        )
        assert code == 1

    def test_fit_jsonl_requires_options(self, capsys, tmp_path):
        data = tmp_path / "d.jsonl"
        data.write_text("{}\n")
        code, _, err = run(capsys, "fit", "--in", str(data))
        assert code == 1
        assert "--options" in err

    def test_fit_counts_file(self, capsys, tmp_path):
        counts = tmp_path / "counts.txt"
        counts.write_text("2 0 25 75 0")
        code, out, _ = run(capsys, "fit", "--in", str(counts))
        assert code == 0
        assert "1.09861" in out  # ln 3

    def test_sweep_data(self, capsys, tmp_path):
        out_dir = tmp_path / "sweep"
        code, out, _ = run(
            capsys, "sweep-data", "--permutation", "dog,bird,cat", "--n", "50",
            "--seed", "0", "--out-dir", str(out_dir),
        )
        assert code == 0
        files = sorted(out_dir.glob("*.jsonl"))
        assert len(files) == 21
        manifest = (out_dir / "manifest.csv").read_text().strip().split("\n")
        assert len(manifest) == 22


class TestVerify:
    def test_exit_two_on_failure(self, capsys, monkeypatch):
        monkeypatch.setattr(
            cli,
            "run_all",
            lambda quick: [CheckResult("stub", False, "broken", 0.0)],
        )
        code, out, _ = run(capsys, "verify")
        assert code == 2
        assert "FAIL" in out and "stub" in out

    def test_exit_zero_on_success(self, capsys, monkeypatch):
        monkeypatch.setattr(
            cli,
            "run_all",
            lambda quick: [CheckResult("stub", True, "fine", 0.0)],
        )
        code, out, _ = run(capsys, "verify", "--json")
        assert code == 0
        assert json.loads(out)["failed"] == []


class TestParsing:
    def test_unknown_command(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 1

    def test_missing_required(self, capsys):
        code, _, err = run(capsys, "region", "bt", "--p-kj", "0.3")
        assert code == 1

import csv
import io
import json

import pytest

from qsuperpose import CavityConfig
from qsuperpose.cli import main, report_payload

REPORT_KEYS = [
    "kappa",
    "eps1",
    "eps2",
    "a",
    "b",
    "mean_photon",
    "mean_photon_out",
    "var_plus",
    "var_minus",
    "var_plus_out",
    "var_minus_out",
    "squeezing",
    "squeezing_out",
    "combined_mean_amp",
    "combined_mean_sq",
    "combined_mean_photon",
    "combined_var_plus",
    "combined_var_minus",
    "combined_coherent_term",
    "coherent_mean_photon",
]


class TestReport:
    def test_json_to_stdout(self, capsys):
        assert main(["report", "--eps1", "0.3", "--eps2", "0.2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert list(payload.keys()) == REPORT_KEYS
        assert payload["squeezing"] == pytest.approx(0.142857143, abs=1e-9)
        assert payload["mean_photon"] == pytest.approx(0.455238095, abs=1e-9)
        assert payload["combined_mean_photon"] == pytest.approx(0.278911565, abs=1e-9)
        # the procedural criticism is visible side by side
        assert payload["combined_coherent_term"] == pytest.approx(
            0.183673469, abs=1e-9
        )
        assert payload["coherent_mean_photon"] == pytest.approx(0.36, abs=1e-9)

    def test_nine_significant_digits(self, capsys):
        main(["report", "--eps1", "0.3", "--eps2", "0.2"])
        payload = json.loads(capsys.readouterr().out)
        for key, value in payload.items():
            assert value == float(f"{value:.9g}"), key

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["report", "--eps1", "0.3", "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert json.loads(out.read_text())["a"] == 0.6

    def test_csv_format(self, capsys):
        assert main(["report", "--eps1", "0.3", "--format", "csv"]) == 0
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert len(rows) == 1
        assert float(rows[0]["mean_photon"]) == pytest.approx(0.36, abs=1e-9)

    def test_stability_error_exit_code(self, capsys):
        assert main(["report", "--eps2", "0.6"]) == 2
        err = json.loads(capsys.readouterr().err)
        assert err["error"] == "StabilityError"


class TestSweep:
    def test_squeezing_monotone_in_pump(self, capsys):
        assert main(["sweep", "--sweep", "eps2:0:0.49:25"]) == 0
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert len(rows) == 25
        s = [float(r["squeezing"]) for r in rows]
        assert all(x < y for x, y in zip(s, s[1:]))
        assert s[0] == 0.0
        assert s[-1] == pytest.approx(0.98 / (2 * 1.98), abs=1e-9)  # b = 0.98

    def test_rows_recompute_bit_for_bit(self, capsys):
        assert main(["sweep", "--sweep", "eps2:0:0.37:7", "--eps1", "0.23"]) == 0
        text = capsys.readouterr().out
        rows = list(csv.DictReader(io.StringIO(text)))
        for row in rows:
            config = CavityConfig(
                float(row["kappa"]), float(row["eps1"]), float(row["eps2"])
            )
            again = report_payload(config)
            for key, value in again.items():
                assert row[key] == f"{value:.9g}", key

    def test_json_format(self, capsys):
        assert main(["sweep", "--sweep", "eps1:0:1:3", "--format", "json"]) == 0
        rows = json.loads(capsys.readouterr().out)
        assert [r["eps1"] for r in rows] == [0.0, 0.5, 1.0]

    def test_kappa_sweep(self, capsys):
        assert main(["sweep", "--sweep", "kappa:1:4:4", "--eps2", "0.4"]) == 0
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert [float(r["b"]) for r in rows] == pytest.approx(
            [0.8, 0.4, 0.8 / 3, 0.2], abs=1e-9
        )

    def test_sweep_validation(self, capsys):
        assert main(["sweep", "--sweep", "eps2:0:0.6:5"]) == 2  # leaves stability
        assert main(["sweep", "--sweep", "eps2:0:0.4:1"]) == 2  # too few steps
        assert main(["sweep", "--sweep", "detuning:0:1:5"]) == 2  # unknown param
        assert main(["sweep", "--sweep", "eps2:0:0.4"]) == 2  # malformed
        err_lines = capsys.readouterr().err.strip().splitlines()
        assert all(json.loads(line)["error"] == "DomainError" for line in err_lines[1:])


class TestQGrid:
    def test_csv_output(self, tmp_path):
        out = tmp_path / "grid.csv"
        code = main(
            ["qgrid", "--eps1", "0.3", "--eps2", "0.2", "--grid-n", "32",
             "--out", str(out)]
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out.read_text())))
        assert rows[0] == ["re", "im", "q"]
        assert len(rows) == 32 * 32 + 1

    def test_json_output(self, capsys):
        code = main(
            ["qgrid", "--kind", "squeezed", "--eps2", "0.2", "--grid-n", "16",
             "--grid-extent", "5", "--format", "json"]
        )
        assert code == 0
        env = json.loads(capsys.readouterr().out)
        assert env["kind"] == "squeezed"
        assert env["n"] == 16
        assert env["extent"] == 5.0
        assert len(env["values"]) == 256

    def test_grid_validation(self, capsys):
        assert main(["qgrid", "--grid-n", "4"]) == 2
        assert main(["qgrid", "--grid-extent", "wide"]) == 2


class TestVerify:
    def test_all_checks_pass(self, capsys, tmp_path):
        out = tmp_path / "verify.json"
        assert main(["verify", "--out", str(out)]) == 0
        table = capsys.readouterr().out
        assert "13/13 checks passed" in table
        assert "FAIL" not in table
        results = json.loads(out.read_text())
        assert len(results) == 13
        assert all(r["passed"] for r in results)

    def test_deterministic(self, capsys):
        assert main(["verify"]) == 0
        first = capsys.readouterr().out
        assert main(["verify"]) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_impossible_truncation_exit_code(self, capsys):
        # b = 0.9 needs a cutoff beyond the oracle's cap
        assert main(["verify", "--eps2", "0.45"]) == 3
        err = json.loads(capsys.readouterr().err)
        assert err["error"] == "TruncationError"

    def test_csv_artifact(self, tmp_path, capsys):
        out = tmp_path / "verify.csv"
        assert main(["verify", "--format", "csv", "--out", str(out)]) == 0
        rows = list(csv.DictReader(io.StringIO(out.read_text())))
        assert len(rows) == 13
        assert {r["passed"] for r in rows} == {"True"}

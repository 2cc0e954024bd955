import json

import pytest

from cswitch.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestIco:
    def test_single_constant(self, capsys):
        code, out, _ = run_cli(capsys, "ico", "--oracles", "[[0,0]]", "--format", "json")
        record = json.loads(out)
        assert code == 0
        assert record["u1"] == "I"
        assert record["odd_constants"] is True
        assert record["verified"] is True
        assert record["p0"] == pytest.approx(1.0)

    def test_two_balanced(self, capsys):
        code, out, _ = run_cli(capsys, "ico", "--oracles", "[[0,1],[1,0]]",
                               "--format", "json")
        record = json.loads(out)
        assert code == 0
        assert record["odd_constants"] is False

    def test_alias_input(self, capsys):
        code, out, _ = run_cli(capsys, "ico", "--oracles", "c1,b10", "--format", "json")
        assert code == 0
        assert json.loads(out)["u1"] == "Z"  # (-I)(-Z) = Z

    def test_empty_set_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "ico", "--oracles", "[]")
        assert code == 2
        assert "n >= 1" in err or "non-empty" in err

    def test_malformed_json_reports_position(self, capsys):
        code, _, err = run_cli(capsys, "ico", "--oracles", "[[0,0],")
        assert code == 2
        assert "line" in err and "column" in err

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "ico", "--oracles", "[[0,1]]")
        header, row = out.splitlines()
        assert header.split(",")[0] == "oracles"
        assert "false" in row


class TestFixedOrderCommands:
    def test_deutsch_circuit(self, capsys):
        code, out, _ = run_cli(capsys, "deutsch", "--oracles", "[[0,0]]",
                               "--format", "json")
        record = json.loads(out)
        assert code == 0
        assert record["first_qubit"] == 0
        assert record["queries_used"] == 1
        assert record["verified"] is True

    def test_classical_queries(self, capsys):
        code, out, _ = run_cli(capsys, "classical", "--oracles", "c0,b01,b10",
                               "--format", "json")
        record = json.loads(out)
        assert code == 0
        assert record["queries_used"] == 6

    def test_oracles_from_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"oracles": [[0, 0], [0, 1]]}))
        code, out, _ = run_cli(capsys, "deutsch", "--config", str(cfg),
                               "--format", "json")
        assert code == 0
        assert json.loads(out)["n"] == 2

    def test_missing_oracles(self, capsys):
        code, _, err = run_cli(capsys, "deutsch")
        assert code == 2
        assert "oracle" in err


class TestSweep:
    def test_n1_all_agree(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--n", "1", "--format", "json")
        payload = json.loads(out)
        assert code == 0
        assert payload["summary"]["all_agree"] is True
        assert payload["summary"]["sets"] == 4
        assert len(payload["rows"]) == 4

    def test_n2_u1_column_matches_table(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--n", "2", "--format", "json")
        payload = json.loads(out)
        assert code == 0
        assert len(payload["rows"]) == 16
        by_oracles = {row["oracles"]: row["u1"] for row in payload["rows"]}
        assert by_oracles["[[0,0],[0,0]]"] == "I"
        assert by_oracles["[[0,0],[1,1]]"] == "-I"
        assert by_oracles["[[0,1],[1,0]]"] == "-I"
        assert by_oracles["[[0,1],[0,0]]"] == "Z"

    def test_out_of_range(self, capsys):
        code, _, err = run_cli(capsys, "sweep", "--n", "9")
        assert code == 2
        assert "1 <= n <= 8" in err

    def test_csv_has_summary_on_stderr(self, capsys):
        code, out, err = run_cli(capsys, "sweep", "--n", "1")
        assert code == 0
        assert out.splitlines()[0].startswith("index,oracles,u1")
        assert "all_agree=true" in err

    def test_n8_completes_within_budget(self, capsys, tmp_path):
        import time

        out_file = tmp_path / "sweep8.csv"
        start = time.monotonic()
        code, _, _ = run_cli(capsys, "sweep", "--n", "8", "--out", str(out_file))
        elapsed = time.monotonic() - start
        assert code == 0
        assert len(out_file.read_text().splitlines()) == 65536 + 1
        assert elapsed < 10.0


class TestReport:
    @pytest.mark.parametrize("n, classical, quantum", [(1, 2, 1), (3, 6, 3), (100, 200, 100)])
    def test_query_counts(self, capsys, n, classical, quantum):
        code, out, _ = run_cli(capsys, "report", "--n", str(n), "--format", "json")
        record = json.loads(out)
        assert code == 0
        assert record["classical_queries"] == classical
        assert record["quantum_queries"] == quantum
        assert record["ico_queries"] == quantum
        assert record["ico_fixed_gates"] == 1

    def test_rejects_zero(self, capsys):
        code, _, _ = run_cli(capsys, "report", "--n", "0")
        assert code == 2


class TestCalibrate:
    def test_ideal_phase_is_zero(self, capsys):
        code, out, _ = run_cli(capsys, "calibrate", "--format", "json")
        record = json.loads(out)
        assert code == 0
        assert record["phi_radians"] == 0.0
        assert record["p_b_at_phi"] == pytest.approx(1.0, abs=1e-12)

    def test_v_input_same_phase(self, capsys):
        code, out, _ = run_cli(capsys, "calibrate", "--input", "V", "--format", "json")
        assert code == 0
        assert json.loads(out)["phi_radians"] == pytest.approx(0.0, abs=1e-12)


class TestExperiment:
    def test_ideal_run_writes_files(self, capsys, tmp_path):
        code, out, _ = run_cli(
            capsys, "experiment", "--table", "deutsch", "--noise", "none",
            "--shots", "1000", "--seed", "1", "--out", str(tmp_path), "--no-figure",
        )
        assert code == 0
        csv_text = (tmp_path / "deutsch_report.csv").read_text()
        rows = csv_text.splitlines()[1:]
        assert len(rows) == 16
        assert all(row.split(",")[5] == "1.0" for row in rows)
        payload = json.loads((tmp_path / "deutsch_report.json").read_text())
        assert payload["mean_success"] == 1.0
        assert (tmp_path / "deutsch_ports.csv").exists()

    def test_figure_rendered_by_default(self, capsys, tmp_path):
        code, _, _ = run_cli(
            capsys, "experiment", "--table", "deutsch", "--noise", "none",
            "--shots", "100", "--seed", "1", "--out", str(tmp_path),
        )
        assert code == 0
        png = tmp_path / "deutsch_figure.png"
        assert png.exists()
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_reruns_are_byte_identical(self, capsys, tmp_path):
        out1, out2 = tmp_path / "run1", tmp_path / "run2"
        for out_dir in (out1, out2):
            code, _, _ = run_cli(
                capsys, "experiment", "--table", "two-function", "--seed", "7",
                "--shots", "5000", "--out", str(out_dir), "--no-figure",
            )
            assert code == 0
        for name in ("two_function_report.csv", "two_function_report.json",
                     "two_function_ports.csv"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_zero_shots_rejected(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "experiment", "--table", "deutsch", "--shots", "0",
            "--out", str(tmp_path),
        )
        assert code == 2
        assert "shots" in err

    def test_custom_noise_from_config(self, capsys, tmp_path):
        cfg = tmp_path / "noise.json"
        cfg.write_text(json.dumps({"noise": {"plate_angle_sigma": 0.0,
                                             "dark_count_rate": 0.5}}))
        code, _, _ = run_cli(
            capsys, "experiment", "--table", "deutsch", "--noise", "custom",
            "--config", str(cfg), "--shots", "200000", "--seed", "2",
            "--out", str(tmp_path), "--no-figure",
        )
        assert code == 0
        payload = json.loads((tmp_path / "deutsch_report.json").read_text())
        assert payload["noise"]["dark_count_rate"] == 0.5
        assert payload["noise"]["calibrated_defaults"] is False
        assert payload["mean_success"] == pytest.approx(0.75, abs=0.01)


class TestSeedResolution:
    def test_env_var_fallback(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("CSWITCH_SEED", "123")
        code, _, _ = run_cli(
            capsys, "experiment", "--table", "deutsch", "--shots", "500",
            "--out", str(tmp_path), "--no-figure",
        )
        assert code == 0
        payload = json.loads((tmp_path / "deutsch_report.json").read_text())
        assert payload["seed"] == 123

    def test_flag_beats_env(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("CSWITCH_SEED", "123")
        code, _, _ = run_cli(
            capsys, "experiment", "--table", "deutsch", "--shots", "500",
            "--seed", "9", "--out", str(tmp_path), "--no-figure",
        )
        assert code == 0
        payload = json.loads((tmp_path / "deutsch_report.json").read_text())
        assert payload["seed"] == 9

    def test_bad_env_var(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("CSWITCH_SEED", "not-a-number")
        code, _, err = run_cli(
            capsys, "experiment", "--table", "deutsch", "--shots", "500",
            "--out", str(tmp_path), "--no-figure",
        )
        assert code == 2
        assert "CSWITCH_SEED" in err


def test_output_to_file(capsys, tmp_path):
    out_file = tmp_path / "ico.json"
    code = main(["ico", "--oracles", "[[0,0]]", "--format", "json",
                 "--out", str(out_file)])
    capsys.readouterr()
    assert code == 0
    assert json.loads(out_file.read_text())["verified"] is True

"""End-to-end tests of the command-line interface (in-process)."""

import json
import subprocess
import sys

import pytest

from zenobath import OracleCheck, OracleReport
from zenobath.cli import main

CUSTOM = ["--n", "2", "--coupling-ratio", "0.5", "--tau-max", "1", "--tau-step", "0.5"]


def run_ok(capsys, argv):
    assert main(argv) == 0
    return capsys.readouterr()


def run_usage_error(capsys, argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 1
    return capsys.readouterr()


class TestListPresets:
    def test_prints_table(self, capsys):
        out = run_ok(capsys, ["--list-presets"]).out
        assert "name" in out
        for name in ("fig2a", "fig3d", "fig5b"):
            assert name in out


class TestCustomSweep:
    def test_csv_to_stdout(self, capsys):
        out = run_ok(capsys, CUSTOM).out
        lines = out.splitlines()
        meta = [ln for ln in lines if ln.startswith("# ")]
        assert "# preset: custom" in meta
        assert "# n: 2" in meta
        assert "# coupling_ratio: 0.5" in meta
        assert lines[len(meta)] == "tau,survival,concurrence"
        assert len(lines) == len(meta) + 1 + 3  # header + rows 0, 0.5, 1.0

    def test_measure_intervals_add_columns(self, capsys):
        out = run_ok(
            capsys,
            CUSTOM + ["--measure-interval", "0.5", "--measure-interval", "2"],
        ).out
        header = [ln for ln in out.splitlines() if ln.startswith("tau,")][0]
        assert header == (
            "tau,survival,concurrence,"
            "concurrence_measured_T0.5,concurrence_measured_T2"
        )

    def test_series_selection(self, capsys):
        out = run_ok(capsys, CUSTOM + ["--series", "concurrence"]).out
        header = [ln for ln in out.splitlines() if ln.startswith("tau,")][0]
        assert header == "tau,concurrence"

    def test_json_format(self, capsys):
        out = run_ok(capsys, CUSTOM + ["--format", "json"]).out
        doc = json.loads(out)
        assert doc["columns"] == ["tau", "survival", "concurrence"]
        assert len(doc["rows"]) == 3

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "sweep.csv"
        captured = run_ok(capsys, CUSTOM + ["--output", str(target)])
        assert captured.out == ""
        text = target.read_text()
        assert text.startswith("# generator: zenobath")
        assert "tau,survival,concurrence" in text

    def test_deterministic_output(self, capsys):
        first = run_ok(capsys, CUSTOM).out
        second = run_ok(capsys, CUSTOM).out
        assert first == second


class TestPresetFlow:
    def test_preset_to_file(self, capsys, tmp_path):
        target = tmp_path / "fig3d.csv"
        run_ok(capsys, ["--preset", "fig3d", "--output", str(target)])
        text = target.read_text()
        assert "# preset: fig3d" in text
        assert (
            "tau,concurrence,concurrence_measured_T0.001,"
            "concurrence_measured_T0.003,concurrence_measured_T0.005" in text
        )

    def test_flags_override_preset(self, capsys):
        out = run_ok(
            capsys, ["--preset", "fig3d", "--tau-max", "0.01", "--n", "2"]
        ).out
        assert "# preset: fig3d" in out
        assert "# n: 2" in out
        assert "# tau_max: 0.01" in out

    def test_unknown_preset(self, capsys):
        err = run_usage_error(capsys, ["--preset", "fig9z"]).err
        assert "unknown preset" in err


class TestConfigFile:
    def write(self, tmp_path, text):
        path = tmp_path / "sweep.cfg"
        path.write_text(text)
        return str(path)

    def test_config_supplies_everything(self, capsys, tmp_path):
        cfg = self.write(
            tmp_path,
            "# comment line\n"
            "n = 4\n"
            "coupling-ratio = 0.1\n"
            "tau-max = 1\n"
            "tau-step = 0.5\n"
            "measure-interval = 0.5, 2\n"
            "format = json\n",
        )
        out = run_ok(capsys, ["--config", cfg]).out
        doc = json.loads(out)
        assert doc["metadata"]["n"] == "4"
        assert doc["columns"] == [
            "tau",
            "survival",
            "concurrence",
            "concurrence_measured_T0.5",
            "concurrence_measured_T2",
        ]

    def test_flags_beat_config(self, capsys, tmp_path):
        cfg = self.write(
            tmp_path, "n = 4\ncoupling-ratio = 0.1\ntau-max = 1\ntau-step = 0.5\n"
        )
        out = run_ok(capsys, ["--config", cfg, "--n", "2"]).out
        assert "# n: 2" in out
        assert "# coupling_ratio: 0.1" in out

    def test_unknown_key(self, capsys, tmp_path):
        cfg = self.write(tmp_path, "qubits = 4\n")
        err = run_usage_error(capsys, ["--config", cfg]).err
        assert "unknown key" in err

    def test_malformed_line(self, capsys, tmp_path):
        cfg = self.write(tmp_path, "tau-max 5\n")
        err = run_usage_error(capsys, ["--config", cfg]).err
        assert "expected 'key = value'" in err

    def test_bad_value(self, capsys, tmp_path):
        cfg = self.write(tmp_path, "n = two\ncoupling-ratio = 0.5\n")
        run_usage_error(capsys, ["--config", cfg])

    def test_missing_file(self, capsys, tmp_path):
        run_usage_error(capsys, ["--config", str(tmp_path / "absent.cfg")])


class TestUsageErrors:
    def test_no_arguments(self, capsys):
        err = run_usage_error(capsys, []).err
        assert "--n and --coupling-ratio are required" in err

    def test_unknown_flag(self, capsys):
        run_usage_error(capsys, ["--badflag"])

    def test_invalid_flag_value(self, capsys):
        run_usage_error(capsys, ["--n", "abc", "--coupling-ratio", "1"])

    def test_invalid_physics(self, capsys):
        run_usage_error(capsys, ["--n", "0", "--coupling-ratio", "1"])

    def test_invalid_scenario(self, capsys):
        run_usage_error(capsys, CUSTOM + ["--tau-step", "-1"])


class TestOracleCheckFlag:
    FAST = CUSTOM[:4] + ["--tau-max", "1", "--tau-step", "0.1", "--oracle-check", "fast"]

    def test_pass_reports_to_stderr(self, capsys):
        captured = run_ok(capsys, self.FAST)
        assert "oracle check (fast):" in captured.err
        assert "overall: PASS" in captured.err
        assert "# oracle_check: pass (fast)" in captured.out

    def test_failure_sets_exit_code_2(self, capsys, monkeypatch):
        import zenobath.cli as cli_module

        failing = OracleReport(
            level="fast",
            checks=(OracleCheck("analytic-vs-ode[delta=0]", 1.0, 1e-8, False),),
        )
        monkeypatch.setattr(
            cli_module, "run_oracle_check", lambda scenario, level: failing
        )
        assert main(self.FAST) == 2
        captured = capsys.readouterr()
        assert "overall: FAIL" in captured.err
        assert "# oracle_check: fail (fast)" in captured.out


class TestModuleEntryPoint:
    def test_python_dash_m(self):
        proc = subprocess.run(
            [sys.executable, "-m", "zenobath", "--list-presets"],
            capture_output=True,
            text=True,
            timeout=120,
        )
        assert proc.returncode == 0
        assert "fig5b" in proc.stdout

"""Tests for scenarios, presets, serialization, and oracle checks."""

import json
import math
import re

import numpy as np
import pytest

from zenobath import (
    OUTPUT_KINDS,
    PRESETS,
    BathDiscretization,
    OracleCheck,
    OracleReport,
    Scenario,
    SurvivalZeroError,
    SweepResult,
    SystemParams,
    get_preset,
    list_presets,
    measured_concurrence,
    pair_concurrence_closed,
    run_oracle_check,
    run_scenario,
    zeros_resonant,
)

NUMBER = re.compile(r"-?\d\.\d{16}e[+-]\d{2}|nan|-?inf")


def small_scenario(**overrides):
    kwargs = dict(params=SystemParams(2, 0.5), tau_max=1.0, tau_step=0.25)
    kwargs.update(overrides)
    return Scenario(**kwargs)


# ---------------------------------------------------------------------------
# Scenario construction
# ---------------------------------------------------------------------------


class TestScenario:
    def test_tau_grid_inclusive_endpoint(self):
        grid = small_scenario(tau_max=2.0, tau_step=0.001).tau_grid()
        assert grid.shape == (2001,)
        assert grid[0] == 0.0
        assert grid[-1] == pytest.approx(2.0, rel=1e-12)

    def test_tau_grid_standard_sweep(self):
        grid = small_scenario(tau_max=50.0, tau_step=0.01).tau_grid()
        assert grid.shape == (5001,)
        np.testing.assert_allclose(np.diff(grid), 0.01, rtol=1e-12)

    @pytest.mark.parametrize(
        "overrides",
        [
            {"tau_step": 0.0},
            {"tau_step": -0.1},
            {"tau_max": 0.1, "tau_step": 0.25},
            {"outputs": ()},
            {"outputs": ("survival", "wigner")},
            {"outputs": ("measured_concurrence",)},
            {"outputs": ("delta_concurrence",)},
            {"schedules": (0.5, -1.0)},
        ],
    )
    def test_invalid_scenarios_rejected(self, overrides):
        with pytest.raises(ValueError):
            small_scenario(**overrides)

    def test_output_kinds_catalog(self):
        assert OUTPUT_KINDS == (
            "survival",
            "concurrence",
            "measured_concurrence",
            "delta_concurrence",
            "gamma_z_curve",
        )


# ---------------------------------------------------------------------------
# Scenario evaluation
# ---------------------------------------------------------------------------


class TestRunScenario:
    def test_default_columns(self):
        result = run_scenario(small_scenario())
        assert result.columns == ("tau", "survival", "concurrence")
        assert result.table.shape == (5, 3)
        np.testing.assert_array_equal(result.table[:, 0], [0.0, 0.25, 0.5, 0.75, 1.0])
        assert result.table[0, 1] == 1.0
        assert result.table[0, 2] == 1.0

    def test_columns_follow_request_order(self):
        result = run_scenario(small_scenario(outputs=("concurrence", "survival")))
        assert result.columns == ("tau", "concurrence", "survival")

    def test_measured_columns_one_per_interval(self):
        result = run_scenario(get_preset("fig3d"))
        assert result.columns == (
            "tau",
            "concurrence",
            "concurrence_measured_T0.001",
            "concurrence_measured_T0.003",
            "concurrence_measured_T0.005",
        )
        assert result.table.shape == (2001, 5)
        # Spot-check one column against the direct evaluation.
        p = get_preset("fig3d").params
        grid = get_preset("fig3d").tau_grid()
        np.testing.assert_allclose(
            result.table[:, 3], measured_concurrence(p, 0.003, grid), rtol=1e-14
        )

    def test_delta_concurrence_columns(self):
        result = run_scenario(get_preset("fig2a"))
        assert result.columns == (
            "tau",
            "delta_concurrence_D2",
            "delta_concurrence_D4",
        )
        assert result.metadata["delta_concurrence_detunings"] == "2,4"

    def test_gamma_z_column(self):
        sc = small_scenario(
            params=SystemParams(4, 0.1, delta=2.0), outputs=("gamma_z_curve",)
        )
        result = run_scenario(sc)
        assert result.columns == ("tau", "gamma_z")
        assert math.isnan(result.table[0, 1])
        assert np.all(result.table[1:, 1] > 0.0)

    def test_zeno_and_anti_zeno_columns_bracket_free_curve(self):
        # Detuned overdamped preset: the shortest interval preserves the
        # pair, the longest degrades it.
        sc = get_preset("fig4b")
        result = run_scenario(sc)
        grid = sc.tau_grid()
        free = pair_concurrence_closed(sc.params, grid)
        idx = {name: i for i, name in enumerate(result.columns)}
        at = int(np.argmin(np.abs(grid - 20.0)))
        assert result.table[at, idx["concurrence_measured_T0.1"]] > free[at]
        assert result.table[at, idx["concurrence_measured_T5"]] < free[at]

    def test_metadata_echo(self):
        result = run_scenario(get_preset("fig3d"), oracle_status="pass (fast)")
        md = result.metadata
        assert md["generator"].startswith("zenobath ")
        assert md["preset"] == "fig3d"
        assert md["n"] == "4"
        assert md["coupling_ratio"] == "10"
        assert md["detuning_over_kappa"] == "0"
        assert md["tau_max"] == "2"
        assert md["tau_step"] == "0.001"
        assert md["measure_intervals"] == "0.001,0.003,0.005"
        assert md["series"] == "concurrence,measured_concurrence"
        assert md["oracle_check"] == "pass (fast)"

    def test_metadata_custom_scenario(self):
        result = run_scenario(small_scenario())
        assert result.metadata["preset"] == "custom"
        assert result.metadata["measure_intervals"] == "none"
        assert result.metadata["oracle_check"] == "not run"

    def test_series_failure_is_annotated(self):
        p = SystemParams(2, 10.0)
        sc = Scenario(
            params=p,
            tau_max=0.5,
            tau_step=0.1,
            outputs=("measured_concurrence",),
            schedules=(zeros_resonant(p, 1),),
        )
        with pytest.raises(ValueError, match="measured_concurrence") as excinfo:
            run_scenario(sc)
        assert isinstance(excinfo.value.__cause__, SurvivalZeroError)

    def test_deterministic(self):
        a = run_scenario(get_preset("fig2b")).to_csv_text()
        b = run_scenario(get_preset("fig2b")).to_csv_text()
        assert a == b


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


class TestSerialization:
    def test_csv_layout(self):
        text = run_scenario(small_scenario()).to_csv_text()
        lines = text.splitlines()
        meta = [ln for ln in lines if ln.startswith("# ")]
        assert len(meta) == 10
        assert lines[0] == "# generator: zenobath 0.1.0"
        header_at = len(meta)
        assert lines[header_at] == "tau,survival,concurrence"
        data = lines[header_at + 1 :]
        assert len(data) == 5
        for row in data:
            fields = row.split(",")
            assert len(fields) == 3
            assert all(NUMBER.fullmatch(f) for f in fields)
        assert text.endswith("\n")

    def test_csv_17_significant_digits(self):
        result = SweepResult(
            columns=("tau", "survival"),
            table=np.array([[0.1, 1.0 / 3.0]]),
            metadata={},
        )
        assert (
            result.to_csv_text()
            == "tau,survival\n1.0000000000000001e-01,3.3333333333333331e-01\n"
        )

    def test_csv_nan_rendering(self):
        result = SweepResult(
            columns=("tau", "gamma_z"),
            table=np.array([[0.0, math.nan]]),
            metadata={},
        )
        assert "nan" in result.to_csv_text().splitlines()[1]

    def test_json_roundtrip(self):
        result = run_scenario(small_scenario())
        doc = json.loads(result.to_json_text())
        assert doc["columns"] == ["tau", "survival", "concurrence"]
        assert doc["metadata"]["preset"] == "custom"
        assert len(doc["rows"]) == 5
        np.testing.assert_allclose(np.array(doc["rows"]), result.table, rtol=1e-15)

    def test_json_non_finite_tokens(self):
        result = SweepResult(
            columns=("a", "b", "c"),
            table=np.array([[math.nan, math.inf, -math.inf]]),
            metadata={},
        )
        doc = json.loads(result.to_json_text())
        row = doc["rows"][0]
        assert math.isnan(row[0])
        assert row[1] == math.inf
        assert row[2] == -math.inf


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------


EXPECTED_PRESETS = {
    # name: (n, R, delta, schedules, detunings, tau_max, tau_step, outputs)
    "fig2a": (4, 0.1, 0.0, (), (2.0, 4.0), 50.0, 0.01, ("delta_concurrence",)),
    "fig2b": (4, 10.0, 0.0, (), (20.0, 35.0), 2.0, 0.001, ("delta_concurrence",)),
    "fig3a": (2, 0.1, 0.0, (0.5, 2.0, 5.0), (), 50.0, 0.01,
              ("concurrence", "measured_concurrence")),
    "fig3b": (2, 10.0, 0.0, (0.001, 0.003, 0.005), (), 2.0, 0.001,
              ("concurrence", "measured_concurrence")),
    "fig3c": (4, 0.1, 0.0, (0.5, 2.0, 5.0), (), 50.0, 0.01,
              ("concurrence", "measured_concurrence")),
    "fig3d": (4, 10.0, 0.0, (0.001, 0.003, 0.005), (), 2.0, 0.001,
              ("concurrence", "measured_concurrence")),
    "fig4a": (4, 0.1, 0.5, (0.1, 0.5, 2.0, 5.0), (), 50.0, 0.01,
              ("concurrence", "measured_concurrence")),
    "fig4b": (4, 0.1, 2.0, (0.1, 0.5, 2.0, 5.0), (), 50.0, 0.01,
              ("concurrence", "measured_concurrence")),
    "fig5a": (4, 10.0, 5.0, (0.0005, 0.001, 0.003, 0.005), (), 2.0, 0.001,
              ("concurrence", "measured_concurrence")),
    "fig5b": (4, 10.0, 20.0, (0.0005, 0.001, 0.003, 0.005), (), 2.0, 0.001,
              ("concurrence", "measured_concurrence")),
}


class TestPresets:
    def test_catalog_is_frozen(self):
        assert set(PRESETS) == set(EXPECTED_PRESETS)
        for name, (n, ratio, delta, scheds, dets, t_max, t_step, outs) in (
            EXPECTED_PRESETS.items()
        ):
            sc = PRESETS[name]
            assert sc.name == name
            assert sc.params.n == n
            assert sc.params.coupling_ratio == ratio
            assert sc.params.delta == delta
            assert sc.schedules == scheds
            assert sc.detunings == dets
            assert sc.tau_max == t_max
            assert sc.tau_step == t_step
            assert sc.outputs == outs

    def test_get_preset_unknown(self):
        with pytest.raises(ValueError, match="unknown preset"):
            get_preset("fig9z")

    def test_list_presets_table(self):
        text = list_presets()
        for name in EXPECTED_PRESETS:
            assert name in text
        assert "0.0005,0.001,0.003,0.005" in text


# ---------------------------------------------------------------------------
# Oracle checks
# ---------------------------------------------------------------------------


class TestOracleCheck:
    def test_fast_level_covers_detuning_variants(self):
        report = run_oracle_check(get_preset("fig2a"), "fast")
        assert report.level == "fast"
        names = [c.name for c in report.checks]
        assert names == [
            "analytic-vs-ode[delta=0]",
            "analytic-vs-ode[delta=2]",
            "analytic-vs-ode[delta=4]",
        ]
        assert report.passed
        for check in report.checks:
            assert check.tolerance == 1e-8
            assert check.max_deviation <= 1e-8

    def test_full_level_adds_bath_checks(self):
        sc = small_scenario(params=SystemParams(2, 1.0), tau_step=0.01)
        report = run_oracle_check(sc, "full", bath=BathDiscretization(500, 50.0))
        names = [c.name for c in report.checks]
        assert names == [
            "analytic-vs-ode[delta=0]",
            "bath-vs-analytic[M=500]",
            "bath-doubling-convergence",
        ]
        assert report.passed, report.summary()

    def test_full_level_zero_coupling_trivially_converged(self):
        sc = Scenario(
            params=SystemParams(4, 0.0),
            tau_max=0.5,
            tau_step=0.1,
            outputs=("survival",),
        )
        report = run_oracle_check(sc, "full", bath=BathDiscretization(100, 50.0))
        assert report.passed
        by_name = {c.name: c for c in report.checks}
        assert by_name["bath-vs-analytic[M=100]"].max_deviation == 0.0
        assert by_name["bath-doubling-convergence"].max_deviation == 0.0

    def test_unknown_level_rejected(self):
        with pytest.raises(ValueError):
            run_oracle_check(small_scenario(), "paranoid")

    def test_summary_format(self):
        report = OracleReport(
            level="fast",
            checks=(
                OracleCheck("analytic-vs-ode[delta=0]", 2e-9, 1e-8, True),
                OracleCheck("bath-vs-analytic[M=10]", 0.5, 1e-3, False),
            ),
        )
        text = report.summary()
        assert not report.passed
        assert "PASS analytic-vs-ode[delta=0]" in text
        assert "FAIL bath-vs-analytic[M=10]" in text
        assert text.endswith("overall: FAIL")

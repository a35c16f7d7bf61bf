"""Scenario evaluation: time-series sweeps, presets, and oracle checks.

A :class:`Scenario` bundles the physical parameters with a tau grid and
the list of requested series; :func:`run_scenario` evaluates it into a
:class:`SweepResult` that serializes to CSV (default) or JSON with
fixed 17-significant-digit formatting, so identical invocations produce
byte-identical output.  The built-in presets reproduce the standard
weak/strong-coupling figure data sets, and :func:`run_oracle_check`
cross-validates the closed-form amplitude against the kernel-ODE and
discretized-bath solvers on any scenario.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from ._version import __version__
from .core_model import SystemParams
from .entanglement import delta_concurrence, pair_concurrence_closed
from .survival import (
    BathDiscretization,
    amplitude_analytic,
    amplitude_discrete_bath,
    amplitude_kernel_ode,
    log_survival_probability,
)
from .zeno import _LOG_ZERO_MARGIN, measured_concurrence

__all__ = [
    "OUTPUT_KINDS",
    "Scenario",
    "SweepResult",
    "OracleCheck",
    "OracleReport",
    "run_scenario",
    "run_oracle_check",
    "PRESETS",
    "get_preset",
    "list_presets",
]

OUTPUT_KINDS = (
    "survival",
    "concurrence",
    "measured_concurrence",
    "delta_concurrence",
    "gamma_z_curve",
)



def _num(value: float) -> str:
    """Compact deterministic number rendering for names and metadata."""
    return f"{value:g}"


@dataclass(frozen=True)
class Scenario:
    """One sweep request: parameters, grid, schedules, and series.

    Attributes
    ----------
    params : SystemParams
    tau_max, tau_step : float
        The series are evaluated on tau = 0, tau_step, ..., up to
        tau_max (inclusive when it is a multiple of the step).
    schedules : tuple of float
        Measurement intervals T for the measured-concurrence series.
    outputs : tuple of str
        Requested series, drawn from :data:`OUTPUT_KINDS`.
    detunings : tuple of float
        Detunings (in units of kappa) for the delta-concurrence series.
    name : str or None
        Preset name, echoed into the output metadata.
    """

    params: SystemParams
    tau_max: float
    tau_step: float
    schedules: tuple[float, ...] = ()
    outputs: tuple[str, ...] = ("survival", "concurrence")
    detunings: tuple[float, ...] = ()
    name: str | None = None

    def __post_init__(self) -> None:
        if not self.tau_step > 0.0:
            raise ValueError("tau_step must be positive")
        if self.tau_max < self.tau_step:
            raise ValueError("tau_max must be at least tau_step")
        if any(t <= 0.0 for t in self.schedules):
            raise ValueError("every measurement interval must be positive")
        if not self.outputs:
            raise ValueError("at least one output series is required")
        unknown = [o for o in self.outputs if o not in OUTPUT_KINDS]
        if unknown:
            raise ValueError(f"unknown output series {unknown}; valid: {OUTPUT_KINDS}")
        if "measured_concurrence" in self.outputs and not self.schedules:
            raise ValueError("measured_concurrence requires at least one interval")
        if "delta_concurrence" in self.outputs and not self.detunings:
            raise ValueError("delta_concurrence requires at least one detuning")
        object.__setattr__(self, "schedules", tuple(float(t) for t in self.schedules))
        object.__setattr__(self, "detunings", tuple(float(d) for d in self.detunings))
        object.__setattr__(self, "outputs", tuple(self.outputs))

    def tau_grid(self) -> np.ndarray:
        """The evaluation grid 0, tau_step, 2 tau_step, ... <= tau_max."""
        count = int(math.floor(self.tau_max / self.tau_step + 1e-9)) + 1
        return self.tau_step * np.arange(count)


@dataclass(frozen=True)
class SweepResult:
    """Evaluated scenario: named columns, numeric table, metadata echo."""

    columns: tuple[str, ...]
    table: np.ndarray
    metadata: dict[str, str] = field(default_factory=dict)

    def to_csv_text(self) -> str:
        """CSV with `# key: value` metadata lines before the header.

        Numbers are rendered as %.16e (17 significant digits), making
        repeated runs byte-identical.
        """
        lines = [f"# {key}: {value}" for key, value in self.metadata.items()]
        lines.append(",".join(self.columns))
        for row in self.table:
            lines.append(",".join(f"{v:.16e}" for v in row))
        return "\n".join(lines) + "\n"

    def to_json_text(self) -> str:
        """JSON object with metadata, columns, and the numeric rows."""

        def render(v: float) -> str:
            if math.isnan(v):
                return "NaN"
            if math.isinf(v):
                return "Infinity" if v > 0 else "-Infinity"
            return f"{v:.16e}"

        rows = ",\n".join(
            "    [" + ", ".join(render(v) for v in row) + "]" for row in self.table
        )
        return (
            "{\n"
            f'  "metadata": {json.dumps(self.metadata, indent=4).replace(chr(10), chr(10) + "  ")},\n'
            f'  "columns": {json.dumps(list(self.columns))},\n'
            f'  "rows": [\n{rows}\n  ]\n'
            "}\n"
        )


def _gamma_z_series(params: SystemParams, grid: np.ndarray) -> np.ndarray:
    """Gamma_z(T) sampled at T = tau; NaN at tau = 0 and at survival zeros."""
    out = np.full(grid.shape, np.nan)
    positive = grid > 0.0
    t = grid[positive]
    log_p = log_survival_probability(params, t)
    vals = np.where(log_p + t < _LOG_ZERO_MARGIN, np.nan, -log_p / t)
    out[positive] = np.clip(vals, 0.0, None)
    return out


def run_scenario(scenario: Scenario, *, oracle_status: str = "not run") -> SweepResult:
    """Evaluate every requested series of `scenario` on its tau grid.

    Parameters
    ----------
    scenario : Scenario
    oracle_status : str
        Text echoed into the `oracle_check` metadata entry (the CLI
        fills in the outcome when a check was requested).

    Returns
    -------
    SweepResult
        Columns ordered as (tau, then the series in request order;
        measured and delta series expand to one column per interval /
        detuning, in their listed order).
    """
    params = scenario.params
    grid = scenario.tau_grid()
    columns: list[str] = ["tau"]
    series: list[np.ndarray] = [grid]

    for kind in scenario.outputs:
        try:
            if kind == "survival":
                columns.append("survival")
                series.append(np.abs(amplitude_analytic(params, grid)) ** 2)
            elif kind == "concurrence":
                columns.append("concurrence")
                series.append(pair_concurrence_closed(params, grid))
            elif kind == "measured_concurrence":
                for interval in scenario.schedules:
                    columns.append(f"concurrence_measured_T{_num(interval)}")
                    series.append(measured_concurrence(params, interval, grid))
            elif kind == "delta_concurrence":
                for detuning in scenario.detunings:
                    columns.append(f"delta_concurrence_D{_num(detuning)}")
                    series.append(delta_concurrence(params, detuning, grid))
            elif kind == "gamma_z_curve":
                columns.append("gamma_z")
                series.append(_gamma_z_series(params, grid))
        except (ValueError, ArithmeticError) as exc:
            raise ValueError(f"while evaluating series {kind!r}: {exc}") from exc

    metadata: dict[str, str] = {
        "generator": f"zenobath {__version__}",
        "preset": scenario.name or "custom",
        "n": str(params.n),
        "coupling_ratio": _num(params.coupling_ratio),
        "detuning_over_kappa": _num(params.delta),
        "tau_max": _num(scenario.tau_max),
        "tau_step": _num(scenario.tau_step),
        "measure_intervals": ",".join(_num(t) for t in scenario.schedules) or "none",
        "series": ",".join(scenario.outputs),
        "oracle_check": oracle_status,
    }
    if scenario.detunings:
        metadata["delta_concurrence_detunings"] = ",".join(
            _num(d) for d in scenario.detunings)

    table = np.column_stack(series)
    return SweepResult(columns=tuple(columns), table=table, metadata=metadata)


@dataclass(frozen=True)
class OracleCheck:
    """One cross-validation: a deviation measured against its tolerance."""

    name: str
    max_deviation: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class OracleReport:
    """Outcome of :func:`run_oracle_check` over a scenario."""

    level: str
    checks: tuple[OracleCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def summary(self) -> str:
        lines = [f"oracle check ({self.level}):"]
        for check in self.checks:
            verdict = "PASS" if check.passed else "FAIL"
            lines.append(
                f"  {verdict} {check.name}: max deviation {check.max_deviation:.3e}"
                f" (tolerance {check.tolerance:.3e})")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def run_oracle_check(scenario: Scenario, level: str = "fast", *,
                     bath: BathDiscretization | None = None) -> OracleReport:
    """Cross-validate the closed-form amplitude on a scenario's grid.

    fast
        Compares `amplitude_analytic` against the kernel-ODE solver for
        the scenario's parameter set and every detuning variant it
        requests (tolerance 1e-8 on |E_analytic - E_ode|).
    full
        Additionally evolves the discretized bath on the base parameter
        set: |c| must match |E_analytic| to 1e-3, and doubling the mode
        count twice must shrink the doubling increment
        max |c_M - c_2M| by at least a factor of 2 (the discretization
        error scales like 1/M; the finite-window remainder is inside
        the 1e-3 budget).

    Parameters
    ----------
    scenario : Scenario
    level : {"fast", "full"}
    bath : BathDiscretization, optional
        Base discretization for the full check; defaults to M=4000
        modes over a window of half-width 200 kappa.

    Returns
    -------
    OracleReport
        Failures are report content, not exceptions.
    """
    if level not in ("fast", "full"):
        raise ValueError(f"level must be 'fast' or 'full', got {level!r}")
    grid = scenario.tau_grid()

    param_sets: list[SystemParams] = [scenario.params]
    for detuning in scenario.detunings:
        variant = replace(scenario.params, delta=detuning)
        if all(variant.delta != p.delta for p in param_sets):
            param_sets.append(variant)

    checks: list[OracleCheck] = []
    for p in param_sets:
        reference = amplitude_analytic(p, grid)
        ode = amplitude_kernel_ode(p, grid)
        dev = float(np.max(np.abs(reference - ode)))
        checks.append(OracleCheck(
            name=f"analytic-vs-ode[delta={_num(p.delta)}]",
            max_deviation=dev, tolerance=1e-8, passed=dev <= 1e-8))

    if level == "full":
        base = bath if bath is not None else BathDiscretization(4000, 200.0)
        params = scenario.params
        reference_abs = np.abs(amplitude_analytic(params, grid))
        coarse = amplitude_discrete_bath(params, base, grid)
        dev = float(np.max(np.abs(np.abs(coarse) - reference_abs)))
        checks.append(OracleCheck(
            name=f"bath-vs-analytic[M={base.mode_count}]",
            max_deviation=dev, tolerance=1e-3, passed=dev <= 1e-3))

        fine = amplitude_discrete_bath(params, base.doubled(), grid)
        finer = amplitude_discrete_bath(params, base.doubled().doubled(), grid)
        delta_1 = float(np.max(np.abs(coarse - fine)))
        delta_2 = float(np.max(np.abs(fine - finer)))
        # Fully converged discretizations (e.g. g = 0) leave nothing to halve.
        converged = delta_1 <= 1e-12
        checks.append(OracleCheck(
            name="bath-doubling-convergence",
            max_deviation=delta_2,
            tolerance=max(0.5 * delta_1, 1e-12),
            passed=converged or delta_2 <= 0.5 * delta_1))

    return OracleReport(level=level, checks=tuple(checks))


_BAD_CAVITY = {"tau_max": 50.0, "tau_step": 0.01}
_GOOD_CAVITY = {"tau_max": 2.0, "tau_step": 0.001}

#: Built-in figure-data presets: detuning-gain pairs (fig2*), resonant
#: measured dynamics for two system sizes (fig3*), detuned bad-cavity
#: measured dynamics (fig4*), and detuned good-cavity measured dynamics
#: (fig5*).
PRESETS: dict[str, Scenario] = {
    "fig2a": Scenario(
        params=SystemParams.from_ratio(4, 0.1),
        outputs=("delta_concurrence",), detunings=(2.0, 4.0),
        name="fig2a", **_BAD_CAVITY),
    "fig2b": Scenario(
        params=SystemParams.from_ratio(4, 10.0),
        outputs=("delta_concurrence",), detunings=(20.0, 35.0),
        name="fig2b", **_GOOD_CAVITY),
    "fig3a": Scenario(
        params=SystemParams.from_ratio(2, 0.1),
        outputs=("concurrence", "measured_concurrence"),
        schedules=(0.5, 2.0, 5.0), name="fig3a", **_BAD_CAVITY),
    "fig3b": Scenario(
        params=SystemParams.from_ratio(2, 10.0),
        outputs=("concurrence", "measured_concurrence"),
        schedules=(0.001, 0.003, 0.005), name="fig3b", **_GOOD_CAVITY),
    "fig3c": Scenario(
        params=SystemParams.from_ratio(4, 0.1),
        outputs=("concurrence", "measured_concurrence"),
        schedules=(0.5, 2.0, 5.0), name="fig3c", **_BAD_CAVITY),
    "fig3d": Scenario(
        params=SystemParams.from_ratio(4, 10.0),
        outputs=("concurrence", "measured_concurrence"),
        schedules=(0.001, 0.003, 0.005), name="fig3d", **_GOOD_CAVITY),
    "fig4a": Scenario(
        params=SystemParams.from_ratio(4, 0.1, 0.5),
        outputs=("concurrence", "measured_concurrence"),
        schedules=(0.1, 0.5, 2.0, 5.0), name="fig4a", **_BAD_CAVITY),
    "fig4b": Scenario(
        params=SystemParams.from_ratio(4, 0.1, 2.0),
        outputs=("concurrence", "measured_concurrence"),
        schedules=(0.1, 0.5, 2.0, 5.0), name="fig4b", **_BAD_CAVITY),
    "fig5a": Scenario(
        params=SystemParams.from_ratio(4, 10.0, 5.0),
        outputs=("concurrence", "measured_concurrence"),
        schedules=(0.0005, 0.001, 0.003, 0.005), name="fig5a", **_GOOD_CAVITY),
    "fig5b": Scenario(
        params=SystemParams.from_ratio(4, 10.0, 20.0),
        outputs=("concurrence", "measured_concurrence"),
        schedules=(0.0005, 0.001, 0.003, 0.005), name="fig5b", **_GOOD_CAVITY),
}


def get_preset(name: str) -> Scenario:
    """Look up a preset scenario by name; raises ValueError when unknown."""
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None


def list_presets() -> str:
    """Human-readable table of the built-in presets."""
    header = f"{'name':<7}{'n':>3}{'R':>7}  {'detuning/kappa':<15}{'intervals (kappa T)':<28}{'tau range':<14}series"
    lines = [header, "-" * len(header)]
    for name, sc in PRESETS.items():
        if sc.detunings:
            det = ",".join(_num(d) for d in sc.detunings)
        else:
            det = _num(sc.params.delta)
        intervals = ",".join(_num(t) for t in sc.schedules) or "-"
        tau = f"[0,{_num(sc.tau_max)}]/{_num(sc.tau_step)}"
        lines.append(
            f"{name:<7}{sc.params.n:>3}{_num(sc.params.coupling_ratio):>7}  "
            f"{det:<15}{intervals:<28}{tau:<14}{','.join(sc.outputs)}")
    return "\n".join(lines)

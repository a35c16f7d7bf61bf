"""Entanglement dynamics of qubits sharing a Lorentzian bath.

n qubits coupled to a common leaky-cavity (Lorentzian) environment share
one excitation; its survival amplitude E(t) fixes everything observable
here.  The package computes E three independent ways (closed form,
memory-kernel ODE, brute-force discretized bath), turns it into pairwise
concurrence, and analyzes repeated non-selective measurements — the
quantum Zeno and anti-Zeno regimes, including the threshold interval
separating them.

Quick start::

    from zenobath import SystemParams, amplitude_analytic, pair_concurrence_closed

    params = SystemParams.from_ratio(n=4, coupling_ratio=0.1, delta_over_kappa=2.0)
    c = pair_concurrence_closed(params, tau=5.0)

The ``zenobath`` console script exposes sweeps, figure-data presets, and
oracle cross-checks; see ``zenobath --help``.
"""

from ._version import __version__
from .core_model import (
    DerivedFrequencies,
    SystemParams,
    correlation_kernel,
    derived_frequencies,
    spectral_density,
)
from .entanglement import (
    ConcurrenceValue,
    PairState,
    delta_concurrence,
    pair_concurrence_closed,
    pair_density_matrix,
    wootters_concurrence,
)
from .survival import (
    BathDiscretization,
    ConvergenceError,
    amplitude_analytic,
    amplitude_discrete_bath,
    amplitude_kernel_ode,
    free_decay_rate,
    log_survival_probability,
    zeros_resonant,
    zeros_resonant_raw,
)
from .sweep import (
    OUTPUT_KINDS,
    PRESETS,
    OracleCheck,
    OracleReport,
    Scenario,
    SweepResult,
    get_preset,
    list_presets,
    run_oracle_check,
    run_scenario,
)
from .zeno import (
    MeasurementSchedule,
    Regime,
    RegimeReport,
    SurvivalZeroError,
    ThresholdScan,
    classify_regime,
    effective_decay_rate,
    golden_rule_rate,
    measured_concurrence,
    measured_survival,
    threshold_scan,
    threshold_time,
)

__all__ = [
    "__version__",
    # core model
    "SystemParams",
    "DerivedFrequencies",
    "spectral_density",
    "correlation_kernel",
    "derived_frequencies",
    # survival
    "amplitude_analytic",
    "log_survival_probability",
    "amplitude_kernel_ode",
    "BathDiscretization",
    "ConvergenceError",
    "amplitude_discrete_bath",
    "zeros_resonant",
    "zeros_resonant_raw",
    "free_decay_rate",
    # entanglement
    "PairState",
    "ConcurrenceValue",
    "pair_density_matrix",
    "wootters_concurrence",
    "pair_concurrence_closed",
    "delta_concurrence",
    # zeno
    "SurvivalZeroError",
    "MeasurementSchedule",
    "effective_decay_rate",
    "measured_survival",
    "measured_concurrence",
    "Regime",
    "RegimeReport",
    "golden_rule_rate",
    "classify_regime",
    "ThresholdScan",
    "threshold_scan",
    "threshold_time",
    # sweeps / presets
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

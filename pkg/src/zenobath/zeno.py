"""Repeated non-selective measurements: Zeno and anti-Zeno analysis.

Projecting every interval T onto "is the shared excitation still
present?" without reading out the result resets the bath correlations
each time, so N measurements multiply survival probabilities:
P(NT) = |E(T)|^{2N} = exp(-Gamma_z N T) with the effective rate
Gamma_z(T) = -log |E(T)|^2 / T.  Comparing Gamma_z against the free
decay rate of the unmeasured system classifies each interval as Zeno
(slowed decay), anti-Zeno (accelerated), or neutral, and the threshold
interval T* where the two rates cross is found by scan plus bisection.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core_model import SystemParams
from .survival import free_decay_rate, log_survival_probability

__all__ = [
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
]

# Smooth decay keeps the survival probability within a few decades of
# the e^{-kappa t} envelope (the slowest possible amplitude decay is
# e^{-kappa t / 2} times an order-one oscillation), so a value more
# than 22 decades below that envelope can only mean the time landed on
# an interference zero.  The effective rate diverges there (an
# idealized, infinitely effective anti-Zeno point), so rate queries
# fail loudly at such times.
_LOG_ZERO_MARGIN = math.log(1e-22)

# Scan points below this survival are excluded from threshold searches
# and reported, per the rate-divergence note above.
_LOG_SCAN_FLOOR = math.log(1e-12)

_CLASSIFY_TOL = 1e-9


class SurvivalZeroError(ValueError):
    """The measurement interval landed on a zero of the survival probability.

    Attributes
    ----------
    tau : float
        The offending interval.
    """

    def __init__(self, tau: float):
        self.tau = float(tau)
        super().__init__(
            f"survival probability vanishes at tau={tau!r}; "
            "the effective decay rate diverges there")


def effective_decay_rate(params: SystemParams, interval: float) -> float:
    """Effective decay rate Gamma_z(T) = -log |E(T)|^2 / T.

    Parameters
    ----------
    params : SystemParams
    interval : float
        Measurement interval T > 0.

    Returns
    -------
    float
        Gamma_z >= 0.

    Raises
    ------
    SurvivalZeroError
        If |E(T)|^2 falls more than 22 decades below exp(-kappa T):
        T sits on an interference zero of the survival amplitude.
    """
    interval = float(interval)
    if not interval > 0.0:
        raise ValueError(f"interval must be positive, got {interval!r}")
    log_p = log_survival_probability(params, interval)
    if log_p + interval < _LOG_ZERO_MARGIN:
        raise SurvivalZeroError(interval)
    return max(0.0, -log_p / interval)


@dataclass(frozen=True)
class MeasurementSchedule:
    """A sequence of non-selective measurements every `interval`.

    Attributes
    ----------
    interval : float
        Spacing T > 0 between measurements.
    count : int or None
        Number of measurements N; None for continuous-envelope queries
        that need only the interval.
    gamma_z : float
        Effective decay rate Gamma_z(T) of the schedule, so that the
        survival after N measurements is exp(-gamma_z * N * interval)
        exactly.
    """

    interval: float
    gamma_z: float
    count: int | None = None

    def __post_init__(self) -> None:
        if not self.interval > 0.0:
            raise ValueError("interval must be positive")
        if self.count is not None and self.count < 1:
            raise ValueError("count must be a positive integer or None")

    @classmethod
    def for_params(cls, params: SystemParams, interval: float,
                   count: int | None = None) -> "MeasurementSchedule":
        """Build a schedule with gamma_z derived from `params`."""
        return cls(interval=float(interval), count=count,
                   gamma_z=effective_decay_rate(params, interval))

    def survival_after(self, count: int) -> float:
        """Survival probability |E(T)|^{2 count} after `count` measurements."""
        return math.exp(-self.gamma_z * count * self.interval)


def measured_survival(params: SystemParams, interval: float, t, mode: str = "envelope"):
    """Survival probability under measurements every `interval`.

    Parameters
    ----------
    params : SystemParams
    interval : float
        Measurement spacing T > 0.
    t : float or array_like
        Nonnegative time(s).
    mode : {"envelope", "stepwise"}
        ``envelope`` returns exp(-Gamma_z(T) t), the smooth decay law.
        ``stepwise`` returns |E(T)|^{2N} |E(t - NT)|^2 with
        N = floor(t/T): the exact piecewise evolution, following the
        free dynamics between measurements.  The two agree at every
        measurement instant t = kT.

    Returns
    -------
    float or ndarray
        Values in [0, 1].
    """
    if mode not in ("envelope", "stepwise"):
        raise ValueError(f"mode must be 'envelope' or 'stepwise', got {mode!r}")
    gamma = effective_decay_rate(params, interval)
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("t must be nonnegative")
    if mode == "envelope":
        out = np.exp(-gamma * t_arr)
    else:
        completed = np.floor(t_arr / interval)
        remainder = t_arr - completed * interval
        log_p = (-gamma * interval) * completed + log_survival_probability(params, remainder)
        out = np.exp(log_p)
    out = np.clip(out, 0.0, 1.0)
    return float(out) if t_arr.ndim == 0 else out


def measured_concurrence(params: SystemParams, interval: float, t, mode: str = "envelope"):
    """Pairwise concurrence under repeated measurements, (2/n) P(t).

    The measured pair state keeps the X form with |E|^2 replaced by the
    measured survival probability, so the concurrence is 2 P(t) / n in
    both envelope and stepwise modes.
    """
    if params.n < 2:
        raise ValueError(f"pairwise concurrence needs n >= 2, got n={params.n}")
    return (2.0 / params.n) * measured_survival(params, interval, t, mode)


class Regime(enum.Enum):
    """Classification outcomes for a measurement interval."""

    ZENO = "Zeno"
    ANTI_ZENO = "AntiZeno"
    NEUTRAL = "Neutral"


@dataclass(frozen=True)
class RegimeReport:
    """Outcome of comparing Gamma_z(T) against the free-decay reference.

    regime is Zeno iff ratio < 1 - 1e-9, AntiZeno iff ratio > 1 + 1e-9,
    and Neutral inside that band.
    """

    regime: Regime
    gamma_z: float
    gamma_ref: float
    ratio: float


def golden_rule_rate(params: SystemParams) -> float:
    """Weak-coupling (golden rule) decay rate 2 n g^2 kappa / (delta^2 + kappa^2).

    Equals 2 pi J(omega_qb): the Markovian rate set by the spectral
    density at the qubit frequency.  Used as an alternative
    Zeno/anti-Zeno reference for sensitivity studies.
    """
    return 2.0 * params.n * params.g**2 * params.kappa / (
        params.delta**2 + params.kappa**2)


def _reference_rate(params: SystemParams, reference: str) -> float:
    if reference == "exact":
        return free_decay_rate(params)
    if reference == "golden-rule":
        rate = golden_rule_rate(params)
        if rate <= 0.0:
            raise ValueError("golden-rule reference requires g > 0")
        return rate
    raise ValueError(f"reference must be 'exact' or 'golden-rule', got {reference!r}")


def classify_regime(params: SystemParams, interval: float,
                    reference: str = "exact") -> RegimeReport:
    """Classify a measurement interval as Zeno, anti-Zeno, or neutral.

    Parameters
    ----------
    params : SystemParams
    interval : float
        Measurement spacing T > 0.
    reference : {"exact", "golden-rule"}
        Reference rate Gamma_ref: the exact asymptotic rate of the
        unmeasured |E|^2 (default), or the golden-rule rate.

    Returns
    -------
    RegimeReport
    """
    gamma_ref = _reference_rate(params, reference)
    gamma_z = effective_decay_rate(params, interval)
    ratio = gamma_z / gamma_ref
    if ratio < 1.0 - _CLASSIFY_TOL:
        regime = Regime.ZENO
    elif ratio > 1.0 + _CLASSIFY_TOL:
        regime = Regime.ANTI_ZENO
    else:
        regime = Regime.NEUTRAL
    return RegimeReport(regime=regime, gamma_z=gamma_z, gamma_ref=gamma_ref,
                        ratio=ratio)


@dataclass(frozen=True)
class ThresholdScan:
    """Result of scanning Gamma_z(T) for a crossing with Gamma_ref.

    Attributes
    ----------
    grid : ndarray
        The scanned intervals (log-spaced).
    gamma_z : ndarray
        Gamma_z at each interval; NaN where the point was skipped.
    gamma_ref : float
        The reference rate.
    skipped : ndarray
        Intervals excluded because the survival probability fell below
        1e-12 (the rate diverges near survival zeros).
    threshold : float or None
        Smallest crossing time T* in the window, or None when Gamma_z
        stays on one side (pure Zeno regime).
    """

    grid: np.ndarray
    gamma_z: np.ndarray
    gamma_ref: float
    skipped: np.ndarray
    threshold: float | None


def _gamma_or_none(params: SystemParams, interval: float) -> float | None:
    """Gamma_z(interval), or None when the survival is below the scan floor."""
    log_p = log_survival_probability(params, interval)
    if log_p < _LOG_SCAN_FLOOR:
        return None
    return max(0.0, -log_p / interval)


def threshold_scan(params: SystemParams, t_max: float = 20.0, *,
                   points: int = 256, reference: str = "exact") -> ThresholdScan:
    """Locate the Zeno/anti-Zeno threshold interval T*, with diagnostics.

    A log-spaced scan of `points` intervals over (0, t_max] finds the
    first sign change of Gamma_z(T) - Gamma_ref between consecutive
    valid points; bisection then refines it to 1e-10 relative.  Scan
    points whose survival probability is below 1e-12 are skipped and
    reported (near survival zeros the rate diverges).

    Returns
    -------
    ThresholdScan
    """
    if not t_max > 0.0:
        raise ValueError("t_max must be positive")
    gamma_ref = _reference_rate(params, reference)
    grid = np.geomspace(t_max * 1e-8, t_max, points)
    gammas = np.full(points, np.nan)
    skipped = []
    for i, t in enumerate(grid):
        gz = _gamma_or_none(params, float(t))
        if gz is None:
            skipped.append(float(t))
        else:
            gammas[i] = gz

    threshold = None
    valid = np.flatnonzero(~np.isnan(gammas))
    signs = gammas[valid] - gamma_ref
    for a, b in zip(valid[:-1], valid[1:]):
        if (gammas[a] - gamma_ref) == 0.0:
            threshold = float(grid[a])
            break
        if (gammas[a] - gamma_ref) * (gammas[b] - gamma_ref) < 0.0:
            threshold = _bisect_crossing(params, float(grid[a]), float(grid[b]),
                                         gamma_ref)
            break
    else:
        if signs.size and signs[-1] == 0.0:
            threshold = float(grid[valid[-1]])

    return ThresholdScan(grid=grid, gamma_z=gammas, gamma_ref=gamma_ref,
                         skipped=np.asarray(skipped), threshold=threshold)


def _bisect_crossing(params: SystemParams, lo: float, hi: float,
                     gamma_ref: float) -> float:
    """Refine a bracketed Gamma_z = Gamma_ref crossing to 1e-10 relative."""

    def offset(t: float) -> float:
        gz = _gamma_or_none(params, t)
        # Inside a collapse region the rate is effectively infinite:
        # always on the accelerated side of the reference.
        return math.inf if gz is None else gz - gamma_ref

    f_lo = offset(lo)
    for _ in range(200):
        if hi - lo <= 1e-10 * hi:
            break
        mid = 0.5 * (lo + hi)
        f_mid = offset(mid)
        if (f_lo < 0.0) == (f_mid < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def threshold_time(params: SystemParams, t_max: float = 20.0, *,
                   reference: str = "exact") -> float | None:
    """Smallest interval T* in (0, t_max] with Gamma_z(T*) = Gamma_ref.

    Returns None when no crossing exists in the window — the pure-Zeno
    situation where measurements always slow the decay.
    """
    return threshold_scan(params, t_max, reference=reference).threshold

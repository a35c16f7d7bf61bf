"""Physical parameters, derived frequencies, spectral density, and memory kernel.

Everything downstream (survival amplitudes, concurrence, measurement
analysis) consumes the two objects defined here: :class:`SystemParams`,
which freezes a physical configuration, and :class:`DerivedFrequencies`,
which caches the three frequencies that control the dynamics.

Unit convention
---------------
The cavity linewidth kappa sets the unit system.  ``SystemParams``
normalizes every rate by kappa on construction, so internally kappa = 1
and all times are dimensionless, tau = kappa * t.  This makes the
dimensionless outputs (survival probability, concurrence) manifestly
invariant under the rescaling (g, kappa, delta, t) -> (s g, s kappa,
s delta, t / s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SystemParams",
    "DerivedFrequencies",
    "spectral_density",
    "correlation_kernel",
    "derived_frequencies",
]


@dataclass(frozen=True)
class SystemParams:
    """Configuration of n identical qubits coupled to one Lorentzian bath.

    Parameters
    ----------
    n : int
        Number of qubits, n >= 1.
    g : float
        Qubit-cavity coupling rate.  Must be >= 0; the free-evolution
        helpers that are singular at g = 0 raise individually.
    kappa : float
        Cavity decay rate (half width of the Lorentzian), > 0.  Stored
        normalized to 1; pass rates in any consistent unit.
    delta : float
        Detuning `delta = omega_0 - omega_qb` between the Lorentzian peak
        and the qubit transition.
    omega_qb : float
        Qubit transition frequency.  Only the discretized-bath solver
        uses it (as the rotating-frame origin); it defaults to 0 because
        the global phase it generates never affects survival
        probabilities or concurrence.

    Notes
    -----
    All rates are divided by ``kappa`` during construction, after which
    ``kappa == 1.0``.  The dimensionless coupling ratio R = g / kappa is
    available as :attr:`coupling_ratio`.
    """

    n: int
    g: float
    kappa: float = 1.0
    delta: float = 0.0
    omega_qb: float = 0.0

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not self.kappa > 0.0:
            raise ValueError(f"kappa must be positive, got {self.kappa!r}")
        if self.g < 0.0:
            raise ValueError(f"g must be nonnegative, got {self.g!r}")
        if self.omega_qb < 0.0:
            raise ValueError(f"omega_qb must be nonnegative, got {self.omega_qb!r}")
        # Normalize to the kappa = 1 unit system once, at the boundary.
        scale = float(self.kappa)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "g", float(self.g) / scale)
        object.__setattr__(self, "delta", float(self.delta) / scale)
        object.__setattr__(self, "omega_qb", float(self.omega_qb) / scale)
        object.__setattr__(self, "kappa", 1.0)

    @classmethod
    def from_ratio(
        cls,
        n: int,
        coupling_ratio: float,
        delta_over_kappa: float = 0.0,
        omega_qb: float = 0.0,
    ) -> "SystemParams":
        """Build from the dimensionless inputs R = g/kappa and delta/kappa."""
        return cls(n=n, g=coupling_ratio, kappa=1.0, delta=delta_over_kappa,
                   omega_qb=omega_qb)

    @property
    def coupling_ratio(self) -> float:
        """Dimensionless coupling R = g / kappa."""
        return self.g / self.kappa

    @property
    def omega_0(self) -> float:
        """Center of the Lorentzian, omega_0 = omega_qb + delta."""
        return self.omega_qb + self.delta


@dataclass(frozen=True)
class DerivedFrequencies:
    """The three frequencies derived from a :class:`SystemParams`.

    Attributes
    ----------
    omega_r : float
        Generalized Rabi frequency, Omega_R = sqrt(delta^2 + 4 g^2 n).
    omega_big : complex
        Omega = sqrt(kappa^2 - Omega_R^2 + 2 i delta kappa), principal
        branch.  Controls the exponents of the survival amplitude; the
        amplitude itself is even in Omega, so the branch choice is a
        convention, not a correctness concern.
    omega_prime : float or None
        Oscillation frequency Omega' = sqrt(4 n g^2 - kappa^2) of the
        resonant strong-coupling amplitude.  ``None`` whenever
        4 n g^2 <= kappa^2 (no underdamped oscillation exists).
    """

    omega_r: float
    omega_big: complex
    omega_prime: float | None = field(default=None)


def spectral_density(params: SystemParams, omega):
    """Lorentzian spectral density J(omega) of the collective coupling.

    J(omega) = (1/pi) * n g^2 kappa / ((omega - omega_0)^2 + kappa^2),
    centered on omega_0 = omega_qb + delta and integrating to n g^2.

    Parameters
    ----------
    params : SystemParams
    omega : float or array_like
        Frequency (same kappa-normalized unit as the rates in `params`).

    Returns
    -------
    float or ndarray
        J(omega) >= 0, scalar if `omega` is scalar.
    """
    omega = np.asarray(omega, dtype=float)
    ng2 = params.n * params.g**2
    out = (ng2 * params.kappa / np.pi) / (
        (omega - params.omega_0) ** 2 + params.kappa**2
    )
    return out if out.ndim else float(out)


def correlation_kernel(params: SystemParams, dt):
    """Two-time bath correlation function f(dt) for the Lorentzian bath.

    f(dt) = n g^2 exp(-kappa dt) exp(-i delta dt) for dt >= 0; it is the
    Fourier transform of J(omega) taken relative to the qubit frequency,
    and the memory kernel of the survival-amplitude equation.

    Parameters
    ----------
    params : SystemParams
    dt : float or array_like
        Nonnegative time separation.

    Returns
    -------
    complex or ndarray
    """
    dt = np.asarray(dt, dtype=float)
    if np.any(dt < 0.0):
        raise ValueError("dt must be nonnegative")
    ng2 = params.n * params.g**2
    out = ng2 * np.exp(-(params.kappa + 1j * params.delta) * dt)
    return out if out.ndim else complex(out)


def derived_frequencies(params: SystemParams) -> DerivedFrequencies:
    """Compute Omega_R, Omega, and (when defined) Omega' for `params`."""
    n, g, kappa, delta = params.n, params.g, params.kappa, params.delta
    omega_r = math.sqrt(delta**2 + 4.0 * g**2 * n)
    omega_big = np.sqrt(complex(kappa**2 - omega_r**2, 2.0 * delta * kappa))
    disc = 4.0 * n * g**2 - kappa**2
    omega_prime = math.sqrt(disc) if disc > 0.0 else None
    return DerivedFrequencies(omega_r=omega_r, omega_big=complex(omega_big),
                              omega_prime=omega_prime)

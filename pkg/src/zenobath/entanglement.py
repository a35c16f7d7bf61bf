"""Pairwise entanglement carried by the decaying shared excitation.

Tracing the n-qubit W state (dressed by the bath) down to any two qubits
yields an X-form density matrix whose only dynamical input is the
survival probability |E(tau)|^2.  This module builds that matrix,
evaluates its concurrence by the general Wootters spin-flip procedure,
and provides the closed form C_pair = 2 |E|^2 / n that the general
routine must reproduce — the equality of the two is the module's
central cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core_model import SystemParams
from .survival import amplitude_analytic

__all__ = [
    "PairState",
    "ConcurrenceValue",
    "pair_density_matrix",
    "wootters_concurrence",
    "pair_concurrence_closed",
    "delta_concurrence",
]

# Basis ordering for all 4x4 pair matrices: {|11>, |10>, |01>, |00>}.
# The spin-flip conjugation below is written in this ordering; changing
# it silently breaks the concurrence, so tests pin it with an
# asymmetric reference state.
_SY_SY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)

# Tolerances for the eigenvalues of rho * rho_tilde, which are real and
# nonnegative for any physical state: larger violations signal an
# invalid input matrix rather than roundoff.
_EIG_NEG_TOL = 1e-8
_EIG_IMAG_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class PairState:
    """Reduced density matrix of one qubit pair.

    Attributes
    ----------
    rho : ndarray
        4x4 complex matrix in the basis {|11>, |10>, |01>, |00>}.
        States built by :func:`pair_density_matrix` are Hermitian,
        trace one, positive semidefinite, and X-shaped: entries
        (2,2), (2,3), (3,2), (3,3) equal |E|^2/n and (4,4) carries the
        remaining population.
    source_tau : float
        Time the matrix was evaluated at (NaN when constructed from a
        bare survival probability with no time attached).
    source_n : int
        System size n the pair was traced out of.
    """

    rho: np.ndarray
    source_tau: float = math.nan
    source_n: int = 2


@dataclass(frozen=True)
class ConcurrenceValue:
    """Concurrence together with the spin-flip spectrum that produced it.

    Attributes
    ----------
    value : float
        max(0, l1 - l2 - l3 - l4) in [0, 1].
    lambdas : tuple of float
        The four square-rooted eigenvalues l_j of rho * rho_tilde in
        decreasing order.
    """

    value: float
    lambdas: tuple[float, float, float, float]


def pair_density_matrix(e_abs2: float, n: int, *, source_tau: float = math.nan) -> PairState:
    """X-form two-qubit reduced state of the n-qubit shared excitation.

    Parameters
    ----------
    e_abs2 : float
        Survival probability |E|^2, in [0, 1].
    n : int
        Total number of qubits the pair belongs to, n >= 2.
    source_tau : float, optional
        Time label to carry along for reporting.

    Returns
    -------
    PairState

    Notes
    -----
    The excitation is shared evenly, so each single-excitation entry is
    |E|^2 / n and the double-excited population is exactly zero; the
    ground population 1 - 2 |E|^2 / n is nonnegative automatically.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"a pair needs n >= 2 qubits, got n={n!r}")
    e_abs2 = float(e_abs2)
    if not 0.0 <= e_abs2 <= 1.0:
        raise ValueError(f"e_abs2 must lie in [0, 1], got {e_abs2!r}")
    x = e_abs2 / n
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = rho[1, 2] = rho[2, 1] = rho[2, 2] = x
    rho[3, 3] = 1.0 - 2.0 * x
    return PairState(rho=rho, source_tau=float(source_tau), source_n=int(n))


def _psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    """Hermitian square root of a positive-semidefinite matrix."""
    w, v = np.linalg.eigh(matrix)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def wootters_concurrence(state: PairState | np.ndarray) -> ConcurrenceValue:
    """Concurrence of an arbitrary two-qubit state by the spin-flip recipe.

    Forms rho_tilde = (sigma_y x sigma_y) rho* (sigma_y x sigma_y),
    takes the square roots l1 >= l2 >= l3 >= l4 of the eigenvalues of
    rho rho_tilde, and returns max(0, l1 - l2 - l3 - l4).  The l_j are
    evaluated as the singular values of sqrt(rho_tilde) sqrt(rho) — the
    same numbers, but accurate to machine precision even when some
    vanish (a direct eigenvalue square root loses half the digits of
    the small ones).

    Parameters
    ----------
    state : PairState or array_like
        A :class:`PairState` or a raw 4x4 density matrix in the basis
        {|11>, |10>, |01>, |00>}.

    Raises
    ------
    ValueError
        If the spectrum of rho rho_tilde has a real part below -1e-8 or
        an imaginary part above 1e-8 — the input is not a valid state.
    """
    rho = state.rho if isinstance(state, PairState) else np.asarray(state, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    rho_tilde = _SY_SY @ rho.conj() @ _SY_SY
    eigs = np.linalg.eigvals(rho @ rho_tilde)
    if np.any(eigs.real < -_EIG_NEG_TOL) or np.any(np.abs(eigs.imag) > _EIG_IMAG_TOL):
        raise ValueError(
            f"spin-flip spectrum is not real-nonnegative ({eigs}); "
            "input is not a valid two-qubit density matrix")
    lam = np.linalg.svd(_psd_sqrt(rho_tilde) @ _psd_sqrt(rho), compute_uv=False)
    value = max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
    return ConcurrenceValue(value=float(value), lambdas=tuple(float(v) for v in lam))


def pair_concurrence_closed(params: SystemParams, tau):
    """Closed-form pairwise concurrence C_pair(tau) = 2 |E(tau)|^2 / n.

    Parameters
    ----------
    params : SystemParams
        Requires n >= 2.
    tau : float or array_like
        Nonnegative dimensionless time(s).

    Returns
    -------
    float or ndarray
        Values in [0, 2/n]; equal to 1 only for n = 2 at |E| = 1.
    """
    if params.n < 2:
        raise ValueError(f"pairwise concurrence needs n >= 2, got n={params.n}")
    e = amplitude_analytic(params, tau)
    return (2.0 / params.n) * np.abs(e) ** 2


def delta_concurrence(params_base: SystemParams, delta: float, tau):
    """Detuning gain Delta C(tau) = C_pair(tau; delta) - C_pair(tau; 0).

    Both evaluations share every parameter of `params_base` except the
    detuning.  Positive values mean the detuning slows the entanglement
    loss at that instant.
    """
    detuned = replace(params_base, delta=float(delta))
    resonant = replace(params_base, delta=0.0)
    return pair_concurrence_closed(detuned, tau) - pair_concurrence_closed(resonant, tau)

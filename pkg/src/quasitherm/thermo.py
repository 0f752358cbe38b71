"""Quasistationary thermodynamics: rate ratio, geometric Floquet-state
distribution, quasitemperature, and the steady-state dissipation rate.

All rates are expressed in units of c*J0 (c absorbs the coupling constant,
mass and auxiliary frequency), and the dissipation components are scaled by
the reference rate R0 = hbar*omega*c*J0*sum_l |v^(l)|^2, so no dimensional
constant ever needs a numerical value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bath import (FREQ_GUARD, BathModel, occupation_array, spectral_density)
from .errors import (BorderDivergence, DegenerateDenominator, InfiniteQuasitemp,
                     InvariantViolation, NonNormalizable, QuasithermallyUnstable)
from .modes import FloquetMode

#: r within this distance of 1 counts as an infinite quasitemperature
UNITY_TOL = 1e-12


@dataclass(frozen=True)
class QuasiSteadyState:
    """Scaled observables of the quasistationary state at one sweep point."""

    r: float                        # upward/downward rate ratio
    inv_quasitemp: float            # hbar*omega/(kB*tau) = -(omega/nu) ln r
    p0_ratio: float | None          # p0/P0, defined for r < 1
    r1_scaled: float | None         # R1/R0
    r2_scaled: float | None         # R2/R0
    r_scaled: float | None          # R/R0 = R1/R0 + R2/R0
    quasithermally_stable: bool     # r < 1
    flags: tuple[str, ...] = ()


def _rate_sums(mode: FloquetMode, bath: BathModel) -> tuple[float, float]:
    """Numerator and denominator of the rate ratio, in units of c*J0."""
    freqs = mode.frequencies
    weights = mode.weights
    j = spectral_density(np.abs(freqs), bath) / bath.j0
    up = float(np.sum(weights * occupation_array(freqs, bath.beta) * j))
    down = float(np.sum(weights * occupation_array(-freqs, bath.beta) * j))
    return up, down


def _min_ladder_gap(mode: FloquetMode) -> float:
    return float(np.abs(mode.frequencies).min())


def rate_ratio(mode: FloquetMode, bath: BathModel, *,
               border_limit: bool = False) -> float:
    """Ratio r of upward to downward transition rates.

    When a ladder frequency nu + l*omega falls inside the zero-frequency
    guard band the occupations diverge; border_limit=True returns the exact
    limit r -> 1 instead of raising BorderDivergence.
    """
    if _min_ladder_gap(mode) < FREQ_GUARD:
        if border_limit:
            # both sums are exhausted by the diverging term: N(0+)/(N(0+)+1) -> 1
            return 1.0
        raise BorderDivergence(
            f"ladder frequency within {FREQ_GUARD:.0e} of zero "
            f"(nu = {mode.nu}); enable border_limit to take the limit")
    up, down = _rate_sums(mode, bath)
    if not (down > 0.0) or not (up > 0.0):
        raise DegenerateDenominator(
            f"rate sums underflowed (up = {up}, down = {down}); "
            "the spectral density misses every ladder frequency")
    return up / down


def quasitemperature(r: float, nu: float, beta: float) -> float:
    """Scaled inverse quasitemperature hbar*omega/(kB*tau) = -(omega/nu) ln r.

    Negative values (r > 1) signal quasithermal instability. beta enters
    only through the caller's convention that the result is comparable to
    beta*hbar*omega; it is accepted to make the equilibrium identity
    quasitemperature(exp(-beta*Omega0), Omega0, beta) == beta explicit.
    """
    if not (r > 0.0):
        raise ValueError(f"r must be positive (got {r})")
    if abs(r - 1.0) < UNITY_TOL:
        raise InfiniteQuasitemp(f"|r - 1| = {abs(r - 1.0):.3e}")
    return -math.log(r) / nu


def distribution(r: float, n_max: int) -> np.ndarray:
    """Geometric Floquet-state occupation probabilities p_n = (1 - r) r^n."""
    if r >= 1.0:
        raise QuasithermallyUnstable(f"r = {r} >= 1")
    if not (0.0 < r):
        raise ValueError(f"r must be in (0, 1) (got {r})")
    return (1.0 - r) * r ** np.arange(n_max + 1)


def p0_ratio(r: float, beta: float, a: float) -> float:
    """Occupation of the n = 0 Floquet state relative to the undriven
    ground-state occupation: (1 - r) / (1 - exp(-beta*Omega0))."""
    if r >= 1.0:
        raise QuasithermallyUnstable(f"r = {r} >= 1")
    omega0 = 0.5 * math.sqrt(a)
    return (1.0 - r) / -math.expm1(-beta * omega0)


def transition_rates(mode: FloquetMode, bath: BathModel,
                     n: int) -> tuple[float, float]:
    """Ladder rates (Gamma_{n+1,n}, Gamma_{n,n+1}) in units of c*J0.

    Both are proportional to n + 1; their ratio is the n-independent r.
    The underlying coupling is dipole-like, so only |m - n| = 1 transitions
    exist (see rate_matrix for the explicit tridiagonal structure).
    """
    if _min_ladder_gap(mode) < FREQ_GUARD:
        raise BorderDivergence(f"ladder frequency within {FREQ_GUARD:.0e} of zero")
    up, down = _rate_sums(mode, bath)
    return (n + 1) * up, (n + 1) * down


def rate_matrix(mode: FloquetMode, bath: BathModel, n_max: int) -> np.ndarray:
    """Full transition-rate matrix Gamma[f, i] on the truncated ladder.

    Tridiagonal by construction: the dipole matrix element connects only
    neighboring Floquet states."""
    gamma = np.zeros((n_max + 1, n_max + 1))
    for n in range(n_max):
        up, down = transition_rates(mode, bath, n)
        gamma[n + 1, n] = up
        gamma[n, n + 1] = down
    return gamma


def stationary_solver(up_rates: np.ndarray, down_rates: np.ndarray,
                      n_max: int) -> np.ndarray:
    """Fixed point of the Pauli master equation on a truncated ladder.

    up_rates[n] = Gamma_{n+1,n} and down_rates[n] = Gamma_{n,n+1} for
    n = 0..n_max-1, with reflecting truncation at n_max. Solves by the
    detailed-balance recursion p_{n+1} = p_n * up[n]/down[n], normalizes,
    and verifies the per-row balance residual.
    """
    up = np.asarray(up_rates, dtype=float)
    down = np.asarray(down_rates, dtype=float)
    if up.shape != (n_max,) or down.shape != (n_max,):
        raise ValueError(f"rate arrays must have length n_max = {n_max}")
    ratios = up / down
    if np.any(ratios >= 1.0):
        raise NonNormalizable(f"max up/down ratio {ratios.max()} >= 1")
    p = np.empty(n_max + 1)
    p[0] = 1.0
    p[1:] = np.cumprod(ratios)
    p /= p.sum()

    # per-row residual of the balance equation, relative to the largest flux
    flux = up * p[:-1] - down * p[1:]
    scale = max((up * p[:-1]).max(), (down * p[1:]).max())
    residual = np.abs(np.diff(flux, prepend=0.0, append=0.0)).max()
    if residual > 1e-12 * scale:
        raise InvariantViolation(
            f"master-equation residual {residual / scale:.3e} > 1e-12")
    return p


def dissipation(mode: FloquetMode, bath: BathModel,
                r: float) -> tuple[float, float, float]:
    """Scaled dissipation components (R1/R0, R2/R0, R/R0).

    R1 carries the r/(1-r) prefactor and no occupation numbers; R2 carries
    the occupation numbers and no r. Their sum is the net rate of energy
    flow into the bath, positive for any quasistationary state (0 < r < 1)
    and divergent toward the quasithermal border r -> 1.
    """
    if r >= 1.0:
        raise QuasithermallyUnstable(f"r = {r} >= 1: dissipation diverges")
    freqs = mode.frequencies
    weights = mode.weights
    j = spectral_density(np.abs(freqs), bath) / bath.j0
    norm = float(np.sum(weights))  # R0 / (hbar * omega * c * J0), omega = 1
    s1 = float(np.sum(np.abs(freqs) * weights * j))
    s2 = -float(np.sum(freqs * weights * occupation_array(freqs, bath.beta) * j))
    r1 = (r / (1.0 - r)) * s1 / norm
    r2 = s2 / norm
    return r1, r2, r1 + r2


def steady_state(mode: FloquetMode, bath: BathModel, a: float, *,
                 border_limit: bool = True) -> QuasiSteadyState:
    """Assemble the full QuasiSteadyState at one stable sweep point.

    Border and instability conditions are mapped to flags rather than
    exceptions so sweeps can record every grid point.
    """
    flags: list[str] = []
    if _min_ladder_gap(mode) < FREQ_GUARD:
        if not border_limit:
            raise BorderDivergence("ladder frequency inside the guard band")
        flags.append("border_limit")
        r = 1.0
        inv_qt = 0.0
    else:
        r = rate_ratio(mode, bath)
        try:
            inv_qt = quasitemperature(r, mode.nu, bath.beta)
        except InfiniteQuasitemp:
            flags.append("infinite_quasitemp")
            inv_qt = 0.0

    stable = r < 1.0
    if r > 1.0:
        flags.append("quasithermally_unstable")
    if stable and abs(r - 1.0) >= UNITY_TOL:
        p0 = p0_ratio(r, bath.beta, a)
        r1, r2, rtot = dissipation(mode, bath, r)
    else:
        p0 = r1 = r2 = rtot = None
    return QuasiSteadyState(r=r, inv_quasitemp=inv_qt, p0_ratio=p0,
                            r1_scaled=r1, r2_scaled=r2, r_scaled=rtot,
                            quasithermally_stable=stable, flags=tuple(flags))

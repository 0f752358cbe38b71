"""Floquet-mode extraction: canonical characteristic exponent, periodic part,
Fourier coefficients, and the quasienergy ladder.

The canonical exponent is the member of the class {nu + m*omega} whose
periodic part has a T-periodic phase function. It equals the phase integral

    nu = (1/T) * integral_0^T  Omega / |xi(t)|^2  dt  =  Delta(phi) / T,

which is evaluated here exactly as the accumulated phase advance of the
samples plus the multiplier phase closing the period (each per-interval
advance is below pi on any resolving grid, so the winding count is exact).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (InvariantViolation, PeriodicityViolation,
                     QuadratureFailure, TailNotConverged)
from .hill import (DEFAULT_SAMPLES, DEFAULT_TOL, SpringParams, Trajectory,
                   integrate_basis, stable_trajectory)

TWO_PI = 2.0 * math.pi

#: relative Fourier tail mass allowed outside the retained window [-L, L]
TAIL_TOL = 1e-12
#: grid doubling stops here (2**16 samples per period)
MAX_SAMPLES = 1 << 16


@dataclass(frozen=True)
class FloquetMode:
    """Canonical exponent with the truncated Fourier data of the periodic part.

    The overall phase of the coefficients inherits the (physically
    irrelevant) phase convention of the trajectory at t = 0; it is left
    arbitrary because every downstream observable uses |v^(l)|^2 only.
    """

    nu: float                   # canonical exponent, units of omega
    ells: np.ndarray            # integer harmonic indices, ascending
    coefficients: np.ndarray    # complex v^(l), aligned with ells
    wronskian: float
    tail_mass: float            # relative power outside the retained window
    winding: int                # integer offset between nu*T and the multiplier angle

    @property
    def weights(self) -> np.ndarray:
        """|v^(l)|^2, the only combination entering rates."""
        return np.abs(self.coefficients) ** 2

    @property
    def frequencies(self) -> np.ndarray:
        """Ladder frequencies nu + l*omega for the retained harmonics."""
        return self.nu + self.ells

    def coefficient(self, ell: int) -> complex:
        idx = np.searchsorted(self.ells, ell)
        if idx >= self.ells.size or self.ells[idx] != ell:
            return 0.0 + 0.0j
        return complex(self.coefficients[idx])


@dataclass(frozen=True)
class QuasienergyLadder:
    """Quasienergies (n + 1/2)*nu in units of hbar*omega, n = 0..n_max."""

    unfolded: np.ndarray
    folded: np.ndarray          # canonical representatives, mod 1


def canonical_exponent(traj: Trajectory) -> float:
    """Canonical characteristic exponent from the phase integral.

    The accumulated sample-to-sample phase advances recover the full winding
    of xi over one period; the multiplier closes the last interval, so the
    result is consistent with the monodromy eigenphase by construction.
    """
    moduli = np.abs(traj.xi)
    if moduli.min() < 1e-12:
        raise QuadratureFailure(
            f"|xi| collapsed to {moduli.min():.3e} on the grid")
    steps = np.angle(traj.xi[1:] / traj.xi[:-1])
    closing = np.angle(traj.multiplier * traj.xi[0] / traj.xi[-1])
    nu = (steps.sum() + closing) / traj.period
    if nu <= 0.0:
        raise QuadratureFailure(f"non-positive exponent {nu}")
    return float(nu)


def check_branch_assignment(params: SpringParams, nu: float) -> bool:
    """Check nu against the closed-form q = 0 branch assignment.

    With l0 = int(Omega0/omega) and theta the multiplier angle in (0, pi),
    the canonical exponent of the undriven oscillator is l0 + theta/(2*pi)
    when frac(Omega0/omega) < 1/2 and l0 + 1 - theta/(2*pi) when it exceeds
    1/2. Half-integer (and integer) Omega0/omega sits on a collision of
    multipliers and is rejected.
    """
    if params.q != 0.0:
        raise ValueError("branch assignment is defined at q = 0 only")
    ratio = params.omega0  # omega = 1
    ell0 = int(ratio)
    frac = ratio - ell0
    if min(frac, abs(frac - 0.5), 1.0 - frac) < 1e-12:
        return False  # multiplier collision: no stable branch to check
    theta = math.acos(max(-1.0, min(1.0, math.cos(TWO_PI * ratio))))
    if frac < 0.5:
        expected = ell0 + theta / TWO_PI
    else:
        expected = ell0 + 1.0 - theta / TWO_PI
    return abs(nu - expected) <= 1e-8 * max(1.0, abs(nu))


def periodic_part(traj: Trajectory, nu: float) -> np.ndarray:
    """Sampled periodic part v(t_k) = xi(t_k) * exp(-i*nu*t_k).

    Raises PeriodicityViolation when v fails to close over one period,
    which signals a non-canonical exponent.
    """
    v = traj.xi * np.exp(-1j * nu * traj.times)
    # v(T-) extrapolates to multiplier * exp(-i*nu*T) * v(0)
    closure = traj.multiplier * cmath.exp(-1j * nu * traj.period)
    mismatch = abs(v[0] * (1.0 - closure))
    if mismatch > 1e-8 * np.abs(v).max():
        raise PeriodicityViolation(
            f"endpoint mismatch {mismatch:.3e}; exponent not canonical?")
    return v


def fourier_coefficients(v: np.ndarray,
                         tail_tol: float = TAIL_TOL) -> tuple[np.ndarray, np.ndarray, float]:
    """Truncated Fourier coefficients of the sampled periodic part.

    Normalization: v(t_k) = sum_l exp(i*l*omega*t_k) v^(l). The window
    [-L, L] is the smallest one whose relative tail mass drops below
    tail_tol; TailNotConverged asks the caller to double the grid.
    Returns (ells, coefficients, tail_mass).
    """
    n = v.size
    if n & (n - 1):
        raise ValueError(f"sample count must be a power of two (got {n})")
    coef = np.fft.fft(v) / n
    ells = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    power = np.abs(coef) ** 2
    total = power.sum()

    by_abs_ell = np.zeros(n // 2 + 1)
    np.add.at(by_abs_ell, np.abs(ells), power)
    tails = 1.0 - np.cumsum(by_abs_ell) / total
    # admissible windows stop at L = n/2 - 1 (the Nyquist bin is excluded)
    candidates = np.nonzero(tails[: n // 2] <= tail_tol)[0]
    if candidates.size == 0:
        raise TailNotConverged(
            f"tail mass {tails[n // 2 - 1]:.3e} > {tail_tol:.1e} at L = {n // 2 - 1}")
    L = int(candidates[0])

    keep = np.abs(ells) <= L
    order = np.argsort(ells[keep])
    return ells[keep][order], coef[keep][order], float(max(tails[L], 0.0))


def build_mode(traj: Trajectory, tail_tol: float = TAIL_TOL) -> FloquetMode:
    """Assemble a FloquetMode from a sampled trajectory."""
    nu = canonical_exponent(traj)
    v = periodic_part(traj, nu)
    ells, coef, tail = fourier_coefficients(v, tail_tol)
    _check_parseval(v, coef)
    theta = np.angle(traj.multiplier)  # signed, in (-pi, pi]
    winding = round((nu * traj.period - theta) / TWO_PI)
    return FloquetMode(nu=nu, ells=ells, coefficients=coef,
                       wronskian=traj.wronskian, tail_mass=tail,
                       winding=int(winding))


def _check_parseval(v: np.ndarray, coef: np.ndarray) -> None:
    # truncated coefficients carry all but the tail mass (<= tail_tol)
    total = np.mean(np.abs(v) ** 2)
    kept = np.sum(np.abs(coef) ** 2)
    if abs(kept - total) > 1e-10 * total:
        raise InvariantViolation(
            f"Parseval mismatch {abs(kept - total) / total:.3e} > 1e-10")


def solve_mode(params: SpringParams, tol: float = DEFAULT_TOL,
               n_samples: int = DEFAULT_SAMPLES,
               tail_tol: float = TAIL_TOL, monodromy=None):
    """One-stop pipeline: monodromy, trajectory and mode at (a, q).

    Doubles the sampling grid (up to MAX_SAMPLES) whenever the Fourier tail
    criterion fails. Returns (monodromy, trajectory, mode).
    """
    if monodromy is None:
        monodromy = integrate_basis(params, tol)
    while True:
        traj = stable_trajectory(params, monodromy, n_samples, tol)
        try:
            return monodromy, traj, build_mode(traj, tail_tol)
        except TailNotConverged:
            n_samples *= 2
            if n_samples > MAX_SAMPLES:
                raise


def quasienergies(nu: float, n_max: int) -> QuasienergyLadder:
    """Quasienergy ladder (n + 1/2)*nu, unfolded and folded mod hbar*omega."""
    if nu <= 0.0:
        raise ValueError(f"nu must be positive (got {nu})")
    n = np.arange(n_max + 1)
    unfolded = nu * (n + 0.5)
    return QuasienergyLadder(unfolded=unfolded, folded=np.mod(unfolded, 1.0))

"""Bath side of the problem: thermal occupation factors and the two spectral
density families (power-law and Gaussian).

Frequencies are in units of the drive frequency omega; beta is the
dimensionless inverse bath temperature beta*hbar*omega. The amplitude j0
cancels in the rate ratio and enters only the R/R0 normalization, so it
defaults to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NearZeroFrequency

#: occupation numbers are refused closer to zero frequency than this
FREQ_GUARD = 1e-9


@dataclass(frozen=True)
class PowerLawDensity:
    """J(w) = j0 * (w / omega0)**s for w >= 0 (s = 1 is the Ohmic case)."""

    s: float
    omega0: float = 1.0

    def __post_init__(self):
        if not (self.s > 0.0):
            raise ValueError(f"exponent s must be positive (got {self.s})")
        if not (self.omega0 > 0.0):
            raise ValueError(f"omega0 must be positive (got {self.omega0})")

    def profile(self, abs_omega):
        return (np.asarray(abs_omega) / self.omega0) ** self.s


@dataclass(frozen=True)
class GaussianDensity:
    """J(w) = j0 * exp(-(w - omega0)**2 / delta_sq), a structured bath window."""

    omega0: float
    delta_sq: float

    def __post_init__(self):
        if not (self.omega0 >= 0.0):
            raise ValueError(f"center omega0 must be >= 0 (got {self.omega0})")
        if not (self.delta_sq > 0.0):
            raise ValueError(f"squared width must be positive (got {self.delta_sq})")

    def profile(self, abs_omega):
        w = np.asarray(abs_omega)
        return np.exp(-((w - self.omega0) ** 2) / self.delta_sq)


@dataclass(frozen=True)
class BathModel:
    """Inverse temperature plus spectral-density specification."""

    beta: float
    density: PowerLawDensity | GaussianDensity
    j0: float = field(default=1.0)

    def __post_init__(self):
        if not (self.beta > 0.0):
            raise ValueError(f"beta must be positive (got {self.beta})")
        if not (self.j0 > 0.0):
            raise ValueError(f"j0 must be positive (got {self.j0})")


def occupation(omega_tilde: float, beta: float) -> float:
    """Thermal occupation factor N(w) of the bath transition at frequency w.

    Positive frequencies (system absorbs) give the Bose function
    1/(exp(beta*w) - 1); negative frequencies (system emits, phonon created)
    give 1/(1 - exp(beta*w)) = N(-w) + 1. The guard band around w = 0 is an
    explicit error: the divergence there is physical and is handled by the
    caller as a labeled border limit.
    """
    if abs(omega_tilde) < FREQ_GUARD:
        raise NearZeroFrequency(
            f"|omega| = {abs(omega_tilde):.3e} inside the {FREQ_GUARD:.0e} guard band")
    x = beta * omega_tilde
    # large |x| would overflow expm1; there N(|x|) = exp(-|x|) to all bits
    n_abs = math.exp(-abs(x)) if abs(x) > 700.0 else 1.0 / math.expm1(abs(x))
    return n_abs if x > 0.0 else n_abs + 1.0


def occupation_array(omega_tilde: np.ndarray, beta: float) -> np.ndarray:
    """Vectorized occupation factors; caller guarantees the guard band."""
    x = beta * np.abs(omega_tilde)
    n_abs = np.where(x > 700.0, np.exp(-x), 1.0 / np.expm1(np.minimum(x, 700.0)))
    return np.where(omega_tilde > 0.0, n_abs, n_abs + 1.0)


def spectral_density(abs_omega, model: BathModel):
    """Spectral density J(|w|) >= 0; accepts scalars or arrays."""
    return model.j0 * model.density.profile(abs_omega)


def bath_from_config(fragment: dict) -> BathModel:
    """Build a BathModel from its JSON fragment.

    Expected shape: {"beta": 1.0, "density": {"type": "power", "s": 1.0,
    "omega0": 1.0}} or {"type": "gaussian", "omega0": 3.2, "delta_sq": 0.1},
    with an optional top-level "j0".
    """
    if not isinstance(fragment, dict):
        raise ConfigError(f"bath fragment must be an object, got {type(fragment).__name__}")
    try:
        beta = float(fragment["beta"])
        spec = dict(fragment["density"])
        kind = spec.pop("type")
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed bath fragment: {exc}") from exc
    try:
        if kind == "power":
            density = PowerLawDensity(**spec)
        elif kind == "gaussian":
            density = GaussianDensity(**spec)
        else:
            raise ConfigError(f"unknown density type {kind!r}")
        return BathModel(beta=beta, density=density,
                         j0=float(fragment.get("j0", 1.0)))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad bath parameters: {exc}") from exc


def bath_to_config(model: BathModel) -> dict:
    if isinstance(model.density, PowerLawDensity):
        density = {"type": "power", "s": model.density.s,
                   "omega0": model.density.omega0}
    else:
        density = {"type": "gaussian", "omega0": model.density.omega0,
                   "delta_sq": model.density.delta_sq}
    return {"beta": model.beta, "density": density, "j0": model.j0}

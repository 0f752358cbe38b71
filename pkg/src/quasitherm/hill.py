"""Classical Hill/Mathieu layer: one-period integration, monodromy matrix,
mechanical stability classification, and the stable complex Floquet
trajectory.

Working units throughout the package: drive frequency omega = 1 (so the
period is T = 2*pi) and hbar = 1. The dimensionless drive parameters are

    a = 4*Omega0^2/omega^2,   q = 2*Omega1^2/omega^2,

for the spring coefficient k(t)/M = Omega0^2 - Omega1^2*cos(omega*t), i.e.
k(t)/M = a/4 - (q/2)*cos(t) in working units.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .errors import InvariantViolation, NotStable, WronskianDegenerate

TWO_PI = 2.0 * math.pi

#: points closer than this to |trace| = 2 are classified unstable
BORDER_TOL = 1e-10
#: |2 - |trace|| below this raises the near-border flag
NEAR_BORDER_BAND = 1e-6
#: default adaptive tolerance (absolute and relative)
DEFAULT_TOL = 1e-12
#: default number of trajectory samples per period
DEFAULT_SAMPLES = 1024


@dataclass(frozen=True)
class SpringParams:
    """Dimensionless Mathieu drive parameters (a, q)."""

    a: float
    q: float

    def __post_init__(self):
        if not (self.a > 0.0):
            raise ValueError(f"a must be positive (got {self.a})")
        if not (self.q >= 0.0):
            raise ValueError(f"q must be non-negative (got {self.q})")

    @property
    def omega0(self) -> float:
        """Undriven oscillator frequency, Omega0 = sqrt(a)/2 in units of omega."""
        return 0.5 * math.sqrt(self.a)

    def coefficient(self, t):
        """Spring coefficient k(t)/M = a/4 - (q/2) cos(t)."""
        return 0.25 * self.a - 0.5 * self.q * np.cos(t)


class Stability(enum.Enum):
    STABLE = "stable"
    COLLISION_PLUS = "unstable_collision_plus"    # multipliers meet at +1
    COLLISION_MINUS = "unstable_collision_minus"  # multipliers meet at -1


@dataclass(frozen=True)
class Monodromy:
    """One-period evolution matrix of the basis pair with classification."""

    matrix: np.ndarray          # real 2x2
    classification: Stability
    near_border: bool

    @property
    def trace(self) -> float:
        return float(self.matrix[0, 0] + self.matrix[1, 1])

    @property
    def det(self) -> float:
        m = self.matrix
        return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])

    @property
    def stable(self) -> bool:
        return self.classification is Stability.STABLE

    def angle(self) -> float:
        """Multiplier angle theta in (0, pi); eigenvalues are exp(+-i*theta)."""
        if not self.stable:
            raise NotStable(f"no multiplier angle, trace = {self.trace}")
        return math.acos(0.5 * self.trace)


@dataclass(frozen=True)
class Trajectory:
    """Stable complex Floquet trajectory sampled on a uniform period grid.

    xi(t + T) = multiplier * xi(t); the Wronskian Im(xi_dot * conj(xi)) is
    positive and constant along the samples.
    """

    times: np.ndarray           # N points over [0, T)
    xi: np.ndarray              # complex
    xi_dot: np.ndarray          # complex
    wronskian: float
    multiplier: complex
    period: float = field(default=TWO_PI)

    @property
    def n_samples(self) -> int:
        return self.times.size


def _classify(matrix: np.ndarray) -> tuple[Stability, bool]:
    trace = matrix[0, 0] + matrix[1, 1]
    near = abs(2.0 - abs(trace)) < NEAR_BORDER_BAND
    if abs(trace) >= 2.0 - BORDER_TOL:
        kind = Stability.COLLISION_PLUS if trace > 0 else Stability.COLLISION_MINUS
        return kind, near
    return Stability.STABLE, near


def integrate_basis(params: SpringParams, tol: float = DEFAULT_TOL) -> Monodromy:
    """Integrate the basis pair over one period and classify stability.

    tol is used as both relative and absolute tolerance of the adaptive
    integrator. Raises IntegrationFailure if step control fails and
    InvariantViolation if the unit-determinant invariant degrades beyond
    100*tol.
    """
    if not (1e-14 <= tol <= 1e-6):
        raise ValueError(f"tol out of range [1e-14, 1e-6]: {tol}")
    matrix, _, _ = kernel.hill_basis(params.a, params.q, tol, tol, 0)
    _check_det(matrix, tol, params)
    kind, near = _classify(matrix)
    return Monodromy(matrix=matrix, classification=kind, near_border=near)


def _check_det(matrix: np.ndarray, tol: float, params: SpringParams) -> None:
    det = matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0]
    if abs(det - 1.0) > 100.0 * tol:
        raise InvariantViolation(
            f"|det M - 1| = {abs(det - 1.0):.3e} > {100.0 * tol:.1e} "
            f"at (a={params.a}, q={params.q})")


def stable_trajectory(params: SpringParams, monodromy: Monodromy,
                      n_samples: int = DEFAULT_SAMPLES,
                      tol: float = DEFAULT_TOL) -> Trajectory:
    """Sample the stable complex Floquet trajectory on a uniform grid.

    The trajectory is the eigenvector combination of the basis pair,
    normalized to xi(0) = 1, with the conjugate branch chosen whenever the
    raw Wronskian comes out negative. Grid values are exact integrator
    outputs (forced step endpoints / dense output), not interpolants.
    """
    if n_samples < 256 or n_samples & (n_samples - 1):
        raise ValueError(f"n_samples must be a power of two >= 256 "
                         f"(got {n_samples})")
    if not monodromy.stable:
        raise NotStable(
            f"(a={params.a}, q={params.q}): |trace| = {abs(monodromy.trace)} >= 2")

    m = monodromy.matrix
    theta = monodromy.angle()
    multiplier = complex(0.5 * monodromy.trace, math.sin(theta))
    # eigenvector (1, c) of M for the multiplier; m12 != 0 for any stable M
    c = (multiplier - m[0, 0]) / m[0, 1]
    if c.imag < 0.0:
        c = c.conjugate()
        multiplier = multiplier.conjugate()

    _, samples, _ = kernel.hill_basis(params.a, params.q, tol, tol, n_samples)
    xi = samples[:, 0] + c * samples[:, 2]
    xi_dot = samples[:, 1] + c * samples[:, 3]

    wr = np.imag(xi_dot * np.conj(xi))
    wronskian = float(wr.mean())
    if abs(wronskian) < 1e-12:
        raise WronskianDegenerate(
            f"|Omega| = {abs(wronskian):.3e} at (a={params.a}, q={params.q})")
    drift = (wr.max() - wr.min()) / abs(wronskian)
    if drift > 1e-9:
        raise InvariantViolation(
            f"Wronskian drift {drift:.3e} > 1e-9 at (a={params.a}, q={params.q})")

    times = np.arange(n_samples) * (TWO_PI / n_samples)
    return Trajectory(times=times, xi=xi, xi_dot=xi_dot,
                      wronskian=wronskian, multiplier=multiplier)


def integrate_basis_spring(spring, period: float,
                           tol: float = DEFAULT_TOL) -> np.ndarray:
    """One-period matrix for an arbitrary T-periodic spring coefficient.

    Internal cross-check path (pure-Python kernel only); the CLI exposes the
    Mathieu spring exclusively.
    """
    matrix, _, _ = kernel.hill_basis_spring(spring, period, tol, tol, 0)
    return matrix

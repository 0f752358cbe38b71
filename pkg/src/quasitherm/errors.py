"""Exception hierarchy. Every failure mode of the pipeline raises a distinct
subclass of QuasithermError so callers (sweep, CLI) can map them to flags,
error columns and exit codes."""


class QuasithermError(Exception):
    """Base class for all package errors."""


class ConfigError(QuasithermError):
    """Malformed configuration (bad JSON, bad ranges, unknown keys)."""


class IntegrationFailure(QuasithermError):
    """Adaptive step control could not meet the requested tolerance."""


class InvariantViolation(QuasithermError):
    """A numerical invariant (determinant, Wronskian drift, Parseval,
    master-equation residual) exceeded its tolerance."""


class NotStable(QuasithermError):
    """A stable Floquet mode was requested at a mechanically unstable point."""


class WronskianDegenerate(QuasithermError):
    """The complex trajectory collapsed onto a real solution (|Omega| ~ 0)."""


class QuadratureFailure(QuasithermError):
    """A trajectory sample has near-zero modulus; the phase integral is
    ill-defined (signals upstream corruption, cannot occur for stable modes)."""


class PeriodicityViolation(QuasithermError):
    """Periodic part fails to close after one period (non-canonical exponent)."""


class TailNotConverged(QuasithermError):
    """Fourier tail mass above threshold even at the maximal harmonic order;
    the sampling grid must be doubled."""


class NearZeroFrequency(QuasithermError):
    """Occupation number requested inside the guard band around zero frequency."""


class BorderDivergence(QuasithermError):
    """A ladder frequency fell inside the zero-frequency guard band and the
    caller did not opt into border-limit mode."""


class DegenerateDenominator(QuasithermError):
    """The downward-rate sum underflowed (spectral density misses every
    ladder frequency)."""


class InfiniteQuasitemp(QuasithermError):
    """Rate ratio is unity within tolerance; the quasitemperature diverges."""


class QuasithermallyUnstable(QuasithermError):
    """Upward rates exceed downward rates (r >= 1); no normalizable
    quasistationary distribution exists."""


class NonNormalizable(QuasithermError):
    """Detailed-balance recursion grows; the truncated ladder populations
    cannot be normalized."""


class NoCrossing(QuasithermError):
    """The requested target value is never bracketed on the sweep grid."""

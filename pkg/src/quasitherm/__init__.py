"""Quasistationary Floquet-state thermodynamics of the parametrically driven
harmonic oscillator.

The pipeline runs in working units omega = 1, T = 2*pi, hbar = 1:

    hill    -- one-period integration of the Mathieu basis pair, monodromy
               matrix, stability classification, stable complex trajectory;
    modes   -- canonical characteristic exponent, periodic part, Fourier
               coefficients, quasienergy ladder;
    bath    -- occupation factors and spectral densities (power-law, Gaussian);
    thermo  -- rate ratio, geometric Floquet-state distribution,
               quasitemperature, scaled dissipation rates;
    sweep   -- q-sweeps, CSV serialization, border/crossing location;
    kernel  -- compiled (Cython) or pure-Python integration backend.
"""

from .bath import (BathModel, GaussianDensity, PowerLawDensity, occupation,
                   spectral_density)
from .hill import (Monodromy, SpringParams, Stability, Trajectory,
                   integrate_basis, stable_trajectory)
from .modes import (FloquetMode, QuasienergyLadder, build_mode,
                    canonical_exponent, check_branch_assignment,
                    fourier_coefficients, periodic_part, quasienergies,
                    solve_mode)
from .sweep import (SweepConfig, SweepRow, locate_borders, locate_crossings,
                    rows_to_csv, run_sweep)
from .thermo import (QuasiSteadyState, dissipation, distribution, p0_ratio,
                     quasitemperature, rate_matrix, rate_ratio,
                     stationary_solver, steady_state, transition_rates)

__version__ = "0.1.0"

__all__ = [
    "BathModel", "FloquetMode", "GaussianDensity", "Monodromy",
    "PowerLawDensity", "QuasiSteadyState", "QuasienergyLadder", "SpringParams",
    "Stability", "SweepConfig", "SweepRow", "Trajectory", "__version__",
    "build_mode", "canonical_exponent", "check_branch_assignment",
    "dissipation", "distribution", "fourier_coefficients", "integrate_basis",
    "locate_borders", "locate_crossings", "occupation", "p0_ratio",
    "periodic_part", "quasienergies", "quasitemperature", "rate_matrix",
    "rate_ratio", "rows_to_csv", "run_sweep", "solve_mode", "spectral_density",
    "stable_trajectory", "stationary_solver", "steady_state",
    "transition_rates",
]

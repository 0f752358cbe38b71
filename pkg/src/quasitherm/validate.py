"""Self-contained invariant suite behind the `validate` CLI subcommand.

Each check exercises one structural property of the pipeline (determinant,
Wronskian drift, Parseval, scaling invariance, occupation identity,
tridiagonality, equilibrium limits, positivity, fixed-point equivalence)
and reports pass/fail with a measured worst case.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .bath import BathModel, GaussianDensity, PowerLawDensity, occupation
from .errors import QuasithermError
from .hill import SpringParams, integrate_basis, stable_trajectory
from .modes import build_mode, solve_mode
from .sweep import locate_borders
from .thermo import (dissipation, distribution, p0_ratio, quasitemperature,
                     rate_matrix, rate_ratio, stationary_solver,
                     transition_rates)

#: representative sweep points (a, q) covering both stability zones of a = 8
PROBE_POINTS = ((8.0, 0.0), (8.0, 1.0), (8.0, 3.0), (8.0, 5.0), (8.0, 6.4),
                (8.0, 9.0), (8.0, 9.9), (8.2, 5.0), (8.2, 9.4), (2.0, 1.0),
                (12.5, 4.0))

PROBE_BATHS = (
    BathModel(beta=1.0, density=PowerLawDensity(s=0.5)),
    BathModel(beta=1.0, density=PowerLawDensity(s=1.0)),
    BathModel(beta=1.0, density=PowerLawDensity(s=2.0)),
    BathModel(beta=1.0, density=GaussianDensity(omega0=3.2, delta_sq=0.1)),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _stable_probes():
    for a, q in PROBE_POINTS:
        params = SpringParams(a, q)
        monodromy = integrate_basis(params)
        if monodromy.stable:
            yield params, monodromy


def check_determinant() -> CheckResult:
    worst = 0.0
    for a, q in PROBE_POINTS + ((8.0, 7.0), (8.0, 10.2)):  # unstable included
        monodromy = integrate_basis(SpringParams(a, q))
        worst = max(worst, abs(monodromy.det - 1.0))
    return CheckResult("determinant", worst <= 1e-9,
                       f"max |det M - 1| = {worst:.3e} (tol 1e-9)")


def check_wronskian_drift() -> CheckResult:
    worst = 0.0
    for params, monodromy in _stable_probes():
        traj = stable_trajectory(params, monodromy)
        drift = np.imag(traj.xi_dot * np.conj(traj.xi))
        worst = max(worst, (drift.max() - drift.min()) / abs(traj.wronskian))
    return CheckResult("wronskian_drift", worst <= 1e-9,
                       f"max relative drift = {worst:.3e} (tol 1e-9)")


def check_parseval() -> CheckResult:
    worst = 0.0
    for params, monodromy in _stable_probes():
        _, traj, mode = solve_mode(params, monodromy=monodromy)
        v = traj.xi * np.exp(-1j * mode.nu * traj.times)
        total = np.mean(np.abs(v) ** 2)
        kept = np.sum(mode.weights)
        worst = max(worst, abs(kept - total) / total)
    return CheckResult("parseval", worst <= 1e-10,
                       f"max relative mismatch = {worst:.3e} (tol 1e-10)")


def check_multiplier_consistency() -> CheckResult:
    worst = 0.0
    for params, monodromy in _stable_probes():
        _, traj, mode = solve_mode(params, monodromy=monodromy)
        worst = max(worst, abs(cmath.exp(1j * mode.nu * traj.period)
                               - traj.multiplier))
    return CheckResult("multiplier_consistency", worst <= 1e-8,
                       f"max |exp(i nu T) - multiplier| = {worst:.3e} (tol 1e-8)")


def check_scaling_invariance(seed: int = 83) -> CheckResult:
    """Multiplying xi by a complex constant must leave every observable alone."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    bath = PROBE_BATHS[1]
    for params, monodromy in list(_stable_probes())[:4]:
        _, traj, mode = solve_mode(params, monodromy=monodromy)
        base = _observables(mode, bath, params.a)
        for _ in range(2):
            c = rng.uniform(0.3, 3.0) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
            scaled_traj = replace(traj, xi=traj.xi * c, xi_dot=traj.xi_dot * c,
                                  wronskian=traj.wronskian * abs(c) ** 2)
            scaled = build_mode(scaled_traj)
            worst = max(worst, abs(scaled.nu - mode.nu) / mode.nu)
            worst = max(worst, abs(scaled.wronskian / mode.wronskian
                                   - abs(c) ** 2) / abs(c) ** 2)
            for x, y in zip(_observables(scaled, bath, params.a), base):
                # |y| can be an exact cancellation (R = 0 at q = 0); floor
                # the scale so the comparison stays meaningful there
                worst = max(worst, abs(x - y) / max(abs(y), 1.0))
    return CheckResult("scaling_invariance", worst <= 1e-12,
                       f"max relative change = {worst:.3e} (tol 1e-12)")


def _observables(mode, bath, a):
    r = rate_ratio(mode, bath)
    values = [r, quasitemperature(r, mode.nu, bath.beta)]
    if r < 1.0:
        values.append(p0_ratio(r, bath.beta, a))
        values.extend(dissipation(mode, bath, r))
    return values


def check_occupation_identity() -> CheckResult:
    worst = 0.0
    for beta in (0.1, 1.0, 5.0):
        for w in (1e-6, 0.1, 1.0, 2.414, 10.0):
            gap = abs(occupation(-w, beta) - occupation(w, beta) - 1.0)
            worst = max(worst, gap / max(occupation(w, beta), 1.0))
    return CheckResult("occupation_identity", worst <= 1e-13,
                       f"max |N(-w) - N(w) - 1| (rel) = {worst:.3e} (tol 1e-13)")


def check_tridiagonality() -> CheckResult:
    params = SpringParams(8.0, 3.0)
    _, _, mode = solve_mode(params)
    gamma = rate_matrix(mode, PROBE_BATHS[1], 8)
    off = gamma.copy()
    for n in range(8):
        off[n + 1, n] = 0.0
        off[n, n + 1] = 0.0
    worst = np.abs(off).max()
    return CheckResult("tridiagonality", worst == 0.0,
                       f"max rate outside |m - n| = 1: {worst:.3e} (tol 0)")


def check_equilibrium() -> CheckResult:
    params = SpringParams(8.0, 0.0)
    _, _, mode = solve_mode(params)
    worst = 0.0
    for bath in PROBE_BATHS:
        r = rate_ratio(mode, bath)
        worst = max(worst, abs(r - math.exp(-bath.beta * params.omega0)))
        worst = max(worst, abs(quasitemperature(r, mode.nu, bath.beta) - bath.beta))
        worst = max(worst, abs(p0_ratio(r, bath.beta, params.a) - 1.0))
        worst = max(worst, abs(dissipation(mode, bath, r)[2]))
    return CheckResult("equilibrium_limits", worst <= 1e-8,
                       f"max deviation at q = 0: {worst:.3e} (tol 1e-8)")


def check_border_symmetry() -> CheckResult:
    """r -> 1 at mechanical borders, independent of the density."""
    worst = 0.0
    borders = locate_borders(8.0, 6.3, 6.6) + locate_borders(8.0, 9.8, 10.1)
    for qb in borders:
        for dq in (-1e-3, 1e-3):
            params = SpringParams(8.0, qb + dq)
            monodromy = integrate_basis(params)
            if not monodromy.stable:
                continue
            _, _, mode = solve_mode(params, monodromy=monodromy)
            for bath in PROBE_BATHS[:3]:
                worst = max(worst, abs(rate_ratio(mode, bath) - 1.0))
    return CheckResult("border_symmetry", worst < 0.05,
                       f"max |r - 1| at 1e-3 from borders: {worst:.3e} (tol 0.05)")


def check_geometric_fixed_point() -> CheckResult:
    n_max = 200
    worst = 0.0
    bath = PROBE_BATHS[1]
    for a, q in ((8.0, 0.0), (8.0, 3.0), (8.2, 5.0)):
        _, _, mode = solve_mode(SpringParams(a, q))
        r = rate_ratio(mode, bath)
        rates = [transition_rates(mode, bath, n) for n in range(n_max)]
        up = np.array([u for u, _ in rates])
        down = np.array([d for _, d in rates])
        solved = stationary_solver(up, down, n_max)
        closed = distribution(r, n_max)
        half = n_max // 2
        rel = np.abs(solved[:half] - closed[:half]) / closed[:half]
        worst = max(worst, float(rel.max()))
    return CheckResult("geometric_fixed_point", worst <= 1e-10,
                       f"max relative gap (n <= n_max/2): {worst:.3e} (tol 1e-10)")


def draw_quasistable_sample(rng):
    """One random (params, mode, bath, r) with a stable mode and r < 1."""
    while True:
        params = SpringParams(rng.uniform(0.5, 16.0), rng.uniform(0.0, 12.0))
        try:
            monodromy = integrate_basis(params)
            if not monodromy.stable:
                continue
            _, _, mode = solve_mode(params, monodromy=monodromy)
            if rng.random() < 0.5:
                density = PowerLawDensity(s=rng.uniform(0.3, 2.5),
                                          omega0=rng.uniform(0.5, 2.0))
            else:
                density = GaussianDensity(omega0=rng.uniform(0.5, 4.0),
                                          delta_sq=rng.uniform(0.05, 1.0))
            bath = BathModel(beta=10.0 ** rng.uniform(-1.0, 0.7),
                             density=density, j0=10.0 ** rng.uniform(-1.0, 1.0))
            r = rate_ratio(mode, bath)
        except QuasithermError:
            continue
        if r < 1.0:
            return params, mode, bath, r


def check_positivity(count: int = 100, seed: int = 271) -> CheckResult:
    rng = np.random.default_rng(seed)
    min_rate = math.inf
    for _ in range(count):
        _, mode, bath, r = draw_quasistable_sample(rng)
        min_rate = min(min_rate, dissipation(mode, bath, r)[2])
    return CheckResult("dissipation_positivity", min_rate > 0.0,
                       f"min R/R0 over {count} random stable draws: {min_rate:.3e}")


ALL_CHECKS = (check_determinant, check_wronskian_drift, check_parseval,
              check_multiplier_consistency, check_scaling_invariance,
              check_occupation_identity, check_tridiagonality,
              check_equilibrium, check_border_symmetry,
              check_geometric_fixed_point, check_positivity)


def run_all() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]

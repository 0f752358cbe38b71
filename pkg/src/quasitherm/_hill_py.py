"""Pure-Python kernel: one-period integration of the Hill basis pair via
scipy's DOP853. Drop-in equivalent of the compiled kernel in _hill_fast,
selected automatically when the extension is unavailable (see kernel.py).

Also hosts the generic spring-function path used for internal cross-checks;
arbitrary Python callbacks cannot enter the compiled hot loop."""

from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import IntegrationFailure

NAME = "python"

TWO_PI = 2.0 * np.pi


def _mathieu_rhs(t, y, a4, q2):
    k = a4 - q2 * np.cos(t)
    return (y[1], -k * y[0], y[3], -k * y[2])


def hill_basis(a: float, q: float, rtol: float, atol: float,
               n_grid: int = 0) -> tuple[np.ndarray, np.ndarray | None, int]:
    """Integrate the two Mathieu basis solutions over one period.

    Initial conditions are (xi, xi_dot) = (1, 0) and (0, 1). Returns the
    one-period matrix M (columns are the basis end states), the basis
    samples on the uniform grid t_k = k*T/n_grid, k = 0..n_grid-1 (None if
    n_grid == 0), and the number of right-hand-side evaluations.
    """
    return _integrate(_mathieu_rhs, (0.25 * a, 0.5 * q), TWO_PI, rtol, atol, n_grid)


def hill_basis_spring(spring: Callable[[float], float], period: float,
                      rtol: float, atol: float,
                      n_grid: int = 0) -> tuple[np.ndarray, np.ndarray | None, int]:
    """Same as hill_basis for an arbitrary spring coefficient k(t)/M.

    Internal-use path: accepts any T-periodic callback, so generic Hill
    problems can be cross-checked against the Mathieu fast path.
    """
    def rhs(t, y):
        k = spring(t)
        return (y[1], -k * y[0], y[3], -k * y[2])

    return _integrate(lambda t, y: rhs(t, y), (), period, rtol, atol, n_grid)


def _integrate(rhs, args, period, rtol, atol, n_grid):
    t_eval = None
    if n_grid > 0:
        t_eval = np.append(np.arange(n_grid) * (period / n_grid), period)
    sol = solve_ivp(rhs, (0.0, period), (1.0, 0.0, 0.0, 1.0), args=args,
                    method="DOP853", rtol=rtol, atol=atol, t_eval=t_eval,
                    dense_output=False)
    if not sol.success:
        raise IntegrationFailure(sol.message)
    yT = sol.y[:, -1]
    monodromy = np.array([[yT[0], yT[2]], [yT[1], yT[3]]])
    samples = sol.y[:, :-1].T.copy() if n_grid > 0 else None
    return monodromy, samples, int(sol.nfev)

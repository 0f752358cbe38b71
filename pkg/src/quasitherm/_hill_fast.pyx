# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel: one-period integration of the Mathieu basis pair.

Implements the classic 12-stage 8th-order embedded Runge-Kutta pair with the
5th/3rd-order error combination (Hairer's 8(5,3) tableau, the same scheme as
scipy's DOP853), specialized to the 4-component real basis system

    d/dt (x1, p1, x2, p2) = (p1, -k(t) x1, p2, -k(t) x2),
    k(t) = a/4 - (q/2) cos(t),

so that a full parameter sweep stays inside C. Grid sampling is done by
forcing step endpoints onto the requested uniform grid times, which keeps the
samples free of interpolation error. The integration loop releases the GIL,
so sweep work pools scale across threads.
"""

from libc.math cimport cos, fabs, fmax, fmin, pow, sqrt

import numpy as np

from .errors import IntegrationFailure

NAME = "compiled"

cdef double TWO_PI = 6.283185307179586

cdef double _A[12][12]
cdef double _B[12]
cdef double _C[12]
cdef double _E3[12]
cdef double _E5[12]

_A[1][0] = 0.05260015195876773
_A[2][0] = 0.0197250569845379
_A[2][1] = 0.0591751709536137
_A[3][0] = 0.02958758547680685
_A[3][2] = 0.08876275643042054
_A[4][0] = 0.2413651341592667
_A[4][2] = -0.8845494793282861
_A[4][3] = 0.924834003261792
_A[5][0] = 0.037037037037037035
_A[5][3] = 0.17082860872947386
_A[5][4] = 0.12546768756682242
_A[6][0] = 0.037109375
_A[6][3] = 0.17025221101954405
_A[6][4] = 0.06021653898045596
_A[6][5] = -0.017578125
_A[7][0] = 0.03709200011850479
_A[7][3] = 0.17038392571223998
_A[7][4] = 0.10726203044637328
_A[7][5] = -0.015319437748624402
_A[7][6] = 0.008273789163814023
_A[8][0] = 0.6241109587160757
_A[8][3] = -3.3608926294469414
_A[8][4] = -0.868219346841726
_A[8][5] = 27.59209969944671
_A[8][6] = 20.154067550477894
_A[8][7] = -43.48988418106996
_A[9][0] = 0.47766253643826434
_A[9][3] = -2.4881146199716677
_A[9][4] = -0.590290826836843
_A[9][5] = 21.230051448181193
_A[9][6] = 15.279233632882423
_A[9][7] = -33.28821096898486
_A[9][8] = -0.020331201708508627
_A[10][0] = -0.9371424300859873
_A[10][3] = 5.186372428844064
_A[10][4] = 1.0914373489967295
_A[10][5] = -8.149787010746927
_A[10][6] = -18.52006565999696
_A[10][7] = 22.739487099350505
_A[10][8] = 2.4936055526796523
_A[10][9] = -3.0467644718982196
_A[11][0] = 2.273310147516538
_A[11][3] = -10.53449546673725
_A[11][4] = -2.0008720582248625
_A[11][5] = -17.9589318631188
_A[11][6] = 27.94888452941996
_A[11][7] = -2.8589982771350235
_A[11][8] = -8.87285693353063
_A[11][9] = 12.360567175794303
_A[11][10] = 0.6433927460157636

_B[0] = 0.054293734116568765
_B[5] = 4.450312892752409
_B[6] = 1.8915178993145003
_B[7] = -5.801203960010585
_B[8] = 0.3111643669578199
_B[9] = -0.1521609496625161
_B[10] = 0.20136540080403034
_B[11] = 0.04471061572777259

_E3[0] = -0.18980075407240762
_E3[5] = 4.450312892752409
_E3[6] = 1.8915178993145003
_E3[7] = -5.801203960010585
_E3[8] = -0.4226823213237919
_E3[9] = -0.1521609496625161
_E3[10] = 0.20136540080403034
_E3[11] = 0.02265179219836082

_E5[0] = 0.01312004499419488
_E5[5] = -1.2251564463762044
_E5[6] = -0.4957589496572502
_E5[7] = 1.6643771824549864
_E5[8] = -0.35032884874997366
_E5[9] = 0.3341791187130175
_E5[10] = 0.08192320648511571
_E5[11] = -0.022355307863886294

_C[1] = 0.05260015195876773
_C[2] = 0.0789002279381516
_C[3] = 0.1183503419072274
_C[4] = 0.2816496580927726
_C[5] = 0.3333333333333333
_C[6] = 0.25
_C[7] = 0.3076923076923077
_C[8] = 0.6512820512820513
_C[9] = 0.6
_C[10] = 0.8571428571428571
_C[11] = 1.0


cdef inline void _rhs(double t, double a4, double q2,
                      const double* y, double* f) noexcept nogil:
    cdef double k = a4 - q2 * cos(t)
    f[0] = y[1]
    f[1] = -k * y[0]
    f[2] = y[3]
    f[3] = -k * y[2]


cdef double _rms_scaled(const double* v, const double* scale) noexcept nogil:
    cdef double s = 0.0
    cdef int i
    for i in range(4):
        s += (v[i] / scale[i]) * (v[i] / scale[i])
    return sqrt(0.25 * s)


cdef double _initial_step(double a4, double q2, const double* y0,
                          const double* f0, double rtol, double atol,
                          double t_bound) noexcept nogil:
    cdef double scale[4]
    cdef double probe[4]
    cdef double f1[4]
    cdef double d0, d1, d2, h0, h1
    cdef int i
    for i in range(4):
        scale[i] = atol + fabs(y0[i]) * rtol
    d0 = _rms_scaled(y0, scale)
    d1 = _rms_scaled(f0, scale)
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6
    else:
        h0 = 0.01 * d0 / d1
    for i in range(4):
        probe[i] = y0[i] + h0 * f0[i]
    _rhs(h0, a4, q2, probe, f1)
    for i in range(4):
        probe[i] = f1[i] - f0[i]
    d2 = _rms_scaled(probe, scale) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = fmax(1e-6, h0 * 1e-3)
    else:
        h1 = pow(0.01 / fmax(d1, d2), 0.125)
    return fmin(fmin(100.0 * h0, h1), t_bound)


cdef int _integrate(double a4, double q2, double rtol, double atol,
                    int n_grid, double* grid_out, double* y_final,
                    long* nfev_out) noexcept nogil:
    """Advance the basis pair from 0 to 2*pi; 0 on success, 1 on underflow."""
    cdef double y[4]
    cdef double y_new[4]
    cdef double f0[4]
    cdef double K[12][4]
    cdef double ystage[4]
    cdef double scale[4]
    cdef double err5[4]
    cdef double err3[4]
    cdef double t = 0.0
    cdef double T = TWO_PI
    cdef double min_step = 1e-14 * T
    cdef double h_abs, h, t_new, t_target, acc
    cdef double e5, e3, denom, err_norm, factor
    cdef long nfev = 0
    cdef int i, s, j
    cdef int k_grid = 0
    cdef bint rejected = False

    y[0] = 1.0
    y[1] = 0.0
    y[2] = 0.0
    y[3] = 1.0
    if n_grid > 0:
        for i in range(4):
            grid_out[i] = y[i]
        k_grid = 1

    _rhs(0.0, a4, q2, y, f0)
    h_abs = _initial_step(a4, q2, y, f0, rtol, atol, T)
    nfev += 2

    while t < T:
        if h_abs < min_step:
            return 1
        if n_grid > 0 and k_grid <= n_grid:
            t_target = (k_grid * T) / n_grid
        else:
            t_target = T
        h = h_abs
        if t + h >= t_target:
            h = t_target - t
            t_new = t_target
        else:
            t_new = t + h

        # 12 stages; stage 0 reuses the stored derivative (FSAL).
        for i in range(4):
            K[0][i] = f0[i]
        for s in range(1, 12):
            for i in range(4):
                ystage[i] = 0.0
            for j in range(s):
                if _A[s][j] != 0.0:
                    for i in range(4):
                        ystage[i] += _A[s][j] * K[j][i]
            for i in range(4):
                ystage[i] = y[i] + h * ystage[i]
            _rhs(t + _C[s] * h, a4, q2, ystage, K[s])
        nfev += 11

        for i in range(4):
            acc = 0.0
            for s in range(12):
                acc += _B[s] * K[s][i]
            y_new[i] = y[i] + h * acc

        # 5th/3rd-order embedded error combination
        for i in range(4):
            scale[i] = atol + rtol * fmax(fabs(y[i]), fabs(y_new[i]))
            err5[i] = 0.0
            err3[i] = 0.0
        for s in range(12):
            if _E5[s] != 0.0:
                for i in range(4):
                    err5[i] += _E5[s] * K[s][i]
            if _E3[s] != 0.0:
                for i in range(4):
                    err3[i] += _E3[s] * K[s][i]
        e5 = 0.0
        e3 = 0.0
        for i in range(4):
            e5 += (err5[i] / scale[i]) * (err5[i] / scale[i])
            e3 += (err3[i] / scale[i]) * (err3[i] / scale[i])
        if e5 == 0.0 and e3 == 0.0:
            err_norm = 0.0
        else:
            denom = e5 + 0.01 * e3
            err_norm = fabs(h) * e5 / sqrt(denom * 4.0)

        if err_norm < 1.0:
            if err_norm == 0.0:
                factor = 10.0
            else:
                factor = fmin(10.0, 0.9 * pow(err_norm, -0.125))
            if rejected:
                factor = fmin(1.0, factor)
            h_abs = h * factor
            rejected = False
            t = t_new
            for i in range(4):
                y[i] = y_new[i]
            _rhs(t, a4, q2, y, f0)
            nfev += 1
            if n_grid > 0 and t == t_target and k_grid <= n_grid:
                if k_grid < n_grid:
                    for i in range(4):
                        grid_out[4 * k_grid + i] = y[i]
                k_grid += 1
        else:
            h_abs = h * fmax(0.2, 0.9 * pow(err_norm, -0.125))
            rejected = True

    for i in range(4):
        y_final[i] = y[i]
    nfev_out[0] = nfev
    return 0


def hill_basis(double a, double q, double rtol, double atol, int n_grid=0):
    """Integrate the two Mathieu basis solutions over one period.

    Initial conditions are (xi, xi_dot) = (1, 0) and (0, 1). Returns the
    one-period matrix M (columns are the basis end states), the basis
    samples on the uniform grid t_k = k*T/n_grid, k = 0..n_grid-1 (None if
    n_grid == 0), and the number of right-hand-side evaluations.
    """
    cdef double y_final[4]
    cdef long nfev = 0
    cdef int status
    cdef double[:, ::1] grid_view
    cdef double* grid_ptr = NULL
    grid = None
    if n_grid > 0:
        grid = np.empty((n_grid, 4), dtype=np.float64)
        grid_view = grid
        grid_ptr = &grid_view[0, 0]
    with nogil:
        status = _integrate(0.25 * a, 0.5 * q, rtol, atol, n_grid,
                            grid_ptr, y_final, &nfev)
    if status != 0:
        raise IntegrationFailure(
            f"step size underflow at a={a}, q={q} (rtol={rtol}, atol={atol})")
    monodromy = np.array([[y_final[0], y_final[2]],
                          [y_final[1], y_final[3]]])
    return monodromy, grid, int(nfev)

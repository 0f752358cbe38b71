import math

import numpy as np
import pytest

from quasitherm import SpringParams, Stability, integrate_basis, stable_trajectory
from quasitherm.errors import NotStable
from quasitherm.hill import integrate_basis_spring

from oracles import long_trajectory_moduli, richardson_trace

TWO_PI = 2.0 * math.pi


class TestSpringParams:
    def test_omega0(self):
        assert SpringParams(8.0, 0.0).omega0 == pytest.approx(math.sqrt(2.0), abs=1e-15)

    @pytest.mark.parametrize("a,q", [(0.0, 1.0), (-1.0, 0.0), (8.0, -0.1)])
    def test_invalid(self, a, q):
        with pytest.raises(ValueError):
            SpringParams(a, q)

    def test_coefficient(self):
        p = SpringParams(8.0, 3.0)
        assert p.coefficient(0.0) == pytest.approx(2.0 - 1.5)
        assert p.coefficient(math.pi) == pytest.approx(2.0 + 1.5)


class TestMonodromy:
    def test_undriven_is_exact_rotation(self):
        # trace must reproduce 2*cos(Omega0*T) within integrator tolerance
        mono = integrate_basis(SpringParams(8.0, 0.0), tol=1e-12)
        assert mono.classification is Stability.STABLE
        assert mono.trace == pytest.approx(2.0 * math.cos(math.sqrt(8.0) * math.pi),
                                           abs=1e-10)
        assert 0.0 < mono.angle() < math.pi

    def test_instability_window(self):
        # (a=8, q=7) lies inside the window opening near q ~ 6.49
        mono = integrate_basis(SpringParams(8.0, 7.0))
        assert mono.classification is Stability.COLLISION_PLUS
        assert mono.trace > 2.0

    def test_collision_minus(self):
        # beyond the third border of a = 8 the multipliers meet at -1
        mono = integrate_basis(SpringParams(8.0, 10.2))
        assert mono.classification is Stability.COLLISION_MINUS
        assert mono.trace < -2.0

    def test_trace_against_richardson_oracle(self):
        mono = integrate_basis(SpringParams(8.0, 3.0))
        assert mono.trace == pytest.approx(richardson_trace(8.0, 3.0), abs=1e-9)

    @pytest.mark.parametrize("a,q", [(8.0, 0.0), (8.0, 3.0), (8.0, 7.0),
                                     (8.0, 9.5), (8.2, 5.0), (2.0, 1.0)])
    def test_unit_determinant(self, a, q):
        mono = integrate_basis(SpringParams(a, q))
        assert abs(mono.det - 1.0) <= 1e-9

    def test_near_border_flag(self, borders8):
        qb = borders8[0]
        assert integrate_basis(SpringParams(8.0, qb - 1e-7)).near_border
        assert not integrate_basis(SpringParams(8.0, qb - 0.01)).near_border

    def test_tol_range(self):
        with pytest.raises(ValueError):
            integrate_basis(SpringParams(8.0, 1.0), tol=1e-5)
        with pytest.raises(ValueError):
            integrate_basis(SpringParams(8.0, 1.0), tol=1e-15)


class TestTrajectory:
    def test_undriven_constant_modulus(self):
        params = SpringParams(8.0, 0.0)
        traj = stable_trajectory(params, integrate_basis(params))
        moduli = np.abs(traj.xi)
        assert np.ptp(moduli) <= 1e-10 * moduli.mean()
        assert traj.wronskian > 0.0

    def test_wronskian_drift(self):
        params = SpringParams(8.0, 1.0)
        traj = stable_trajectory(params, integrate_basis(params))
        wr = np.imag(traj.xi_dot * np.conj(traj.xi))
        assert (wr.max() - wr.min()) / abs(traj.wronskian) <= 1e-9

    def test_modulus_periodicity_against_long_run(self):
        # |xi| is T-periodic for Floquet solutions; cross-check five periods
        # of an independent scipy integration
        params = SpringParams(8.2, 5.0)
        traj = stable_trajectory(params, integrate_basis(params))
        moduli = long_trajectory_moduli(8.2, 5.0, periods=5)
        assert np.abs(moduli - moduli[0]).max() <= 1e-8 * moduli[0]
        assert abs(traj.xi[0]) == pytest.approx(moduli[0], rel=1e-12)

    def test_scaling_moves_wronskian_not_phase_velocity(self):
        params = SpringParams(8.0, 3.0)
        traj = stable_trajectory(params, integrate_basis(params))
        rng = np.random.default_rng(11)
        for _ in range(2):
            c = rng.uniform(0.2, 4.0) * np.exp(1j * rng.uniform(0.0, TWO_PI))
            xi = traj.xi * c
            xi_dot = traj.xi_dot * c
            wr = np.imag(xi_dot * np.conj(xi))
            assert wr.mean() == pytest.approx(traj.wronskian * abs(c) ** 2,
                                              rel=1e-12)
            # the phase velocity Omega/|xi|^2 is pointwise unchanged
            before = traj.wronskian / np.abs(traj.xi) ** 2
            after = wr.mean() / np.abs(xi) ** 2
            assert np.abs(after - before).max() <= 1e-12 * np.abs(before).max()

    def test_requires_stable(self):
        params = SpringParams(8.0, 7.0)
        with pytest.raises(NotStable):
            stable_trajectory(params, integrate_basis(params))

    @pytest.mark.parametrize("n", [100, 255, 300, 1000])
    def test_rejects_bad_sample_count(self, n):
        params = SpringParams(8.0, 1.0)
        mono = integrate_basis(params)
        with pytest.raises(ValueError):
            stable_trajectory(params, mono, n_samples=n)

    def test_wronskian_positive_everywhere(self):
        for a, q in [(8.0, 0.0), (8.0, 5.0), (8.0, 9.3), (8.2, 9.0), (3.0, 2.0)]:
            params = SpringParams(a, q)
            traj = stable_trajectory(params, integrate_basis(params))
            assert traj.wronskian > 0.0


class TestGenericSpring:
    def test_matches_mathieu_fast_path(self):
        params = SpringParams(8.0, 3.0)
        mono = integrate_basis(params)
        matrix = integrate_basis_spring(params.coefficient, TWO_PI)
        assert np.abs(matrix - mono.matrix).max() <= 1e-10

    def test_constant_spring_rotation(self):
        omega0 = 1.3
        matrix = integrate_basis_spring(lambda t: omega0 ** 2, TWO_PI)
        trace = matrix[0, 0] + matrix[1, 1]
        assert trace == pytest.approx(2.0 * math.cos(omega0 * TWO_PI), abs=1e-10)

import math
import random

import numpy as np
import pytest

from ellipsograph.geometry import TWO_PI
from ellipsograph.solver import (
    ConstraintState,
    NonConvergence,
    SingularJacobian,
    SolverConfig,
    jacobian,
    newton_solve,
    residuals,
    solve_at,
    sweep,
    sweep_detailed,
)
from ellipsograph.trammel import TrammelConfig, rod_state


def closed_form(ell, theta):
    return ell * math.cos(theta), ell * math.sin(theta)


def fd_jacobian(ell, theta, st, step):
    """Central finite differences of the residuals; the independent check
    the analytic Jacobian is held against."""
    out = np.zeros((2, 2))
    for j, (dx, dy) in enumerate([(step, 0.0), (0.0, step)]):
        plus = residuals(ell, theta, ConstraintState(st.x_c + dx, st.y_d + dy))
        minus = residuals(ell, theta, ConstraintState(st.x_c - dx, st.y_d - dy))
        out[0, j] = (plus[0] - minus[0]) / (2.0 * step)
        out[1, j] = (plus[1] - minus[1]) / (2.0 * step)
    return out


class TestResiduals:
    @pytest.mark.parametrize(
        "ell,theta,state,expected",
        [
            (2.0, 0.0, (2.0, 0.0), (0.0, 0.0)),
            (2.0, 0.0, (0.0, 0.0), (-4.0, 0.0)),
            (2.0, math.pi / 2, (0.0, 2.0), (0.0, 0.0)),
        ],
    )
    def test_examples(self, ell, theta, state, expected):
        g1, g2 = residuals(ell, theta, ConstraintState(*state))
        assert g1 == pytest.approx(expected[0], abs=1e-12)
        assert g2 == pytest.approx(expected[1], abs=1e-12)

    def test_state_rejects_non_finite(self):
        with pytest.raises(ValueError):
            ConstraintState(math.nan, 0.0)


class TestJacobian:
    def test_example(self):
        jac = jacobian(2.0, 0.0, ConstraintState(2.0, 0.0))
        assert np.array_equal(jac, np.array([[4.0, 0.0], [0.0, 1.0]]))
        assert np.linalg.det(jac) == pytest.approx(4.0)

    def test_determinant_is_twice_rod_length_at_solutions(self):
        for ell in (2.0, 56.0):
            for state in sweep(ell, 0.0, TWO_PI, 64):
                theta = math.atan2(state.y_d, state.x_c)
                jac = jacobian(ell, theta, state)
                det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
                assert abs(det - 2.0 * ell) <= 1e-9 * ell

    def test_matches_finite_differences(self):
        # 1,000 random systems; relative error against central differences
        rng = random.Random(20260809)
        step = SolverConfig().fd_step
        worst = 0.0
        for _ in range(1000):
            ell = rng.uniform(0.5, 100.0)
            theta = rng.uniform(0.0, TWO_PI)
            st = ConstraintState(rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0))
            analytic = jacobian(ell, theta, st)
            numeric = fd_jacobian(ell, theta, st, step)
            scale = max(np.max(np.abs(analytic)), 1.0)
            worst = max(worst, np.max(np.abs(analytic - numeric)) / scale)
        assert worst < 1e-6


class TestSolveAt:
    def test_converges_from_perturbed_closed_form(self):
        ell, theta = 2.0, 0.7
        x, y = closed_form(ell, theta)
        result = newton_solve(ell, theta, ConstraintState(x + 0.1, y - 0.1))
        assert math.hypot(result.state.x_c - x, result.state.y_d - y) <= 1e-9
        assert result.iterations <= 6

    def test_newton_run_positive_branch(self):
        state = solve_at(2.0, 0.0, ConstraintState(1.8, 0.05))
        assert math.hypot(state.x_c - 2.0, state.y_d) <= 1e-9

    def test_newton_run_antipodal_branch(self):
        # branch selection is by initial guess only
        state = solve_at(2.0, 0.0, ConstraintState(-1.8, 0.05))
        assert math.hypot(state.x_c + 2.0, state.y_d) <= 1e-9

    def test_matches_rod_state_pivots(self):
        cfg = TrammelConfig(40.0, 140.0)
        for theta in (0.3, 1.1, 2.9, 4.4, 5.9):
            x, y = closed_form(cfg.pivot_separation, theta)
            state = solve_at(cfg.pivot_separation, theta,
                             ConstraintState(x * 1.05, y * 1.05 + 0.01))
            pose = rod_state(cfg, theta)
            assert abs(state.x_c - pose.pivot_x.x) <= 1e-9
            assert abs(state.y_d - pose.pivot_y.y) <= 1e-9

    def test_origin_guess_is_singular(self):
        with pytest.raises(SingularJacobian):
            solve_at(2.0, 0.3, ConstraintState(0.0, 0.0))

    def test_non_convergence_reports_residuals(self):
        with pytest.raises(NonConvergence) as err:
            solve_at(2.0, 0.0, ConstraintState(50.0, 40.0), SolverConfig(max_iter=1))
        g1, g2 = err.value.residuals
        assert math.isfinite(g1) and math.isfinite(g2)

    def test_quadratic_convergence_tail(self):
        # residual norms of the final Newton steps shrink at least
        # quadratically for a continuation-grade guess
        ell, theta = 2.0, 0.7
        x, y = closed_form(ell, theta)
        st = ConstraintState(x + 0.05, y - 0.05)
        norms = []
        for _ in range(6):
            g = residuals(ell, theta, st)
            norms.append(math.hypot(*g))
            jac = jacobian(ell, theta, st)
            det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
            dx = (-g[0] * jac[1, 1] + g[1] * jac[0, 1]) / det
            dy = (-g[1] * jac[0, 0] + g[0] * jac[1, 0]) / det
            st = ConstraintState(st.x_c + dx, st.y_d + dy)
            if norms[-1] < 1e-14:
                break
        drops = [b / (a * a) for a, b in zip(norms, norms[1:]) if a > 1e-8]
        assert all(ratio < 10.0 for ratio in drops)


class TestSweep:
    def test_full_turn_matches_closed_form(self):
        states = sweep(2.0, 0.0, TWO_PI, 360)
        assert len(states) == 360
        for k, state in enumerate(states):
            x, y = closed_form(2.0, TWO_PI * k / 360)
            assert math.hypot(state.x_c - x, state.y_d - y) <= 1e-9

    def test_single_step_solves_start(self):
        states = sweep(2.0, 0.5, 4.0, 1)
        x, y = closed_form(2.0, 0.5)
        assert len(states) == 1
        assert math.hypot(states[0].x_c - x, states[0].y_d - y) <= 1e-9

    def test_continuation_keeps_iteration_count_low(self):
        results = sweep_detailed(56.0, 0.0, TWO_PI, 720)
        assert max(r.iterations for r in results) <= 4

    def test_stays_on_principal_branch(self):
        results = sweep_detailed(2.0, 0.0, TWO_PI, 256)
        for k, r in enumerate(results):
            theta = TWO_PI * k / 256
            side = r.state.x_c * math.cos(theta) + r.state.y_d * math.sin(theta)
            assert side > 0.0

    def test_rejects_zero_steps(self):
        with pytest.raises(ValueError):
            sweep(2.0, 0.0, 1.0, 0)

    def test_failure_carries_theta(self):
        # 45-degree continuation jumps need more than one Newton update
        with pytest.raises(NonConvergence) as err:
            sweep(2.0, 0.0, TWO_PI, 8, SolverConfig(tol=1e-9, max_iter=1))
        assert err.value.theta == pytest.approx(TWO_PI / 8)


class TestSolverConfigValidation:
    @pytest.mark.parametrize(
        "kwargs", [{"tol": 0.0}, {"max_iter": 0}, {"fd_step": -1.0}]
    )
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            SolverConfig(**kwargs)

"""Numeric oracle for the trammel: the mechanism posed as a constraint
system and solved with Newton iteration plus angle continuation.

Unknowns are the two pivot channel coordinates (x_c, y_d). Constraints:

    g1 = x_c^2 + y_d^2 - l^2      rigid rod between the pivots
    g2 = y_d*cos(theta) - x_c*sin(theta)   rod direction matches the drive angle

Driving by the rod angle keeps the Jacobian nonsingular at every solution
(|det J| = 2*l there), so a continuation sweep never crosses a singularity.
The solver validates the closed-form kinematics without sharing any of its
formulas beyond the continuation starting guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ConstraintState:
    """Pivot channel coordinates: x_c on the x channel, y_d on the y channel."""

    x_c: float
    y_d: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_c) and math.isfinite(self.y_d)):
            raise ValueError(f"state must be finite, got ({self.x_c}, {self.y_d})")


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-9  # mm
    max_iter: int = 25
    fd_step: float = 1e-6  # mm, for finite-difference checks of the Jacobian

    def __post_init__(self) -> None:
        if not self.tol > 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")
        if not self.fd_step > 0.0:
            raise ValueError(f"fd_step must be positive, got {self.fd_step}")


class SolverError(Exception):
    """Base class for constraint-solver failures."""


class NonConvergence(SolverError):
    """Newton ran out of iterations; carries the final residuals."""

    def __init__(self, message: str, residuals: tuple[float, float],
                 theta: float | None = None):
        super().__init__(message)
        self.residuals = residuals
        self.theta = theta


class SingularJacobian(SolverError):
    """Jacobian determinant vanished (relative to rod length)."""

    def __init__(self, message: str, det: float, theta: float | None = None):
        super().__init__(message)
        self.det = det
        self.theta = theta


class BranchFlip(SolverError):
    """A continuation sweep jumped between the two solution branches."""

    def __init__(self, message: str, theta: float):
        super().__init__(message)
        self.theta = theta


def residuals(ell: float, theta: float, st: ConstraintState) -> tuple[float, float]:
    """(g1, g2) at the given state; both zero exactly at a solution."""
    g1 = st.x_c * st.x_c + st.y_d * st.y_d - ell * ell
    g2 = st.y_d * math.cos(theta) - st.x_c * math.sin(theta)
    return g1, g2


def jacobian(ell: float, theta: float, st: ConstraintState) -> np.ndarray:
    """2x2 Jacobian of the residuals with respect to (x_c, y_d).

    The entries do not involve the rod length; ell is part of the signature
    because it identifies the system the derivative belongs to. At any
    solution det = 2*(x_c*cos + y_d*sin) = +-2*ell, never zero.
    """
    return np.array(
        [
            [2.0 * st.x_c, 2.0 * st.y_d],
            [-math.sin(theta), math.cos(theta)],
        ]
    )


@dataclass(frozen=True)
class NewtonResult:
    """One converged Newton run: solution, update count, final residuals."""

    state: ConstraintState
    iterations: int
    residuals: tuple[float, float]


def newton_solve(
    ell: float,
    theta: float,
    guess: ConstraintState,
    cfg: SolverConfig = SolverConfig(),
) -> NewtonResult:
    """Plain undamped Newton from the given guess.

    Converged when |g1| <= tol*ell and |g2| <= tol. The guess picks the
    branch; the solver never re-seeds. A guess at the origin is rejected by
    the singularity check on the first step.
    """
    st = guess
    for iteration in range(cfg.max_iter + 1):
        g1, g2 = residuals(ell, theta, st)
        if abs(g1) <= cfg.tol * ell and abs(g2) <= cfg.tol:
            return NewtonResult(state=st, iterations=iteration, residuals=(g1, g2))
        if iteration == cfg.max_iter:
            break
        jac = jacobian(ell, theta, st)
        det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
        if abs(det) < 1e-14 * ell:
            raise SingularJacobian(
                f"Jacobian singular at ({st.x_c}, {st.y_d}), det={det}", det=det, theta=theta
            )
        # 2x2 Cramer update: J * delta = -g
        dx = (-g1 * jac[1, 1] + g2 * jac[0, 1]) / det
        dy = (-g2 * jac[0, 0] + g1 * jac[1, 0]) / det
        st = ConstraintState(st.x_c + dx, st.y_d + dy)
    raise NonConvergence(
        f"no convergence in {cfg.max_iter} iterations (residuals {g1:.3e}, {g2:.3e})",
        residuals=(g1, g2),
        theta=theta,
    )


def solve_at(
    ell: float,
    theta: float,
    guess: ConstraintState,
    cfg: SolverConfig = SolverConfig(),
) -> ConstraintState:
    """Solve the constraint system at one drive angle."""
    return newton_solve(ell, theta, guess, cfg).state


def sweep_detailed(
    ell: float,
    theta_start: float,
    theta_end: float,
    n_steps: int,
    cfg: SolverConfig = SolverConfig(),
) -> list[NewtonResult]:
    """Continuation sweep over n_steps uniformly spaced angles.

    Angles are theta_start + k*(theta_end - theta_start)/n_steps for
    k = 0..n_steps-1 (half-open, so a full turn does not duplicate its
    endpoint and n_steps=1 solves theta_start alone). The first guess is the
    closed-form state at theta_start; each solution seeds the next angle.
    Raises BranchFlip if consecutive solutions land on opposite branches,
    and re-raises solver failures with the failing angle attached.
    """
    if n_steps < 1:
        raise ValueError(f"n_steps must be at least 1, got {n_steps}")
    step = (theta_end - theta_start) / n_steps
    guess = ConstraintState(ell * math.cos(theta_start), ell * math.sin(theta_start))
    results: list[NewtonResult] = []
    prev_side = 0.0
    for k in range(n_steps):
        theta = theta_start + k * step
        try:
            result = newton_solve(ell, theta, guess, cfg)
        except (NonConvergence, SingularJacobian) as err:
            err.theta = theta
            raise
        # side = x_c*cos + y_d*sin is +-ell by branch; a sign change means a jump
        side = result.state.x_c * math.cos(theta) + result.state.y_d * math.sin(theta)
        if prev_side != 0.0 and side * prev_side < 0.0:
            raise BranchFlip(f"solution branch flipped at theta={theta}", theta=theta)
        prev_side = side
        results.append(result)
        guess = result.state
    return results


def sweep(
    ell: float,
    theta_start: float,
    theta_end: float,
    n_steps: int,
    cfg: SolverConfig = SolverConfig(),
) -> list[ConstraintState]:
    """Continuation sweep returning just the solved states."""
    return [r.state for r in sweep_detailed(ell, theta_start, theta_end, n_steps, cfg)]

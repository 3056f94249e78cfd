"""Integral pseudospectral solver for singular second-order boundary problems.

Solves   y'' + (a2/x) y' + f(x, y) = 0   on (0, b]
with     y'(0) = a1   and   beta*y(b) + gamma*y'(b) = delta,

where f(x, y) = p(x)*y - g(x) in the linear case.  The unknown is the vector
Phi of second-derivative values at the shifted Gauss-Radau nodes; y' and y are
recovered through the first- and second-order integration matrices, which
turns the singular differential problem into a dense algebraic system with no
differentiation matrices involved.

Two boundary branches are handled: beta != 0 eliminates y(0) through the
right-endpoint condition (Robin branch), while beta = 0 keeps y(0) as an extra
unknown constrained by a derivative condition at both ends (Neumann branch).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .basis import BasisConfig, NodeSet
from .quadrature import IntegrationOperators, build_operators, interpolate

__all__ = [
    "ProblemSpec",
    "SolverResult",
    "NonlinearSolveError",
    "solve",
    "solve_problem",
    "solve_linear_robin",
    "solve_nonlinear_robin",
    "solve_linear_neumann",
    "solve_nonlinear_neumann",
    "recover_y0",
    "compute_residual",
]

#: Newton stopping: max-norm step or residual at/below this level.
_NEWTON_TOL = 1e-13
_NEWTON_MAXITER = 200
_ARMIJO_HALVINGS = 30
_FD_STEP = 1e-7


class NonlinearSolveError(RuntimeError):
    """Raised when the damped Newton iteration fails to converge."""


@dataclass(frozen=True)
class ProblemSpec:
    """Boundary-value problem data for y'' + (a2/x) y' + f(x, y) = 0.

    Boundary conditions are y'(0) = alpha1 and beta*y(b) + gamma*y'(b) = delta.
    Linear problems supply p and g with f(x, y) = p(x)*y - g(x); nonlinear
    problems supply f(x, y) and optionally its partial derivative dfdy.
    """

    kind: str
    alpha1: float
    alpha2: float
    beta: float
    gamma: float
    delta: float
    b: float = 1.0
    p: Callable | None = None
    g: Callable | None = None
    f: Callable | None = None
    dfdy: Callable | None = None

    def __post_init__(self):
        if self.kind not in ("linear", "nonlinear"):
            raise ValueError(f"kind must be 'linear' or 'nonlinear', got {self.kind!r}")
        if self.b <= 0:
            raise ValueError(f"interval length must be positive, got {self.b}")
        if self.beta == 0 and self.gamma == 0:
            raise ValueError("beta and gamma cannot both vanish")
        if self.kind == "linear" and (self.p is None or self.g is None):
            raise ValueError("linear problems require both p and g")
        if self.kind == "nonlinear" and self.f is None:
            raise ValueError("nonlinear problems require f")


@dataclass(frozen=True)
class SolverResult:
    """Solution data at the collocation nodes plus solver diagnostics.

    ``phi`` holds the computed y'' values at the nodes; ``kappa_inf`` is set
    for linear solves only and ``newton_iters``/``step_norms`` for nonlinear
    ones.  ``evaluate`` interpolates y off the nodes (exactly y0 at x = 0).
    """

    spec: ProblemSpec
    nodeset: NodeSet
    phi: np.ndarray
    y_nodes: np.ndarray
    y0: float
    yprime_nodes: np.ndarray
    residual_nodes: np.ndarray
    converged: bool
    kappa_inf: float | None = None
    newton_iters: int | None = None
    step_norms: tuple[float, ...] | None = None

    def __post_init__(self):
        for arr in (self.phi, self.y_nodes, self.yprime_nodes, self.residual_nodes):
            arr.setflags(write=False)

    @property
    def nodes(self) -> np.ndarray:
        return self.nodeset.nodes

    def evaluate(self, x) -> np.ndarray:
        """Evaluate the approximate solution at arbitrary points of [0, b].

        Interior points use the basis interpolant of the node values; the
        endpoints return the recovered y(0) and the node value at b directly.
        """
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = interpolate(self.nodeset, self.y_nodes, x)
        out = np.where(x == self.nodeset.b, self.y_nodes[0], out)
        return np.where(x == 0.0, self.y0, out)


def _pieces(spec: ProblemSpec, ops: IntegrationOperators):
    """Shared assembly: nodes, shifted operators, H matrix, singular shift."""
    x = ops.nodes
    q1, q2 = ops.q1_shifted, ops.q2_shifted
    h = np.eye(x.size) + spec.alpha2 * (q1 / x[:, None])
    sing = spec.alpha1 * spec.alpha2 / x
    return x, q1, q2, h, sing


def _robin_pieces(spec: ProblemSpec, x, q1, q2):
    """Baseline x-bar and the Phi -> y map Theta for the beta != 0 branch."""
    xbar = (spec.delta - spec.gamma * spec.alpha1) / spec.beta + spec.alpha1 * (x - spec.b)
    theta = q2 - (q2[0] + (spec.gamma / spec.beta) * q1[0])[None, :]
    return xbar, theta


def _condition_inf(a: np.ndarray) -> float:
    """Infinity-norm condition number, +inf for a singular matrix."""
    try:
        return float(
            np.linalg.norm(a, np.inf) * np.linalg.norm(np.linalg.inv(a), np.inf)
        )
    except np.linalg.LinAlgError:
        return math.inf


def _linear_step(a: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError:
        return np.linalg.lstsq(a, rhs, rcond=None)[0]


def _dfdy_or_fd(spec: ProblemSpec) -> Callable:
    """Analytic df/dy when supplied, else a central finite difference in y."""
    if spec.dfdy is not None:
        return spec.dfdy

    def fd(x, y):
        h = _FD_STEP * np.maximum(1.0, np.abs(y))
        return (spec.f(x, y + h) - spec.f(x, y - h)) / (2.0 * h)

    return fd


def _damped_newton(residual_fn, jacobian_fn, z0: np.ndarray):
    """Newton iteration with Armijo backtracking on the max-norm residual."""
    z = np.asarray(z0, dtype=float).copy()
    steps: list[float] = []
    fval = residual_fn(z)
    fnorm = float(np.max(np.abs(fval)))
    if not np.isfinite(fnorm):
        raise NonlinearSolveError("residual not finite at the initial guess")
    for it in range(1, _NEWTON_MAXITER + 1):
        if fnorm <= _NEWTON_TOL:
            return z, it - 1, steps
        step = _linear_step(jacobian_fn(z), -fval)
        t = 1.0
        for _ in range(_ARMIJO_HALVINGS + 1):
            trial = z + t * step
            f_trial = residual_fn(trial)
            f_trial_norm = float(np.max(np.abs(f_trial)))
            if np.isfinite(f_trial_norm) and f_trial_norm <= (1.0 - 1e-4 * t) * fnorm:
                break
            t *= 0.5
        else:
            raise NonlinearSolveError(
                f"line search stalled at iteration {it} (residual {fnorm:.3e})"
            )
        z, fval, fnorm = trial, f_trial, f_trial_norm
        steps.append(float(np.max(np.abs(t * step))))
        if steps[-1] <= _NEWTON_TOL or fnorm <= _NEWTON_TOL:
            return z, it, steps
    raise NonlinearSolveError(
        f"no convergence within {_NEWTON_MAXITER} iterations (residual {fnorm:.3e})"
    )


def recover_y0(spec: ProblemSpec, ops: IntegrationOperators, phi: np.ndarray) -> float:
    """Recover y(0) from Phi through the right-endpoint boundary condition."""
    if spec.beta == 0:
        raise ValueError("y(0) is a primary unknown when beta = 0, not recoverable")
    q1, q2 = ops.q1_shifted, ops.q2_shifted
    yprime_b = spec.alpha1 + q1[0] @ phi
    return float(
        (spec.delta - spec.gamma * yprime_b) / spec.beta
        - spec.alpha1 * spec.b
        - q2[0] @ phi
    )


def compute_residual(
    spec: ProblemSpec,
    ops: IntegrationOperators,
    phi: np.ndarray,
    y_nodes: np.ndarray,
) -> np.ndarray:
    """Pointwise residual of the integrated collocation system at the nodes.

    Returns H*Phi + f(x, y) + a1*a2/x, with f(x, y) = p(x)*y - g(x) in the
    linear case; this vanishes (to roundoff) at a converged solution and
    equals -g(x) at Phi = 0 for a linear problem with p = 0 and a1 = 0.
    """
    x, _, _, h, sing = _pieces(spec, ops)
    if spec.kind == "linear":
        fval = spec.p(x) * y_nodes - spec.g(x)
    else:
        fval = spec.f(x, y_nodes)
    return h @ phi + fval + sing


def _finish(spec, ops, phi, y_nodes, y0, **diag) -> SolverResult:
    yprime = spec.alpha1 + ops.q1_shifted @ phi
    residual = compute_residual(spec, ops, phi, y_nodes)
    return SolverResult(
        spec=spec,
        nodeset=ops.shifted,
        phi=phi,
        y_nodes=y_nodes,
        y0=float(y0),
        yprime_nodes=yprime,
        residual_nodes=residual,
        **diag,
    )


def solve_linear_robin(spec: ProblemSpec, ops: IntegrationOperators) -> SolverResult:
    """Direct dense solve of the beta != 0 linear problem."""
    x, q1, q2, h, sing = _pieces(spec, ops)
    xbar, theta = _robin_pieces(spec, x, q1, q2)
    pvals = np.broadcast_to(np.asarray(spec.p(x), dtype=float), x.shape)
    gvals = np.broadcast_to(np.asarray(spec.g(x), dtype=float), x.shape)
    a = h + pvals[:, None] * theta
    phi = _linear_step(a, gvals - sing - pvals * xbar)
    y_nodes = xbar + theta @ phi
    return _finish(
        spec, ops, phi, y_nodes, recover_y0(spec, ops, phi),
        converged=True, kappa_inf=_condition_inf(a),
    )


def solve_nonlinear_robin(spec: ProblemSpec, ops: IntegrationOperators) -> SolverResult:
    """Damped Newton solve of the beta != 0 nonlinear problem."""
    x, q1, q2, h, sing = _pieces(spec, ops)
    xbar, theta = _robin_pieces(spec, x, q1, q2)
    dfdy = _dfdy_or_fd(spec)

    def residual(phi):
        return h @ phi + spec.f(x, xbar + theta @ phi) + sing

    def jacobian(phi):
        return h + dfdy(x, xbar + theta @ phi)[:, None] * theta

    try:
        phi, iters, steps = _damped_newton(residual, jacobian, np.zeros_like(x))
    except NonlinearSolveError:
        # Retry once from the solution of the problem linearized about y = xbar.
        fy0 = dfdy(x, xbar)
        phi0 = _linear_step(h + fy0[:, None] * theta, -spec.f(x, xbar) - sing)
        phi, iters, steps = _damped_newton(residual, jacobian, phi0)
    y_nodes = xbar + theta @ phi
    return _finish(
        spec, ops, phi, y_nodes, recover_y0(spec, ops, phi),
        converged=True, newton_iters=iters, step_norms=tuple(steps),
    )


def _neumann_rhs_last(spec: ProblemSpec) -> float:
    return spec.delta / spec.gamma - spec.alpha1


def solve_linear_neumann(spec: ProblemSpec, ops: IntegrationOperators) -> SolverResult:
    """Dense solve of the beta = 0 linear problem with y(0) as extra unknown.

    The bordered system can be exactly singular (p = 0 leaves y(0) free), in
    which case the minimum-norm least-squares solution is returned and
    kappa_inf is +inf.
    """
    x, q1, q2, h, sing = _pieces(spec, ops)
    m = x.size
    pvals = np.broadcast_to(np.asarray(spec.p(x), dtype=float), x.shape)
    gvals = np.broadcast_to(np.asarray(spec.g(x), dtype=float), x.shape)
    c = np.zeros((m + 1, m + 1))
    c[:m, :m] = h + pvals[:, None] * q2
    c[:m, m] = pvals
    c[m, :m] = q1[0]
    d = np.concatenate([gvals - spec.alpha1 * pvals * x - sing, [_neumann_rhs_last(spec)]])
    psi = np.linalg.lstsq(c, d, rcond=None)[0]
    phi, y0 = psi[:m], psi[m]
    y_nodes = y0 + spec.alpha1 * x + q2 @ phi
    return _finish(
        spec, ops, phi, y_nodes, y0, converged=True, kappa_inf=_condition_inf(c),
    )


def solve_nonlinear_neumann(spec: ProblemSpec, ops: IntegrationOperators) -> SolverResult:
    """Damped Newton solve of the beta = 0 nonlinear problem."""
    x, q1, q2, h, sing = _pieces(spec, ops)
    m = x.size
    dfdy = _dfdy_or_fd(spec)
    rhs_last = _neumann_rhs_last(spec)

    def unpack(psi):
        phi, y0 = psi[:m], psi[m]
        return phi, y0, y0 + spec.alpha1 * x + q2 @ phi

    def residual(psi):
        phi, _, y = unpack(psi)
        return np.concatenate([h @ phi + spec.f(x, y) + sing, [q1[0] @ phi - rhs_last]])

    def jacobian(psi):
        phi, _, y = unpack(psi)
        fy = dfdy(x, y)
        jac = np.zeros((m + 1, m + 1))
        jac[:m, :m] = h + fy[:, None] * q2
        jac[:m, m] = fy
        jac[m, :m] = q1[0]
        return jac

    try:
        psi, iters, steps = _damped_newton(residual, jacobian, np.zeros(m + 1))
    except NonlinearSolveError:
        # Retry once from the linearization about the baseline y = a1*x.
        ybase = spec.alpha1 * x
        fy0 = dfdy(x, ybase)
        c = np.zeros((m + 1, m + 1))
        c[:m, :m] = h + fy0[:, None] * q2
        c[:m, m] = fy0
        c[m, :m] = q1[0]
        d = np.concatenate([-spec.f(x, ybase) - sing, [rhs_last]])
        psi0 = np.linalg.lstsq(c, d, rcond=None)[0]
        psi, iters, steps = _damped_newton(residual, jacobian, psi0)
    phi, y0, y_nodes = unpack(psi)
    return _finish(
        spec, ops, phi, y_nodes, y0,
        converged=True, newton_iters=iters, step_norms=tuple(steps),
    )


def solve(spec: ProblemSpec, ops: IntegrationOperators) -> SolverResult:
    """Dispatch on problem kind and boundary branch."""
    if spec.kind == "linear":
        branch = solve_linear_robin if spec.beta != 0 else solve_linear_neumann
    else:
        branch = solve_nonlinear_robin if spec.beta != 0 else solve_nonlinear_neumann
    return branch(spec, ops)


def solve_problem(spec: ProblemSpec, n: int, alpha: float) -> SolverResult:
    """Build operators for (n, alpha) on [0, b] and solve."""
    return solve(spec, build_operators(BasisConfig(alpha, n), spec.b))

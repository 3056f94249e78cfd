"""Gegenbauer polynomial basis, Gauss-Radau nodes and Christoffel weights.

The basis is the Gegenbauer family standardized so that G_n(1) = 1 for every
degree, generated by the three-term recurrence

    (n + 2a) G_{n+1}(x) = 2 (n + a) x G_n(x) - n G_{n-1}(x),   G_0 = 1, G_1 = x,

orthogonal on [-1, 1] against the weight (1 - x^2)^(a - 1/2) for a > -1/2.
a = 0 gives the Chebyshev polynomials of the first kind and a = 1/2 the
Legendre polynomials.  Collocation uses the right-endpoint Gauss-Radau points:
x = 1 together with the n roots of q_n = G_{n+1} - G_n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BasisConfig",
    "NodeSet",
    "RootFindingError",
    "eval_gegenbauer",
    "eval_gegenbauer_derivative",
    "node_polynomial",
    "leading_coefficient",
    "normalization",
    "gauss_radau_nodes",
    "christoffel_weights",
    "standard_nodeset",
    "shift_nodeset",
]

#: Newton tolerance per root and iteration cap for the node solver.
_ROOT_TOL = 1e-14
_ROOT_MAXITER = 100


class RootFindingError(RuntimeError):
    """Raised when the Gauss-Radau node solver cannot isolate all roots."""


def _check_alpha(alpha: float) -> None:
    if not alpha > -0.5:
        raise ValueError(f"Gegenbauer parameter must exceed -1/2, got {alpha}")


@dataclass(frozen=True)
class BasisConfig:
    """Basis family parameter and truncation degree."""

    alpha: float
    n: int

    def __post_init__(self):
        _check_alpha(self.alpha)
        if self.n < 0:
            raise ValueError(f"degree must be nonnegative, got {self.n}")


@dataclass(frozen=True)
class NodeSet:
    """Collocation nodes with quadrature weights on a fixed interval.

    nodes are strictly descending, starting at the right endpoint of
    ``interval``.  ``weights`` are the Gauss-Radau Christoffel weights against
    the Gegenbauer weight function; ``lambdas`` are the squared norms of
    G_0 .. G_n against the same weight.
    """

    alpha: float
    n: int
    nodes: np.ndarray
    weights: np.ndarray
    lambdas: np.ndarray
    interval: tuple[float, float]

    def __post_init__(self):
        for arr in (self.nodes, self.weights, self.lambdas):
            arr.setflags(write=False)

    @property
    def b(self) -> float:
        return self.interval[1]


def eval_gegenbauer(alpha: float, m: int, x) -> np.ndarray:
    """Evaluate G_0 .. G_m at x; returns shape (m+1,) + shape(x)."""
    _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    out = np.empty((m + 1,) + x.shape)
    out[0] = 1.0
    if m >= 1:
        out[1] = x
    for k in range(1, m):
        out[k + 1] = (2 * (k + alpha) * x * out[k] - k * out[k - 1]) / (k + 2 * alpha)
    return out


def eval_gegenbauer_derivative(alpha: float, m: int, x) -> np.ndarray:
    """Evaluate G_0' .. G_m' at x via the differentiated recurrence."""
    _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    g = eval_gegenbauer(alpha, m, x)
    out = np.empty_like(g)
    out[0] = 0.0
    if m >= 1:
        out[1] = 1.0
    for k in range(1, m):
        out[k + 1] = (2 * (k + alpha) * (g[k] + x * out[k]) - k * out[k - 1]) / (k + 2 * alpha)
    return out


def node_polynomial(alpha: float, n: int, x) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate q_n = G_{n+1} - G_n and its derivative with O(1) row storage."""
    _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    g_prev, g = np.ones_like(x), x.copy()
    d_prev, d = np.zeros_like(x), np.ones_like(x)
    if n == 0:
        return g - g_prev, d - d_prev
    for k in range(1, n + 1):
        g_next = (2 * (k + alpha) * x * g - k * g_prev) / (k + 2 * alpha)
        d_next = (2 * (k + alpha) * (g + x * d) - k * d_prev) / (k + 2 * alpha)
        g_prev, g, d_prev, d = g, g_next, d, d_next
    return g - g_prev, d - d_prev


def leading_coefficient(alpha: float, n: int) -> float:
    """Coefficient of x^n in G_n.

    K_0 = K_1 = 1; otherwise
    K_n = 2^(n-1) Gamma(n+a) Gamma(2a+1) / (Gamma(n+2a) Gamma(a+1)).
    """
    _check_alpha(alpha)
    if n <= 1:
        return 1.0
    return math.exp(
        (n - 1) * math.log(2)
        + math.lgamma(n + alpha)
        + math.lgamma(2 * alpha + 1)
        - math.lgamma(n + 2 * alpha)
        - math.lgamma(alpha + 1)
    )


def normalization(alpha: float, n: int) -> float:
    """Squared weighted L2 norm of G_n on [-1, 1].

    For n >= 1 this is 2^(2a-1) n! Gamma(a+1/2)^2 / ((n+a) Gamma(n+2a)); the
    n = 0 value is computed from the equivalent form
    2^(2a) Gamma(a+1/2)^2 / Gamma(2a+1), which stays well-defined for a < 0
    and reduces to pi at a = 0 (returned exactly).
    """
    _check_alpha(alpha)
    if n == 0:
        if alpha == 0.0:
            return math.pi
        return math.exp(
            2 * alpha * math.log(2) + 2 * math.lgamma(alpha + 0.5) - math.lgamma(2 * alpha + 1)
        )
    return math.exp(
        (2 * alpha - 1) * math.log(2)
        + math.lgamma(n + 1)
        + 2 * math.lgamma(alpha + 0.5)
        - math.log(n + alpha)
        - math.lgamma(n + 2 * alpha)
    )


def _bracket_interior_roots(alpha: float, n: int):
    """Bracket the n interior roots of q_n by a sign scan, uniform in theta."""
    m = 8 * (n + 1) + 64
    for _ in range(5):
        theta = np.linspace(0.0, np.pi, m)[1:]  # skip the known root at x = 1
        xs = np.cos(theta)
        q, _ = node_polynomial(alpha, n, xs)
        signs = np.sign(q)
        flips = np.where(signs[:-1] * signs[1:] < 0)[0]
        if len(flips) == n:
            return xs[flips], xs[flips + 1], signs[flips]
        m *= 2
    raise RootFindingError(
        f"sign scan isolated {len(flips)} of {n} interior roots (alpha={alpha})"
    )


def gauss_radau_nodes(cfg: BasisConfig) -> np.ndarray:
    """Right-endpoint Gauss-Radau abscissas: 1 and the roots of q_n, descending.

    Interior roots are refined by Newton iteration started from the Chebyshev
    Gauss-Radau angles cos(2*pi*k/(2n+1)), with every iterate clamped to a
    sign-change bracket (bisection fallback) so each root stays in its basin.
    """
    alpha, n = cfg.alpha, cfg.n
    if n == 0:
        return np.array([1.0])
    hi, lo, sign_hi = _bracket_interior_roots(alpha, n)
    x = np.cos(2 * np.pi * np.arange(1, n + 1) / (2 * n + 1))
    x = np.where((x > lo) & (x < hi), x, 0.5 * (lo + hi))
    for _ in range(_ROOT_MAXITER):
        q, qd = node_polynomial(alpha, n, x)
        sq = np.sign(q)
        on_hi_side = sq == sign_hi
        hi = np.where(on_hi_side & (x < hi), x, hi)
        lo = np.where(~on_hi_side & (x > lo) & (sq != 0), x, lo)
        with np.errstate(all="ignore"):
            x_new = x - q / qd
        rejected = ~np.isfinite(x_new) | (x_new <= lo) | (x_new >= hi)
        x_new = np.where(rejected, 0.5 * (lo + hi), x_new)
        done = np.max(np.abs(x_new - x)) < _ROOT_TOL
        x = x_new
        if done:
            break
    else:
        raise RootFindingError(f"Newton did not converge in {_ROOT_MAXITER} iterations")
    # Polish: the step-size stop above can leave a residual q ~ 1e-11 where
    # q_n is steep (roots crowding -1 for negative parameters), which the
    # (1 + x)-weighted Christoffel numbers amplify.  Two unclamped sweeps
    # move the roots by O(1e-14) and drive q to roundoff.
    for _ in range(2):
        q, qd = node_polynomial(alpha, n, x)
        with np.errstate(all="ignore"):
            step = q / qd
        x = np.where(np.isfinite(step), x - step, x)
    nodes = np.concatenate(([1.0], x))
    if not (np.all(np.diff(nodes) < 0) and nodes[-1] > -1.0):
        raise RootFindingError("computed nodes are not strictly descending in (-1, 1]")
    return nodes


def christoffel_weights(cfg: BasisConfig, nodes: np.ndarray) -> np.ndarray:
    """Gauss-Radau quadrature weights against the Gegenbauer weight function.

    The rule integrates polynomials of degree <= 2n exactly; the fixed
    endpoint's weight carries the extra factor a + 1/2.
    """
    alpha, n = cfg.alpha, cfg.n
    g_n = eval_gegenbauer(alpha, n, nodes)[n]
    scale = math.exp(
        (2 * alpha - 1) * math.log(2)
        + 2 * math.lgamma(alpha + 0.5)
        + math.lgamma(n + 1)
        - math.log(n + alpha + 0.5)
        - math.lgamma(n + 2 * alpha + 1)
    )
    weights = scale * (1.0 + nodes) / g_n**2
    weights[0] *= alpha + 0.5
    return weights


def standard_nodeset(cfg: BasisConfig) -> NodeSet:
    """Nodes, weights and basis norms on the standard interval [-1, 1]."""
    nodes = gauss_radau_nodes(cfg)
    weights = christoffel_weights(cfg, nodes)
    lambdas = np.array([normalization(cfg.alpha, j) for j in range(cfg.n + 1)])
    return NodeSet(cfg.alpha, cfg.n, nodes, weights, lambdas, (-1.0, 1.0))


def shift_nodeset(nodeset: NodeSet, b: float) -> NodeSet:
    """Map a standard nodeset onto [0, b]: x -> (b/2)(x+1), scales by (b/2)^(2a).

    Both the weights and the basis norms pick up the same (b/2)^(2a) factor,
    so weight/norm ratios (hence the cardinal interpolation functions) are
    unchanged by the shift.
    """
    if b <= 0:
        raise ValueError(f"interval length must be positive, got {b}")
    if nodeset.interval != (-1.0, 1.0):
        raise ValueError("can only shift a standard [-1, 1] nodeset")
    factor = (b / 2.0) ** (2.0 * nodeset.alpha)
    return NodeSet(
        nodeset.alpha,
        nodeset.n,
        (b / 2.0) * (nodeset.nodes + 1.0),
        factor * nodeset.weights,
        factor * nodeset.lambdas,
        (0.0, b),
    )

"""Reference regularization methods to compare against.

Three standard methods for the ill-conditioned solve ``e x = y``:

- :func:`tikhonov`: closed-form ridge solution of
  ``min ||e x - y||_2^2 + rho^2 ||x||_2^2``;
- :func:`bpdn`: basis-pursuit denoising ``min ||e x - y||_2 + rho ||x||_1``
  (data term unsquared);
- :func:`dantzig`: the selector ``min ||e.T (e x - y)||_inf + rho ||x||_1``
  via a linear-programming reformulation.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NumericalError
from .linalg import as_square, as_vector, solve_gaussian
from .simplex import LpProblem, lp_solve

__all__ = [
    "SolverOptions",
    "IterativeResult",
    "tikhonov",
    "bpdn",
    "bpdn_objective",
    "dantzig",
    "dantzig_objective",
]


@dataclass(frozen=True)
class SolverOptions:
    max_iter: int = 2000
    tol: float = 1e-10
    acceleration: bool = True

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class IterativeResult:
    x: np.ndarray
    converged: bool
    iterations: int
    objective: float


def _problem(e, y, rho):
    m = as_square(e)
    v = as_vector(y, m.shape[0])
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    return m, v, float(rho)


def tikhonov(e, y, rho):
    """Ridge solution ``(e.T e + rho^2 I)^-1 e.T y`` via Gaussian elimination."""
    m, v, r = _problem(e, y, rho)
    normal = m.T @ m + (r * r) * np.eye(m.shape[0])
    return solve_gaussian(normal, m.T @ v)


def bpdn(e, y, rho, opts=None):
    """Basis-pursuit denoising with an unsquared data term.

    Reweighted quadratic majorization with a golden-section safeguard (see
    :func:`orthoreg._kernels.bpdn_iterate`); accepted on objective value.
    """
    m, v, r = _problem(e, y, rho)
    opts = opts or SolverOptions()
    theta_max = 4.0 if opts.acceleration else 1.0
    x, converged, iterations, objective = _kernels.bpdn_iterate(
        m, v, r, opts.max_iter, opts.tol, theta_max
    )
    return IterativeResult(
        x=x, converged=bool(converged), iterations=int(iterations), objective=float(objective)
    )


def bpdn_objective(e, y, rho, x):
    """The basis-pursuit denoising objective at ``x``."""
    m, v, r = _problem(e, y, rho)
    xx = as_vector(x, m.shape[0])
    return float(np.linalg.norm(m @ xx - v) + r * np.sum(np.abs(xx)))


def dantzig(e, y, rho, opts=None):
    """Dantzig selector via its linear-programming epigraph form.

    With ``x = xp - xm`` and ``t`` bounding the infinity norm:
    minimize ``t + rho * 1.(xp + xm)`` subject to
    ``-t 1 <= e.T (e x - y) <= t 1``, all variables nonnegative.
    """
    m, v, r = _problem(e, y, rho)
    opts = opts or SolverOptions()
    n = m.shape[0]
    mm = m.T @ m
    q = m.T @ v

    c = np.concatenate([np.full(2 * n, r), [1.0]])
    a_ub = np.zeros((2 * n, 2 * n + 1))
    a_ub[:n, :n] = mm
    a_ub[:n, n : 2 * n] = -mm
    a_ub[:n, 2 * n] = -1.0
    a_ub[n:, :n] = -mm
    a_ub[n:, n : 2 * n] = mm
    a_ub[n:, 2 * n] = -1.0
    b_ub = np.concatenate([q, -q])
    bounds = tuple((0.0, None) for _ in range(2 * n + 1))

    sol = lp_solve(LpProblem(c, a_ub, b_ub, bounds), max_iter=opts.max_iter * (2 * n + 1))
    if sol.status != "optimal":
        raise NumericalError(
            "selector LP reported %s; the objective is bounded below, so this "
            "indicates numerical breakdown" % sol.status
        )
    x = sol.x[:n] - sol.x[n : 2 * n]
    objective = float(np.max(np.abs(mm @ x - q)) + r * np.sum(np.abs(x)))
    return IterativeResult(
        x=x, converged=True, iterations=sol.iterations, objective=objective
    )


def dantzig_objective(e, y, rho, x):
    """The Dantzig-selector objective at ``x``."""
    m, v, r = _problem(e, y, rho)
    xx = as_vector(x, m.shape[0])
    return float(np.max(np.abs(m.T @ (m @ xx - v))) + r * np.sum(np.abs(xx)))

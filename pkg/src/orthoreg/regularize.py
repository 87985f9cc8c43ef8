"""The two structure-preserving regularization methods, plus the rho search.

Both methods trade accuracy for numerical stability through a single
parameter rho:

- :func:`homotopy_system`: the convex blend ``(1 - rho) g + rho z`` of a
  system with its projection ``z`` onto the orthogonal group; rho in [0, 1]
  sweeps a continuum from the original system (condition of ``g``) to an
  orthonormal one (condition 1).
- :func:`solve_quartic`: the minimizer of
  ``squared_distance(g, h) + rho * biorthogonality_defect(h, h)`` for
  rho >= 0, found by gradient descent with Armijo backtracking started at
  ``g``.  No closed form is known; solutions need not lie on the homotopy
  continuum.

:func:`rho_search` picks the rho minimizing ``||x(rho) - xbar||_2`` for a
given method on a given instance (coarse grid, then golden-section
refinement), which is how the benchmark compares methods per trial.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, baselines
from .errors import ConvergenceError, NumericalError
from .linalg import as_square, as_vector, solve_gaussian
from .measures import biorthogonality_defect, squared_distance
from .projection import polar_project

__all__ = [
    "OptimizerReport",
    "RhoSearchResult",
    "homotopy_system",
    "quartic_objective",
    "solve_quartic",
    "regularized_system",
    "solve_with_method",
    "rho_search",
    "REGULARIZED_METHODS",
    "ALL_METHODS",
]

REGULARIZED_METHODS = ("homotopy", "quartic", "tikhonov", "bpdn", "dantzig")
ALL_METHODS = ("direct",) + REGULARIZED_METHODS

RHO_GRID_POINTS = 64


@dataclass(frozen=True)
class OptimizerReport:
    iterations: int
    final_objective: float
    final_gradient_norm: float
    converged: bool
    first_step: float
    last_step: float


@dataclass(frozen=True)
class RhoSearchResult:
    rho: float
    residual: float
    evaluations: int
    failures: int


def homotopy_system(g, rho, _polar=None):
    """Blend ``g`` toward its orthogonal projection: ``(1-rho) g + rho z``.

    The endpoints are exact: rho = 0 returns ``g`` itself, rho = 1 returns
    the projection.  ``_polar`` lets callers that evaluate many rho values
    reuse a precomputed projection.
    """
    m = as_square(g)
    if not 0.0 <= rho <= 1.0:
        raise ValueError("homotopy parameter must lie in [0, 1], got %r" % rho)
    z = _polar if _polar is not None else polar_project(m).matrix
    if rho == 0.0:
        return m.copy()
    if rho == 1.0:
        return z.copy()
    return (1.0 - rho) * m + rho * z


def quartic_objective(h, g, rho):
    """``squared_distance(g, h) + rho * biorthogonality_defect(h, h)``."""
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    return squared_distance(g, h) + rho * biorthogonality_defect(h, h)


def solve_quartic(g, rho, grad_tol=1e-8, max_iter=2000, h0=None):
    """Minimize the quartic objective; returns ``(h, OptimizerReport)``.

    Starts at ``g`` unless ``h0`` overrides (multi-start studies).  Descent
    steps never increase the objective.  Convergence is declared at
    ``||grad||_F <= grad_tol * (1 + |objective|)``; hitting ``max_iter``
    returns the current iterate with ``converged=False``.  A non-finite
    objective (divergence) raises :class:`ConvergenceError` with the report
    attached.
    """
    m = as_square(g)
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    if grad_tol <= 0:
        raise ValueError("grad_tol must be positive")
    start = m if h0 is None else as_square(h0)
    if start.shape != m.shape:
        raise ValueError("h0 must match the shape of g")
    h, iters, obj, gnorm, converged, first_step, last_step, diverged = _kernels.quartic_descent(
        m, float(rho), float(grad_tol), int(max_iter), start
    )
    report = OptimizerReport(
        iterations=int(iters),
        final_objective=float(obj),
        final_gradient_norm=float(gnorm),
        converged=bool(converged),
        first_step=float(first_step),
        last_step=float(last_step),
    )
    if diverged:
        raise ConvergenceError("quartic descent produced a non-finite objective", report=report)
    return h, report


def regularized_system(method, g, rho, grad_tol=1e-8, max_iter=2000):
    """The regularized system a method substitutes for ``g`` at a given rho."""
    if method == "homotopy":
        return homotopy_system(g, rho)
    if method == "quartic":
        return solve_quartic(g, rho, grad_tol=grad_tol, max_iter=max_iter)[0]
    raise ValueError("no regularized system for method %r" % method)


def solve_with_method(method, e, y, rho=0.0, opts=None):
    """Solve ``e x = y`` with one of the named methods at a fixed rho."""
    m = as_square(e)
    v = as_vector(y, m.shape[0])
    if method == "direct":
        return solve_gaussian(m, v)
    if method == "homotopy":
        return solve_gaussian(homotopy_system(m, rho), v)
    if method == "quartic":
        return solve_gaussian(solve_quartic(m, rho)[0], v)
    if method == "tikhonov":
        return baselines.tikhonov(m, v, rho)
    if method == "bpdn":
        return baselines.bpdn(m, v, rho, opts).x
    if method == "dantzig":
        return baselines.dantzig(m, v, rho, opts).x
    raise ValueError("unknown method %r (expected one of %s)" % (method, ", ".join(ALL_METHODS)))


def _make_evaluator(method, e, y, opts):
    """Return ``f(rho) -> x`` with per-instance work hoisted out."""
    if method == "homotopy":
        z = polar_project(e).matrix

        def solve(rho):
            return solve_gaussian(homotopy_system(e, rho, _polar=z), y)

    elif method == "quartic":

        def solve(rho):
            return solve_gaussian(solve_quartic(e, rho)[0], y)

    elif method == "tikhonov":

        def solve(rho):
            return baselines.tikhonov(e, y, rho)

    elif method == "bpdn":

        def solve(rho):
            return baselines.bpdn(e, y, rho, opts).x

    elif method == "dantzig":

        def solve(rho):
            return baselines.dantzig(e, y, rho, opts).x

    else:
        raise ValueError(
            "unknown method %r (expected one of %s)" % (method, ", ".join(REGULARIZED_METHODS))
        )
    return solve


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def rho_search(method, e, y, xbar, tol=1e-6, opts=None):
    """Find the rho minimizing the residual ``||x(rho) - xbar||_2``.

    Evaluates a coarse grid over the method's rho domain (64 uniform points
    over [0, 1], expanded fourfold for the weighted methods when the
    minimizer lands on the upper boundary, plus log-spaced points near zero
    where ill-conditioned instances keep their optimum), then refines the
    bracket around the grid minimum by golden-section search down to
    ``tol``.

    Per-rho solver failures are skipped and counted; if every evaluation
    fails, :class:`NumericalError` is raised.

    Returns a :class:`RhoSearchResult`.
    """
    m = as_square(e)
    v = as_vector(y, m.shape[0])
    target = as_vector(xbar, m.shape[0])
    if tol <= 0:
        raise ValueError("tol must be positive")
    solve = _make_evaluator(method, m, v, opts)

    failures = 0
    evaluations = 0
    best_rho = 0.0
    best_val = np.inf

    def residual_at(rho):
        nonlocal failures, evaluations, best_rho, best_val
        evaluations += 1
        try:
            x = solve(rho)
        except NumericalError:
            failures += 1
            return np.inf
        r = float(np.linalg.norm(x - target))
        if not np.isfinite(r):
            return np.inf
        if r < best_val:
            best_val = r
            best_rho = float(rho)
        return r

    hi = 1.0
    expansions = 0
    while True:
        # uniform coverage of the domain, plus log-spaced points near zero:
        # for exponentially ill-conditioned systems the best rho can sit many
        # decades below the uniform spacing.
        grid = np.unique(
            np.concatenate(
                [np.linspace(0.0, hi, RHO_GRID_POINTS), np.logspace(-12, -2, 11)]
            )
        )
        values = np.array([residual_at(r) for r in grid])
        best = int(np.argmin(values))
        if (
            method != "homotopy"
            and best == grid.shape[0] - 1
            and np.isfinite(values[best])
            and expansions < 3
        ):
            hi *= 4.0
            expansions += 1
            continue
        break

    if not np.isfinite(best_val):
        raise NumericalError("every rho evaluation failed for method %r" % method)

    a = float(grid[max(best - 1, 0)])
    b = float(grid[min(best + 1, grid.shape[0] - 1)])
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc = residual_at(c)
    fd = residual_at(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = residual_at(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = residual_at(d)

    return RhoSearchResult(
        rho=best_rho, residual=best_val, evaluations=evaluations, failures=failures
    )

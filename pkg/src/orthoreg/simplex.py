"""Dense two-phase simplex for small linear programs.

Problems are stated as

    minimize    c @ x
    subject to  a_ub @ x <= b_ub,   bounds[j][0] <= x_j <= bounds[j][1]

with ``None`` standing for an unbounded side.  Internally variables are
shifted/split to nonnegative form, slacks turn the inequalities into
equalities, and artificials make phase 1 feasible.  Pivoting starts with the
most-negative-reduced-cost rule and falls back to Bland's rule after a fixed
number of iterations to guarantee termination; both cost rows are carried
through phase 1.

Sizes here are tiny (tens of variables), so everything is dense numpy.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError

__all__ = ["LpProblem", "LpSolution", "lp_solve"]


@dataclass(frozen=True)
class LpProblem:
    c: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray
    bounds: tuple  # per-variable (low, high), None for unbounded

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.float64)
        a = np.asarray(self.a_ub, dtype=np.float64)
        b = np.asarray(self.b_ub, dtype=np.float64)
        if c.ndim != 1:
            raise ValueError("objective must be a vector")
        if a.ndim != 2 or a.shape != (b.shape[0], c.shape[0]):
            raise ValueError(
                "constraint dimensions inconsistent: a_ub %r, b_ub %r, c %r"
                % (a.shape, b.shape, c.shape)
            )
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("problem data must be finite")
        if len(self.bounds) != c.shape[0]:
            raise ValueError("one (low, high) pair per variable required")
        object.__setattr__(self, "c", np.ascontiguousarray(c))
        object.__setattr__(self, "a_ub", np.ascontiguousarray(a))
        object.__setattr__(self, "b_ub", np.ascontiguousarray(b))
        object.__setattr__(self, "bounds", tuple(tuple(p) for p in self.bounds))


@dataclass(frozen=True)
class LpSolution:
    x: np.ndarray
    status: str  # optimal | infeasible | unbounded
    objective: float
    iterations: int
    primal_residual: float = 0.0
    comp_slack_residual: float = 0.0
    certified: bool = False


def _to_standard_form(p):
    """Rewrite with nonnegative variables z: returns (c, A, b, const, recover).

    ``recover(z)`` maps a standard-form point back to the original variables.
    Finite lower bounds shift, inverted upper-only bounds flip, two-sided
    bounds add a row, free variables split.
    """
    n = p.c.shape[0]
    cols = []  # per original var: list of (z_index, sign)
    shifts = np.zeros(n)
    extra_rows = []  # (z_index, limit) for two-sided bounds
    z_count = 0
    for j, (lo, hi) in enumerate(p.bounds):
        lo_f = -np.inf if lo is None else float(lo)
        hi_f = np.inf if hi is None else float(hi)
        if lo_f > hi_f:
            raise ValueError("variable %d has empty bound interval" % j)
        if np.isfinite(lo_f):
            cols.append([(z_count, 1.0)])
            shifts[j] = lo_f
            if np.isfinite(hi_f):
                extra_rows.append((z_count, hi_f - lo_f))
            z_count += 1
        elif np.isfinite(hi_f):
            cols.append([(z_count, -1.0)])
            shifts[j] = hi_f
            z_count += 1
        else:
            cols.append([(z_count, 1.0), (z_count + 1, -1.0)])
            z_count += 2

    m = p.a_ub.shape[0]
    a = np.zeros((m + len(extra_rows), z_count))
    b = np.zeros(m + len(extra_rows))
    c = np.zeros(z_count)
    const = float(p.c @ shifts)
    b[:m] = p.b_ub - p.a_ub @ shifts
    for j in range(n):
        for zi, sgn in cols[j]:
            a[:m, zi] += sgn * p.a_ub[:, j]
            c[zi] += sgn * p.c[j]
    for r, (zi, limit) in enumerate(extra_rows):
        a[m + r, zi] = 1.0
        b[m + r] = limit

    def recover(z):
        x = shifts.copy()
        for j in range(n):
            for zi, sgn in cols[j]:
                x[j] += sgn * z[zi]
        return x

    return c, a, b, const, recover


def _pivot(tab, basis, row, col):
    tab[row] /= tab[row, col]
    piv_row = tab[row]
    for r in range(tab.shape[0]):
        if r != row and tab[r, col] != 0.0:
            tab[r] -= tab[r, col] * piv_row
    basis[row] = col


def _choose_entering(costs, tol, bland):
    if bland:
        for j in range(costs.shape[0]):
            if costs[j] < -tol:
                return j
        return -1
    j = int(np.argmin(costs))
    return j if costs[j] < -tol else -1


def _choose_leaving(tab, basis, col, m, tol):
    best_ratio = np.inf
    best_row = -1
    for r in range(m):
        a = tab[r, col]
        if a > tol:
            ratio = tab[r, -1] / a
            if ratio < best_ratio - 1e-12 or (
                ratio < best_ratio + 1e-12
                and (best_row == -1 or basis[r] < basis[best_row])
            ):
                best_ratio = ratio
                best_row = r
    return best_row


def lp_solve(problem, max_iter=None):
    """Solve an :class:`LpProblem`; returns an :class:`LpSolution`.

    Statuses ``infeasible`` and ``unbounded`` are reported, not raised.  A
    cycling guard (iteration cap with Bland fallback already active) raises
    :class:`ConvergenceError`.  Optimal solutions are checked for primal
    feasibility and complementary slackness; the residuals and the
    ``certified`` verdict (both below ``1e-8`` scaled) ride along.
    """
    c, a, b, const, recover = _to_standard_form(problem)
    m, nz = a.shape
    scale = max(
        1.0,
        float(np.max(np.abs(a))) if a.size else 1.0,
        float(np.max(np.abs(b))) if b.size else 1.0,
        float(np.max(np.abs(c))) if c.size else 1.0,
    )
    tol = 1e-9 * scale
    if max_iter is None:
        max_iter = 200 + 50 * (m + nz)
    bland_after = 5 * (m + nz) + 20

    # rows with negative rhs get negated; their slacks enter with -1 and an
    # artificial variable takes their place in the starting basis
    a_work = a.copy()
    b_work = b.copy()
    slack = np.eye(m)
    neg = b_work < 0
    a_work[neg] *= -1.0
    b_work[neg] *= -1.0
    slack[neg] *= -1.0
    art_rows = np.flatnonzero(neg)
    n_art = art_rows.shape[0]

    total = nz + m + n_art
    # tableau: m constraint rows, one phase-2 cost row, one phase-1 cost row
    tab = np.zeros((m + 2, total + 1))
    tab[:m, :nz] = a_work
    tab[:m, nz : nz + m] = slack
    for i, r in enumerate(art_rows):
        tab[r, nz + m + i] = 1.0
    tab[:m, -1] = b_work
    tab[m, :nz] = c
    basis = np.empty(m, dtype=np.int64)
    for r in range(m):
        basis[r] = nz + r
    for i, r in enumerate(art_rows):
        basis[r] = nz + m + i
    # phase-1 objective: sum of artificials, expressed over the basis
    for r in art_rows:
        tab[m + 1] -= tab[r]
    tab[m + 1, nz + m : -1] = 0.0

    iterations = 0

    def run_phase(cost_row, ncols):
        nonlocal iterations
        while True:
            if iterations > max_iter:
                raise ConvergenceError("simplex cycling guard: iteration cap reached")
            bland = iterations > bland_after
            col = _choose_entering(tab[cost_row, :ncols], tol, bland)
            if col < 0:
                return "optimal"
            row = _choose_leaving(tab, basis, col, m, 1e-11 * scale)
            if row < 0:
                return "unbounded"
            _pivot(tab, basis, row, col)
            iterations += 1

    if n_art:
        status = run_phase(m + 1, total)
        if status != "optimal":
            raise ConvergenceError("phase 1 reported unbounded; numerical breakdown")
        phase1_value = -tab[m + 1, -1]  # cost row rhs tracks the negated objective
        if phase1_value > 1e-7 * scale:
            return LpSolution(
                x=recover(np.zeros(nz)),
                status="infeasible",
                objective=np.nan,
                iterations=iterations,
            )
        # drive any artificial still basic at zero level out of the basis
        for r in range(m):
            if basis[r] >= nz + m:
                for j in range(nz + m):
                    if abs(tab[r, j]) > tol:
                        _pivot(tab, basis, r, j)
                        iterations += 1
                        break
        tab[:, nz + m : -1] = 0.0  # retire artificial columns

    status = run_phase(m, nz + m)
    if status == "unbounded":
        return LpSolution(
            x=recover(np.zeros(nz)),
            status="unbounded",
            objective=-np.inf,
            iterations=iterations,
        )

    z = np.zeros(nz + m)
    for r in range(m):
        if basis[r] < nz + m:
            z[basis[r]] = tab[r, -1]
    x = recover(z[:nz])
    objective = float(problem.c @ x)

    # verification: primal feasibility and complementary slackness
    slack_vals = problem.b_ub - problem.a_ub @ x
    primal_res = float(max(0.0, -np.min(slack_vals))) if slack_vals.size else 0.0
    for j, (lo, hi) in enumerate(problem.bounds):
        if lo is not None:
            primal_res = max(primal_res, lo - x[j])
        if hi is not None:
            primal_res = max(primal_res, x[j] - hi)
    # duals of the standard-form rows live in the cost row under the slacks
    duals = tab[m, nz : nz + m].copy()
    row_slacks = b - a @ z[:nz]
    cs = float(np.max(np.abs(duals[:m] * row_slacks))) if m else 0.0
    red = tab[m, : nz + m]
    dual_res = float(max(0.0, -np.min(red))) if red.size else 0.0
    cs = max(cs, float(np.max(np.abs(red[: nz] * z[:nz]))) if nz else 0.0)
    certified = primal_res <= 1e-8 * scale and cs <= 1e-8 * scale and dual_res <= 1e-8 * scale

    return LpSolution(
        x=x,
        status="optimal",
        objective=objective,
        iterations=iterations,
        primal_residual=primal_res,
        comp_slack_residual=cs,
        certified=bool(certified),
    )

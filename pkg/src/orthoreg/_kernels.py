"""Hot numeric kernels.

Every function in this module is written in nopython-compatible numpy and is
compiled with ``@jit`` from :mod:`orthoreg._backend` (numba ``@njit`` or a
no-op, depending on ``ORTHOREG_BACKEND``).  Kernels never raise; they return
status codes that the wrapping modules turn into exceptions.

Problem sizes are small (N <= 64, typically 18), so the kernels favour
simple dense loops over blocking.
"""

import numpy as np

from ._backend import jit


@jit
def jacobi_svd(a, max_sweeps, rel_tol):
    """One-sided Jacobi SVD of a square matrix.

    Rotates column pairs of ``a`` until all pairs are orthogonal relative to
    ``rel_tol`` (Hestenes method; small singular values come out with high
    relative accuracy).  Works on the transpose so that the vectors being
    rotated are contiguous rows.

    Returns ``(u, sigma, v, converged)`` with ``a = u @ diag(sigma) @ v.T``,
    ``sigma`` sorted descending.
    """
    n = a.shape[0]
    wt = np.ascontiguousarray(a.T).copy()  # wt[k] is column k of the input
    vt = np.eye(n)

    converged = False
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = np.dot(wt[p], wt[p])
                beta = np.dot(wt[q], wt[q])
                gamma = np.dot(wt[p], wt[q])
                if alpha == 0.0 or beta == 0.0:
                    continue
                if abs(gamma) <= rel_tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                if zeta >= 0.0:
                    t = 1.0 / (zeta + np.sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                for i in range(n):
                    wp = wt[p, i]
                    wq = wt[q, i]
                    wt[p, i] = c * wp - s * wq
                    wt[q, i] = s * wp + c * wq
                    vp = vt[p, i]
                    vq = vt[q, i]
                    vt[p, i] = c * vp - s * vq
                    vt[q, i] = s * vp + c * vq
        if not rotated:
            converged = True
            break

    sigma = np.empty(n)
    for k in range(n):
        sigma[k] = np.sqrt(np.dot(wt[k], wt[k]))

    # stable insertion sort, descending
    order = np.arange(n)
    for k in range(1, n):
        j = k
        while j > 0 and sigma[order[j - 1]] < sigma[order[j]]:
            tmp = order[j - 1]
            order[j - 1] = order[j]
            order[j] = tmp
            j -= 1

    ut = np.empty((n, n))
    vt_sorted = np.empty((n, n))
    sigma_sorted = np.empty(n)
    for k in range(n):
        src = order[k]
        sigma_sorted[k] = sigma[src]
        vt_sorted[k] = vt[src]
        if sigma[src] > 0.0:
            ut[k] = wt[src] / sigma[src]
        else:
            ut[k] = 0.0 * wt[src]

    # complete exactly-zero columns of u to an orthonormal basis
    for k in range(n):
        if sigma_sorted[k] > 0.0:
            continue
        for cand in range(n):
            for i in range(n):
                ut[k, i] = 0.0
            ut[k, cand] = 1.0
            for _ in range(2):  # two Gram-Schmidt passes
                for j in range(n):
                    if j == k or (sigma_sorted[j] == 0.0 and j > k):
                        continue
                    proj = np.dot(ut[j], ut[k])
                    for i in range(n):
                        ut[k, i] -= proj * ut[j, i]
            nrm = np.sqrt(np.dot(ut[k], ut[k]))
            if nrm > 0.5:
                for i in range(n):
                    ut[k, i] /= nrm
                break

    return ut.T.copy(), sigma_sorted, vt_sorted.T.copy(), converged


@jit
def gauss_solve(a, rhs):
    """Gaussian elimination with partial pivoting, multiple right-hand sides.

    Returns ``(x, min_pivot, perm_sign, exact_zero)``.  ``min_pivot`` is the
    smallest absolute pivot encountered; ``exact_zero`` flags a hard
    breakdown (zero pivot after pivoting).  The solve is best-effort: tiny
    pivots do not abort.
    """
    n = a.shape[0]
    k = rhs.shape[1]
    m = a.copy()
    x = rhs.copy()
    sign = 1
    min_pivot = np.inf
    exact_zero = False

    for col in range(n):
        piv = col
        best = abs(m[col, col])
        for r in range(col + 1, n):
            v = abs(m[r, col])
            if v > best:
                best = v
                piv = r
        if piv != col:
            for j in range(n):
                tmp = m[col, j]
                m[col, j] = m[piv, j]
                m[piv, j] = tmp
            for j in range(k):
                tmp = x[col, j]
                x[col, j] = x[piv, j]
                x[piv, j] = tmp
            sign = -sign
        pivot = m[col, col]
        if pivot == 0.0:
            exact_zero = True
            return x, 0.0, sign, exact_zero
        if abs(pivot) < min_pivot:
            min_pivot = abs(pivot)
        for r in range(col + 1, n):
            f = m[r, col] / pivot
            if f != 0.0:
                m[r, col] = 0.0
                for j in range(col + 1, n):
                    m[r, j] -= f * m[col, j]
                for j in range(k):
                    x[r, j] -= f * x[col, j]

    for col in range(n - 1, -1, -1):
        pivot = m[col, col]
        for j in range(k):
            acc = x[col, j]
            for r in range(col + 1, n):
                acc -= m[col, r] * x[r, j]
            x[col, j] = acc / pivot
    return x, min_pivot, sign, exact_zero


@jit
def det_pivots(a):
    """Sign information from pivoted elimination.

    Returns ``(sign, min_pivot)`` where ``sign`` is the determinant sign as
    ``perm_sign * prod(sign(pivots))`` computed without forming the product
    (which underflows for the matrices this package targets).
    """
    n = a.shape[0]
    m = a.copy()
    sign = 1
    min_pivot = np.inf
    for col in range(n):
        piv = col
        best = abs(m[col, col])
        for r in range(col + 1, n):
            v = abs(m[r, col])
            if v > best:
                best = v
                piv = r
        if piv != col:
            for j in range(n):
                tmp = m[col, j]
                m[col, j] = m[piv, j]
                m[piv, j] = tmp
            sign = -sign
        pivot = m[col, col]
        if pivot == 0.0:
            return 0, 0.0
        if pivot < 0.0:
            sign = -sign
        if abs(pivot) < min_pivot:
            min_pivot = abs(pivot)
        for r in range(col + 1, n):
            f = m[r, col] / pivot
            if f != 0.0:
                for j in range(col, n):
                    m[r, j] -= f * m[col, j]
    return sign, min_pivot


@jit
def _quartic_value(h, g, rho, eye):
    d = h - g
    r = np.dot(np.ascontiguousarray(h.T), h) - eye
    return np.sum(d * d) + rho * np.sum(r * r)


@jit
def quartic_descent(g, rho, grad_tol, max_iter, h0):
    """Gradient descent with Armijo backtracking on the quartic objective

        ||h - g||_F^2 + rho * ||h.T h - I||_F^2

    started at ``h0`` (callers default it to ``g``).  Accepted steps never
    increase the objective.

    Returns ``(h, iterations, objective, grad_norm, converged, first_step,
    last_step, diverged)``.
    """
    n = g.shape[0]
    eye = np.eye(n)
    h = h0.copy()
    f = _quartic_value(h, g, rho, eye)
    step = 1.0
    first_step = 0.0
    last_step = 0.0
    converged = False
    diverged = False
    iterations = 0
    gnorm = 0.0

    for it in range(max_iter):
        r = np.dot(np.ascontiguousarray(h.T), h) - eye
        grad = 2.0 * (h - g) + 4.0 * rho * np.dot(h, r)
        gnorm = np.sqrt(np.sum(grad * grad))
        if not np.isfinite(gnorm) or not np.isfinite(f):
            diverged = True
            break
        if gnorm <= grad_tol * (1.0 + abs(f)):
            converged = True
            break

        t = min(2.0 * step, 1.0) if it > 0 else 1.0
        accepted = False
        f_new = f
        while t >= 1e-20:
            h_new = h - t * grad
            f_new = _quartic_value(h_new, g, rho, eye)
            decrease = 1e-4 * t * gnorm * gnorm
            if np.isfinite(f_new) and f_new <= f - decrease:
                accepted = True
                break
            # near the optimum the Armijo quantum falls below the floating
            # point resolution of f; settle for plain non-increase there
            if np.isfinite(f_new) and f_new <= f and decrease <= 2.3e-16 * (1.0 + abs(f)):
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break  # step size underflow: no further progress possible
        h = h - t * grad
        f = f_new
        step = t
        if iterations == 0:
            first_step = t
        last_step = t
        iterations += 1

    return h, iterations, f, gnorm, converged, first_step, last_step, diverged


@jit
def _l1_norm(x):
    acc = 0.0
    for i in range(x.shape[0]):
        acc += abs(x[i])
    return acc


@jit
def _bpdn_value(resid, x, rho):
    return np.sqrt(np.dot(resid, resid)) + rho * _l1_norm(x)


@jit
def bpdn_iterate(e, y, rho, max_iter, tol, theta_max):
    """Minimize ``||e x - y||_2 + rho ||x||_1`` (data term unsquared).

    Majorize-minimize scheme: both the data term and the l1 term are
    replaced by quadratic majorizers at the current iterate (reweighting),
    each subproblem is one dense symmetric solve, and a golden-section
    search along the resulting displacement safeguards monotone decrease of
    the true objective.  Converged once the relative objective decrease is
    below ``tol`` for 10 consecutive iterations.

    Returns ``(x, converged, iterations, objective)``.
    """
    n = e.shape[0]
    et = np.ascontiguousarray(e.T)
    m = np.dot(et, e)
    q = np.dot(et, y)

    x = np.zeros(n)
    resid = -y.copy()
    f = _bpdn_value(resid, x, rho)
    eps_w = 1e-15 * (1.0 + np.sqrt(np.dot(y, y)))
    eps_d = 1.0
    stall = 0
    converged = False
    iterations = 0
    invphi = (np.sqrt(5.0) - 1.0) / 2.0

    for _ in range(max_iter):
        w = max(np.sqrt(np.dot(resid, resid)), eps_w)
        sys = m / w
        for i in range(n):
            sys[i, i] += rho / max(abs(x[i]), eps_d)
        target = (q / w).reshape(n, 1)
        z, _piv, _sgn, zero = gauss_solve(sys, target)
        if zero:
            break
        delta = z[:, 0] - x
        rdelta = np.dot(e, delta)

        # golden-section polish of f(x + theta*delta) on [0, theta_max]
        lo = 0.0
        hi = theta_max
        t1 = hi - invphi * (hi - lo)
        t2 = lo + invphi * (hi - lo)
        f1 = _bpdn_value(resid + t1 * rdelta, x + t1 * delta, rho)
        f2 = _bpdn_value(resid + t2 * rdelta, x + t2 * delta, rho)
        for _gs in range(60):
            if hi - lo <= 1e-10 * theta_max:
                break
            if f1 <= f2:
                hi = t2
                t2 = t1
                f2 = f1
                t1 = hi - invphi * (hi - lo)
                f1 = _bpdn_value(resid + t1 * rdelta, x + t1 * delta, rho)
            else:
                lo = t1
                t1 = t2
                f1 = f2
                t2 = lo + invphi * (hi - lo)
                f2 = _bpdn_value(resid + t2 * rdelta, x + t2 * delta, rho)
        theta = 0.5 * (lo + hi)
        # candidate set: golden midpoint, the raw MM step, no move
        best_theta = 0.0
        best_f = f
        for cand in (theta, 1.0):
            fc = _bpdn_value(resid + cand * rdelta, x + cand * delta, rho)
            if fc < best_f:
                best_f = fc
                best_theta = cand

        iterations += 1
        if best_theta > 0.0:
            x = x + best_theta * delta
            resid = resid + best_theta * rdelta
        rel_dec = (f - best_f) / max(f, 1e-300)
        f = best_f
        eps_d = max(eps_d * 0.7, 1e-12)
        if rel_dec < tol:
            stall += 1
        else:
            stall = 0
        if stall >= 10:
            converged = True
            break

    return x, converged, iterations, f

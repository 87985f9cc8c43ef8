"""Dense real linear algebra primitives.

A *system* (an ordered collection of N vectors in R^N, typically a basis) is
represented throughout the package as an (N, N) float64 array whose columns
are the vectors; :func:`vectors_to_matrix` / :func:`matrix_to_vectors`
convert losslessly between the two views.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConvergenceError, SingularMatrixError

__all__ = [
    "SvdFactors",
    "as_square",
    "vectors_to_matrix",
    "matrix_to_vectors",
    "svd",
    "condition_number",
    "det_sign",
    "solve_gaussian",
    "biorthogonal",
    "gram_residual",
]

# relative threshold below which a pivot is treated as a numerical zero
PIVOT_RTOL = 1e-14
# off-diagonal convergence tolerance for the Jacobi sweeps
SVD_RTOL = 1e-14


def as_square(a):
    """Validate and return ``a`` as a square, finite float64 array."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix, got shape %r" % (m.shape,))
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return np.ascontiguousarray(m)


def as_vector(y, n=None):
    """Validate and return ``y`` as a finite float64 vector."""
    v = np.asarray(y, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError("expected a vector, got shape %r" % (v.shape,))
    if n is not None and v.shape[0] != n:
        raise ValueError("expected a vector of length %d, got %d" % (n, v.shape[0]))
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return np.ascontiguousarray(v)


def vectors_to_matrix(vectors):
    """Stack N length-N vectors as the columns of a matrix."""
    vs = [as_vector(v) for v in vectors]
    n = len(vs)
    if n == 0:
        raise ValueError("a system needs at least one vector")
    if any(v.shape[0] != n for v in vs):
        raise ValueError("a system of N vectors requires each to have length N")
    return np.ascontiguousarray(np.column_stack(vs))


def matrix_to_vectors(a):
    """Return the columns of a square matrix as a list of vectors."""
    m = as_square(a)
    return [m[:, k].copy() for k in range(m.shape[1])]


@dataclass(frozen=True)
class SvdFactors:
    """Factors of ``a = u @ diag(sigma) @ v.T`` with sigma descending."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray


def svd(a):
    """Singular value decomposition via one-sided Jacobi sweeps.

    Accurate for the small dense matrices this package targets; small
    singular values retain high relative accuracy, which the condition
    number estimates rely on.
    """
    m = as_square(a)
    n = m.shape[0]
    u, sigma, v, converged = _kernels.jacobi_svd(m, 30 * n * n, SVD_RTOL)
    if not converged:
        raise ConvergenceError("SVD sweeps did not converge within 30*N^2 sweeps")
    return SvdFactors(u=u, sigma=sigma, v=v)


def condition_number(a):
    """Ratio of extremal singular values; ``inf`` when numerically singular."""
    f = svd(a)
    smax = f.sigma[0]
    smin = f.sigma[-1]
    if smin <= 1e-300:
        return np.inf
    return float(smax / smin)


def det_sign(a):
    """Sign of the determinant via pivoted elimination: +1, -1 or 0.

    Returns 0 when some pivot falls below ``1e-14 * ||a||_F`` (numerically
    singular).  The sign is tracked pivot by pivot; the determinant itself is
    never formed (it underflows for the ill-conditioned inputs of interest).
    """
    m = as_square(a)
    sign, min_pivot = _kernels.det_pivots(m)
    fro = float(np.linalg.norm(m))
    if sign == 0 or min_pivot < PIVOT_RTOL * fro:
        return 0
    return int(sign)


def solve_gaussian(a, y):
    """Solve ``a x = y`` by Gaussian elimination with partial pivoting.

    Best-effort on ill-conditioned input: only an exactly zero pivot (after
    pivoting) raises.
    """
    m = as_square(a)
    v = as_vector(y, m.shape[0])
    x, _piv, _sign, exact_zero = _kernels.gauss_solve(m, v.reshape(-1, 1))
    if exact_zero:
        raise SingularMatrixError("matrix is exactly singular (zero pivot)")
    return x[:, 0]


def biorthogonal(a):
    """The biorthogonal system: inverse transpose of the matrix form.

    Columns b_j of the result satisfy <a_k, b_j> = delta_kj.  Raises for
    numerically singular input (pivot below ``1e-14 * ||a||_F``).
    """
    m = as_square(a)
    n = m.shape[0]
    inv, min_pivot, _sign, exact_zero = _kernels.gauss_solve(m, np.eye(n))
    fro = float(np.linalg.norm(m))
    if exact_zero or min_pivot < PIVOT_RTOL * fro:
        raise SingularMatrixError("matrix is numerically singular; no biorthogonal system")
    return np.ascontiguousarray(inv.T)


def gram_residual(a):
    """The Gram residual ``a.T a - I``, symmetrized exactly."""
    m = as_square(a)
    r = m.T @ m - np.eye(m.shape[0])
    return (r + r.T) / 2.0

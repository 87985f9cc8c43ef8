"""Scalar measures on pairs of systems, and their gradients.

Systems are (N, N) arrays with the vectors as columns.  The two measures:

- :func:`biorthogonality_defect`: how far a pair is from being mutually
  biorthogonal; ``||A.T B - I||_F^2``.  Zero exactly when ``b`` is the
  biorthogonal system of ``a``; on the diagonal (``a == b``) zero exactly
  when ``a`` is orthonormal.
- :func:`squared_distance`: sum of squared Euclidean distances between
  corresponding vectors; ``||A - B||_F^2``.

The two coincide whenever the second argument is orthogonal.

Gradients are with respect to one vector (0-based column index ``k``) of the
second system.  Each is validated against central finite differences of its
parent measure; see docs/notes.md for the cross-term coefficient in
:func:`grad_self_defect`.
"""

import numpy as np

from .linalg import as_square

__all__ = [
    "biorthogonality_defect",
    "squared_distance",
    "grad_squared_distance",
    "grad_cross_defect",
    "grad_self_defect",
]


def _pair(a, b):
    ma = as_square(a)
    mb = as_square(b)
    if ma.shape != mb.shape:
        raise ValueError("systems must share one dimension, got %r and %r" % (ma.shape, mb.shape))
    return ma, mb


def _check_index(n, k):
    if not 0 <= k < n:
        raise IndexError("vector index %d out of range for dimension %d" % (k, n))


def biorthogonality_defect(a, b):
    """sum_k sum_j (<a_k, b_j> - delta_kj)^2  ==  ||A.T B - I||_F^2."""
    ma, mb = _pair(a, b)
    m = ma.T @ mb - np.eye(ma.shape[0])
    return float(np.sum(m * m))


def squared_distance(a, b):
    """sum_k ||a_k - b_k||_2^2  ==  ||A - B||_F^2."""
    ma, mb = _pair(a, b)
    d = ma - mb
    return float(np.sum(d * d))


def grad_squared_distance(g, h, k):
    """Gradient of squared_distance(g, h) in h_k: ``2 (h_k - g_k)``."""
    mg, mh = _pair(g, h)
    _check_index(mg.shape[0], k)
    return 2.0 * (mh[:, k] - mg[:, k])


def grad_cross_defect(g, h, k):
    """Gradient of biorthogonality_defect(g, h) in h_k.

    ``2 sum_j (<g_j, h_k> - delta_jk) g_j``.  Equals
    :func:`grad_squared_distance` when restricted to orthogonal ``h``
    arguments, where the two parent measures agree.
    """
    mg, mh = _pair(g, h)
    _check_index(mg.shape[0], k)
    coeffs = mg.T @ mh[:, k]
    coeffs[k] -= 1.0
    return 2.0 * (mg @ coeffs)


def grad_self_defect(h, k):
    """Gradient of biorthogonality_defect(h, h) in h_k: ``4 (H H.T - I) h_k``.

    Expanded: ``4 (<h_k,h_k> - 1) h_k + 4 sum_{j != k} <h_j,h_k> h_j``.  The
    cross-term coefficient 4 (both orderings of each off-diagonal pair
    contribute) is pinned by the finite-difference tests.
    """
    mh = as_square(h)
    _check_index(mh.shape[0], k)
    hk = mh[:, k]
    return 4.0 * (mh @ (mh.T @ hk) - hk)

"""Projection of a system onto the orthogonal group.

The nearest orthogonal system to ``g`` (in the squared-distance sense, and
equivalently the most biorthogonal one) is ``u @ v.T`` from the SVD
``g = u s v.T``.  Geometrically, each semiaxis of the ellipsoid described by
the SVD is radially rescaled to unit length.  For nearly orthogonal input
the same projection is available as a certified truncated power series in
the Gram residual, without computing an SVD.

The orthogonal group has two connected components told apart by determinant
sign; the projection never crosses between them.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotNearlyOrthogonalError, SingularMatrixError
from .linalg import as_square, det_sign, gram_residual, svd

__all__ = [
    "OrthogonalSystem",
    "SeriesCertificate",
    "polar_project",
    "manifold_of",
    "series_project",
    "orthogonal_dual",
    "SERIES_TERM_CAP",
]

SERIES_TERM_CAP = 200


class OrthogonalSystem(NamedTuple):
    """An orthogonal system together with its connected component (+-1)."""

    matrix: np.ndarray
    manifold: int


@dataclass(frozen=True)
class SeriesCertificate:
    """Evidence that the truncated series projection met its tolerance.

    ``gershgorin_bound`` is the certified upper bound on the spectral radius
    of the Gram residual; ``certified`` means that bound is below one.  When
    the term cap is hit before the tail bound reaches the tolerance, the
    result is computed via the SVD route instead and ``used_svd_fallback``
    is set.
    """

    gershgorin_bound: float
    certified: bool
    terms_used: int
    truncation_bound: float
    used_svd_fallback: bool = False


def polar_project(g):
    """Project ``g`` onto the orthogonal group (the unitary polar factor).

    Raises :class:`SingularMatrixError` for exactly rank-deficient input,
    where the nearest orthogonal system is not unique.  Exponentially
    ill-conditioned but full-rank input is fine.
    """
    m = as_square(g)
    f = svd(m)
    if f.sigma[-1] <= 1e-300 * max(f.sigma[0], 1.0):
        raise SingularMatrixError(
            "rank-deficient input: the nearest orthogonal system is not unique"
        )
    h = np.ascontiguousarray(f.u @ f.v.T)
    return OrthogonalSystem(matrix=h, manifold=det_sign(h))


def manifold_of(g):
    """Which component of the orthogonal group ``g`` projects onto (+-1).

    Equals the determinant sign of ``g`` (the projection preserves it).
    Raises for numerically singular input, which sits on the boundary
    between the components.
    """
    s = det_sign(g)
    if s == 0:
        raise SingularMatrixError("singular input lies between the two components")
    return s


def _series_coefficients_tail(bound, tol):
    """Number of series terms needed so the geometric tail bound <= tol.

    Coefficients follow the recurrence c_0 = 1, c_n = c_{n-1}*(-1/2-n+1)/n;
    their magnitudes decrease, so the tail after m terms is bounded by
    ``|c_{m+1}| * bound^{m+1} / (1 - bound)``.

    Returns ``(m, tail_bound, hit_cap)``.
    """
    c = 1.0
    power = 1.0
    m = 0
    while True:
        c_next = c * (-0.5 - m) / (m + 1.0)
        power_next = power * bound
        tail = abs(c_next) * power_next / (1.0 - bound)
        if tail <= tol:
            return m, tail, False
        if m >= SERIES_TERM_CAP:
            return m, tail, True
        c = c_next
        power = power_next
        m += 1


def series_project(g, tol=1e-10):
    """Orthogonalize nearly orthogonal ``g`` by a truncated power series.

    Writes the projection as ``g @ sum_n binom(-1/2, n) r^n`` in the Gram
    residual ``r = g.T g - I`` and truncates once the certified geometric
    tail bound drops below ``tol``.  Requires the Gershgorin bound on the
    spectral radius of ``r`` to be strictly below one; otherwise raises
    :class:`NotNearlyOrthogonalError`.

    Returns ``(OrthogonalSystem, SeriesCertificate)``.  If the term cap is
    reached first, the SVD route supplies the result and the certificate is
    flagged.
    """
    m = as_square(g)
    if tol <= 0:
        raise ValueError("tol must be positive")
    r = gram_residual(m)
    bound = float(np.max(np.sum(np.abs(r), axis=1)))
    if not bound < 1.0:
        raise NotNearlyOrthogonalError(
            "Gershgorin bound %.6g >= 1: input is not nearly orthogonal" % bound
        )

    terms, tail, hit_cap = _series_coefficients_tail(bound, tol)
    if hit_cap:
        cert = SeriesCertificate(
            gershgorin_bound=bound,
            certified=True,
            terms_used=terms,
            truncation_bound=tail,
            used_svd_fallback=True,
        )
        return polar_project(m), cert

    n = m.shape[0]
    acc = np.eye(n)
    term = np.eye(n)
    c = 1.0
    for k in range(1, terms + 1):
        c = c * (-0.5 - (k - 1)) / k
        term = term @ r
        acc = acc + c * term
    h = np.ascontiguousarray(m @ acc)
    cert = SeriesCertificate(
        gershgorin_bound=bound,
        certified=True,
        terms_used=terms,
        truncation_bound=tail,
    )
    return OrthogonalSystem(matrix=h, manifold=det_sign(h)), cert


def orthogonal_dual(g):
    """The orthogonal system maximally dual to ``g``.

    Shares its minimizer with :func:`polar_project`: over orthogonal
    candidates the biorthogonality defect against ``g`` and the squared
    distance to ``g`` agree, so the most-dual orthogonal system and the
    nearest one coincide.  Exists so call sites can state the duality
    intent.
    """
    return polar_project(g)

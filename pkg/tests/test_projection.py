import math

import numpy as np
import pytest

from orthoreg import (
    NotNearlyOrthogonalError,
    SingularMatrixError,
    biorthogonal,
    biorthogonality_defect,
    det_sign,
    manifold_of,
    orthogonal_dual,
    polar_project,
    series_project,
    squared_distance,
    svd,
)

from conftest import random_matrix, random_orthogonal, random_well_conditioned


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def orthogonal_2x2_grid(step=1e-4):
    """Dense sample of O(2): all rotations plus all reflections."""
    thetas = np.arange(0.0, 2 * math.pi, step)
    cos, sin = np.cos(thetas), np.sin(thetas)
    rot = np.stack([np.stack([cos, -sin], axis=1), np.stack([sin, cos], axis=1)], axis=1)
    refl = np.stack([np.stack([cos, sin], axis=1), np.stack([sin, -cos], axis=1)], axis=1)
    return np.concatenate([rot, refl])


class TestPolarProject:
    def test_fixed_point_on_orthogonal(self, rng):
        q = random_orthogonal(rng, 4)
        p = polar_project(q).matrix
        assert np.linalg.norm(p - q) <= 1e-10

    def test_positive_diagonal_gives_identity(self):
        p = polar_project(np.diag([3.0, 0.5]))
        assert np.allclose(p.matrix, np.eye(2), atol=1e-12)
        assert p.manifold == 1

    def test_result_is_orthogonal(self, rng):
        for n in (2, 3, 5, 9):
            g = random_matrix(rng, n)
            h = polar_project(g).matrix
            assert np.linalg.norm(h.T @ h - np.eye(n)) <= 1e-9 * n

    def test_unit_singular_values(self, rng):
        h = polar_project(random_matrix(rng, 6)).matrix
        assert np.all(np.abs(svd(h).sigma - 1.0) <= 1e-10)

    def test_idempotent(self, rng):
        for _ in range(5):
            g = random_matrix(rng, 5)
            once = polar_project(g).matrix
            twice = polar_project(once).matrix
            assert np.linalg.norm(twice - once) <= 1e-10

    def test_transpose_symmetry(self, rng):
        for _ in range(5):
            g = random_matrix(rng, 5)
            assert np.linalg.norm(
                polar_project(g.T).matrix - polar_project(g).matrix.T
            ) <= 1e-10

    def test_same_minimizer_as_biorthogonal_route(self, rng):
        # projecting the system and projecting its biorthogonal agree
        for _ in range(5):
            g = random_well_conditioned(rng, 5)
            direct = polar_project(g).matrix
            dual = polar_project(biorthogonal(g)).matrix
            assert np.linalg.norm(direct - dual) <= 1e-8

    def test_rank_deficient_rejected(self):
        with pytest.raises(SingularMatrixError):
            polar_project(np.array([[1.0, 2.0], [2.0, 4.0]]))

    def test_beats_dense_2x2_grid(self, rng):
        candidates = orthogonal_2x2_grid(1e-3)
        for g in (rotation(0.7) @ np.diag([2.0, 1.0]), random_matrix(rng, 2)):
            h = polar_project(g).matrix
            ours_ls = squared_distance(g, h)
            ours_bo = biorthogonality_defect(g, h)
            diff = candidates - g
            grid_ls = np.min(np.sum(diff * diff, axis=(1, 2)))
            assert ours_ls <= grid_ls + 1e-9
            gram = np.einsum("ij,nik->njk", g, candidates) - np.eye(2)
            grid_bo = np.min(np.sum(gram * gram, axis=(1, 2)))
            assert ours_bo <= grid_bo + 1e-9


class TestManifold:
    def test_spd_is_plus(self, rng):
        a = random_matrix(rng, 4)
        spd = a @ a.T + 4 * np.eye(4)
        assert manifold_of(spd) == 1

    def test_negated_column_is_minus(self):
        a = np.eye(3)
        a[:, 0] *= -1.0
        assert manifold_of(a) == -1

    def test_projection_preserves_component(self, rng):
        for _ in range(10):
            g = random_well_conditioned(rng, 5)
            p = polar_project(g)
            assert manifold_of(g) == p.manifold
            assert det_sign(p.matrix) == p.manifold

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            manifold_of(np.array([[1.0, 2.0], [2.0, 4.0]]))


class TestSeriesProject:
    def test_orthogonal_needs_zero_terms(self, rng):
        q = random_orthogonal(rng, 4)
        ortho, cert = series_project(q, tol=1e-12)
        assert cert.terms_used == 0
        assert not cert.used_svd_fallback
        assert np.array_equal(ortho.matrix, q)

    def test_scaled_identity_scalar_series(self):
        # (1 + eps) I: every column shrinks by ((1+eps)^2)^(-1/2), so the
        # series must land on the identity
        g = 1.01 * np.eye(2)
        ortho, cert = series_project(g, tol=1e-12)
        assert np.linalg.norm(ortho.matrix - np.eye(2)) <= 1e-12 * (1 + np.linalg.norm(g))
        assert cert.terms_used <= 10
        assert cert.certified

    def test_matches_svd_route(self, rng):
        for _ in range(5):
            q = random_orthogonal(rng, 5)
            g = q + 0.05 * random_matrix(rng, 5)
            if np.max(np.sum(np.abs(g.T @ g - np.eye(5)), axis=1)) >= 1.0:
                continue
            ortho, cert = series_project(g, tol=1e-8)
            ref = polar_project(g).matrix
            assert np.linalg.norm(ortho.matrix - ref) <= 1e-8 * (1 + np.linalg.norm(g))
            assert cert.certified and not cert.used_svd_fallback

    def test_refuses_far_from_orthogonal(self):
        with pytest.raises(NotNearlyOrthogonalError):
            series_project(np.diag([3.0, 0.5]))

    def test_term_cap_falls_back_to_svd(self):
        # Gershgorin bound 0.999 needs thousands of terms for 1e-10
        g = np.diag([math.sqrt(1.999), 1.0])
        ortho, cert = series_project(g, tol=1e-10)
        assert cert.used_svd_fallback
        assert cert.certified  # the bound itself is still below one
        assert np.linalg.norm(ortho.matrix - np.eye(2)) <= 1e-10

    def test_certificate_invariant(self, rng):
        q = random_orthogonal(rng, 3)
        _, cert = series_project(q + 0.01 * random_matrix(rng, 3), tol=1e-9)
        assert cert.certified and cert.gershgorin_bound < 1.0
        assert cert.truncation_bound <= 1e-9


def test_orthogonal_dual_matches_projection(rng):
    g = random_well_conditioned(rng, 4)
    a = orthogonal_dual(g)
    b = polar_project(g)
    assert np.array_equal(a.matrix, b.matrix)
    assert a.manifold == b.manifold

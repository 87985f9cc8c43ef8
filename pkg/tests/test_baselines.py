import numpy as np
import pytest

from orthoreg import (
    SolverOptions,
    bpdn,
    bpdn_objective,
    dantzig,
    dantzig_objective,
    tikhonov,
)

from conftest import random_orthogonal, random_well_conditioned


def ridge_descent_oracle(e, y, rho, steps=200000, lr=None):
    """Plain gradient descent on ||e x - y||^2 + rho^2 ||x||^2."""
    n = e.shape[0]
    m = e.T @ e + rho * rho * np.eye(n)
    q = e.T @ y
    if lr is None:
        lr = 0.9 / np.linalg.norm(m, 2)
    x = np.zeros(n)
    for _ in range(steps):
        x = x - lr * 2.0 * (m @ x - q)
    return x


class TestTikhonov:
    def test_unregularized_orthogonal_exact(self, rng):
        q = random_orthogonal(rng, 4)
        xbar = rng.uniform(-1, 1, 4)
        assert np.linalg.norm(tikhonov(q, q @ xbar, 0.0) - xbar) <= 1e-10

    def test_scalar_shrinkage(self):
        # x = y / (1 + rho^2) for e = I in one dimension
        assert tikhonov(np.eye(1), np.array([2.0]), 1.0) == pytest.approx([1.0])

    def test_matches_iterative_minimizer(self, rng):
        e = random_well_conditioned(rng, 4, cond_cap=20.0)
        y = rng.uniform(-1, 1, 4)
        closed = tikhonov(e, y, 0.5)
        iterated = ridge_descent_oracle(e, y, 0.5)
        assert np.linalg.norm(closed - iterated) <= 1e-6

    def test_norm_shrinks_with_rho(self, rng):
        e = random_well_conditioned(rng, 5)
        y = rng.uniform(-1, 1, 5)
        norms = [np.linalg.norm(tikhonov(e, y, r)) for r in np.linspace(0.0, 3.0, 13)]
        assert all(b <= a + 1e-12 for a, b in zip(norms, norms[1:]))

    def test_rejects_negative_rho(self):
        with pytest.raises(ValueError):
            tikhonov(np.eye(2), np.ones(2), -1.0)


class TestBpdn:
    def test_rho_zero_is_least_squares(self, rng):
        e = random_well_conditioned(rng, 5)
        xbar = rng.uniform(-1, 1, 5)
        y = e @ xbar
        res = bpdn(e, y, 0.0)
        lstsq = np.linalg.lstsq(e, y, rcond=None)[0]
        assert np.linalg.norm(res.x - lstsq) <= 1e-6

    def test_scalar_large_rho_zeroes(self):
        # |3 - x| + 10 |x| grows in x on [0, 3], so 0 wins
        res = bpdn(np.eye(1), np.array([3.0]), 10.0)
        assert np.linalg.norm(res.x) <= 1e-9
        assert res.objective == pytest.approx(3.0, abs=1e-9)

    def test_scalar_small_rho_keeps_data(self):
        # for rho < 1 the data term wins and x -> y
        res = bpdn(np.eye(1), np.array([3.0]), 0.5)
        assert res.x[0] == pytest.approx(3.0, abs=1e-6)
        assert res.objective == pytest.approx(1.5, abs=1e-6)

    def test_2d_against_grid_oracle(self):
        e = np.eye(2)
        y = np.array([3.0, 0.0])
        rho = 0.5
        res = bpdn(e, y, rho)
        xs = np.arange(-0.5, 3.5, 1e-3)
        x1, x2 = np.meshgrid(xs, np.arange(-1.0, 1.0, 1e-3))
        grid = np.sqrt((x1 - 3.0) ** 2 + x2**2) + rho * (np.abs(x1) + np.abs(x2))
        assert res.objective <= np.min(grid) + 1e-6
        # the minimizer sits on the segment toward y
        assert abs(res.x[1]) <= 1e-6 and 0.0 <= res.x[0] <= 3.0 + 1e-9

    def test_candidate_dominance(self, rng):
        e = random_well_conditioned(rng, 5)
        xbar = rng.uniform(-1, 1, 5)
        y = e @ xbar
        rho = 0.3
        res = bpdn(e, y, rho)
        assert res.objective <= bpdn_objective(e, y, rho, np.zeros(5)) + 1e-12
        lstsq = np.linalg.lstsq(e, y, rcond=None)[0]
        assert res.objective <= bpdn_objective(e, y, rho, lstsq) + 1e-12

    def test_objective_field_consistent(self, rng):
        e = random_well_conditioned(rng, 4)
        y = rng.uniform(-1, 1, 4)
        res = bpdn(e, y, 0.25)
        assert res.objective == pytest.approx(bpdn_objective(e, y, 0.25, res.x), rel=1e-12)

    def test_budget_exhaustion_flagged(self, rng):
        e = random_well_conditioned(rng, 5)
        y = rng.uniform(-1, 1, 5)
        res = bpdn(e, y, 0.3, SolverOptions(max_iter=3))
        assert not res.converged
        assert res.iterations == 3


class TestDantzig:
    def test_zero_rhs_gives_zero(self):
        res = dantzig(np.eye(3), np.zeros(3), 1.0)
        assert np.linalg.norm(res.x) == 0.0
        assert res.objective == 0.0

    def test_scalar_piecewise_linear(self):
        # |4 - x| + 0.5 |x| decreases until x = 4, objective 2 there
        res = dantzig(np.eye(1), np.array([4.0]), 0.5)
        assert res.x[0] == pytest.approx(4.0, abs=1e-9)
        assert res.objective == pytest.approx(2.0, abs=1e-9)

    def test_small_instance_against_grid(self, rng):
        e = random_well_conditioned(rng, 3)
        xbar = rng.uniform(-1, 1, 3)
        y = e @ xbar
        rho = 0.4
        res = dantzig(e, y, rho)
        xs = np.arange(-1.5, 1.5, 2e-2)
        cand = np.stack(np.meshgrid(xs, xs, xs), axis=-1).reshape(-1, 3)
        mm = e.T @ e
        q = e.T @ y
        grid = np.max(np.abs(cand @ mm.T - q), axis=1) + rho * np.sum(np.abs(cand), axis=1)
        assert res.objective <= np.min(grid) + 1e-3

    def test_candidate_dominance(self, rng):
        e = random_well_conditioned(rng, 4)
        xbar = rng.uniform(-1, 1, 4)
        y = e @ xbar
        rho = 0.2
        res = dantzig(e, y, rho)
        assert res.objective <= dantzig_objective(e, y, rho, np.zeros(4)) + 1e-9
        lstsq = np.linalg.lstsq(e, y, rcond=None)[0]
        assert res.objective <= dantzig_objective(e, y, rho, lstsq) + 1e-9


def test_solver_options_validated():
    with pytest.raises(ValueError):
        SolverOptions(tol=0.0)
    with pytest.raises(ValueError):
        SolverOptions(max_iter=0)

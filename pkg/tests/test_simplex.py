import numpy as np
import pytest

from orthoreg import LpProblem, lp_solve


def test_lower_bound_vertex():
    # minimize x subject to x >= 3
    p = LpProblem(np.array([1.0]), np.array([[-1.0]]), np.array([-3.0]), ((0.0, None),))
    s = lp_solve(p)
    assert s.status == "optimal"
    assert s.x[0] == pytest.approx(3.0, abs=1e-12)
    assert s.certified


def test_textbook_two_variable_vertex():
    # maximize 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18: optimum (2, 6)
    p = LpProblem(
        np.array([-3.0, -5.0]),
        np.array([[1.0, 0.0], [0.0, 2.0], [3.0, 2.0]]),
        np.array([4.0, 12.0, 18.0]),
        ((0.0, None), (0.0, None)),
    )
    s = lp_solve(p)
    assert s.status == "optimal"
    assert np.allclose(s.x, [2.0, 6.0], atol=1e-12)
    assert s.objective == pytest.approx(-36.0)
    assert s.certified


def test_selector_reformulation_consistency():
    # the scalar selector example through the raw LP: variables (xp, xm, t)
    rho = 0.5
    p = LpProblem(
        np.array([rho, rho, 1.0]),
        np.array([[1.0, -1.0, -1.0], [-1.0, 1.0, -1.0]]),
        np.array([4.0, -4.0]),
        ((0.0, None),) * 3,
    )
    s = lp_solve(p)
    assert s.status == "optimal"
    assert s.x[0] - s.x[1] == pytest.approx(4.0, abs=1e-12)


def test_infeasible_detected():
    # x <= -1 with x >= 0
    p = LpProblem(np.array([1.0]), np.array([[1.0]]), np.array([-1.0]), ((0.0, None),))
    assert lp_solve(p).status == "infeasible"


def test_unbounded_detected():
    # minimize -x with x >= 0 and no upper limit
    p = LpProblem(np.array([-1.0]), np.zeros((0, 1)), np.zeros(0), ((0.0, None),))
    assert lp_solve(p).status == "unbounded"


def test_two_sided_bounds_and_free_variables():
    # minimize x + y with -2 <= x <= 5, y free, and y >= x - 1 (as x - y <= 1):
    # push x to its lower bound and y onto the constraint, (-2, -3)
    p = LpProblem(
        np.array([1.0, 1.0]),
        np.array([[1.0, -1.0]]),
        np.array([1.0]),
        ((-2.0, 5.0), (None, None)),
    )
    s = lp_solve(p)
    assert s.status == "optimal"
    assert np.allclose(s.x, [-2.0, -3.0], atol=1e-12)
    assert s.objective == pytest.approx(-5.0)

    # drop the coupling constraint and the free variable escapes
    p2 = LpProblem(
        np.array([1.0, 1.0]),
        np.zeros((0, 2)),
        np.zeros(0),
        ((-2.0, 5.0), (None, None)),
    )
    assert lp_solve(p2).status == "unbounded"


def test_solution_dominates_random_feasible_points(rng):
    # random LP with a box-bounded feasible region so sampling is easy
    n = 6
    a = rng.uniform(-1.0, 1.0, (4, n))
    x0 = rng.uniform(0.2, 0.8, n)
    b = a @ x0 + rng.uniform(0.1, 1.0, 4)  # x0 strictly feasible
    c = rng.uniform(-1.0, 1.0, n)
    p = LpProblem(c, a, b, ((0.0, 1.0),) * n)
    s = lp_solve(p)
    assert s.status == "optimal"
    scale = max(1.0, np.max(np.abs(a)), np.max(np.abs(b)))
    assert np.all(a @ s.x <= b + 1e-9 * scale)
    assert np.all(s.x >= -1e-9) and np.all(s.x <= 1.0 + 1e-9)
    assert s.certified
    samples = rng.uniform(0.0, 1.0, (10000, n))
    feasible = samples[np.all(samples @ a.T <= b, axis=1)]
    assert feasible.size  # sanity: the region is sampleable
    assert s.objective <= np.min(feasible @ c) + 1e-9


def test_problem_validation():
    with pytest.raises(ValueError):
        LpProblem(np.array([1.0]), np.eye(2), np.ones(2), ((0, None),))
    with pytest.raises(ValueError):
        LpProblem(np.array([np.inf]), np.zeros((0, 1)), np.zeros(0), ((0, None),))
    with pytest.raises(ValueError):
        LpProblem(np.array([1.0]), np.zeros((0, 1)), np.zeros(0), ())

"""Unit tests for the two-phase simplex core."""

import numpy as np
import pytest

from utils.simplex import LPNotTerminatedError, LPStatus, solve_standard_form


class TestOptimal:
    """Test problems with a finite optimum."""

    def test_small_lp(self):
        # min -x1 - 2x2 with x1 + x2 <= 4, x2 <= 1, slacks appended
        c = np.array([-1.0, -2.0, 0.0, 0.0])
        a = np.array([[1.0, 1.0, 1.0, 0.0], [0.0, 1.0, 0.0, 1.0]])
        result = solve_standard_form(c, a, np.array([4.0, 1.0]))

        assert result.status == LPStatus.OPTIMAL
        assert result.objective == pytest.approx(-5.0)
        assert result.x[:2] == pytest.approx([3.0, 1.0])

    def test_negative_right_hand_side(self):
        result = solve_standard_form(np.array([1.0, 1.0]), np.array([[-1.0, -2.0]]), np.array([-4.0]))

        assert result.status == LPStatus.OPTIMAL
        assert result.objective == pytest.approx(2.0)

    def test_redundant_row(self):
        a = np.array([[1.0, 1.0], [2.0, 2.0]])
        result = solve_standard_form(np.array([1.0, 0.0]), a, np.array([2.0, 4.0]))

        assert result.status == LPStatus.OPTIMAL
        assert result.objective == pytest.approx(0.0)
        assert result.x == pytest.approx([0.0, 2.0])

    def test_cycling_example_terminates(self):
        # Beale's degenerate LP, which cycles under the largest-coefficient rule
        c = np.array([0.0, 0.0, 0.0, -0.75, 20.0, -0.5, 6.0])
        a = np.array([
            [1.0, 0.0, 0.0, 0.25, -8.0, -1.0, 9.0],
            [0.0, 1.0, 0.0, 0.5, -12.0, -0.5, 3.0],
            [0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0],
        ])
        result = solve_standard_form(c, a, np.array([0.0, 0.0, 1.0]))

        assert result.status == LPStatus.OPTIMAL
        assert result.objective == pytest.approx(-1.25)
        assert a @ result.x == pytest.approx([0.0, 0.0, 1.0])

    def test_solution_is_nonnegative(self):
        rng = np.random.default_rng(30)
        for _ in range(50):
            a = rng.normal(size=(3, 6))
            x0 = rng.random(6)
            result = solve_standard_form(rng.random(6), a, a @ x0)
            assert result.status == LPStatus.OPTIMAL
            assert np.all(result.x >= 0.0)
            assert a @ result.x == pytest.approx(a @ x0, abs=1e-8)


class TestDuals:
    """Test the dual prices returned with an optimal solution."""

    def test_small_lp(self):
        c = np.array([-1.0, -2.0, 0.0, 0.0])
        a = np.array([[1.0, 1.0, 1.0, 0.0], [0.0, 1.0, 0.0, 1.0]])
        result = solve_standard_form(c, a, np.array([4.0, 1.0]))

        assert result.duals == pytest.approx([-1.0, -1.0])

    def test_negative_right_hand_side(self):
        a = np.array([[-1.0, -2.0]])
        result = solve_standard_form(np.array([1.0, 1.0]), a, np.array([-4.0]))

        assert result.duals == pytest.approx([-0.5])
        assert result.duals @ np.array([-4.0]) == pytest.approx(result.objective)

    def test_redundant_row(self):
        a = np.array([[1.0, 1.0], [2.0, 2.0]])
        c = np.array([1.0, 0.0])
        result = solve_standard_form(c, a, np.array([2.0, 4.0]))

        assert result.duals @ np.array([2.0, 4.0]) == pytest.approx(0.0, abs=1e-12)
        assert np.all(a.T @ result.duals <= c + 1e-12)

    def test_strong_duality(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            a = rng.normal(size=(4, 8))
            b = a @ rng.random(8)
            # c - Aᵀu >= 0 keeps the minimum bounded below by u·b
            c = a.T @ rng.normal(size=4) + rng.random(8)
            result = solve_standard_form(c, a, b)

            assert result.status == LPStatus.OPTIMAL
            assert result.duals @ b == pytest.approx(result.objective, abs=1e-8)
            assert np.all(a.T @ result.duals <= c + 1e-8)

    def test_no_duals_without_optimum(self):
        result = solve_standard_form(np.array([-1.0, 0.0]), np.array([[1.0, -1.0]]), np.array([1.0]))

        assert result.duals is None


class TestNonOptimal:
    """Test infeasible, unbounded and budget-limited problems."""

    def test_infeasible(self):
        result = solve_standard_form(np.array([0.0, 0.0]), np.array([[1.0, 1.0]]), np.array([-1.0]))

        assert result.status == LPStatus.INFEASIBLE
        assert result.x is None
        assert result.infeasibility == pytest.approx(1.0)

    def test_unbounded(self):
        result = solve_standard_form(np.array([-1.0, 0.0]), np.array([[1.0, -1.0]]), np.array([1.0]))

        assert result.status == LPStatus.UNBOUNDED
        assert result.objective is None

    def test_iteration_budget(self):
        c = np.array([-1.0, -2.0, 0.0, 0.0])
        a = np.array([[1.0, 1.0, 1.0, 0.0], [0.0, 1.0, 0.0, 1.0]])

        with pytest.raises(LPNotTerminatedError, match="LP did not terminate"):
            solve_standard_form(c, a, np.array([4.0, 1.0]), max_iterations=1)

"""Dense two-phase tableau simplex, Dantzig pricing with Bland's rule on degenerate pivots."""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

logger = logging.getLogger(__name__)

PIVOT_TOLERANCE = 1e-12
DEFAULT_MAX_ITERATIONS = 50_000

# Pivots allowed per row plus column when no explicit budget is given.
ITERATIONS_PER_DIMENSION = 50


class LPNotTerminatedError(ArithmeticError):
    """Raised when the simplex exceeds its iteration budget."""

    pass


class LPStatus(Enum):
    """Outcome of a linear program."""

    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class SimplexResult:
    """Solution of min c·x subject to A x = b, x ≥ 0.

    ``duals`` holds y with yᵀA ≤ c at the optimum (zero on redundant rows).
    """

    status: LPStatus
    x: np.ndarray | None
    objective: float | None
    infeasibility: float
    iterations: int
    duals: np.ndarray | None = None


def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
    pivot_row = tableau[row, :] / tableau[row, col]
    tableau -= np.outer(tableau[:, col], pivot_row)
    tableau[row, :] = pivot_row


def _entering(cost_row: np.ndarray, bland: bool) -> int:
    reduced = cost_row[:-1]
    candidates = np.flatnonzero(reduced < -PIVOT_TOLERANCE)
    if not candidates.size:
        return -1
    if bland:
        return int(candidates[0])
    return int(candidates[np.argmin(reduced[candidates])])


def _leaving(tableau: np.ndarray, basis: list[int], col: int) -> tuple[int, bool]:
    """Ratio test; ties go to the smallest basic variable index. Returns (row, degenerate)."""
    column = tableau[:-1, col]
    candidates = np.flatnonzero(column > PIVOT_TOLERANCE)
    if not candidates.size:
        return -1, False
    ratios = tableau[candidates, -1] / column[candidates]
    best = float(ratios.min())
    tied = candidates[ratios <= best + PIVOT_TOLERANCE]
    row = int(min(tied, key=lambda i: basis[i]))
    return row, best <= PIVOT_TOLERANCE


def _run(tableau: np.ndarray, basis: list[int], budget: int) -> tuple[bool, int]:
    """Pivot to optimality. Returns (bounded, iterations used).

    The most negative reduced cost enters until a pivot makes no progress;
    after a degenerate pivot Bland's lowest-index rule takes over, so a
    cycle of degenerate pivots cannot form.
    """
    bland = False
    for iteration in range(budget):
        col = _entering(tableau[-1, :], bland)
        if col == -1:
            return True, iteration
        row, degenerate = _leaving(tableau, basis, col)
        if row == -1:
            return False, iteration
        _pivot(tableau, row, col)
        basis[row] = col
        bland = degenerate
    raise LPNotTerminatedError(f"LP did not terminate within {budget} iterations")


def _duals(a: np.ndarray, cost: np.ndarray, keep: list[int], basis: list[int]) -> np.ndarray:
    """y with yᵀB = c_B on the kept rows of the original system."""
    y = np.zeros(a.shape[0])
    if keep:
        b_matrix = a[np.ix_(keep, basis)]
        y[keep] = np.linalg.solve(b_matrix.T, cost[basis])
    return y


def solve_standard_form(
    c: np.ndarray,
    a_eq: np.ndarray,
    b_eq: np.ndarray,
    feasibility_tol: float = 1e-9,
    max_iterations: int | None = None,
) -> SimplexResult:
    """
    Minimize c·x subject to a_eq x = b_eq and x ≥ 0.

    Phase I minimizes the sum of one artificial variable per row; the problem
    is infeasible when that sum stays above feasibility_tol. Phase II then
    optimizes c from the feasible basis.

    Args:
        c: Cost vector
        a_eq: Constraint matrix, one row per equality
        b_eq: Right-hand side
        feasibility_tol: Largest phase I residual accepted as feasible
        max_iterations: Pivot budget over both phases; defaults to a multiple
            of the tableau dimensions

    Raises:
        LPNotTerminatedError: If the phases together exceed the pivot budget
    """
    original = np.array(a_eq, dtype=float)
    a = original.copy()
    b = np.array(b_eq, dtype=float)
    cost = np.array(c, dtype=float)
    m, n = a.shape
    if max_iterations is None:
        max_iterations = max(DEFAULT_MAX_ITERATIONS, ITERATIONS_PER_DIMENSION * (m + n))

    flip = b < 0
    a[flip] *= -1.0
    b[flip] *= -1.0

    tableau = np.zeros((m + 1, n + m + 1))
    tableau[:m, :n] = a
    tableau[:m, n : n + m] = np.eye(m)
    tableau[:m, -1] = b
    tableau[-1, :n] = -a.sum(axis=0)
    tableau[-1, -1] = -b.sum()
    basis = list(range(n, n + m))

    _, used = _run(tableau, basis, max_iterations)
    infeasibility = float(-tableau[-1, -1])
    logger.debug("phase I: %d pivots, residual %.3g", used, infeasibility)
    if infeasibility > feasibility_tol:
        return SimplexResult(LPStatus.INFEASIBLE, None, None, infeasibility, used)

    # Drive remaining artificials out of the basis; rows with no way out are redundant.
    keep = []
    for row in range(m):
        if basis[row] >= n:
            entries = np.abs(tableau[row, :n])
            if entries.max(initial=0.0) <= PIVOT_TOLERANCE:
                continue
            col = int(np.argmax(entries))
            _pivot(tableau, row, col)
            basis[row] = col
        keep.append(row)

    phase2 = np.zeros((len(keep) + 1, n + 1))
    phase2[:-1, :n] = tableau[keep, :n]
    phase2[:-1, -1] = tableau[keep, -1]
    phase2[-1, :n] = cost
    basis = [basis[row] for row in keep]
    for row, var in enumerate(basis):
        if cost[var] != 0.0:
            phase2[-1, :] -= cost[var] * phase2[row, :]

    bounded, used2 = _run(phase2, basis, max_iterations - used)
    iterations = used + used2
    if not bounded:
        logger.debug("phase II: unbounded after %d pivots", used2)
        return SimplexResult(LPStatus.UNBOUNDED, None, None, infeasibility, iterations)

    x = np.zeros(n)
    for row, var in enumerate(basis):
        x[var] = phase2[row, -1]
    x = np.where(x < 0.0, 0.0, x)
    logger.debug("phase II: %d pivots", used2)
    return SimplexResult(
        LPStatus.OPTIMAL, x, float(cost @ x), infeasibility, iterations, duals=_duals(original, cost, keep, basis)
    )

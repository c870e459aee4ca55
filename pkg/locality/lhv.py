"""
Local hidden variable representability of correlation tables.

A table P(a_i, b_j) has a representation ∫ A(a, λ) B(b, λ) dρ(λ) with
|A|, |B| ≤ 1 iff it lies in the local correlation polytope. Response
functions bounded by 1 form a convex set whose extreme points are the ±1
assignments, so the polytope is the convex hull of the tables s tᵀ of
deterministic strategies, and membership is a linear feasibility problem.

Enumerating all 2^(m_a+m_b-1) vertices is only practical for a few settings
per side. The membership and scaling programs therefore start from a handful
of strategies and add columns on demand: for dual prices Y the most violated
strategy maximizes sᵀYt, and for each sign pattern s of the shorter side the
best t is sign(Yᵀs), so pricing is exact with 2^(min(m_a, m_b)-1) patterns.
"""
import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from locality.correlation import Correlator
from models.geometry import UnitVector3
from utils.simplex import LPNotTerminatedError, LPStatus, SimplexResult, solve_standard_form

logger = logging.getLogger(__name__)

MAX_SETTINGS = 12
FEASIBILITY_TOL = 1e-9
ENTRY_TOLERANCE = 1e-12
WEIGHT_TOLERANCE = 1e-9
PRICING_TOLERANCE = 1e-10
COLUMNS_PER_ROUND = 32
MAX_GENERATION_ROUNDS = 5_000


class EnumerationBudgetError(ValueError):
    """Raised when a setting count exceeds the strategy enumeration budget."""

    pass


@dataclass(frozen=True, eq=False)
class CorrelationTable:
    """Matrix of correlations P(a_i, b_j), optionally with the settings that produced it."""

    values: np.ndarray
    settings_a: tuple[UnitVector3, ...] = field(default=())
    settings_b: tuple[UnitVector3, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.values.ndim != 2 or 0 in self.values.shape:
            raise ValueError(f"correlation table must be a non-empty matrix, got shape {self.values.shape}")
        if self.settings_a and len(self.settings_a) != self.values.shape[0]:
            raise ValueError(f"{len(self.settings_a)} settings for {self.values.shape[0]} rows")
        if self.settings_b and len(self.settings_b) != self.values.shape[1]:
            raise ValueError(f"{len(self.settings_b)} settings for {self.values.shape[1]} columns")
        worst = float(np.max(np.abs(self.values)))
        if worst > 1.0 + ENTRY_TOLERANCE:
            raise ValueError(f"correlation {worst} outside [-1, 1]")

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape[0], self.values.shape[1]


@dataclass(frozen=True)
class DeterministicStrategy:
    """Fixed ±1 outcomes for every setting on each side."""

    signs_a: tuple[int, ...]
    signs_b: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(s not in (1, -1) for s in self.signs_a + self.signs_b):
            raise ValueError("strategy signs must be exactly ±1")

    def correlations(self) -> np.ndarray:
        return np.outer(self.signs_a, self.signs_b).astype(float)


@dataclass(frozen=True, eq=False)
class LHVModel:
    """Discrete hidden-variable measure: convex weights over deterministic strategies."""

    weights: np.ndarray
    strategies: tuple[DeterministicStrategy, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != len(self.strategies):
            raise ValueError(f"{len(self.weights)} weights for {len(self.strategies)} strategies")
        if np.any(self.weights < 0.0):
            raise ValueError("weights must be nonnegative")
        total = float(np.sum(self.weights))
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise ValueError(f"weights sum to {total}, not 1")


class Membership(NamedTuple):
    feasible: bool
    model: LHVModel | None


def correlation_table(
    correlator: Correlator, settings_a: Sequence[UnitVector3], settings_b: Sequence[UnitVector3]
) -> CorrelationTable:
    """Tabulate P(a_i, b_j) for the given setting lists."""
    values = np.array([[correlator(a, b) for b in settings_b] for a in settings_a], dtype=float)
    return CorrelationTable(values=values, settings_a=tuple(settings_a), settings_b=tuple(settings_b))


def _check_budget(m_a: int, m_b: int) -> None:
    if not (1 <= m_a <= MAX_SETTINGS and 1 <= m_b <= MAX_SETTINGS):
        raise EnumerationBudgetError(
            f"scenario too large for enumeration: {m_a}x{m_b} settings (limit 1..{MAX_SETTINGS} per side)"
        )


def enumerate_strategies(m_a: int, m_b: int) -> list[DeterministicStrategy]:
    """
    All ±1 strategies up to the global flip (s, t) → (-s, -t).

    The flip leaves s tᵀ unchanged, so fixing the first sign of side A to +1
    keeps one representative of each vertex pair.

    Raises:
        EnumerationBudgetError: If either side has more than MAX_SETTINGS settings
    """
    _check_budget(m_a, m_b)
    strategies = []
    for tail_a in itertools.product((1, -1), repeat=m_a - 1):
        for signs_b in itertools.product((1, -1), repeat=m_b):
            strategies.append(DeterministicStrategy(signs_a=(1, *tail_a), signs_b=signs_b))
    return strategies


def _vertex_matrix(strategies: Sequence[DeterministicStrategy]) -> np.ndarray:
    """Columns are the flattened tables of each strategy."""
    return np.stack([s.correlations().ravel() for s in strategies], axis=1)


def reconstruct(model: LHVModel) -> np.ndarray:
    """Σ_k w_k s_k t_kᵀ."""
    return np.einsum("k,kij->ij", model.weights, np.stack([s.correlations() for s in model.strategies]))


def _sign_patterns(k: int) -> np.ndarray:
    """All ±1 vectors of length k with first entry +1, one per row."""
    tails = np.array(list(itertools.product((1.0, -1.0), repeat=k - 1)), dtype=float)
    return np.hstack([np.ones((len(tails), 1)), tails])


def _canonical(signs_a: tuple[int, ...], signs_b: tuple[int, ...]) -> DeterministicStrategy:
    if signs_a[0] < 0:
        signs_a, signs_b = tuple(-s for s in signs_a), tuple(-s for s in signs_b)
    return DeterministicStrategy(signs_a=signs_a, signs_b=signs_b)


def _best_strategies(prices: np.ndarray, count: int) -> list[tuple[float, DeterministicStrategy]]:
    """The strategies with the largest sᵀ prices t, best first, at most one per sign pattern."""
    transpose = prices.shape[0] > prices.shape[1]
    weights = prices.T if transpose else prices
    patterns = _sign_patterns(weights.shape[0])
    scores = patterns @ weights
    replies = np.where(scores >= 0.0, 1, -1)
    values = np.abs(scores).sum(axis=1)

    best = []
    for k in np.argsort(-values, kind="stable")[:count]:
        short = tuple(int(v) for v in patterns[k])
        other = tuple(int(v) for v in replies[k])
        strategy = _canonical(other, short) if transpose else _canonical(short, other)
        best.append((float(values[k]), strategy))
    return best


def _generate_columns(
    t: CorrelationTable, extra_columns: np.ndarray, extra_costs: np.ndarray, b_eq: np.ndarray, tol: float
) -> tuple[SimplexResult, list[DeterministicStrategy]]:
    """
    Solve min cost over strategy weights plus fixed extra columns by column generation.

    The master has one row per table entry and a final row Σw = 1. Each
    round re-solves it over the strategies found so far and prices every
    strategy against its duals; it stops when none has negative reduced cost.

    Raises:
        EnumerationBudgetError: If either side has more than MAX_SETTINGS settings
        LPNotTerminatedError: If pricing keeps finding columns past MAX_GENERATION_ROUNDS
    """
    m_a, m_b = t.shape
    _check_budget(m_a, m_b)
    ones_a, ones_b = (1,) * m_a, (1,) * m_b
    strategies = [DeterministicStrategy(ones_a, ones_b), DeterministicStrategy(ones_a, (-1,) * m_b)]
    for sign in (1.0, -1.0):
        strategies.extend(s for _, s in _best_strategies(sign * t.values, COLUMNS_PER_ROUND))
    strategies = list(dict.fromkeys(strategies))
    seen = set(strategies)

    for round_index in range(MAX_GENERATION_ROUNDS):
        vertices = np.vstack([_vertex_matrix(strategies), np.ones((1, len(strategies)))])
        a_eq = np.hstack([vertices, extra_columns])
        cost = np.concatenate([np.zeros(len(strategies)), extra_costs])
        result = solve_standard_form(cost, a_eq, b_eq, feasibility_tol=tol)
        if result.status is not LPStatus.OPTIMAL or result.duals is None:
            return result, strategies

        duals = result.duals
        added = 0
        for value, strategy in _best_strategies(duals[:-1].reshape(m_a, m_b), COLUMNS_PER_ROUND):
            if value + duals[-1] <= PRICING_TOLERANCE:
                break
            if strategy not in seen:
                strategies.append(strategy)
                seen.add(strategy)
                added += 1
        if not added:
            logger.debug(
                "%dx%d master optimal after %d rounds over %d strategies", m_a, m_b, round_index + 1, len(strategies)
            )
            return result, strategies
    raise LPNotTerminatedError(f"LP did not terminate within {MAX_GENERATION_ROUNDS} column generation rounds")


def lhv_membership(t: CorrelationTable, tol: float = FEASIBILITY_TOL) -> Membership:
    """
    Decide whether the table is reproduced by some local hidden variable model.

    Minimizes the L1 mismatch Σ|Σ_k w_k V_k - P| over w ≥ 0 with Σw = 1; the
    table is local when the minimum is within tol. A feasible answer always
    carries a witness whose reconstruction matches P within tol.

    Raises:
        EnumerationBudgetError: If either side has more than MAX_SETTINGS settings
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    m_a, m_b = t.shape
    entries = m_a * m_b
    slack = np.vstack([np.eye(entries), np.zeros((1, entries))])
    extra_columns = np.hstack([slack, -slack])
    b_eq = np.append(t.values.ravel(), 1.0)

    result, strategies = _generate_columns(t, extra_columns, np.ones(2 * entries), b_eq, tol)
    if result.x is None or result.objective is None or result.objective > tol:
        logger.debug("%dx%d table infeasible (mismatch %s)", m_a, m_b, result.objective)
        return Membership(feasible=False, model=None)

    weights = result.x[: len(strategies)]
    support = np.flatnonzero(weights > 0.0)
    total = float(weights[support].sum())
    model = LHVModel(weights=weights[support] / total, strategies=tuple(strategies[k] for k in support))
    deviation = float(np.max(np.abs(reconstruct(model) - t.values)))
    if deviation > tol:
        logger.warning("witness misses the table by %.3g > tol %.3g; reporting infeasible", deviation, tol)
        return Membership(feasible=False, model=None)
    return Membership(feasible=True, model=model)


def chsh_facet_check(t: CorrelationTable) -> float:
    """
    Largest of the eight CHSH expressions ±(sum of entries - 2·entry) on a 2×2 table.

    A value at most 2 is necessary for local representability, and for 2×2
    correlation tables also sufficient.
    """
    if t.shape != (2, 2):
        raise ValueError(f"CHSH facets need a 2x2 table, got {t.shape[0]}x{t.shape[1]}")
    entries = t.values.ravel()
    total = float(entries.sum())
    return max(abs(total - 2.0 * float(p)) for p in entries)


def critical_scaling(t: CorrelationTable, tol: float = FEASIBILITY_TOL) -> float:
    """
    Largest v ≥ 0 for which v·P is still local.

    Maximizes v over w ≥ 0, Σw = 1, Σ_k w_k V_k - v P = 0. For the singlet
    table at the maximizing CHSH settings this is 1/√2, the same threshold the
    overlap factor g must stay under. Returns inf for the zero table.
    """
    scale_column = np.append(-t.values.ravel(), 0.0).reshape(-1, 1)
    b_eq = np.zeros(t.values.size + 1)
    b_eq[-1] = 1.0

    result, strategies = _generate_columns(t, scale_column, np.array([-1.0]), b_eq, tol)
    if result.status is LPStatus.UNBOUNDED:
        return math.inf
    if result.x is None:
        raise ArithmeticError("scaling LP infeasible although v = 0 is always feasible")
    return float(result.x[len(strategies)])

"""Localized correlation E(a, O₁, b, O₂), CHSH values and the locality criterion."""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np
import pandas as pd
from scipy import optimize, special

from locality.spatial import GaussianPacket, ProductWaveFunction, g_factor, paper_wave_function
from locality.spin import e_spin
from models.geometry import BoxRegion, UnitVector3, Vector3, make_unit, translate

logger = logging.getLogger(__name__)

Correlator = Callable[[UnitVector3, UnitVector3], float]
ScanParameter = Literal["half_width", "separation"]

CLASSICAL_BOUND = 2.0
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)
LOCALITY_BOUND = 1.0 / math.sqrt(2.0)
PAPER_BOUND = (2.0 / math.pi) ** 3

DEFAULT_STARTS = 32
DEFAULT_SWEEPS = 4
BISECTION_UPPER = 40.0


class OptimizerStuckError(ArithmeticError):
    """Raised when multi-start search cannot beat a value it must exceed."""

    pass


@dataclass(frozen=True)
class CHSHSettings:
    """Measurement directions a, a′ for particle 1 and b, b′ for particle 2."""

    a: UnitVector3
    a_prime: UnitVector3
    b: UnitVector3
    b_prime: UnitVector3

    @classmethod
    def tsirelson(cls) -> "CHSHSettings":
        """Settings with a·b = a′·b = a′·b′ = -a·b′ = √2/2."""
        return cls(
            a=make_unit(1.0, 0.0, 0.0),
            a_prime=make_unit(0.0, 1.0, 0.0),
            b=make_unit(1.0, 1.0, 0.0),
            b_prime=make_unit(-1.0, 1.0, 0.0),
        )

    @classmethod
    def from_angles(cls, angles: Sequence[float]) -> "CHSHSettings":
        """Build from eight spherical angles (θ, φ) for a, a′, b, b′ in turn."""
        vectors = [UnitVector3.from_angles(angles[2 * k], angles[2 * k + 1]) for k in range(4)]
        return cls(*vectors)


@dataclass(frozen=True)
class Scenario:
    """A product wave function with one detector region per particle."""

    wave: ProductWaveFunction
    region1: BoxRegion
    region2: BoxRegion

    @classmethod
    def paper(cls, m: float = 1.0, separation: Vector3 = (10.0, 0.0, 0.0), half_width: float = 1.0) -> "Scenario":
        """
        Gaussian packets at 0 and l with boxes |r_i - mean_i| < half_width/m.

        half_width=1 is the box O₁ given by |r_i| < 1/m and its translate O₂.
        """
        region1 = BoxRegion.centered((0.0, 0.0, 0.0), half_width / m)
        return cls(
            wave=paper_wave_function(m, separation),
            region1=region1,
            region2=translate(region1, separation),
        )

    @classmethod
    def all_space(cls, m: float = 1.0, separation: Vector3 = (10.0, 0.0, 0.0)) -> "Scenario":
        return cls(
            wave=paper_wave_function(m, separation),
            region1=BoxRegion.all_space(m),
            region2=BoxRegion.all_space(m),
        )

    def g(self) -> float:
        return g_factor(self.wave, self.region1, self.region2)


class LocalityVerdict(NamedTuple):
    g: float
    local: bool


class PaperBound(NamedTuple):
    g: float
    bound: float
    holds: bool


def e_full(s: Scenario, a: UnitVector3, b: UnitVector3) -> float:
    """E(a, O₁, b, O₂) = g(O₁, O₂) E_spin(a, b)."""
    return s.g() * e_spin(a, b)


def scenario_correlator(s: Scenario) -> Correlator:
    """e_full for a fixed scenario with g evaluated once."""
    g = s.g()

    def correlator(a: UnitVector3, b: UnitVector3) -> float:
        return g * e_spin(a, b)

    return correlator


def chsh_value(correlator: Correlator, s: CHSHSettings) -> float:
    """P(a,b) - P(a,b′) + P(a′,b) + P(a′,b′)."""
    return (
        correlator(s.a, s.b)
        - correlator(s.a, s.b_prime)
        + correlator(s.a_prime, s.b)
        + correlator(s.a_prime, s.b_prime)
    )


def max_chsh_for_g(g: float) -> float:
    """Largest |CHSH| reachable by g·E_spin over all settings."""
    return g * TSIRELSON_BOUND


def _random_angles(rng: np.random.Generator) -> np.ndarray:
    angles = np.empty(8)
    angles[0::2] = np.arccos(1.0 - 2.0 * rng.random(4))
    angles[1::2] = 2.0 * math.pi * rng.random(4)
    return angles


def _local_search(correlator: Correlator, start: np.ndarray, sweeps: int, tol: float) -> tuple[np.ndarray, float]:
    def objective(angles: np.ndarray) -> float:
        return -abs(chsh_value(correlator, CHSHSettings.from_angles(angles)))

    x = start.copy()
    best = objective(x)
    for _ in range(sweeps):
        previous = best
        for k in range(8):

            def along(t: float, k: int = k) -> float:
                trial = x.copy()
                trial[k] = t
                return objective(trial)

            res = optimize.minimize_scalar(
                along, bounds=(x[k] - math.pi, x[k] + math.pi), method="bounded", options={"xatol": 1e-9}
            )
            if res.fun < best:
                x[k], best = res.x, float(res.fun)
        if previous - best < tol:
            break

    polished = optimize.minimize(objective, x, method="BFGS", options={"gtol": 1e-10, "maxiter": 400})
    if polished.fun < best:
        x, best = polished.x, float(polished.fun)
    return x, -best


def chsh_maximize(
    correlator: Correlator,
    tol: float = 1e-6,
    starts: int = DEFAULT_STARTS,
    seed: int = 0,
    min_value: float | None = None,
) -> tuple[CHSHSettings, float]:
    """
    Maximize |CHSH| over four unit vectors by multi-start local search.

    Each start runs coordinate-wise bounded line searches over the spherical
    angles, then a quasi-Newton polish. Maxima come in a rotation-degenerate
    family, so only the value is meaningful. Ties go to the lowest start index.

    Args:
        correlator: Function P(a, b) bounded by 1 in absolute value
        tol: Target accuracy of the maximal value
        starts: Number of seeded random starting points
        seed: Seed of the starting-point generator
        min_value: Value the best start must exceed; defaults to 2 for e_spin

    Returns:
        (maximizing settings, maximal |CHSH|)

    Raises:
        OptimizerStuckError: If no start exceeds min_value
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if min_value is None and correlator is e_spin:
        min_value = CLASSICAL_BOUND

    rng = np.random.default_rng(seed)
    initial = [_random_angles(rng) for _ in range(starts)]

    best_angles, best_value = initial[0], -math.inf
    for index, start in enumerate(initial):
        angles, value = _local_search(correlator, start, DEFAULT_SWEEPS, tol)
        logger.debug("start %d: |CHSH| = %.12f", index, value)
        if value > best_value:
            best_angles, best_value = angles, value

    if min_value is not None and best_value <= min_value:
        raise OptimizerStuckError(f"optimizer stuck: best |CHSH| {best_value:.9f} does not exceed {min_value}")
    logger.info("CHSH maximum %.12f over %d starts", best_value, starts)
    return CHSHSettings.from_angles(best_angles), best_value


def locality_criterion(s: Scenario) -> LocalityVerdict:
    """g ≤ 1/√2 rules out any CHSH violation; the boundary counts as local."""
    g = s.g()
    return LocalityVerdict(g=g, local=g <= LOCALITY_BOUND)


def criterion_threshold(m: float, tol: float = 1e-8, target: float = LOCALITY_BOUND) -> float:
    """
    Dimensionless half-width w·m at which the symmetric box family reaches g = target.

    Boxes of half-width w are centered on both packet means; the root of
    g(w) = target is found by bisection.
    """
    if not m > 0:
        raise ValueError(f"inverse width must be positive, got m={m}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if not 0.0 < target < 1.0:
        raise ValueError(f"target must lie in (0, 1), got {target}")

    def excess(u: float) -> float:
        if u <= 0.0:
            return -target
        return Scenario.paper(m=m, half_width=u).g() - target

    return float(optimize.bisect(excess, 0.0, BISECTION_UPPER, xtol=tol))


def threshold_closed_form(target: float = LOCALITY_BOUND) -> float:
    """Inverse of (2Φ(u) - 1)⁶ = target."""
    return float(special.ndtri((1.0 + target ** (1.0 / 6.0)) / 2.0))


def verify_paper_bound(m: float = 1.0) -> PaperBound:
    """g for the Gaussian scenario against the estimate g < (2/π)³."""
    g = Scenario.paper(m=m).g()
    return PaperBound(g=g, bound=PAPER_BOUND, holds=g < PAPER_BOUND)


def _scan_scenario(base: Scenario, param: ScanParameter, value: float) -> Scenario:
    wave = base.wave
    m = wave.packet1.m
    if param == "half_width":
        return Scenario(
            wave=wave,
            region1=BoxRegion.centered(wave.packet1.mean, value / m),
            region2=BoxRegion.centered(wave.packet2.mean, value / m),
        )
    mean1 = wave.packet1.mean
    new_mean2 = (mean1[0] + value / m, mean1[1], mean1[2])
    old_mean2 = wave.packet2.mean
    shift = (new_mean2[0] - old_mean2[0], new_mean2[1] - old_mean2[1], new_mean2[2] - old_mean2[2])
    return Scenario(
        wave=ProductWaveFunction(packet1=wave.packet1, packet2=GaussianPacket(mean=new_mean2, m=m)),
        region1=base.region1,
        region2=translate(base.region2, shift),
    )


def scan_scenarios(base: Scenario, param: ScanParameter, values: Sequence[float]) -> pd.DataFrame:
    """
    Evaluate g along a one-parameter family derived from a base scenario.

    half_width: boxes of half-width value/m centered on each packet mean.
    separation: second packet moved to mean1 + (value/m, 0, 0), its region
    translated along with it.
    """
    if param not in ("half_width", "separation"):
        raise ValueError(f"unknown scan parameter: {param}")
    rows = []
    for value in values:
        verdict = locality_criterion(_scan_scenario(base, param, value))
        rows.append(
            {
                "param": float(value),
                "g": verdict.g,
                "chsh_max": max_chsh_for_g(verdict.g),
                "local": verdict.local,
            }
        )
    return pd.DataFrame(rows, columns=["param", "g", "chsh_max", "local"])


def crossing_bracket(scan: pd.DataFrame) -> tuple[float, float] | None:
    """First pair of adjacent grid points whose g values straddle 1/√2."""
    above = (scan["g"] > LOCALITY_BOUND).to_numpy()
    for i in range(len(above) - 1):
        if above[i] != above[i + 1]:
            return float(scan["param"].iloc[i]), float(scan["param"].iloc[i + 1])
    return None

"""Gaussian spatial wave functions and the overlap factor g(O₁, O₂)."""

import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from models.geometry import BoxRegion, Vector3, contains

logger = logging.getLogger(__name__)

QUADRATURE_LIMIT = 10_000

# Beyond this many standard deviations the density underflows double precision.
QUADRATURE_CUTOFF = 40.0

NULL_EVENT_PROBABILITY = 1e-15

MIN_MONTECARLO_SAMPLES = 1000

# Marginal probability of either spin outcome along any axis for the singlet.
SINGLET_MARGINAL = 0.5


class QuadratureError(ArithmeticError):
    """Raised when adaptive quadrature exhausts its subdivision budget."""

    def __init__(self, message: str, estimate: float, error_bound: float) -> None:
        super().__init__(f"{message} (estimate={estimate:.12g}, error bound={error_bound:.3g})")
        self.estimate = estimate
        self.error_bound = error_bound


class ConditioningError(ValueError):
    """Raised when a Bayes conditional probability is undefined."""

    pass


@dataclass(frozen=True)
class GaussianPacket:
    """
    Single-particle packet with |ψ(r)|² = (m²/2π)^{3/2} exp(-m²(r - mean)²/2).

    Each coordinate of the density is normal with standard deviation 1/m.
    """

    mean: Vector3
    m: float

    def __post_init__(self) -> None:
        if not self.m > 0:
            raise ValueError(f"inverse width must be positive, got m={self.m}")

    def density(self, r: Vector3) -> float:
        d2 = sum((r_i - mu_i) ** 2 for r_i, mu_i in zip(r, self.mean))
        return (self.m**2 / (2.0 * math.pi)) ** 1.5 * math.exp(-(self.m**2) * d2 / 2.0)


@dataclass(frozen=True)
class ProductWaveFunction:
    """Spatial part φ(r₁, r₂) = ψ₁(r₁) ψ₂(r₂)."""

    packet1: GaussianPacket
    packet2: GaussianPacket


def paper_wave_function(m: float, separation: Vector3) -> ProductWaveFunction:
    """Packets centered at the origin and at l, sharing the inverse width m."""
    return ProductWaveFunction(
        packet1=GaussianPacket(mean=(0.0, 0.0, 0.0), m=m),
        packet2=GaussianPacket(mean=separation, m=m),
    )


def gaussian_interval(a: float, b: float) -> float:
    """Φ(b) - Φ(a) for a ≤ b, evaluated on the tail side to keep relative accuracy."""
    if a > 0.0:
        return float(special.ndtr(-a) - special.ndtr(-b))
    return float(special.ndtr(b) - special.ndtr(a))


def _standard_limits(packet: GaussianPacket, region: BoxRegion) -> list[tuple[float, float]]:
    return [
        (packet.m * (lo_i - mu_i), packet.m * (hi_i - mu_i))
        for lo_i, hi_i, mu_i in zip(region.lo, region.hi, packet.mean)
    ]


def region_probability(packet: GaussianPacket, region: BoxRegion) -> float:
    """Probability of finding the particle inside the box, via the normal CDF."""
    return math.prod(gaussian_interval(a, b) for a, b in _standard_limits(packet, region))


def g_factor(wave: ProductWaveFunction, region1: BoxRegion, region2: BoxRegion) -> float:
    """Closed-form g(O₁, O₂) for a product wave function."""
    return region_probability(wave.packet1, region1) * region_probability(wave.packet2, region2)


def _standard_normal_pdf(z: float) -> float:
    return math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)


def _axis_quadrature(a: float, b: float, tol: float) -> tuple[float, float]:
    lo, hi = max(a, -QUADRATURE_CUTOFF), min(b, QUADRATURE_CUTOFF)
    if lo >= hi:
        return 0.0, 0.0
    points = [0.0] if lo < 0.0 < hi else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        result = integrate.quad(
            _standard_normal_pdf,
            lo,
            hi,
            epsabs=tol,
            epsrel=0.0,
            limit=QUADRATURE_LIMIT,
            points=points,
            full_output=1,
        )
    value, error = result[0], result[1]
    # quad appends a message only when it stopped short of the requested accuracy
    if len(result) > 3 or error > tol:
        raise QuadratureError("quadrature did not converge", estimate=value, error_bound=error)
    return value, error


def g_factor_quadrature(
    wave: ProductWaveFunction, region1: BoxRegion, region2: BoxRegion, tol: float = 1e-10
) -> float:
    """
    g(O₁, O₂) as a product of six adaptive 1-D quadratures of the Gaussian density.

    Each factor is at most 1, so per-axis errors of tol/6 keep the product
    within tol of the exact value.

    Raises:
        QuadratureError: If an axis does not converge within the subdivision budget
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    axis_tol = tol / 6.0
    limits = _standard_limits(wave.packet1, region1) + _standard_limits(wave.packet2, region2)

    value = 1.0
    total_error = 0.0
    for axis, (a, b) in enumerate(limits):
        try:
            factor, error = _axis_quadrature(a, b, axis_tol)
        except QuadratureError as e:
            partial = value * e.estimate
            raise QuadratureError(f"axis {axis} did not converge", partial, total_error + e.error_bound) from e
        logger.debug("axis %d: integral %.15g, error bound %.3g", axis, factor, error)
        value *= factor
        total_error += error
    return value


def g_factor_montecarlo(
    wave: ProductWaveFunction, region1: BoxRegion, region2: BoxRegion, n: int, seed: int
) -> tuple[float, float]:
    """
    Estimate g by sampling both particles from |φ|² with a seeded PCG64 generator.

    Returns:
        (estimate, standard error), identical for identical seeds
    """
    if n < MIN_MONTECARLO_SAMPLES:
        raise ValueError(f"need at least {MIN_MONTECARLO_SAMPLES} samples, got {n}")
    rng = np.random.Generator(np.random.PCG64(seed))

    inside = np.ones(n, dtype=bool)
    for packet, region in ((wave.packet1, region1), (wave.packet2, region2)):
        samples = rng.normal(loc=packet.mean, scale=1.0 / packet.m, size=(n, 3))
        inside &= np.all((samples >= region.lo) & (samples <= region.hi), axis=1)

    estimate = float(np.count_nonzero(inside)) / n
    stderr = math.sqrt(estimate * (1.0 - estimate) / n)
    return estimate, stderr


def conditional_spin_region_probability(packet: GaussianPacket, o1: BoxRegion, d1: BoxRegion) -> float:
    """
    P(a, O₁ | D₁) = P(a, O₁, D₁) / P(D₁) for O₁ ⊆ D₁.

    The spin factor is the singlet's direction-independent marginal 1/2.

    Raises:
        ConditioningError: If O₁ is not inside D₁ or D₁ has vanishing probability
    """
    if not contains(d1, o1):
        raise ConditioningError("conditioning region must contain detector region")
    denominator = region_probability(packet, d1)
    if denominator <= NULL_EVENT_PROBABILITY:
        raise ConditioningError("conditioning on null event")
    return SINGLET_MARGINAL * region_probability(packet, o1) / denominator

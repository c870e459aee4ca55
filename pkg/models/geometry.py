"""Measurement directions on the unit sphere and axis-aligned detector boxes."""

import math
from dataclasses import dataclass

import numpy as np

NORM_TOLERANCE = 1e-12

# "All of space" is a box this many widths (1/m) wide in every direction.
ALL_SPACE_EXTENT = 1e8

Vector3 = tuple[float, float, float]


class DegenerateDirectionError(ValueError):
    """Raised when a direction cannot be normalized."""

    pass


@dataclass(frozen=True)
class UnitVector3:
    """A direction a, b on the sphere S², stored already normalized."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm_sq = self.x * self.x + self.y * self.y + self.z * self.z
        if abs(norm_sq - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"not a unit vector: |({self.x}, {self.y}, {self.z})|² = {norm_sq}")

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "UnitVector3":
        """Build a direction from polar angle theta and azimuth phi."""
        s = math.sin(theta)
        return make_unit(s * math.cos(phi), s * math.sin(phi), math.cos(theta))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class BoxRegion:
    """Axis-aligned box O = [lo, hi] in ℝ³ with strictly positive volume."""

    lo: Vector3
    hi: Vector3

    def __post_init__(self) -> None:
        if len(self.lo) != 3 or len(self.hi) != 3:
            raise ValueError("box corners must have three coordinates")
        for i, (lo_i, hi_i) in enumerate(zip(self.lo, self.hi)):
            if not lo_i < hi_i:
                raise ValueError(f"empty box along axis {i}: lo={lo_i}, hi={hi_i}")

    @classmethod
    def centered(cls, center: Vector3, half_width: float) -> "BoxRegion":
        """Cube of the given half-width around a center point."""
        return cls(
            lo=(center[0] - half_width, center[1] - half_width, center[2] - half_width),
            hi=(center[0] + half_width, center[1] + half_width, center[2] + half_width),
        )

    @classmethod
    def all_space(cls, m: float) -> "BoxRegion":
        """Box standing in for ℝ³ when the packet width is 1/m."""
        return cls.centered((0.0, 0.0, 0.0), ALL_SPACE_EXTENT / m)

    def volume(self) -> float:
        return math.prod(hi_i - lo_i for lo_i, hi_i in zip(self.lo, self.hi))


def make_unit(x: float, y: float, z: float) -> UnitVector3:
    """
    Normalize (x, y, z) onto the unit sphere.

    Raises:
        DegenerateDirectionError: If the input is the zero vector
    """
    norm = math.sqrt(x * x + y * y + z * z)
    if norm == 0.0 or not math.isfinite(norm):
        raise DegenerateDirectionError("degenerate direction")
    return UnitVector3(x / norm, y / norm, z / norm)


def dot(u: UnitVector3, v: UnitVector3) -> float:
    """Inner product a·b, clamped to [-1, 1] against rounding."""
    value = u.x * v.x + u.y * v.y + u.z * v.z
    return min(1.0, max(-1.0, value))


def translate(region: BoxRegion, shift: Vector3) -> BoxRegion:
    """Shift a box by the vector l."""
    return BoxRegion(
        lo=(region.lo[0] + shift[0], region.lo[1] + shift[1], region.lo[2] + shift[2]),
        hi=(region.hi[0] + shift[0], region.hi[1] + shift[1], region.hi[2] + shift[2]),
    )


def contains(outer: BoxRegion, inner: BoxRegion) -> bool:
    """True iff inner ⊆ outer coordinate-wise."""
    return all(o_lo <= i_lo and i_hi <= o_hi for o_lo, o_hi, i_lo, i_hi in zip(outer.lo, outer.hi, inner.lo, inner.hi))

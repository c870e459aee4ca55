"""Singlet spin state and the spin correlation E_spin(a, b) = -a·b."""

from dataclasses import dataclass
from functools import cache

import numpy as np

from models.geometry import UnitVector3, dot

SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)

STATE_TOLERANCE = 1e-12
HERMITIAN_TOLERANCE = 1e-12
INVOLUTION_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class SpinState:
    """Two-qubit amplitudes in the basis |00⟩, |01⟩, |10⟩, |11⟩."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.amplitudes.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got shape {self.amplitudes.shape}")
        norm_sq = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm_sq - 1.0) > STATE_TOLERANCE:
            raise ValueError(f"state not normalized: Σ|ψ|² = {norm_sq}")
        self.amplitudes.setflags(write=False)


@dataclass(frozen=True, eq=False)
class SpinObservable:
    """The 4×4 operator σ·a ⊗ σ·b."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        if self.matrix.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {self.matrix.shape}")
        if not np.allclose(self.matrix, self.matrix.conj().T, rtol=0.0, atol=HERMITIAN_TOLERANCE):
            raise ValueError("observable is not Hermitian")
        if not np.allclose(self.matrix @ self.matrix, np.eye(4), rtol=0.0, atol=INVOLUTION_TOLERANCE):
            raise ValueError("observable does not square to the identity")


@cache
def singlet() -> SpinState:
    """(|01⟩ - |10⟩)/√2."""
    r = np.sqrt(0.5)
    return SpinState(np.array([0.0, r, -r, 0.0], dtype=complex))


def sigma_along(n: UnitVector3) -> np.ndarray:
    """σ·n for a unit direction n."""
    return n.x * SIGMA_1 + n.y * SIGMA_2 + n.z * SIGMA_3


def spin_observable(a: UnitVector3, b: UnitVector3) -> SpinObservable:
    """Tensor product σ·a ⊗ σ·b, left factor acting on particle 1."""
    return SpinObservable(np.kron(sigma_along(a), sigma_along(b)))


def e_spin(a: UnitVector3, b: UnitVector3) -> float:
    """Closed-form singlet correlation -a·b."""
    return -dot(a, b)


def e_spin_matrix(a: UnitVector3, b: UnitVector3) -> float:
    """
    Singlet correlation ⟨ψ|σ·a ⊗ σ·b|ψ⟩ by explicit linear algebra.

    Cross-checks e_spin; the imaginary part of the raw expectation is
    rounding noise and is discarded.

    Raises:
        ArithmeticError: If the expectation has a non-negligible imaginary part
    """
    psi = singlet().amplitudes
    expectation = np.vdot(psi, spin_observable(a, b).matrix @ psi)
    if abs(expectation.imag) >= STATE_TOLERANCE:
        raise ArithmeticError(f"expectation value not real: {expectation}")
    return float(expectation.real)

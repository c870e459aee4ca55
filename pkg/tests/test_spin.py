"""Unit tests for the singlet spin correlation."""

import math

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from locality.spin import e_spin, e_spin_matrix, singlet, spin_observable
from models.geometry import UnitVector3, make_unit

Z = make_unit(0, 0, 1)


def _random_unit(rng: np.random.Generator) -> UnitVector3:
    return make_unit(*rng.normal(size=3))


class TestSinglet:
    """Test the singlet state."""

    def test_amplitudes(self):
        amplitudes = singlet().amplitudes

        assert amplitudes.tolist() == [0, 0.7071067811865476, -0.7071067811865476, 0]

    def test_normalized(self):
        assert np.sum(np.abs(singlet().amplitudes) ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_to_up_up(self):
        up_up = np.array([1, 0, 0, 0], dtype=complex)

        assert np.vdot(up_up, singlet().amplitudes) == 0


class TestSpinObservable:
    """Test the operator σ·a ⊗ σ·b."""

    def test_sigma_z_product(self):
        m = spin_observable(Z, Z).matrix

        assert np.array_equal(m, np.diag([1, -1, -1, 1]).astype(complex))

    def test_traceless_and_involutive(self):
        rng = np.random.default_rng(10)
        for _ in range(200):
            m = spin_observable(_random_unit(rng), _random_unit(rng)).matrix
            assert abs(np.trace(m)) <= 1e-12
            assert np.allclose(m @ m, np.eye(4), atol=1e-10)


class TestSpinCorrelation:
    """Test E_spin(a, b) = -a·b by both paths."""

    def test_parallel(self):
        a = make_unit(0.3, -0.2, 0.9)

        assert e_spin(a, a) == pytest.approx(-1.0, abs=1e-15)

    def test_orthogonal(self):
        assert e_spin(make_unit(1, 0, 0), make_unit(0, 0, 1)) == 0.0

    def test_diagonal_settings(self):
        assert e_spin(make_unit(1, 0, 0), make_unit(1, 1, 0)) == pytest.approx(-math.sqrt(2) / 2, abs=1e-15)

    def test_matrix_diagonal_case(self):
        assert e_spin_matrix(Z, Z) == pytest.approx(-1.0, abs=1e-15)

    def test_matrix_antiparallel(self):
        assert e_spin_matrix(Z, make_unit(0, 0, -1)) == pytest.approx(1.0, abs=1e-15)

    def test_matrix_matches_closed_form(self):
        rng = np.random.default_rng(11)
        for _ in range(10_000):
            a, b = _random_unit(rng), _random_unit(rng)
            assert abs(e_spin_matrix(a, b) - e_spin(a, b)) <= 1e-12

    def test_symmetric(self):
        rng = np.random.default_rng(12)
        for _ in range(500):
            a, b = _random_unit(rng), _random_unit(rng)
            assert e_spin(a, b) == e_spin(b, a)

    def test_rotation_invariant(self):
        rng = np.random.default_rng(13)
        rotations = Rotation.random(200, random_state=14).as_matrix()
        for r in rotations:
            a, b = _random_unit(rng), _random_unit(rng)
            ra, rb = make_unit(*(r @ a.as_array())), make_unit(*(r @ b.as_array()))
            assert e_spin(ra, rb) == pytest.approx(e_spin(a, b), abs=1e-10)
            assert e_spin_matrix(ra, rb) == pytest.approx(e_spin_matrix(a, b), abs=1e-10)

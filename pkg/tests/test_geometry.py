"""Unit tests for directions and detector boxes."""

import math

import numpy as np
import pytest

from models.geometry import (
    BoxRegion,
    DegenerateDirectionError,
    UnitVector3,
    contains,
    dot,
    make_unit,
    translate,
)


def _random_box(rng: np.random.Generator) -> BoxRegion:
    lo = tuple(float(v) for v in rng.integers(-3, 1, size=3))
    hi = tuple(float(v) for v in rng.integers(1, 4, size=3))
    return BoxRegion(lo=lo, hi=hi)  # type: ignore[arg-type]


class TestMakeUnit:
    """Test direction normalization."""

    def test_scales_to_unit_norm(self):
        assert make_unit(2, 0, 0) == UnitVector3(1.0, 0.0, 0.0)

    def test_diagonal(self):
        u = make_unit(1, 1, 0)

        assert u.x == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
        assert u.y == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
        assert u.z == 0.0

    def test_zero_vector_rejected(self):
        with pytest.raises(DegenerateDirectionError, match="degenerate direction"):
            make_unit(0, 0, 0)

    def test_unnormalized_construction_rejected(self):
        with pytest.raises(ValueError):
            UnitVector3(1.0, 1.0, 0.0)

    def test_random_inputs_normalized(self):
        rng = np.random.default_rng(1)
        for v in rng.normal(size=(200, 3)) * 1e3:
            u = make_unit(*v)
            assert abs(u.x**2 + u.y**2 + u.z**2 - 1.0) <= 1e-12

    def test_from_angles(self):
        u = UnitVector3.from_angles(math.pi / 2, 0.0)

        assert u.as_array() == pytest.approx([1.0, 0.0, 0.0], abs=1e-15)


class TestDot:
    """Test the inner product of directions."""

    def test_identical(self):
        assert dot(make_unit(1, 0, 0), make_unit(1, 0, 0)) == 1.0

    def test_orthogonal(self):
        assert dot(make_unit(1, 0, 0), make_unit(0, 1, 0)) == 0.0

    def test_diagonal_overlap(self):
        assert dot(make_unit(1, 0, 0), make_unit(1, 1, 0)) == pytest.approx(0.70711, abs=1e-5)

    def test_bounded_by_one(self):
        rng = np.random.default_rng(2)
        for u, v in rng.normal(size=(1000, 2, 3)):
            assert abs(dot(make_unit(*u), make_unit(*v))) <= 1.0


class TestTranslate:
    """Test box translation."""

    def test_second_region(self):
        moved = translate(BoxRegion.centered((0, 0, 0), 1.0), (10.0, 0.0, 0.0))

        assert moved == BoxRegion(lo=(9.0, -1.0, -1.0), hi=(11.0, 1.0, 1.0))

    def test_zero_shift_is_identity(self):
        box = BoxRegion(lo=(0.5, -2.0, 1.0), hi=(1.5, 3.0, 4.0))

        assert translate(box, (0.0, 0.0, 0.0)) == box

    def test_negative_shift(self):
        moved = translate(BoxRegion(lo=(0, 0, 0), hi=(1, 1, 1)), (-1.0, -1.0, -1.0))

        assert moved == BoxRegion(lo=(-1.0, -1.0, -1.0), hi=(0.0, 0.0, 0.0))

    def test_volume_preserved(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            box = _random_box(rng)
            shift = tuple(float(v) for v in rng.integers(-50, 50, size=3))
            assert translate(box, shift).volume() == box.volume()  # type: ignore[arg-type]

    def test_volume_preserved_for_real_shifts(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            box = _random_box(rng)
            shift = tuple(rng.normal(size=3) * 10)
            assert translate(box, shift).volume() == pytest.approx(box.volume(), rel=1e-12)  # type: ignore[arg-type]


class TestContains:
    """Test box containment."""

    def test_larger_contains_smaller(self):
        assert contains(BoxRegion.centered((0, 0, 0), 2.0), BoxRegion.centered((0, 0, 0), 1.0))

    def test_smaller_does_not_contain_larger(self):
        assert not contains(BoxRegion.centered((0, 0, 0), 1.0), BoxRegion.centered((0, 0, 0), 2.0))

    def test_reflexive(self):
        box = BoxRegion(lo=(0, 1, 2), hi=(3, 4, 5))

        assert contains(box, box)

    def test_partial_order(self):
        rng = np.random.default_rng(5)
        for _ in range(2000):
            a, b, c = _random_box(rng), _random_box(rng), _random_box(rng)
            assert contains(a, a)
            if contains(a, b) and contains(b, a):
                assert a == b
            if contains(a, b) and contains(b, c):
                assert contains(a, c)

    def test_empty_box_rejected(self):
        with pytest.raises(ValueError):
            BoxRegion(lo=(0, 0, 0), hi=(1, 0, 1))

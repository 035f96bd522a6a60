"""Exact linear algebra and affine map primitives."""

from fractions import Fraction as F

import pytest

from waveletsets.geometry import (
    AffineIsometry,
    AffineMap,
    Hyperplane,
    Mat,
    Vec,
    is_expansive,
    spectral_moduli,
    vec,
)


def test_vector_arithmetic_is_exact():
    a = vec(F(1, 3), F(1, 7))
    b = vec(F(2, 3), F(6, 7))
    assert a + b == vec(1, 1)
    assert (a - b) + b == a
    assert a.scale(21) == vec(7, 3)
    assert a.dot(b) == F(2, 9) + F(6, 49)


def test_matrix_inverse_and_determinant():
    m = Mat([[F(1, 2), F(1, 3)], [F(1, 5), F(4)]])
    inv = m.inverse()
    assert m.matmul(inv) == Mat.identity(2)
    assert m.det() * inv.det() == 1


def test_singular_matrix_rejected():
    with pytest.raises(ValueError):
        Mat([[1, 2], [2, 4]]).inverse()


def test_isometry_requires_orthogonal_linear_part():
    with pytest.raises(ValueError):
        AffineIsometry(Mat([[2, 0], [0, 1]]), Vec((0, 0)))


def test_isometry_composition_and_inverse():
    rot = AffineIsometry(Mat([[0, -1], [1, 0]]), Vec((1, 2)))
    assert rot.compose(rot.inverse()).is_identity()
    assert rot.inverse().apply(rot.apply((F(1, 3), F(2, 5)))) == (F(1, 3), F(2, 5))


def test_affine_map_round_trip():
    m = AffineMap(Mat([[F(1, 2), 0], [F(1, 3), F(2)]]), Vec((F(1, 7), 3)))
    p = (F(5, 11), F(-2, 9))
    assert m.inverse().apply(m.apply(p)) == p
    assert m.compose(m.inverse()).apply(p) == p


def test_hyperplane_reflection_is_exact_involution():
    h = Hyperplane((2, 1), F(3, 2))
    x = Vec((F(7, 5), F(-1, 3)))
    assert h.reflect(h.reflect(x)) == x
    on_plane = Vec((F(3, 4), F(0)))
    assert h.side(on_plane) == 0
    assert h.reflect(on_plane) == on_plane
    iso = h.reflection()
    assert iso.compose(iso).is_identity()


def test_spectral_moduli_and_expansive():
    assert is_expansive(Mat([[2, 0], [0, 2]]))
    assert not is_expansive(Mat([[2, 0], [0, F(1, 2)]]))
    assert is_expansive(Mat([[0, -2], [2, 0]]), mode="norm-decay")
    moduli = spectral_moduli(Mat([[3, 0], [0, F(1, 4)]]))
    assert sorted(round(m, 9) for m in moduli) == [0.25, 3.0]

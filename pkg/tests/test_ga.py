import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose

from geomfreq.errors import DimensionError
from geomfreq.ga import (
    Bivector,
    basis_vector,
    dot,
    left_contract,
    norm_bivec,
    norm_vec,
    pair_index,
    pair_labels,
    wedge,
)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@st.composite
def vectors(draw, count, min_dim=2, max_dim=8):
    dim = draw(st.integers(min_dim, max_dim))
    return [draw(arrays(float, dim, elements=finite)) for _ in range(count)]


def test_dot_examples():
    assert dot([1, 0, 0], [0, 1, 0]) == 0
    assert dot([3, 4], [3, 4]) == 25


def test_balanced_ab_orthogonal():
    angles = 2 * np.pi * np.arange(3) / 3
    a, b = np.cos(angles), np.sin(angles)
    assert abs(dot(a, b)) < 1e-15
    assert norm_bivec(wedge(a, b)) == pytest.approx(1.5, rel=1e-14)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        dot([1, 2], [1, 2, 3])
    with pytest.raises(DimensionError):
        wedge([1, 2], [1, 2, 3])
    with pytest.raises(DimensionError):
        left_contract([1, 2], wedge([1, 0, 0], [0, 1, 0]))
    with pytest.raises(DimensionError):
        wedge([1, 0], [0, 1]) + wedge([1, 0, 0], [0, 1, 0])


def test_basis_wedge_and_order():
    B = wedge(basis_vector(0, 3), basis_vector(1, 3))
    assert_allclose(B.comps, [1, 0, 0])
    assert pair_labels(3) == ["e12", "e13", "e23"]
    assert wedge(basis_vector(1, 3), basis_vector(2, 3)).component(1, 2) == 1
    assert wedge(basis_vector(1, 3), basis_vector(2, 3)).component(2, 1) == -1


@pytest.mark.parametrize("dim", [2, 3, 5, 8])
def test_pair_index_matches_storage(dim):
    k = 0
    for i in range(dim):
        for j in range(i + 1, dim):
            assert pair_index(i, j, dim) == k
            k += 1


def test_self_wedge_vanishes():
    a = np.array([0.3, -2.0, 5.0, 1.0])
    assert norm_bivec(wedge(a, a)) == 0


def test_contraction_examples():
    s1, s2, s3 = (basis_vector(i, 3) for i in range(3))
    assert_allclose(left_contract(s1, wedge(s1, s2)), s2)
    assert_allclose(left_contract(s3, wedge(s1, s2)), 0)


def test_contraction_identity_random_5d():
    rng = np.random.default_rng(0)
    for _ in range(100):
        a, x, y = rng.normal(size=(3, 5))
        assert_allclose(left_contract(a, wedge(x, y)), (a @ x) * y - (a @ y) * x,
                        rtol=1e-12, atol=1e-12)


def test_norms():
    assert norm_vec([3, 4]) == 5
    w = 2 * math.pi * 50
    B = Bivector(3, math.sqrt(3) * w * np.array([1, -1, 1]))
    assert norm_bivec(B) == pytest.approx(3 * w, rel=1e-15)


@pytest.mark.parametrize("dim", range(2, 9))
def test_orthonormal_wedge_has_unit_norm(dim):
    rng = np.random.default_rng(dim)
    for _ in range(20):
        q, _ = np.linalg.qr(rng.normal(size=(dim, 2)))
        assert norm_bivec(wedge(q[:, 0], q[:, 1])) == pytest.approx(1, abs=1e-14)


@given(vectors(3), st.floats(-10, 10))
def test_wedge_bilinear(vs, alpha):
    a, b, c = vs
    lhs = wedge(alpha * a + b, c).comps
    rhs = alpha * wedge(a, c).comps + wedge(b, c).comps
    scale = max(1.0, np.abs(alpha * a).max() + np.abs(b).max()) * max(1.0, np.abs(c).max())
    assert np.abs(lhs - rhs).max() <= 1e-12 * scale


@given(vectors(2))
def test_wedge_antisymmetric(vs):
    a, b = vs
    assert wedge(a, b) == -wedge(b, a)


@given(vectors(2))
def test_lagrange_identity(vs):
    a, b = vs
    lhs = norm_bivec(wedge(a, b)) ** 2
    rhs = (a @ a) * (b @ b) - (a @ b) ** 2
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, (a @ a) * (b @ b))


@settings(max_examples=50)
@given(vectors(3))
def test_contraction_adjoint(vs):
    a, x, y = vs
    lhs = left_contract(a, wedge(x, y))
    rhs = (a @ x) * y - (a @ y) * x
    scale = max(1.0, norm_vec(a) * norm_vec(x) * norm_vec(y))
    assert np.abs(lhs - rhs).max() <= 1e-12 * scale


class TestBivector:
    def test_immutable(self):
        B = wedge([1, 0, 0], [0, 1, 0])
        with pytest.raises(AttributeError):
            B.dim = 4
        with pytest.raises(ValueError):
            B.comps[0] = 2.0

    def test_rejects_bad_input(self):
        with pytest.raises(DimensionError):
            Bivector(3, [1.0, 2.0])
        with pytest.raises(ValueError):
            Bivector(3, [1.0, np.nan, 0.0])
        with pytest.raises(DimensionError):
            Bivector(1)

    def test_matrix_round_trip(self):
        B = Bivector(4, np.arange(1.0, 7.0))
        M = B.matrix()
        assert_allclose(M, -M.T)
        assert Bivector.from_matrix(M) == B

    def test_arithmetic(self):
        B = Bivector(3, [1.0, 2.0, 3.0])
        assert_allclose((2 * B - B / 2).comps, [1.5, 3.0, 4.5])
        assert (-B + B).norm() == 0

    def test_transform_by_rotation(self):
        rng = np.random.default_rng(3)
        q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
        a, b = rng.normal(size=(2, 4))
        assert_allclose(wedge(a, b).transformed(q).comps, wedge(q @ a, q @ b).comps,
                        atol=1e-12)

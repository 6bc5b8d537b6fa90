"""Exterior algebra: wedge, form powers, and the two Pfaffian routes."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wirtinger.exterior import (
    Multivector,
    SkewMatrix,
    complex_pfaffian,
    form_power,
    pfaffian,
    pfaffian_oracle,
    top_coefficient,
    two_form_multivector,
    wedge,
)


def random_skew(rng, dim):
    b = rng.standard_normal((dim, dim))
    return SkewMatrix(b - b.T)


# --- SkewMatrix ---------------------------------------------------------


def test_skew_symmetrizes_rounded_input():
    a = SkewMatrix([[0.0, 1.0 + 1e-12], [-1.0, 0.0]])
    assert a.entries[0, 1] == pytest.approx(1.0, abs=1e-11)
    assert np.array_equal(a.entries, -a.entries.T)


def test_skew_rejects_far_from_antisymmetric():
    with pytest.raises(ValueError, match="not antisymmetric"):
        SkewMatrix([[0.0, 1.0], [-0.5, 0.0]])


def test_skew_rejects_nonsquare():
    with pytest.raises(ValueError):
        SkewMatrix(np.zeros((2, 3)))


# --- Multivector and wedge ------------------------------------------------


def test_wedge_basis_vectors():
    e1 = Multivector(4, {(0,): 1.0})
    e2 = Multivector(4, {(1,): 1.0})
    assert wedge(e1, e2).terms() == {(0, 1): 1.0}
    assert wedge(e1, e1).is_zero()


def test_wedge_dimension_mismatch():
    with pytest.raises(ValueError, match="mismatched dimensions"):
        wedge(Multivector(4, {(0,): 1.0}), Multivector(6, {(0,): 1.0}))


def test_key_normalization_sign():
    mv = Multivector(4, {(1, 0): 2.0})
    assert mv.terms() == {(0, 1): -2.0}
    assert mv.coefficient((1, 0)) == pytest.approx(2.0)
    assert Multivector(4, {(1, 1): 3.0}).is_zero()


def test_square_of_split_two_form():
    mv = Multivector(4, {(0, 1): 1.0, (2, 3): 1.0})
    square = wedge(mv, mv)
    assert square.terms() == {(0, 1, 2, 3): 2.0}


def test_form_power_trivial_cases():
    a = random_skew(np.random.default_rng(0), 6)
    assert form_power(a, 0).terms() == {(): 1.0}
    block = SkewMatrix([[0.0, 1.0], [-1.0, 0.0]])
    assert form_power(block, 1).terms() == {(0, 1): 1.0}


def test_form_power_standard_symplectic_r4():
    omega = SkewMatrix(
        [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    )
    assert form_power(omega, 2).terms() == {(0, 1, 2, 3): 2.0}


@st.composite
def multivectors(draw, dim, grade):
    count = draw(st.integers(1, 3))
    terms = {}
    for _ in range(count):
        indices = draw(
            st.lists(
                st.integers(0, dim - 1), min_size=grade, max_size=grade, unique=True
            )
        )
        terms[tuple(indices)] = draw(
            st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)
        )
    return Multivector(dim, terms)


@settings(max_examples=60, deadline=None)
@given(data=st.data(), dim=st.integers(4, 8))
def test_wedge_associative_and_anticommutative(data, dim):
    p = data.draw(st.integers(1, 2))
    q = data.draw(st.integers(1, 2))
    r = data.draw(st.integers(1, 2))
    a = data.draw(multivectors(dim, p))
    b = data.draw(multivectors(dim, q))
    c = data.draw(multivectors(dim, r))
    left = wedge(wedge(a, b), c)
    right = wedge(a, wedge(b, c))
    assert left.allclose(right, tol=1e-12)
    flip = wedge(b, a) * float((-1.0) ** (p * q))
    assert wedge(a, b).allclose(flip, tol=1e-12)


# --- Pfaffians ------------------------------------------------------------


def test_pfaffian_2x2_definition():
    assert pfaffian_oracle(SkewMatrix([[0.0, 3.5], [-3.5, 0.0]])) == pytest.approx(3.5)
    assert pfaffian(SkewMatrix([[0.0, 3.5], [-3.5, 0.0]])) == pytest.approx(3.5)


def test_pfaffian_block_multiplicativity():
    a, b = 2.0, -0.75
    m = np.zeros((4, 4))
    m[0, 1], m[1, 0] = a, -a
    m[2, 3], m[3, 2] = b, -b
    assert pfaffian_oracle(SkewMatrix(m)) == pytest.approx(a * b)


def test_pfaffian_zero_matrix():
    assert pfaffian(SkewMatrix(np.zeros((4, 4)))) == 0.0


def test_pfaffian_odd_dimension_rejected():
    odd = SkewMatrix(np.zeros((3, 3)))
    with pytest.raises(ValueError, match="even"):
        pfaffian(odd)
    with pytest.raises(ValueError, match="even"):
        pfaffian_oracle(odd)


def test_pfaffian_oracle_cutoff():
    big = SkewMatrix(np.zeros((14, 14)))
    with pytest.raises(ValueError, match="oracle"):
        pfaffian_oracle(big)


def test_pfaffian_square_is_determinant():
    rng = np.random.default_rng(1)
    for _ in range(20):
        a = random_skew(rng, 6)
        det = np.linalg.det(a.entries)
        assert pfaffian(a) ** 2 == pytest.approx(det, rel=1e-10)


def test_pfaffian_fast_matches_oracle():
    rng = np.random.default_rng(2)
    for dim in (2, 4, 6, 8, 10, 12):
        for _ in range(5):
            a = random_skew(rng, dim)
            slow = pfaffian_oracle(a)
            assert pfaffian(a) == pytest.approx(slow, rel=1e-10, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    dim=st.sampled_from([2, 4]),
    seed=st.integers(0, 10_000),
)
def test_pfaffian_congruence_law(dim, seed):
    rng = np.random.default_rng(seed)
    a = random_skew(rng, dim)
    b = rng.standard_normal((dim, dim))
    det_b = np.linalg.det(b)
    lhs = pfaffian(SkewMatrix(b.T @ a.entries @ b))
    rhs = det_b * pfaffian(a)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


def test_complex_pfaffian_square_is_determinant():
    rng = np.random.default_rng(3)
    for _ in range(10):
        b = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        s = b - b.T
        pf = complex_pfaffian(s)
        det = np.linalg.det(s)
        assert pf * pf == pytest.approx(det, rel=1e-9)


def test_top_coefficient_reads_off_expansion():
    rng = np.random.default_rng(4)
    for d in (1, 2, 3):
        a = random_skew(rng, 2 * d)
        from_expansion = form_power(a, d).coefficient(tuple(range(2 * d)))
        assert top_coefficient(a, d) == pytest.approx(
            from_expansion, rel=1e-10, abs=1e-12
        )
        assert top_coefficient(a, d) == pytest.approx(
            math.factorial(d) * pfaffian(a), rel=1e-12
        )


def test_top_coefficient_dimension_check():
    with pytest.raises(ValueError, match="2d"):
        top_coefficient(SkewMatrix(np.zeros((4, 4))), 3)


def test_two_form_multivector_roundtrip():
    rng = np.random.default_rng(5)
    a = random_skew(rng, 5)
    mv = two_form_multivector(a)
    for (i, j), coeff in mv.terms().items():
        assert coeff == pytest.approx(a.entries[i, j])

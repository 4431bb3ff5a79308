import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clifford_fourier.algebra import (
    DimensionError,
    Multivector,
    blade_sign,
    conj,
    embed_vector,
    from_json,
    geometric_product,
    grade_part,
    inner,
    wedge,
    wedge_components,
)

E = Multivector.blade


def mv_strategy(m):
    comp = st.floats(-3, 3, allow_nan=False)
    return st.lists(st.tuples(comp, comp), min_size=1 << m, max_size=1 << m).map(
        lambda cs: Multivector(m, np.array([a + 1j * b for a, b in cs]))
    )


def vec_strategy(m):
    return st.lists(st.floats(-5, 5, allow_nan=False), min_size=m, max_size=m).map(np.array)


def test_generator_squares_to_minus_one():
    assert E(2, 1) * E(2, 1) == Multivector.scalar(2, -1)


def test_anticommuting_generators():
    assert E(2, 1) * E(2, 2) == E(2, 1, 2)
    assert E(2, 2) * E(2, 1) == -E(2, 1, 2)


def test_bivector_square():
    assert E(2, 1, 2) * E(2, 1, 2) == Multivector.scalar(2, -1)


@pytest.mark.parametrize("m", range(1, 9))
def test_anticommutation_all_pairs(m):
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            s = E(m, i) * E(m, j) + E(m, j) * E(m, i)
            assert s == Multivector.scalar(m, -2.0 if i == j else 0.0)


def test_blade_sign_small_cases():
    assert blade_sign(0b01, 0b01) == -1
    assert blade_sign(0b10, 0b01) == -1
    assert blade_sign(0b01, 0b10) == 1


def test_embed_vector():
    assert embed_vector([1, 0]) == E(2, 1)
    assert embed_vector([0, 0]) == Multivector(2)


@given(vec_strategy(4))
def test_vector_square_is_minus_norm(x):
    X = embed_vector(x)
    assert (X * X).allclose(Multivector.scalar(4, -(x @ x)), atol=1e-12 * (1 + x @ x))


def test_inner_and_wedge_examples():
    assert inner([1, 0], [0, 1]) == 0
    assert wedge([1, 0], [0, 1]) == E(2, 1, 2)
    x = np.array([0.3, -1.2, 2.0])
    assert wedge(x, x) == Multivector(3)


@given(vec_strategy(5), vec_strategy(5))
def test_inner_wedge_from_products(x, y):
    X, Y = embed_vector(x), embed_vector(y)
    scale = 1 + np.abs(x).max() * np.abs(y).max()
    assert abs(inner(x, y) + 0.5 * (X * Y + Y * X).scalar_part) <= 1e-12 * scale
    assert wedge(x, y).allclose(0.5 * (X * Y - Y * X), atol=1e-12 * scale)


@given(vec_strategy(4), vec_strategy(4))
def test_wedge_square_is_real(x, y):
    w = wedge(x, y)
    sq = w * w
    target = inner(x, y) ** 2 - (x @ x) * (y @ y)
    scale = 1 + (x @ x) * (y @ y)
    assert sq.allclose(Multivector.scalar(4, target), atol=1e-11 * scale)


@given(vec_strategy(6), vec_strategy(6))
def test_wedge_component_estimate(x, y):
    t = np.sqrt(max(0.0, (x @ x) * (y @ y) - (x @ y) ** 2))
    assert np.abs(wedge_components(x, y)).max() <= t + 1e-12 * (1 + (x @ x) * (y @ y))


@given(mv_strategy(3), mv_strategy(3), mv_strategy(3))
def test_associativity(a, b, c):
    lhs, rhs = (a * b) * c, a * (b * c)
    assert lhs.allclose(rhs, atol=1e-12 * max(1.0, lhs.norm()))


@given(mv_strategy(3), mv_strategy(3), mv_strategy(3))
def test_distributivity(a, b, c):
    assert (a * (b + c)).allclose(a * b + a * c, atol=1e-11)


def test_grade_part_example():
    a = Multivector.scalar(2, 3) + 2 * E(2, 1) + 5 * E(2, 1, 2)
    assert grade_part(a, 2) == 5 * E(2, 1, 2)


@given(mv_strategy(4))
def test_grades_sum_to_whole(a):
    total = Multivector(4)
    for k in range(5):
        total = total + grade_part(a, k)
    assert total == a


@given(mv_strategy(3))
def test_conj_involution(a):
    assert conj(conj(a)) == a


@given(mv_strategy(3))
def test_json_roundtrip(a):
    assert from_json(a.to_json()) == a


def test_json_omits_zeros():
    d = json.loads((Multivector.scalar(3, 2.0) + E(3, 2, 3) * 1j).to_json())
    assert d == {"dim": 3, "coeffs": {"0": [2.0, 0.0], "6": [0.0, 1.0]}}


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        geometric_product(E(2, 1), E(3, 1))
    with pytest.raises(DimensionError):
        inner([1, 0], [1, 0, 0])


def test_coefficient_length_checked():
    with pytest.raises(ValueError):
        Multivector(3, np.zeros(4))

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wonder.linalg import (
    DimensionMismatch,
    Matrix,
    Subspace,
    annihilator,
    as_scalar,
    contains,
    format_scalar,
    intersect,
    kernel,
    matrix_from_lists,
    primitive_vector,
    quotient_coords,
    quotient_lift,
    rref,
    span_sum,
    transform_subspace,
)

scalars = st.integers(min_value=-6, max_value=6) | st.fractions(
    min_value=-4, max_value=4, max_denominator=5
)


@st.composite
def small_matrices(draw, max_dim=5):
    rows = draw(st.integers(min_value=1, max_value=max_dim))
    cols = draw(st.integers(min_value=1, max_value=max_dim))
    entries = draw(st.lists(scalars, min_size=rows * cols, max_size=rows * cols))
    return Matrix(rows, cols, entries)


@st.composite
def subspaces(draw, ambient=5):
    nvecs = draw(st.integers(min_value=0, max_value=ambient))
    vecs = draw(
        st.lists(
            st.lists(scalars, min_size=ambient, max_size=ambient),
            min_size=nvecs,
            max_size=nvecs,
        )
    )
    return Subspace.from_vectors(ambient, vecs)


def perm_matrix(perm):
    n = len(perm)
    return Matrix(n, n, [1 if i == perm[j] else 0 for i in range(n) for j in range(n)])


def test_rref_rank_one():
    r, pivots = rref(matrix_from_lists([[2, 4], [1, 2]]))
    assert r == matrix_from_lists([[1, 2]])
    assert pivots == [0]


def test_rref_identity_fixed():
    ident = Matrix.identity(3)
    r, pivots = rref(ident)
    assert r == ident
    assert pivots == [0, 1, 2]


def test_rref_row_swap():
    r, _ = rref(matrix_from_lists([[0, 1], [1, 0]]))
    assert r == Matrix.identity(2)


@given(small_matrices())
@settings(max_examples=150, deadline=None)
def test_rref_is_idempotent(m):
    r, _ = rref(m)
    r2, _ = rref(r)
    assert r == r2


def test_kernel_of_swap_minus_identity():
    swap = perm_matrix([1, 0])
    assert kernel(swap - Matrix.identity(2)) == Subspace.from_vectors(2, [[1, 1]])


def test_kernel_of_zero_matrix_is_full_space():
    zero = Matrix.identity(3) - Matrix.identity(3)
    assert kernel(zero) == Subspace.full(3)


def test_kernel_of_three_cycle_minus_identity():
    # (c - 1) v = 0 by hand: v constant on the 3-cycle.
    cyc = perm_matrix([1, 2, 0])
    assert kernel(cyc - Matrix.identity(3)) == Subspace.from_vectors(3, [[1, 1, 1]])


def test_intersect_two_equalities():
    a = kernel(matrix_from_lists([[1, -1, 0]]))  # x1 = x2
    b = kernel(matrix_from_lists([[0, 1, -1]]))  # x2 = x3
    assert intersect(a, b) == Subspace.from_vectors(3, [[1, 1, 1]])


def test_intersect_idempotent_and_full():
    a = Subspace.from_vectors(3, [[1, 2, 3], [0, 1, 1]])
    assert intersect(a, a) == a
    assert intersect(a, Subspace.full(3)) == a


def test_sum_basic():
    assert span_sum(
        Subspace.from_vectors(2, [[1, 0]]), Subspace.from_vectors(2, [[0, 1]])
    ) == Subspace.full(2)
    a = Subspace.from_vectors(3, [[1, 1, 0]])
    assert span_sum(a, Subspace.zero(3)) == a
    two = span_sum(a, Subspace.from_vectors(3, [[0, 1, 1]]))
    assert two.dim == 2


def test_contains_examples():
    plane = kernel(matrix_from_lists([[1, -1, 0]]))
    diag = Subspace.from_vectors(3, [[1, 1, 1]])
    assert contains(plane, diag)
    assert not contains(diag, plane)


def test_ambient_mismatch_raises():
    with pytest.raises(DimensionMismatch):
        intersect(Subspace.full(2), Subspace.full(3))
    with pytest.raises(DimensionMismatch):
        span_sum(Subspace.full(2), Subspace.full(3))
    with pytest.raises(DimensionMismatch):
        contains(Subspace.full(2), Subspace.full(3))


def test_annihilator_examples():
    assert annihilator(Subspace.zero(3)) == Subspace.full(3)
    assert annihilator(Subspace.full(3)) == Subspace.zero(3)
    diag = Subspace.from_vectors(3, [[1, 1, 1]])
    expected = Subspace.from_vectors(3, [[1, -1, 0], [0, 1, -1]])
    assert annihilator(diag) == expected


@given(subspaces())
@settings(max_examples=200, deadline=None)
def test_annihilator_is_involution(a):
    assert annihilator(annihilator(a)) == a
    assert annihilator(a).dim == a.ambient_dim - a.dim


@given(subspaces(), subspaces())
@settings(max_examples=200, deadline=None)
def test_modular_dimension_law(a, b):
    assert a.dim + b.dim == intersect(a, b).dim + span_sum(a, b).dim


@given(subspaces(), subspaces())
@settings(max_examples=200, deadline=None)
def test_contains_matches_intersection(a, b):
    assert contains(a, b) == (intersect(a, b) == b)


@given(subspaces(), subspaces())
@settings(max_examples=100, deadline=None)
def test_annihilator_reverses_inclusion(a, b):
    if contains(a, b):
        assert contains(annihilator(b), annihilator(a))


def test_annihilator_involution_sweep():
    # High-volume seeded sweep over ambient dimensions up to 6.
    rng = random.Random(20240)
    for _ in range(1000):
        n = rng.randint(1, 6)
        k = rng.randint(0, n)
        vecs = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(k)]
        s = Subspace.from_vectors(n, vecs)
        assert annihilator(annihilator(s)) == s


def test_quotient_coords_examples():
    assert quotient_coords(Subspace.zero(2)) == Matrix.identity(2)
    diag = Subspace.from_vectors(2, [[1, 1]])
    assert quotient_coords(diag) == matrix_from_lists([[1, -1]])
    assert quotient_coords(Subspace.full(3)).rows == 0


@given(subspaces())
@settings(max_examples=100, deadline=None)
def test_quotient_coords_kernel_is_subspace(u):
    q = quotient_coords(u)
    assert kernel(q) == u
    for row in u.basis_rows():
        assert all(x == 0 for x in q.apply(row))


@given(subspaces())
@settings(max_examples=100, deadline=None)
def test_quotient_lift_is_right_inverse_up_to_scale(u):
    if u.is_full():
        return
    q = quotient_coords(u)
    lift = quotient_lift(u)
    for i in range(q.rows):
        unit = [1 if j == i else 0 for j in range(q.rows)]
        image = q.apply(lift.apply(unit))
        assert primitive_vector(image) == primitive_vector(unit)


def test_primitive_vector():
    assert primitive_vector([Fraction(1, 2), Fraction(-3, 4)]) == (2, -3)
    assert primitive_vector([-2, 4, -6]) == (1, -2, 3)
    with pytest.raises(ValueError):
        primitive_vector([0, 0])


def test_scalar_roundtrip():
    assert as_scalar("3/4") == Fraction(3, 4)
    assert as_scalar("-7") == -7
    assert format_scalar(Fraction(6, 3)) == "2"
    assert format_scalar(Fraction(-1, 3)) == "-1/3"
    assert format_scalar(5) == "5"


def test_matrix_inverse():
    m = matrix_from_lists([[1, 2], [3, 5]])
    assert m * m.inverse() == Matrix.identity(2)
    assert not matrix_from_lists([[1, 2], [2, 4]]).is_invertible()


def test_transform_subspace():
    rot = matrix_from_lists([[0, -1], [1, 0]])
    x_axis = Subspace.from_vectors(2, [[1, 0]])
    assert transform_subspace(rot, x_axis) == Subspace.from_vectors(2, [[0, 1]])

"""Exact linear algebra over prime fields: frozen small examples plus
randomized structural laws."""

import pytest
from hypothesis import given, settings, strategies as st

from commacat.linalg import (
    BudgetExceeded,
    FieldElement,
    Matrix,
    ShapeError,
    Subspace,
    all_vectors,
    check_prime,
    enumerate_subspaces,
    hstack,
    image_basis,
    inverse,
    kernel_basis,
    kron,
    quotient_map,
    rank,
    rref,
    solve,
    solve_left,
    subspace_intersection,
    subspace_sum,
    vstack,
)


@st.composite
def matrices(draw, max_dim=4, modulus=2):
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(0, max_dim))
    ents = draw(st.lists(st.integers(0, modulus - 1),
                         min_size=rows * cols, max_size=rows * cols))
    return Matrix.build(rows, cols, modulus, ents)


def mat2(rows):
    return Matrix.from_rows(rows, 2)


# -- field scalars -------------------------------------------------------


def test_check_prime_rejects_composites():
    check_prime(2)
    check_prime(97)
    for bad in (0, 1, 4, 9, 15):
        with pytest.raises(ValueError):
            check_prime(bad)


def test_field_element_arithmetic():
    a = FieldElement.of(3, 5)
    b = FieldElement.of(4, 5)
    assert (a + b).value == 2
    assert (a * b).value == 2
    assert (a - b).value == 4
    assert (-a).value == 2
    assert (a / b).value == (3 * 4) % 5  # 4^-1 = 4 mod 5
    assert a.inverse().value == 2
    with pytest.raises(ZeroDivisionError):
        FieldElement.of(0, 5).inverse()


def test_field_element_modulus_mismatch():
    with pytest.raises(ValueError):
        FieldElement.of(1, 2) + FieldElement.of(1, 3)


# -- matrix construction and block ops -----------------------------------


def test_build_checks_entry_count():
    with pytest.raises(ShapeError):
        Matrix.build(2, 2, 2, (1, 0, 1))


def test_from_rows_empty_needs_cols():
    m = Matrix.from_rows([], 2, cols=3)
    assert (m.rows, m.cols) == (0, 3)


def test_mul_shape_mismatch():
    with pytest.raises(ShapeError):
        mat2([[1, 0]]).mul(mat2([[1, 0]]))


def test_stack_and_kron_shapes():
    a = mat2([[1, 0], [0, 1]])
    b = mat2([[1, 1]])
    assert vstack([a, b]).rows == 3
    assert hstack([a, a]).cols == 4
    k = kron(a, mat2([[1], [1]]))
    assert (k.rows, k.cols) == (4, 2)


# -- row reduction -------------------------------------------------------


def test_rref_frozen_example():
    # hand-reduced over F_2
    r = rref(mat2([[1, 1], [1, 1]]))
    assert r.matrix.row_list() == [[1, 1], [0, 0]]
    assert r.pivots == (0,)
    assert r.rank == 1


def test_rref_identity_is_fixed():
    m = Matrix.identity(3, 5)
    assert rref(m).matrix == m
    assert rref(m).rank == 3


@given(matrices(modulus=3))
def test_rref_idempotent(m):
    once = rref(m).matrix
    assert rref(once).matrix == once


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).dim == m.cols


@given(matrices(modulus=5), st.randoms(use_true_random=False))
def test_rref_invariant_under_row_operations(m, rng):
    """Left multiplication by an invertible matrix never changes the rref."""
    p = m.modulus
    while True:
        g = Matrix.build(m.rows, m.rows, p,
                         [rng.randrange(p) for _ in range(m.rows * m.rows)])
        if rank(g) == m.rows:
            break
    assert rref(g.mul(m)).matrix == rref(m).matrix


@given(matrices())
def test_kernel_vectors_annihilate(m):
    k = kernel_basis(m)
    for row in k.basis.row_list():
        col = Matrix.build(m.cols, 1, m.modulus, row)
        assert m.mul(col).is_zero


@given(matrices())
def test_image_dim_is_rank(m):
    assert image_basis(m).dim == rank(m)


# -- solving -------------------------------------------------------------


@given(matrices(), matrices())
def test_solve_round_trip(m, probe):
    if probe.rows != m.cols:
        probe = Matrix.build(m.cols, max(probe.cols, 1), m.modulus,
                             [0] * (m.cols * max(probe.cols, 1)))
    target = m.mul(probe)
    x = solve(m, target)
    assert x is not None
    assert m.mul(x) == target


def test_solve_reports_unsolvable():
    m = mat2([[0, 0]])
    target = mat2([[1]])
    assert solve(m, target) is None


def test_solve_left_round_trip():
    m = mat2([[1, 0], [1, 1]])
    probe = mat2([[0, 1], [1, 1]])
    y = solve_left(m, probe.mul(m))
    assert y.mul(m) == probe.mul(m)


def test_inverse():
    m = mat2([[1, 1], [0, 1]])
    assert inverse(m).mul(m) == Matrix.identity(2, 2)
    assert inverse(mat2([[1, 1], [1, 1]])) is None


# -- subspaces -----------------------------------------------------------


def test_subspace_count_frozen():
    # Gaussian binomial totals over F_2
    assert len(enumerate_subspaces(2, 2)) == 5
    assert len(enumerate_subspaces(4, 2)) == 67


def test_line_count_frozen():
    lines = [s for s in enumerate_subspaces(3, 2) if s.dim == 1]
    assert len(lines) == 7


def test_subspace_membership():
    s = Subspace.from_rows(3, 2, [[1, 1, 0]])
    assert s.contains_vector((1, 1, 0))
    assert not s.contains_vector((1, 0, 0))
    assert Subspace.full(3, 2).contains_subspace(s)
    assert not s.contains_subspace(Subspace.full(3, 2))


@given(st.integers(2, 4), st.randoms(use_true_random=False))
def test_modular_law_of_dimensions(n, rng):
    subs = enumerate_subspaces(n, 2)
    a = subs[rng.randrange(len(subs))]
    b = subs[rng.randrange(len(subs))]
    u = subspace_sum(a, b)
    w = subspace_intersection(a, b)
    assert u.dim + w.dim == a.dim + b.dim
    assert u.contains_subspace(a) and u.contains_subspace(b)
    assert a.contains_subspace(w) and b.contains_subspace(w)


def test_quotient_map_kills_exactly_the_subspace():
    s = Subspace.from_rows(3, 2, [[1, 0, 0], [0, 1, 0]])
    proj, q = quotient_map(3, s)
    assert q == 1
    for row in s.basis.row_list():
        assert proj.mul(Matrix.build(3, 1, 2, row)).is_zero
    assert rank(proj) == 1


def test_all_vectors_count_and_budget():
    assert len(list(all_vectors(3, 2))) == 8
    with pytest.raises(BudgetExceeded):
        list(all_vectors(30, 2, budget=100))


@settings(max_examples=25)
@given(st.integers(0, 3))
def test_subspace_enumeration_is_canonical(n):
    subs = enumerate_subspaces(n, 2)
    keys = [s.sort_key() for s in subs]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khlee.linalg import (DimensionError, Reducer, SparseMatrix, image_basis,
                          kernel_basis, rank, rank_profile, span_rank, subquotient_dim)
from oracles import dense_rank


def test_small_ranks():
    assert rank(SparseMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert rank(SparseMatrix.zero(3, 4)) == 0
    assert rank(SparseMatrix.from_dense([[1, 2], [2, 4]])) == 1


def test_kernel_of_row():
    ker = kernel_basis(SparseMatrix.from_dense([[1, 1]]))
    assert len(ker) == 1
    v = ker[0]
    assert v[0] == -v[1] != 0


def test_product_dimension_mismatch():
    with pytest.raises(DimensionError):
        SparseMatrix.zero(2, 3) @ SparseMatrix.zero(2, 3)


def test_exact_rationals():
    M = SparseMatrix.from_dense([[Fraction(1, 3), Fraction(1, 6)], [Fraction(2, 3), Fraction(1, 3)]])
    assert rank(M) == 1


def test_subquotient():
    # U = span(e0, e1), W = span(e0 + e1): (U + W)/W has dimension 1
    assert subquotient_dim([{0: 1}, {1: 1}], [{0: 1, 1: 1}], 3) == 1
    assert span_rank([{0: 1}, {0: 2}, {1: 1}]) == 2


def test_reducer():
    r = Reducer([{0: 1, 1: 1}])
    assert r.contains({0: 2, 1: 2})
    assert not r.contains({0: 1})
    assert r.add({0: 1})
    assert not r.add({1: 5})
    assert r.rank == 2


def test_rank_profile():
    assert rank_profile([{0: 1}, {0: 2}, {1: 1}, {}]) == [1, 1, 2, 2]


small = st.integers(-3, 3)


@st.composite
def matrices(draw):
    r = draw(st.integers(1, 7))
    c = draw(st.integers(1, 7))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_matches_oracle_and_transpose(rows):
    M = SparseMatrix.from_dense(rows)
    r = rank(M)
    assert r == dense_rank(rows)
    assert r == rank(M.transpose())


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_nullity(rows):
    M = SparseMatrix.from_dense(rows)
    ker = kernel_basis(M)
    assert rank(M) + len(ker) == M.ncols
    for v in ker:
        assert not M.apply(v)
    assert len(image_basis(M)) == rank(M)


@st.composite
def compatible_pair(draw):
    n, k, m = (draw(st.integers(1, 5)) for _ in range(3))
    a = [[draw(small) for _ in range(k)] for _ in range(n)]
    b = [[draw(small) for _ in range(m)] for _ in range(k)]
    return a, b


@settings(max_examples=100, deadline=None)
@given(compatible_pair())
def test_product_matches_dense(pair):
    a, b = pair
    P = (SparseMatrix.from_dense(a) @ SparseMatrix.from_dense(b)).to_dense()
    want = [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]
    assert P == want

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weightlab.gf2 import (
    BitMatrix,
    BitSubspace,
    DimensionError,
    Quotient,
    image_of_subspace,
    preimage,
    rank_kernel_image,
    reduce_mod,
    rref,
    vec_from_bits,
    vec_from_string,
    vec_to_string,
)

from oracles import dense_rank, matrix_to_dense, span_vectors, subspace_from_bits


vectors6 = st.lists(st.integers(0, 63), max_size=8)


def test_vec_string_round_trip():
    assert vec_from_string("1011") == 0b1101
    assert vec_to_string(0b1101, 4) == "1011"
    assert vec_from_bits([1, 0, 1]) == 0b101
    for v in range(16):
        assert vec_from_string(vec_to_string(v, 4)) == v


@given(vectors6)
def test_rref_preserves_span(vs):
    basis = rref(vs)
    dense = [[(v >> j) & 1 for j in range(6)] for v in vs]
    dense_basis = [[(v >> j) & 1 for j in range(6)] for v in basis]
    assert span_vectors(dense, 6) == span_vectors(dense_basis, 6)
    # echelon: strictly increasing pivots, each pivot cleared elsewhere
    pivots = [v & -v for v in basis]
    assert pivots == sorted(pivots)
    for i, v in enumerate(basis):
        for j, w in enumerate(basis):
            if i != j:
                assert w & pivots[i] == 0


@given(vectors6)
def test_rref_canonical_under_shuffle(vs):
    shuffled = list(vs)
    random.Random(0).shuffle(shuffled)
    assert rref(vs) == rref(shuffled)


def test_reduce_mod():
    basis = rref([0b011, 0b101])
    assert reduce_mod(0b011, basis) == 0
    assert reduce_mod(0b110, basis) == 0
    assert reduce_mod(0b100, basis) != 0 or 0b100 in span_vectors(
        [[1, 1, 0], [1, 0, 1]]
    )


@st.composite
def bit_matrices(draw, max_dim=6):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    rows = draw(st.lists(st.integers(0, 2**c - 1), min_size=r, max_size=r))
    return BitMatrix(r, c, tuple(rows))


@given(bit_matrices())
def test_rank_matches_dense_oracle(m):
    dense = matrix_to_dense(m)
    expected = dense_rank(dense) if dense and dense[0] else 0
    assert m.rank() == expected


@given(bit_matrices(4), bit_matrices(4))
def test_mul_matches_dense(a, b):
    if a.cols != b.rows:
        with pytest.raises(DimensionError):
            a.mul(b)
        return
    prod = a.mul(b)
    da, db = matrix_to_dense(a), matrix_to_dense(b)
    for i in range(prod.rows):
        for j in range(prod.cols):
            want = sum(da[i][k] * db[k][j] for k in range(a.cols)) % 2
            assert prod.entry(i, j) == want


def test_inverse():
    m = BitMatrix.from_dense([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    inv = m.inverse()
    assert m.mul(inv).row_data == BitMatrix.identity(3).row_data
    assert inv.mul(m).row_data == BitMatrix.identity(3).row_data
    singular = BitMatrix.from_dense([[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        singular.inverse()


@given(bit_matrices())
def test_rank_kernel_image(m):
    rank, ker, img = rank_kernel_image(m)
    assert rank + ker.dim == m.cols
    assert img.dim == rank
    for v in ker.basis:
        assert m.mul_vec(v) == 0
    for j in range(m.cols):
        assert img.contains(m.column(j))


@given(vectors6, vectors6)
def test_modular_law(a_vecs, b_vecs):
    a = BitSubspace.span(6, a_vecs)
    b = BitSubspace.span(6, b_vecs)
    assert a.sum(b).dim + a.intersect(b).dim == a.dim + b.dim


@given(vectors6, vectors6)
def test_intersection_matches_enumeration(a_vecs, b_vecs):
    a = BitSubspace.span(6, a_vecs)
    b = BitSubspace.span(6, b_vecs)
    sa = subspace_from_bits(list(a.basis), 6)
    sb = subspace_from_bits(list(b.basis), 6)
    si = subspace_from_bits(list(a.intersect(b).basis), 6)
    assert si == sa & sb


@given(bit_matrices(5), vectors6)
def test_preimage(m, target_vecs):
    target = BitSubspace.span(m.rows, [v & (2**m.rows - 1) for v in target_vecs])
    pre = preimage(m, target)
    for v in pre.basis:
        assert target.contains(m.mul_vec(v))
    # maximality: every solution is in the preimage
    for x in range(2**m.cols):
        if target.contains(m.mul_vec(x)):
            assert pre.contains(x)


def test_image_of_subspace():
    m = BitMatrix.from_dense([[1, 0, 1], [0, 1, 1]])
    sub = BitSubspace.span(3, [0b011, 0b100])
    img = image_of_subspace(m, sub)
    assert img.dim == 1  # both generators map to (1, 1)
    assert image_of_subspace(m, BitSubspace.span(3, [0b001, 0b010])).dim == 2


def test_quotient():
    num = BitSubspace.span(4, [0b0001, 0b0010, 0b0100])
    den = BitSubspace.span(4, [0b0001])
    q = Quotient(num, den)
    assert q.dim == 2
    assert q.coords(0b0001) == 0
    x = q.coords(0b0010)
    y = q.coords(0b0100)
    assert x and y and x != y
    assert q.coords(0b0011) == x  # shifting by the denominator is invisible
    assert q.coords(0b0110) == x ^ y  # coords are linear


def test_quotient_zero():
    sub = BitSubspace.span(3, [0b001])
    q = Quotient(sub, sub)
    assert q.dim == 0
    assert list(q.reps) == []

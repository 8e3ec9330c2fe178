from __future__ import annotations

import pickle
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mdscodex.field import field_make, field_make_cyclotomic
from mdscodex.linalg import (
    Matrix,
    batch_determinant_prime,
    determinant,
    inverse,
    kernel_basis,
    rank,
    row_space_equal,
    solve,
    submatrix,
)
from oracles import cofactor_det, fourier_rows, leibniz_det

GF11 = field_make(11)
F5 = Matrix(GF11, fourier_rows(11, 5, 4))


def test_identity_det():
    assert determinant(Matrix.identity(GF11, 3)) == 1


def test_cyclotomic_2x2_det():
    C = field_make_cyclotomic(5)
    w = C.gen
    M = Matrix(C, [[1, 1], [1, w]])
    assert determinant(M) == w - 1
    assert not determinant(M).is_zero()


def test_top_left_3x3_of_f5():
    rows = [[1, 1, 1], [1, 4, 5], [1, 5, 3]]
    d = determinant(Matrix(GF11, rows))
    assert int(d) == cofactor_det(rows) % 11 == leibniz_det(rows) % 11
    assert int(d) != 0


def test_non_square_det():
    with pytest.raises(ValueError):
        determinant(Matrix(GF11, [[1, 2, 3]]))


def test_rank_kernel_solve_examples():
    assert rank(Matrix(GF11, [[1] * 3] * 3)) == 1
    assert kernel_basis(Matrix.identity(GF11, 4)) == []
    assert solve(Matrix(GF11, [[1, 1], [1, 4]]), [2, 5]) == [1, 1]
    assert solve(Matrix(GF11, [[1, 1], [2, 2]]), [1, 3]) is None
    with pytest.raises(ValueError):
        solve(Matrix(GF11, [[1, 1]]), [1, 2])


def test_submatrix_examples():
    assert submatrix(F5, range(5), range(5)) == F5
    assert submatrix(F5, [0], [0]) == Matrix(GF11, [[1]])
    assert submatrix(F5, [1, 2], [1, 2]) == Matrix(GF11, [[4, 5], [5, 3]])
    for bad in ([2, 1], [0, 0], [0, 5], []):
        with pytest.raises(ValueError):
            submatrix(F5, bad, [0])


def test_row_space_equal_examples():
    A = Matrix(GF11, [F5.rows[0], F5.rows[1]])
    permuted = Matrix(GF11, [[2 * x for x in F5.rows[1]], F5.rows[0]])
    other = Matrix(GF11, [F5.rows[0], F5.rows[2]])
    assert row_space_equal(A, A)
    assert row_space_equal(A, permuted)
    assert not row_space_equal(A, other)
    assert rank(A.vstack(other)) == 3


def test_inverse_and_pickle():
    inv = inverse(F5)
    assert F5 @ inv == Matrix.identity(GF11, 5)
    assert pickle.loads(pickle.dumps(F5)) == F5
    with pytest.raises(ZeroDivisionError):
        inverse(Matrix(GF11, [[1, 1], [1, 1]]))


def test_json_round_trip():
    G = field_make(2, 4, [1, 1, 1, 1, 1])
    M = Matrix(G, [[G.gen.raw, G.one], [G.zero, G.one]], raw=True)
    assert Matrix.from_json(G, M.to_json()) == M


def test_immutable():
    with pytest.raises(AttributeError):
        F5.rows = ()


def _random_matrix(F, rnd, r, c):
    return Matrix(F, [[F.random_element(rnd) for _ in range(c)] for _ in range(r)], raw=True)


FIELDS = [GF11, field_make(23), field_make(2, 4, [1, 1, 1, 1, 1]), field_make(3, 2)]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(1, 4), st.randoms(use_true_random=False))
def test_det_multiplicative(F, n, rnd):
    A, B = _random_matrix(F, rnd, n, n), _random_matrix(F, rnd, n, n)
    assert determinant(A @ B) == determinant(A) * determinant(B)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(1, 5), st.integers(1, 5), st.randoms(use_true_random=False))
def test_rank_nullity_and_kernel(F, r, c, rnd):
    M = _random_matrix(F, rnd, r, c)
    if rnd.random() < 0.5 and r > 1:
        M = Matrix(F, list(M.rows[:-1]) + [M.rows[0]], raw=True)
    ker = kernel_basis(M)
    assert rank(M) + len(ker) == c
    for v in ker:
        assert all(x == F.zero for x in M.apply(v))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5), st.randoms(use_true_random=False))
def test_prime_det_matches_integer_oracle(n, rnd):
    rows = [[rnd.randrange(11) for _ in range(n)] for _ in range(n)]
    assert int(determinant(Matrix(GF11, rows))) == leibniz_det(rows) % 11


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.sampled_from([2, 11, 23, 227]), st.randoms(use_true_random=False))
def test_batch_det_matches_generic(k, q, rnd):
    F = field_make(q)
    mats = [[[rnd.randrange(q) if rnd.random() < 0.8 else 0 for _ in range(k)] for _ in range(k)]
            for _ in range(20)]
    batch = batch_determinant_prime(np.array(mats), q)
    for m, d in zip(mats, batch):
        assert int(determinant(Matrix(F, m))) == int(d)


def test_det_zero_status_permutation_invariant():
    rnd = random.Random(3)
    for _ in range(20):
        rows = [[rnd.randrange(3) for _ in range(3)] for _ in range(3)]
        M = Matrix(GF11, rows)
        P = Matrix(GF11, [rows[2], rows[0], rows[1]])
        assert determinant(M).is_zero() == determinant(P).is_zero()

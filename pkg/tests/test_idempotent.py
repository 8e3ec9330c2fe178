from __future__ import annotations

from itertools import chain, combinations

import pytest

from mdscodex.field import field_make, field_make_cyclotomic
from mdscodex.fourier import fourier_build
from mdscodex.idempotent import (
    circulant,
    idempotent_code_matrices,
    idempotent_set_build,
    rank_of_sum,
    verify_complete_orthogonal,
)
from mdscodex.linalg import Matrix, rank

GF11 = field_make(11)
S5 = idempotent_set_build(GF11, 5, 4)


def subsets(n):
    return chain.from_iterable(combinations(range(n), k) for k in range(n + 1))


def test_e0_over_gf11():
    assert S5[0] == circulant(GF11, [9] * 5)
    assert 5 * 9 % 11 == 1


def test_cyclotomic_members_scaled():
    C = field_make_cyclotomic(5)
    S = idempotent_set_build(C, 5)
    w = C.gen
    fifth = C(1) / C(5)
    assert S[0] == Matrix(C, [[fifth] * 5] * 5)
    assert S[1].row(0) == [(fifth * w**k).raw for k in range(5)]


@pytest.mark.parametrize(
    "field,n",
    [(GF11, 5), (field_make(23), 11), (field_make(2, 4, [1] * 5), 5), (field_make_cyclotomic(5), 5)],
)
def test_axioms_and_rank_one(field, n):
    S = idempotent_set_build(field, n)
    assert verify_complete_orthogonal(S.members)
    assert S.sum_of(range(n)) == Matrix.identity(field, n)
    for E in S.members:
        assert rank(E) == 1 and E.trace() == 1


def test_verify_examples():
    I = Matrix.identity(GF11, 5)
    assert verify_complete_orthogonal([I])
    E0 = S5[0]
    assert not verify_complete_orthogonal([E0, E0, I - E0.scale(2)])
    with pytest.raises(ValueError):
        verify_complete_orthogonal([I, Matrix.identity(GF11, 3)])


def test_circulant_rotates_right():
    M = circulant(GF11, [1, 2, 3])
    assert M.rows == ((1, 2, 3), (3, 1, 2), (2, 3, 1))


def test_build_errors():
    with pytest.raises(ValueError):
        idempotent_set_build(GF11, 5, 2)
    with pytest.raises(ValueError):
        idempotent_set_build(GF11, 11)


@pytest.mark.parametrize("field", [GF11, field_make(2, 4, [1] * 5), field_make_cyclotomic(5)])
def test_rank_of_sum_all_subsets_n5(field):
    S = idempotent_set_build(field, 5)
    for J in subsets(5):
        assert rank_of_sum(S, J) == len(J)


def test_rank_of_sum_examples():
    assert rank_of_sum(S5, range(5)) == 5
    assert rank_of_sum(S5, [2]) == 1
    with pytest.raises(ValueError):
        rank_of_sum(S5, [5])


def test_code_matrices_gf11():
    m = idempotent_code_matrices(S5, [0, 1, 2])
    assert (m.G @ m.H).is_zero()
    assert rank(m.generator) == 3
    assert rank(m.check) == 2


def test_code_matrices_cyclotomic_sum():
    C = field_make_cyclotomic(5)
    w = C.gen
    S = idempotent_set_build(C, 5)
    m = idempotent_code_matrices(S, [0, 1, 2])
    first = [3, 1 + w + w**2, 1 + w**2 + w**4, 1 + w**3 + w, 1 + w**3 + w**4]
    expected = circulant(C, [(C(x) / 5).raw for x in first])
    assert m.G == expected


def test_singleton_complement():
    m = idempotent_code_matrices(S5, [0])
    assert m.G == S5[0]
    assert m.H == Matrix.identity(GF11, 5) - S5[0]
    with pytest.raises(ValueError):
        idempotent_code_matrices(S5, [])
    with pytest.raises(ValueError):
        idempotent_code_matrices(S5, range(5))


def test_generator_annihilated_outside_j():
    for J in subsets(5):
        if not 0 < len(J) < 5:
            continue
        m = idempotent_code_matrices(S5, J)
        for j in set(range(5)) - set(J):
            assert (m.generator @ S5[j]).is_zero()


@pytest.mark.parametrize("field,n", [(GF11, 5), (field_make(23), 11), (field_make_cyclotomic(7), 7)])
def test_first_rows_are_scaled_fourier(field, n):
    S = idempotent_set_build(field, n)
    F = fourier_build(field, n, S.omega)
    stacked = Matrix(field, [E.rows[0] for E in S.members], raw=True)
    assert stacked == F.forward.scale(field.inv(field.from_int(n)))

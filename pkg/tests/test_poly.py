from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from mdscodex.field import field_make
from mdscodex.poly import Poly, poly_gcd, poly_is_irreducible

GF2 = field_make(2)
GF11 = field_make(11)


def test_gcd_x7_minus_1_with_missing_term_factor():
    f = Poly(GF2, [1, 1, 0, 1])
    g = poly_gcd(Poly.x_pow_minus_one(GF2, 7), f)
    assert g == f


def test_gcd_with_unit():
    f = Poly(GF11, [3, 0, 2])
    assert poly_gcd(f, Poly(GF11, [1])) == Poly(GF11, [1])


def test_gcd_common_linear_factor():
    g = poly_gcd(Poly.x_pow_minus_one(GF11, 5), Poly(GF11, [-1, 1]))
    assert g == Poly(GF11, [-1, 1])


def test_gcd_base_mismatch():
    with pytest.raises(ValueError):
        poly_gcd(Poly(GF2, [1, 1]), Poly(GF11, [1, 1]))


@pytest.mark.parametrize(
    "base,coeffs,expected",
    [
        (GF2, [1, 1, 1, 1, 1], True),
        (GF2, [1, 1, 1], True),
        (GF11, [-1, 0, 1], False),
        (GF2, [1, 1, 0, 1], True),
        (GF2, [1, 0, 0, 0, 1], False),
        (field_make(3), [1] * 7, True),
        (GF2, [1] * 7, False),
    ],
)
def test_irreducibility(base, coeffs, expected):
    assert poly_is_irreducible(Poly(base, coeffs)) is expected


def test_irreducibility_rejects_constants():
    with pytest.raises(ValueError):
        poly_is_irreducible(Poly(GF2, [1]))


def test_trailing_zeros_trimmed():
    p = Poly(GF11, [1, 2, 0, 11])
    assert p.degree == 1 and p.support_size == 2
    assert Poly(GF11, []).degree == -1


def test_evaluation():
    p = Poly(GF11, [1, 0, 1])
    assert p(3) == 10


polys = st.lists(st.integers(0, 10), min_size=1, max_size=7).map(lambda cs: Poly(GF11, cs))


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_gcd_divides_and_is_monic(f, g):
    if f.is_zero() and g.is_zero():
        return
    h = poly_gcd(f, g)
    assert h.leading == GF11.one
    assert (f % h).is_zero() and (g % h).is_zero()


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_division_identity(f, g):
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree

"""Univariate polynomials over a field, little-endian raw coefficients."""

from __future__ import annotations

from collections.abc import Sequence

from mdscodex.field import Field


class Poly:
    """Immutable polynomial with coefficients in ``base``.

    ``coeffs[i]`` multiplies ``x**i``; the leading coefficient is nonzero
    unless the polynomial is zero (empty coefficient tuple).
    """

    __slots__ = ("base", "coeffs")

    def __init__(self, base: Field, coeffs: Sequence = ()):
        cs = [base.coerce(c) for c in coeffs]
        while cs and base.is_zero(cs[-1]):
            cs.pop()
        self.base = base
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, base: Field, coeffs: list) -> Poly:
        zero = base.zero
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.base = base
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def monomial(cls, base: Field, degree: int, c=1) -> Poly:
        return cls(base, [0] * degree + [c])

    @classmethod
    def x_pow_minus_one(cls, base: Field, n: int) -> Poly:
        return cls(base, [-1] + [0] * (n - 1) + [1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def support_size(self) -> int:
        return sum(1 for c in self.coeffs if not self.base.is_zero(c))

    @property
    def leading(self):
        return self.coeffs[-1]

    def _check(self, other: Poly) -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.base != self.base:
            raise ValueError(f"base mismatch: {self.base} vs {other.base}")

    def __eq__(self, other):
        return isinstance(other, Poly) and self.base == other.base and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.base, self.coeffs))

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        F = self.base
        a, b = list(self.coeffs), list(other.coeffs)
        n = max(len(a), len(b))
        a += [F.zero] * (n - len(a))
        b += [F.zero] * (n - len(b))
        return Poly._raw(F, [F.add(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> Poly:
        return Poly._raw(self.base, [self.base.neg(c) for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        F = self.base
        if self.is_zero() or other.is_zero():
            return Poly._raw(F, [])
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if F.is_zero(x):
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly._raw(F, out)

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.base
        rem = list(self.coeffs)
        d = other.degree
        inv_lead = F.inv(other.leading)
        quot = [F.zero] * max(len(rem) - d, 0)
        for top in range(len(rem) - 1, d - 1, -1):
            c = rem[top]
            if F.is_zero(c):
                continue
            f = F.mul(c, inv_lead)
            quot[top - d] = f
            base = top - d
            for j, g in enumerate(other.coeffs):
                rem[base + j] = F.sub(rem[base + j], F.mul(f, g))
        return Poly._raw(F, quot), Poly._raw(F, rem[:d] if d > 0 else [])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        F = self.base
        inv = F.inv(self.leading)
        return Poly._raw(F, [F.mul(inv, c) for c in self.coeffs])

    def powmod(self, e: int, mod: Poly) -> Poly:
        result = Poly(self.base, [1]) % mod
        a = self % mod
        while e:
            if e & 1:
                result = (result * a) % mod
            e >>= 1
            if e:
                a = (a * a) % mod
        return result

    def __call__(self, x):
        F = self.base
        x = F.coerce(x)
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return F.element(acc)

    def __repr__(self):
        F = self.base
        terms = []
        for i, c in enumerate(self.coeffs):
            if F.is_zero(c):
                continue
            e = F.element(c)
            coef = repr(e)
            if F.degree > 1 and len(e.coeffs) > 1:
                coef = f"({coef})"
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(coef)
            elif c == F.one:
                terms.append(mono)
            else:
                terms.append(f"{coef}*{mono}")
        return " + ".join(reversed(terms)) or "0"


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    f._check(g)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_is_irreducible(f: Poly) -> bool:
    """Irreducibility over a finite base field.

    A reducible ``f`` of degree ``d`` has an irreducible factor of degree
    ``i <= d // 2``, and such a factor divides ``x^(Q^i) - x`` (Q = |base|).
    """
    F = f.base
    if not F.is_finite:
        raise ValueError("irreducibility test needs a finite base field")
    if f.degree < 1:
        raise ValueError("constant polynomials are neither reducible nor irreducible")
    d = f.degree
    if d == 1:
        return True
    Q = F.cardinality
    x = Poly(F, [0, 1])
    h = x % f
    for _ in range(d // 2):
        h = h.powmod(Q, f)
        if poly_gcd(f, h - x).degree > 0:
            return False
    return True


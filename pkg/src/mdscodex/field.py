"""Exact arithmetic in Z_q, GF(q^m) and the cyclotomic field Q(w) = Q[x]/Phi_p(x).

Every field object exposes the same small set of operations on *raw* values,
the native representation used inside matrices and vectors:

* prime field Z_q:        an ``int`` in ``[0, q)``
* extension GF(q^m):      a ``tuple`` of ``m`` ints, little-endian
* cyclotomic Q(w_p):      a pair ``(nums, den)`` with ``nums`` a tuple of
                          ``p - 1`` ints and ``den > 0`` in lowest terms

:class:`FieldElement` wraps a raw value together with its owning field and
overloads the arithmetic operators. Mixing elements of different fields is an
error, never an implicit coercion.
"""

from __future__ import annotations

import abc
import math
import operator
from collections.abc import Iterable, Iterator, Sequence
from fractions import Fraction
from functools import cached_property, reduce
from typing import Any

# --------------------------------------------------------------------------
# integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(n: int) -> list[int]:
    return [k for k in range(2, n + 1) if is_prime(k)]


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` modulo ``n``; ``a`` must be a unit mod ``n``."""
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible modulo {n}")
    a %= n
    k, x = 1, a
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


# --------------------------------------------------------------------------
# fields


class Field(abc.ABC):
    """Base class of the three field kinds."""

    kind: str
    characteristic: int
    degree: int
    modulus: tuple | None
    cardinality: int | None

    zero: Any
    one: Any

    # raw operations -------------------------------------------------------

    @abc.abstractmethod
    def add(self, a, b): ...

    @abc.abstractmethod
    def sub(self, a, b): ...

    @abc.abstractmethod
    def neg(self, a): ...

    @abc.abstractmethod
    def mul(self, a, b): ...

    @abc.abstractmethod
    def inv(self, a): ...

    @abc.abstractmethod
    def from_int(self, n: int): ...

    @abc.abstractmethod
    def from_coeffs(self, coeffs: Sequence): ...

    @abc.abstractmethod
    def coeffs(self, a) -> list:
        """Canonical coefficient list of ``a`` with trailing zeros trimmed."""

    @abc.abstractmethod
    def _key(self) -> tuple: ...

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def dot(self, u: Sequence, v: Sequence):
        acc = self.zero
        for x, y in zip(u, v):
            acc = self.add(acc, self.mul(x, y))
        return acc

    def axpy(self, target: Sequence, f, pivot: Sequence) -> list:
        """Return ``target - f * pivot`` componentwise."""
        mul, sub = self.mul, self.sub
        return [sub(t, mul(f, p)) for t, p in zip(target, pivot)]

    def scale(self, row: Sequence, f) -> list:
        return [self.mul(f, x) for x in row]

    @property
    def is_finite(self) -> bool:
        return self.cardinality is not None

    def coerce(self, x):
        """Turn ints, coefficient lists, elements or raw values into a raw value."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise ValueError(f"element of {x.field} used in {self}")
            return x.raw
        if isinstance(x, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, (list, tuple)):
            return self.from_coeffs(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def __call__(self, x) -> FieldElement:
        return FieldElement(self, self.coerce(x))

    def element(self, raw) -> FieldElement:
        return FieldElement(self, raw)

    @property
    def gen(self) -> FieldElement:
        """Coset of x (for prime fields, the element 1)."""
        return self.element(self.from_coeffs([0, 1]) if self.degree > 1 else self.one)

    # enumeration ----------------------------------------------------------

    def elements(self) -> Iterator:
        """All raw elements in the fixed enumeration order (finite fields only).

        Element number ``k`` has the base-q digits of ``k`` as coefficients,
        least significant digit first.
        """
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        q, m = self.characteristic, self.degree
        for k in range(self.cardinality):
            digits = []
            for _ in range(m):
                k, d = divmod(k, q)
                digits.append(d)
            yield self.from_coeffs(digits)

    def nonzero_elements(self) -> list:
        return [a for a in self.elements() if not self.is_zero(a)]

    def random_element(self, rng) -> Any:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.from_coeffs(
            [rng.randrange(self.characteristic) for _ in range(self.degree)]
        )

    # serialization --------------------------------------------------------

    def encode(self, a) -> list:
        return [int(c) for c in self.coeffs(a)]

    def decode(self, obj):
        if isinstance(obj, list):
            return self.from_coeffs([_parse_coeff(c) for c in obj])
        return self.coerce(_parse_coeff(obj))

    def to_json(self) -> dict:
        return {
            "char": self.characteristic,
            "degree": self.degree,
            "modulus": None if self.modulus is None else [int(c) for c in self.modulus],
        }

    # identity -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __getstate__(self):
        # lookup tables are rebuilt lazily in worker processes
        return {k: v for k, v in self.__dict__.items() if not k.startswith("_tab")}


def _residue(c, q: int) -> int:
    if isinstance(c, Fraction):
        return c.numerator * pow(c.denominator, -1, q) % q
    return int(c) % q


def _parse_coeff(c):
    if isinstance(c, str):
        return Fraction(c)
    return c


class PrimeField(Field):
    kind = "prime"

    def __init__(self, q: int):
        if not is_prime(q):
            raise ValueError(f"characteristic {q} is not prime")
        self.characteristic = q
        self.degree = 1
        self.modulus = None
        self.cardinality = q
        self.zero, self.one = 0, 1

    def _key(self):
        return ("prime", self.characteristic)

    def __repr__(self):
        return f"GF({self.characteristic})"

    def add(self, a, b):
        return (a + b) % self.characteristic

    def sub(self, a, b):
        return (a - b) % self.characteristic

    def neg(self, a):
        return -a % self.characteristic

    def mul(self, a, b):
        return a * b % self.characteristic

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return pow(a, -1, self.characteristic)

    def pow(self, a, e):
        if a == 0 and e < 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return pow(a, e, self.characteristic)

    def from_int(self, n):
        return int(n) % self.characteristic

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if any(c != 0 for c in coeffs[1:]):
            raise ValueError(f"{coeffs} is not an element of {self}")
        return _residue(coeffs[0], self.characteristic) if coeffs else 0

    def coeffs(self, a):
        return [a] if a else []

    def dot(self, u, v):
        return sum(map(operator.mul, u, v)) % self.characteristic

    def axpy(self, target, f, pivot):
        q = self.characteristic
        return [(t - f * p) % q for t, p in zip(target, pivot)]

    def scale(self, row, f):
        q = self.characteristic
        return [f * x % q for x in row]

    def elements(self):
        return iter(range(self.characteristic))

    def random_element(self, rng):
        return rng.randrange(self.characteristic)


class ExtensionField(Field):
    """GF(q^m) = Z_q[x] / (modulus)."""

    kind = "extension"
    # log/exp tables are built for fields up to this size
    TABLE_LIMIT = 1 << 16

    def __init__(self, q: int, modulus: Sequence[int]):
        self.characteristic = q
        self.modulus = tuple(int(c) for c in modulus)
        self.degree = m = len(self.modulus) - 1
        self.cardinality = q**m
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)
        # x^(m+i) reduced, for i = 0 .. m-2
        red = []
        cur = [(-c) % q for c in self.modulus[:m]]
        for _ in range(m - 1):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * mc) % q for c, mc in zip(cur, self.modulus)]
        red.append(tuple(cur))
        self._reductions = red

    def _key(self):
        return ("extension", self.characteristic, self.modulus)

    def __repr__(self):
        return f"GF({self.characteristic}^{self.degree})"

    def add(self, a, b):
        q = self.characteristic
        return tuple((x + y) % q for x, y in zip(a, b))

    def sub(self, a, b):
        q = self.characteristic
        return tuple((x - y) % q for x, y in zip(a, b))

    def neg(self, a):
        q = self.characteristic
        return tuple(-x % q for x in a)

    def _mul_poly(self, a, b):
        q, m = self.characteristic, self.degree
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        out = prod[:m]
        for i, c in enumerate(prod[m:]):
            if c:
                for j, r in enumerate(self._reductions[i]):
                    out[j] += c * r
        return tuple(c % q for c in out)

    @cached_property
    def _tables(self):
        if self.cardinality > self.TABLE_LIMIT:
            return None
        order = self.cardinality - 1
        factors = prime_factors(order)
        for g in self.elements():
            if g == self.zero:
                continue
            if all(self._pow_slow(g, order // r) != self.one for r in factors):
                break
        exp = [self.one]
        for _ in range(order - 1):
            exp.append(self._mul_poly(exp[-1], g))
        log = {a: i for i, a in enumerate(exp)}
        return exp, log

    def _pow_slow(self, a, e):
        result = self.one
        while e:
            if e & 1:
                result = self._mul_poly(result, a)
            e >>= 1
            if e:
                a = self._mul_poly(a, a)
        return result

    def mul(self, a, b):
        zero = self.zero
        if a == zero or b == zero:
            return zero
        tables = self._tables
        if tables is None:
            return self._mul_poly(a, b)
        exp, log = tables
        return exp[(log[a] + log[b]) % (self.cardinality - 1)]

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        tables = self._tables
        if tables is None:
            return self._pow_slow(a, self.cardinality - 2)
        exp, log = tables
        return exp[-log[a] % (self.cardinality - 1)]

    def pow(self, a, e):
        if a == self.zero:
            if e < 0:
                raise ZeroDivisionError(f"0 has no inverse in {self}")
            return self.one if e == 0 else self.zero
        tables = self._tables
        if tables is None:
            return super().pow(a, e)
        exp, log = tables
        return exp[log[a] * e % (self.cardinality - 1)]

    def from_int(self, n):
        return ((int(n) % self.characteristic),) + (0,) * (self.degree - 1)

    def from_coeffs(self, coeffs):
        q, m = self.characteristic, self.degree
        cs = [_residue(c, q) for c in coeffs]
        mod = self.modulus
        # long division by the monic modulus, from the top down
        for top in range(len(cs) - 1, m - 1, -1):
            c = cs[top]
            if c:
                base = top - m
                for j in range(m):
                    cs[base + j] = (cs[base + j] - c * mod[j]) % q
                cs[top] = 0
        return tuple((cs + [0] * m)[:m])

    def coeffs(self, a):
        out = list(a)
        while out and out[-1] == 0:
            out.pop()
        return out


class CyclotomicField(Field):
    """Q(w) = Q[x] / Phi_p(x) with w the coset of x, a primitive p-th root of unity."""

    kind = "cyclotomic-rational"

    def __init__(self, p: int):
        if not is_prime(p) or p < 3:
            raise ValueError(f"cyclotomic field needs an odd prime, got {p}")
        self.p = p
        self.characteristic = 0
        self.degree = p - 1
        self.modulus = (1,) * p
        self.cardinality = None
        self.zero = ((0,) * (p - 1), 1)
        self.one = ((1,) + (0,) * (p - 2), 1)

    def _key(self):
        return ("cyclotomic", self.p)

    def __repr__(self):
        return f"Q(w{self.p})"

    @staticmethod
    def _norm(nums, den):
        g = math.gcd(*nums, den)
        if den < 0:
            g = -g
        if g != 1:
            nums = tuple(n // g for n in nums)
            den //= g
        return (tuple(nums), den)

    def _from_cyclic(self, vec, den):
        # vec has length p, taken modulo x^p - 1; fold into the Phi_p basis
        top = vec[-1]
        return self._norm(tuple(c - top for c in vec[:-1]), den)

    def add(self, a, b):
        (an, ad), (bn, bd) = a, b
        if ad == bd:
            return self._norm(tuple(x + y for x, y in zip(an, bn)), ad)
        return self._norm(tuple(x * bd + y * ad for x, y in zip(an, bn)), ad * bd)

    def sub(self, a, b):
        (an, ad), (bn, bd) = a, b
        if ad == bd:
            return self._norm(tuple(x - y for x, y in zip(an, bn)), ad)
        return self._norm(tuple(x * bd - y * ad for x, y in zip(an, bn)), ad * bd)

    def neg(self, a):
        return (tuple(-x for x in a[0]), a[1])

    def _cyclic_mul(self, an, bn):
        p = self.p
        out = [0] * p
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        out[(i + j) % p] += x * y
        return out

    def mul(self, a, b):
        (an, ad), (bn, bd) = a, b
        return self._from_cyclic(self._cyclic_mul(an, bn), ad * bd)

    def _conjugate(self, nums, k):
        p = self.p
        out = [0] * p
        for i, c in enumerate(nums):
            out[i * k % p] += c
        return out

    def inv(self, a):
        nums, den = a
        if not any(nums):
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        p = self.p
        # product of the Galois conjugates w -> w^k, k = 2 .. p-1
        acc = None
        for k in range(2, p):
            conj = self._from_cyclic(self._conjugate(nums, k), 1)[0]
            acc = conj if acc is None else self._from_cyclic(self._cyclic_mul(acc, conj), 1)[0]
        if acc is None:
            acc = self.one[0]
        norm = self._from_cyclic(self._cyclic_mul(nums, acc), 1)[0]
        assert not any(norm[1:]), "norm of a cyclotomic element must be rational"
        # a^-1 = den * acc / N(nums)
        return self._norm(tuple(c * den for c in acc), norm[0])

    def coerce(self, x):
        # raw values are (numerators, denominator) pairs
        if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], tuple):
            nums, den = x
            if len(nums) != self.p - 1 or not den:
                raise ValueError(f"malformed raw element {x!r} for {self}")
            return self._norm(nums, den)
        return super().coerce(x)

    def from_int(self, n):
        return self._norm((int(n),) + (0,) * (self.p - 2), 1)

    def from_coeffs(self, coeffs):
        fracs = [Fraction(c) for c in coeffs]
        den = reduce(math.lcm, (f.denominator for f in fracs), 1)
        vec = [0] * self.p
        for i, f in enumerate(fracs):
            vec[i % self.p] += f.numerator * (den // f.denominator)
        return self._from_cyclic(vec, den)

    def coeffs(self, a):
        nums, den = a
        out = [Fraction(n, den) for n in nums]
        while out and out[-1] == 0:
            out.pop()
        return out

    def encode(self, a):
        return [int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
                for c in self.coeffs(a)]


# --------------------------------------------------------------------------
# elements


class FieldElement:
    """An immutable element of a field; arithmetic requires a shared owner."""

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("field elements are immutable")

    def __reduce__(self):
        return (FieldElement, (self.field, self.raw))

    @property
    def owner(self) -> Field:
        return self.field

    @property
    def coeffs(self) -> list:
        return self.field.coeffs(self.raw)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"cannot combine elements of {self.field} and {other.field}")
            return other.raw
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, raw):
        return FieldElement(self.field, raw)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.raw))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.raw, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.raw))

    def __neg__(self):
        return self._wrap(self.field.neg(self.raw))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.raw, e))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.raw))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.raw == other.raw
        if isinstance(other, int) and not isinstance(other, bool):
            return self.raw == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __int__(self):
        cs = self.coeffs
        if len(cs) > 1 or (cs and Fraction(cs[0]).denominator != 1):
            raise ValueError(f"{self} is not an integer")
        return int(cs[0]) if cs else 0

    def __repr__(self):
        cs = self.coeffs
        if self.field.degree == 1:
            return str(cs[0] if cs else 0)
        terms = []
        for i, c in enumerate(cs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(reversed(terms)) or "0"

    def encode(self) -> list:
        return self.field.encode(self.raw)


# --------------------------------------------------------------------------
# constructors and element-level operations


def cyclotomic_coeffs(p: int) -> list[int]:
    """Phi_p(x) = 1 + x + ... + x^(p-1), little-endian."""
    return [1] * p


def field_make(q: int, m: int = 1, modulus: Sequence[int] | None = None) -> Field:
    """Build Z_q (``m == 1``) or GF(q^m).

    Without an explicit modulus, GF(q^(p-1)) uses Phi_p when it is irreducible
    (ord_p(q) = p - 1); otherwise the smallest monic irreducible of degree ``m``
    is chosen, ordering polynomials by their coefficient lists read from the
    leading term down.
    """
    if not is_prime(q):
        raise ValueError(f"characteristic {q} is not prime")
    if m < 1:
        raise ValueError(f"degree must be positive, got {m}")
    if m == 1:
        if modulus is not None and len(modulus) != 2:
            raise ValueError("degree mismatch: a prime field takes no modulus of degree > 1")
        return PrimeField(q)

    from mdscodex.poly import Poly, poly_is_irreducible

    base = PrimeField(q)
    if modulus is None:
        p = m + 1
        if is_prime(p) and p != q and multiplicative_order(q, p) == p - 1:
            modulus = cyclotomic_coeffs(p)
        else:
            modulus = smallest_irreducible(q, m)
    modulus = [int(c) for c in modulus]
    if len(modulus) != m + 1:
        raise ValueError(f"degree mismatch: modulus has degree {len(modulus) - 1}, expected {m}")
    if any(not 0 <= c < q for c in modulus):
        raise ValueError(f"modulus coefficients must lie in [0, {q})")
    if modulus[-1] != 1:
        raise ValueError("modulus must be monic")
    if not poly_is_irreducible(Poly(base, modulus)):
        raise ValueError(f"modulus {modulus} is reducible over GF({q})")
    return ExtensionField(q, modulus)


def smallest_irreducible(q: int, m: int) -> list[int]:
    from mdscodex.poly import Poly, poly_is_irreducible

    base = PrimeField(q)
    for k in range(q**m):
        tail = []
        for _ in range(m):
            k, d = divmod(k, q)
            tail.append(d)
        cand = tail + [1]
        if cand[0] == 0:
            continue
        if poly_is_irreducible(Poly(base, cand)):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_make_cyclotomic(p: int) -> CyclotomicField:
    return CyclotomicField(p)


def field_from_json(obj: dict) -> Field:
    char, degree = int(obj["char"]), int(obj.get("degree", 1))
    modulus = obj.get("modulus")
    if char == 0:
        field = CyclotomicField(degree + 1)
        if modulus is not None and [int(c) for c in modulus] != list(field.modulus):
            raise ValueError("cyclotomic field modulus must be Phi_p")
        return field
    return field_make(char, degree, modulus)


def _as_element(a) -> FieldElement:
    if not isinstance(a, FieldElement):
        raise TypeError(f"expected a FieldElement, got {type(a).__name__}")
    return a


def arith(a: FieldElement, b: FieldElement | int | None, op: str) -> FieldElement:
    """Single entry point for the element operations add/sub/mul/div/pow/inv."""
    a = _as_element(a)
    if op == "inv":
        return a.inverse()
    if op == "pow":
        if not isinstance(b, int):
            raise TypeError("pow takes an integer exponent")
        return a**b
    b = _as_element(b)
    if a.field != b.field:
        raise ValueError(f"owner mismatch: {a.field} vs {b.field}")
    ops = {
        "add": operator.add,
        "sub": operator.sub,
        "mul": operator.mul,
        "div": operator.truediv,
    }
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](a, b)


def _has_order(field: Field, a, n: int) -> bool:
    if field.pow(a, n) != field.one:
        return False
    return all(field.pow(a, n // r) != field.one for r in prime_factors(n))


def element_order(a: FieldElement) -> int:
    """Multiplicative order of a nonzero element of a finite field."""
    field = a.field
    if not field.is_finite:
        raise ValueError("element_order needs a finite field")
    if a.is_zero():
        raise ValueError("zero has no multiplicative order")
    order = field.cardinality - 1
    for r in prime_factors(order):
        while order % r == 0 and field.pow(a.raw, order // r) == field.one:
            order //= r
    return order


def find_root_of_unity(field: Field, p: int, override=None) -> FieldElement:
    """An element of multiplicative order exactly ``p``.

    Defaults to the coset of x when the modulus is Phi_p, otherwise to the first
    element of order ``p`` in :meth:`Field.elements` order. An explicit
    ``override`` is validated and returned.
    """
    if p < 2:
        raise ValueError(f"root-of-unity order must be at least 2, got {p}")
    if isinstance(field, CyclotomicField):
        if p != field.p:
            raise ValueError(f"{field} contains primitive {field.p}-th roots only, not {p}-th")
    elif (field.cardinality - 1) % p:
        raise ValueError(f"{p} does not divide |{field}| - 1 = {field.cardinality - 1}")

    if override is not None:
        raw = field.coerce(override)
        if field.is_zero(raw) or not _has_order(field, raw, p):
            raise ValueError(f"override {field.element(raw)!r} does not have order {p}")
        return field.element(raw)

    if field.degree > 1 and list(field.modulus) == cyclotomic_coeffs(p):
        return field.gen
    for a in field.elements():
        if not field.is_zero(a) and _has_order(field, a, p):
            return field.element(a)
    raise AssertionError("unreachable: a root of unity must exist")  # pragma: no cover


def as_raw_vector(field: Field, values: Iterable) -> list:
    return [field.coerce(v) for v in values]

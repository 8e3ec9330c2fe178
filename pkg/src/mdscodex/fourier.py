"""Fourier matrices over exact fields and exhaustive Chebotarev checking.

A square matrix has the Chebotarev property when every square submatrix has a
nonzero determinant. :func:`chebotarev_check` enumerates submatrices by size,
then by row set, then by column set (both in ``itertools.combinations`` order)
and reports the first zero minor it meets. Parallel runs return the same
witness and count as a sequential run.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from mdscodex.field import (
    Field,
    FieldElement,
    PrimeField,
    find_root_of_unity,
    is_prime,
    multiplicative_order,
    primes_up_to,
)
from mdscodex.linalg import Matrix, _det_raw, batch_determinant_prime, kernel_basis, submatrix
from mdscodex.poly import Poly, poly_gcd

# sum_k C(13, k)^2, the full scan of a 13x13 matrix
DEFAULT_SCAN_LIMIT = math.comb(26, 13) - 1
CHUNK_SIZE = 20_000


@dataclass(frozen=True)
class FourierMatrix:
    p: int
    field: Field
    omega: FieldElement
    forward: Matrix
    inverse: Matrix

    def row(self, i: int) -> list:
        return self.forward.row(i % self.p)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "p": self.p,
            "omega": self.omega.encode(),
            "forward": self.forward.to_json(),
            "inverse": self.inverse.to_json(),
        }


def fourier_build(field: Field, p: int, omega=None) -> FourierMatrix:
    """The ``p x p`` matrix ``[w^(ij)]`` and its inverse ``(1/p)[w^(-ij)]``."""
    if not is_prime(p):
        raise ValueError(f"Fourier size {p} is not prime")
    if field.characteristic and p % field.characteristic == 0:
        raise ValueError(f"characteristic {field.characteristic} divides {p}; 1/p does not exist")
    w = find_root_of_unity(field, p, omega)
    powers = [field.pow(w.raw, k) for k in range(p)]
    forward = Matrix(field, [[powers[i * j % p] for j in range(p)] for i in range(p)], raw=True)
    inv_p = field.inv(field.from_int(p))
    scaled = [field.mul(inv_p, x) for x in powers]
    inverse = Matrix(field, [[scaled[-i * j % p] for j in range(p)] for i in range(p)], raw=True)
    if forward @ inverse != Matrix.identity(field, p):
        raise ArithmeticError("Fourier matrix times its inverse is not the identity")
    return FourierMatrix(p, field, w, forward, inverse)


# --------------------------------------------------------------------------
# Chebotarev scan


@dataclass(frozen=True)
class ChebotarevReport:
    holds: bool
    witness: tuple[tuple[int, ...], tuple[int, ...], FieldElement] | None
    submatrices_checked: int
    max_order: int

    def to_json(self) -> dict:
        witness = None
        if self.witness is not None:
            rows, cols, det = self.witness
            witness = {"rows": list(rows), "cols": list(cols), "determinant": det.encode()}
        return {
            "holds": self.holds,
            "max_order": self.max_order,
            "submatrices_checked": self.submatrices_checked,
            "witness": witness,
        }


def submatrix_count(n: int, max_order: int | None = None) -> int:
    top = n if max_order is None else min(max_order, n)
    return sum(math.comb(n, k) ** 2 for k in range(1, top + 1))


def _chunks(n: int, k: int):
    """Split the size-``k`` enumeration into contiguous row-set ranges."""
    nrow = math.comb(n, k)
    per_row = nrow  # number of column sets
    step = max(1, CHUNK_SIZE // per_row)
    return [(lo, min(lo + step, nrow)) for lo in range(0, nrow, step)]


def _scan_chunk(field: Field, rows: tuple, k: int, lo: int, hi: int) -> int | None:
    """Offset (within the size class) of the first zero minor in the chunk."""
    n = len(rows)
    rowsets = list(combinations(range(n), k))[lo:hi]
    colsets = list(combinations(range(n), k))
    ncol = len(colsets)
    if isinstance(field, PrimeField) and field.characteristic < 1 << 31:
        a = np.array(rows, dtype=np.int64)
        R = np.array(rowsets, dtype=np.intp)
        C = np.array(colsets, dtype=np.intp)
        sub = a[R[:, None, :, None], C[None, :, None, :]].reshape(-1, k, k)
        dets = batch_determinant_prime(sub, field.characteristic)
        zeros = np.flatnonzero(dets == 0)
        if zeros.size:
            return lo * ncol + int(zeros[0])
        return None
    zero = field.zero
    for ri, rs in enumerate(rowsets):
        sel = [rows[i] for i in rs]
        for ci, cs in enumerate(colsets):
            if _det_raw(field, [[r[j] for j in cs] for r in sel]) == zero:
                return (lo + ri) * ncol + ci
    return None


def chebotarev_check(
    M: Matrix | FourierMatrix,
    max_order: int | None = None,
    *,
    jobs: int = 1,
    force: bool = False,
) -> ChebotarevReport:
    """Exhaustively test every square submatrix of size ``<= max_order``."""
    if isinstance(M, FourierMatrix):
        M = M.forward
    n = M.nrows
    if n != M.ncols:
        raise ValueError(f"Chebotarev check needs a square matrix, got {M.shape}")
    top = n if max_order is None else max(0, min(max_order, n))
    total = submatrix_count(n, top)
    if total > DEFAULT_SCAN_LIMIT and not force:
        raise ValueError(
            f"{total} submatrices exceed the default scan limit {DEFAULT_SCAN_LIMIT}; pass force"
        )

    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    checked = 0
    try:
        for k in range(1, top + 1):
            chunks = _chunks(n, k)
            hit = None
            if executor is None:
                for lo, hi in chunks:
                    hit = _scan_chunk(M.field, M.rows, k, lo, hi)
                    if hit is not None:
                        break
            else:
                futures = [executor.submit(_scan_chunk, M.field, M.rows, k, lo, hi)
                           for lo, hi in chunks]
                for i, fut in enumerate(futures):
                    hit = fut.result()
                    if hit is not None:
                        # later chunks can only hold lexicographically larger witnesses
                        for later in futures[i + 1:]:
                            later.cancel()
                        break
            if hit is not None:
                ncol = math.comb(n, k)
                ri, ci = divmod(hit, ncol)
                rs = _nth_combination(n, k, ri)
                cs = _nth_combination(n, k, ci)
                det = submatrix(M, rs, cs).det()
                assert det.is_zero()
                return ChebotarevReport(False, (rs, cs, det), checked + hit + 1, top)
            checked += math.comb(n, k) ** 2
    finally:
        if executor is not None:
            executor.shutdown(cancel_futures=True)
    return ChebotarevReport(True, None, checked, top)


def _nth_combination(n: int, k: int, index: int) -> tuple[int, ...]:
    """The ``index``-th k-subset of range(n) in lexicographic order."""
    out = []
    start = 0
    for remaining in range(k, 0, -1):
        for v in range(start, n):
            block = math.comb(n - v - 1, remaining - 1)
            if index < block:
                out.append(v)
                start = v + 1
                break
            index -= block
    return tuple(out)


@dataclass(frozen=True)
class SpotCheckReport:
    samples: int
    zeros: int
    first_zero: tuple[tuple[int, ...], tuple[int, ...]] | None
    seed: int

    def to_json(self) -> dict:
        fz = None if self.first_zero is None else {
            "rows": list(self.first_zero[0]), "cols": list(self.first_zero[1])}
        return {"samples": self.samples, "zeros": self.zeros, "first_zero": fz, "seed": self.seed}


def chebotarev_spot_check(M: Matrix | FourierMatrix, samples: int, seed: int = 0) -> SpotCheckReport:
    """Determinants of randomly drawn square submatrices (sizes uniform in 1..n)."""
    if isinstance(M, FourierMatrix):
        M = M.forward
    n = M.nrows
    rng = random.Random(seed)
    draws = []
    for _ in range(samples):
        k = rng.randint(1, n)
        draws.append((tuple(sorted(rng.sample(range(n), k))), tuple(sorted(rng.sample(range(n), k)))))
    zeros = []
    field = M.field
    if isinstance(field, PrimeField) and field.characteristic < 1 << 31:
        a = np.array(M.rows, dtype=np.int64)
        by_size: dict[int, list[int]] = {}
        for i, (rs, _) in enumerate(draws):
            by_size.setdefault(len(rs), []).append(i)
        for k, ids in by_size.items():
            R = np.array([draws[i][0] for i in ids], dtype=np.intp)
            C = np.array([draws[i][1] for i in ids], dtype=np.intp)
            sub = a[R[:, :, None], C[:, None, :]]
            dets = batch_determinant_prime(sub, field.characteristic)
            zeros.extend(ids[j] for j in np.flatnonzero(dets == 0))
    else:
        for i, (rs, cs) in enumerate(draws):
            if submatrix(M, rs, cs).det().is_zero():
                zeros.append(i)
    zeros.sort()
    first = draws[zeros[0]] if zeros else None
    return SpotCheckReport(samples, len(zeros), first, seed)


# --------------------------------------------------------------------------
# predicates


def _check_prime(*values: int) -> None:
    for v in values:
        if not is_prime(v):
            raise ValueError(f"{v} is not prime")


def predicate_nicely(p: int, q: int) -> bool:
    """ord_p(q) = p - 1, i.e. Phi_p is irreducible over GF(q)."""
    _check_prime(p, q)
    if p == q:
        raise ValueError("p and q must differ")
    return multiplicative_order(q, p) == p - 1


def predicate_germain(p: int) -> bool:
    """``2p + 1`` is prime."""
    _check_prime(p)
    return is_prime(2 * p + 1)


@dataclass(frozen=True)
class IsaacsReport:
    t: int
    deg_h: int
    d: int
    violates: bool

    def to_json(self) -> dict:
        return {"t": self.t, "deg_h": self.deg_h, "d": self.d, "violates": self.violates}


def isaacs_criterion(f: Poly, p: int) -> IsaacsReport:
    """Support size, gcd degree with x^p - 1, and the resulting violation flag.

    ``f`` is read as the group-ring element f(z) of the cyclic group of order
    ``p``; its cyclic span has dimension ``p - deg gcd(f, x^p - 1)`` and the
    Chebotarev property fails exactly when some ``f`` has ``t <= deg h``.
    """
    _check_prime(p)
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree >= p:
        raise ValueError(f"degree {f.degree} is not below {p}")
    if f.base.characteristic == p:
        raise ValueError("base characteristic equals p")
    h = poly_gcd(Poly.x_pow_minus_one(f.base, p), f)
    t = f.support_size
    return IsaacsReport(t, h.degree, p - h.degree, t <= h.degree)


def witness_polynomial(F: FourierMatrix, report: ChebotarevReport) -> Poly:
    """Polynomial supported on the witness columns and vanishing at the witness rows.

    A zero minor with rows ``R`` and columns ``C`` gives a nonzero ``lambda``
    with ``sum_j lambda_j w^(ij) = 0`` for ``i`` in ``R``; ``f = sum_j lambda_j x^j``
    then has at most ``|C|`` terms and at least ``|R|`` roots among the p-th
    roots of unity.
    """
    if report.witness is None:
        raise ValueError("report has no witness")
    rs, cs, _ = report.witness
    sub = submatrix(F.forward, rs, cs)
    lam = kernel_basis(sub)[0]
    coeffs = [F.field.zero] * F.p
    for j, c in zip(cs, lam):
        coeffs[j] = c
    return Poly(F.field, coeffs)


def scan_prime_pairs(p_max: int, q_max: int) -> list[tuple[int, int, str]]:
    """Every odd prime ``p <= p_max`` and prime ``q <= q_max`` with ``p != q``,
    tagged ``germain`` (q = 2p + 1), ``nicely`` (ord_p(q) = p - 1) or ``none``.
    """
    out = []
    for p in primes_up_to(p_max):
        if p < 3:
            continue
        for q in primes_up_to(q_max):
            if q == p:
                continue
            if q == 2 * p + 1:
                tag = "germain"
            elif multiplicative_order(q, p) == p - 1:
                tag = "nicely"
            else:
                tag = "none"
            out.append((p, q, tag))
    return out


def guaranteed_field(p: int, q: int, tag: str) -> tuple[int, int]:
    """(characteristic, degree) of the field a guarantee tag refers to."""
    if tag == "germain":
        return q, 1
    if tag == "nicely":
        return q, p - 1
    raise ValueError(f"no guaranteed field for tag {tag!r}")

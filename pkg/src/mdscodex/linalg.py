"""Exact dense linear algebra over any :class:`~mdscodex.field.Field`.

Matrices are immutable values holding raw field elements row-major. All
elimination pivots on the first nonzero entry of a column, so results such as
kernel bases are deterministic.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from mdscodex.field import Field, FieldElement, PrimeField


class Matrix:
    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows: Iterable[Iterable], *, raw: bool = False):
        if raw:
            data = tuple(tuple(r) for r in rows)
        else:
            data = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        if not data or not data[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    def __reduce__(self):
        return (_rebuild, (self.field, self.rows))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        return cls(field, [[field.one if i == j else field.zero for j in range(n)]
                           for i in range(n)], raw=True)

    @classmethod
    def zeros(cls, field: Field, r: int, c: int) -> Matrix:
        return cls(field, [[field.zero] * c for _ in range(r)], raw=True)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return self.field.element(self.rows[i][j])

    def row(self, i: int) -> list:
        return list(self.rows[i])

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        body = "; ".join(", ".join(repr(self.field.element(x)) for x in r) for r in self.rows)
        return f"Matrix[{self.field}]({body})"

    def _same(self, other: Matrix) -> None:
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        add = self.field.add
        return Matrix(self.field, [[add(a, b) for a, b in zip(r, s)]
                                   for r, s in zip(self.rows, other.rows)], raw=True)

    def __sub__(self, other: Matrix) -> Matrix:
        self._same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        sub = self.field.sub
        return Matrix(self.field, [[sub(a, b) for a, b in zip(r, s)]
                                   for r, s in zip(self.rows, other.rows)], raw=True)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._same(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        dot = self.field.dot
        cols = list(zip(*other.rows))
        return Matrix(self.field, [[dot(r, c) for c in cols] for r in self.rows], raw=True)

    def scale(self, f) -> Matrix:
        f = self.field.coerce(f)
        return Matrix(self.field, [self.field.scale(r, f) for r in self.rows], raw=True)

    def apply(self, vector: Sequence) -> list:
        """``M @ v`` for a raw column vector ``v``."""
        if len(vector) != self.ncols:
            raise ValueError(f"vector of length {len(vector)} for {self.shape} matrix")
        dot = self.field.dot
        return [dot(r, vector) for r in self.rows]

    def transpose(self) -> Matrix:
        return Matrix(self.field, zip(*self.rows), raw=True)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def trace(self) -> FieldElement:
        F = self.field
        acc = F.zero
        for i in range(min(self.shape)):
            acc = F.add(acc, self.rows[i][i])
        return F.element(acc)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for r in self.rows for x in r)

    def vstack(self, other: Matrix) -> Matrix:
        self._same(other)
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix(self.field, self.rows + other.rows, raw=True)

    def to_json(self) -> list:
        enc = self.field.encode
        return [[enc(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, field: Field, obj: list) -> Matrix:
        return cls(field, [[field.decode(x) for x in r] for r in obj], raw=True)

    def det(self) -> FieldElement:
        return determinant(self)

    def rank(self) -> int:
        return rank(self)


def _rebuild(field, rows):
    return Matrix(field, rows, raw=True)


# --------------------------------------------------------------------------
# elimination kernels on raw row lists


def _rref(field: Field, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form in place; returns the rows and pivot columns."""
    zero, one = field.zero, field.one
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != one:
            rows[r] = field.scale(rows[r], field.inv(lead))
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != zero:
                    rows[i] = field.axpy(rows[i], f, prow)
        pivots.append(c)
        r += 1
    return rows, pivots


def _det_raw(field: Field, rows: list[list]):
    zero = field.zero
    n = len(rows)
    rows = [list(r) for r in rows]
    det = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != zero), None)
        if piv is None:
            return zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = field.neg(det)
        lead = rows[c][c]
        det = field.mul(det, lead)
        inv = field.inv(lead)
        prow = rows[c]
        for i in range(c + 1, n):
            f = rows[i][c]
            if f != zero:
                rows[i] = field.axpy(rows[i], field.mul(f, inv), prow)
    return det


def _rank_raw(field: Field, rows: list[list], ncols: int) -> int:
    zero = field.zero
    rows = [list(r) for r in rows]
    nrows = len(rows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = field.inv(prow[c])
        for i in range(r + 1, nrows):
            f = rows[i][c]
            if f != zero:
                rows[i] = field.axpy(rows[i], field.mul(f, inv), prow)
        r += 1
    return r


def _kernel_raw(field: Field, rows: list[list], ncols: int) -> list[list]:
    red, pivots = _rref(field, [list(r) for r in rows], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(red[i][fc])
        basis.append(v)
    return basis


def _solve_raw(field: Field, rows: list[list], b: Sequence) -> list | None:
    ncols = len(rows[0])
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    red, pivots = _rref(field, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = red[i][ncols]
    return x


# --------------------------------------------------------------------------
# public operations


def determinant(M: Matrix) -> FieldElement:
    if M.nrows != M.ncols:
        raise ValueError(f"determinant of non-square {M.shape} matrix")
    return M.field.element(_det_raw(M.field, M.rows))


def rank(M: Matrix) -> int:
    return _rank_raw(M.field, M.rows, M.ncols)


def kernel_basis(M: Matrix) -> list[list]:
    """Basis of ``{x : M x = 0}`` as raw vectors, one per free column."""
    return _kernel_raw(M.field, M.rows, M.ncols)


def solve(M: Matrix, b: Sequence) -> list | None:
    """One solution of ``M x = b`` (free variables set to zero) or ``None``."""
    if len(b) != M.nrows:
        raise ValueError(f"right-hand side of length {len(b)} for {M.shape} matrix")
    b = [M.field.coerce(x) for x in b]
    return _solve_raw(M.field, M.rows, b)


def submatrix(M: Matrix, rowset: Sequence[int], colset: Sequence[int]) -> Matrix:
    for name, idx, bound in (("row", rowset, M.nrows), ("column", colset, M.ncols)):
        if not idx:
            raise ValueError(f"empty {name} index set")
        if any(not 0 <= i < bound for i in idx):
            raise ValueError(f"{name} index out of range in {list(idx)}")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"{name} indices must be strictly increasing: {list(idx)}")
    return Matrix(M.field, [[M.rows[i][j] for j in colset] for i in rowset], raw=True)


def row_space_equal(A: Matrix, B: Matrix) -> bool:
    A._same(B)
    if A.ncols != B.ncols:
        raise ValueError(f"column count mismatch {A.ncols} vs {B.ncols}")
    ra, rb = rank(A), rank(B)
    return ra == rb == rank(A.vstack(B))


def inverse(M: Matrix) -> Matrix:
    n = M.nrows
    if n != M.ncols:
        raise ValueError("inverse of a non-square matrix")
    F = M.field
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)]
           for i, r in enumerate(M.rows)]
    red, pivots = _rref(F, aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix(F, [r[n:] for r in red], raw=True)


# --------------------------------------------------------------------------
# batched prime-field determinants


def _powmod_vec(x: np.ndarray, e: int, q: int) -> np.ndarray:
    result = np.ones_like(x)
    base = x % q
    while e:
        if e & 1:
            result = result * base % q
        e >>= 1
        if e:
            base = base * base % q
    return result


def batch_determinant_prime(mats: np.ndarray, q: int) -> np.ndarray:
    """Determinants mod ``q`` of a stack of square integer matrices.

    ``mats`` has shape ``(B, k, k)`` with entries in ``[0, q)``; ``q`` must be
    below 2**31 so that products fit in int64.
    """
    if q >= 1 << 31:
        raise ValueError("batched determinants need q < 2**31")
    a = np.array(mats, dtype=np.int64, copy=True)
    B, k, _ = a.shape
    det = np.ones(B, dtype=np.int64)
    alive = np.ones(B, dtype=bool)
    idx = np.arange(B)
    for c in range(k):
        col = a[:, c:, c]
        nz = col != 0
        has = nz.any(axis=1)
        alive &= has
        piv = c + nz.argmax(axis=1)
        swap = (piv != c) & alive
        if swap.any():
            rows_c = a[idx, c].copy()
            a[idx, c] = a[idx, piv]
            a[idx, piv] = rows_c
            det = np.where(swap, (q - det) % q, det)
        lead = a[:, c, c]
        det = det * np.where(alive, lead, 0) % q
        if c == k - 1:
            break
        inv = _powmod_vec(np.where(alive, lead, 1), q - 2, q)
        factors = a[:, c + 1:, c] * inv[:, None] % q
        a[:, c + 1:, c:] = (a[:, c + 1:, c:] - factors[:, :, None] * a[:, None, c, c:]) % q
    return np.where(alive, det, 0)


def as_numpy(M: Matrix) -> np.ndarray:
    if not isinstance(M.field, PrimeField):
        raise TypeError("numpy view is only available for prime fields")
    return np.array(M.rows, dtype=np.int64)

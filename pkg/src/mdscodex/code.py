"""Unit-derived and idempotent-derived linear codes with exact parameters."""

from __future__ import annotations

import math
import os
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations

from mdscodex.field import FieldElement, field_from_json
from mdscodex.fourier import FourierMatrix, fourier_build
from mdscodex.idempotent import IdempotentSet, idempotent_code_matrices, idempotent_set_build
from mdscodex.linalg import Matrix, _rank_raw, kernel_basis, rank, row_space_equal

DISTANCE_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


def budget_from_env(default: int) -> int:
    value = os.environ.get("MDSCODEX_BUDGET")
    return int(value) if value else default


@dataclass(frozen=True)
class Provenance:
    kind: str  # "unit-rows" | "idempotent-indices"
    indices: tuple[int, ...]

    def to_json(self) -> dict:
        return {self.kind: list(self.indices)}

    @classmethod
    def from_json(cls, obj: dict) -> Provenance:
        if len(obj) != 1:
            raise ValueError(f"provenance must have exactly one key, got {sorted(obj)}")
        (kind, idx), = obj.items()
        if kind not in ("unit-rows", "idempotent-indices"):
            raise ValueError(f"unknown provenance kind {kind!r}")
        return cls(kind, tuple(int(i) for i in idx))


class LinearCode:
    """An ``(n, k)`` code with verified generator and check matrices."""

    def __init__(
        self,
        generator: Matrix,
        check: Matrix,
        provenance: Provenance | None = None,
        omega: FieldElement | None = None,
    ):
        if generator.field != check.field:
            raise ValueError("generator and check live over different fields")
        if generator.ncols != check.ncols:
            raise ValueError("generator and check have different lengths")
        self.field = generator.field
        self.n = generator.ncols
        self.k = generator.nrows
        self.generator = generator
        self.check = check
        self.provenance = provenance
        self.omega = omega
        self._distance: int | None = None
        if rank(generator) != self.k:
            raise ValueError("generator rows are dependent")
        if check.nrows != self.n - self.k or rank(check) != self.n - self.k:
            raise ValueError("check matrix must have n - k independent rows")
        if not (generator @ check.transpose()).is_zero():
            raise ValueError("generator times check transpose is not zero")

    @property
    def distance_cache(self) -> int | None:
        return self._distance

    def _store_distance(self, d: int) -> None:
        if self._distance is not None and self._distance != d:
            raise ArithmeticError(f"distance recomputed as {d}, cached {self._distance}")
        self._distance = d

    def __repr__(self):
        d = "" if self._distance is None else f", {self._distance}"
        return f"LinearCode[{self.field}]({self.n}, {self.k}{d})"

    def to_json(self) -> dict:
        obj = {
            "field": self.field.to_json(),
            "n": self.n,
            "k": self.k,
            "provenance": None if self.provenance is None else self.provenance.to_json(),
            "omega": None if self.omega is None else self.omega.encode(),
            "generator": self.generator.to_json(),
            "check": self.check.to_json(),
        }
        if self._distance is not None:
            obj["distance"] = self._distance
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> LinearCode:
        field = field_from_json(obj["field"])
        generator = Matrix.from_json(field, obj["generator"])
        check = Matrix.from_json(field, obj["check"])
        prov = obj.get("provenance")
        prov = None if prov is None else Provenance.from_json(prov)
        omega = obj.get("omega")
        omega = None if omega is None else field.element(field.decode(omega))
        if int(obj["n"]) != generator.ncols or int(obj["k"]) != generator.nrows:
            raise ValueError("declared (n, k) disagree with the generator shape")
        code = cls(generator, check, prov, omega)
        if prov is not None and omega is not None:
            rebuilt = rebuild(code)
            if rebuilt.generator != generator or rebuilt.check != check:
                raise ValueError("matrices do not match their recorded provenance")
        if obj.get("distance") is not None:
            code._store_distance(min_distance(code))
            if code._distance != int(obj["distance"]):
                raise ValueError("recorded distance is wrong")
        return code


def _check_rows(rows: Iterable[int], n: int) -> list[int]:
    rows = list(rows)
    if len(set(rows)) != len(rows):
        raise ValueError(f"duplicate indices in {rows}")
    if any(not 0 <= r < n for r in rows):
        raise ValueError(f"index out of range in {rows}")
    if not 0 < len(rows) < n:
        raise ValueError("row set must be a nonempty proper subset")
    return sorted(rows)


def unit_code_build(F: FourierMatrix, rows: Iterable[int]) -> LinearCode:
    """Rows of the forward matrix as generator; complementary inverse columns as check."""
    n = F.forward.nrows
    rows = _check_rows(rows, n)
    rest = [j for j in range(n) if j not in rows]
    generator = Matrix(F.field, [F.forward.rows[i] for i in rows], raw=True)
    check = Matrix(F.field, [F.inverse.column(j) for j in rest], raw=True)
    return LinearCode(generator, check, Provenance("unit-rows", tuple(rows)), F.omega)


def idempotent_code_build(S: IdempotentSet, J: Iterable[int]) -> LinearCode:
    J = _check_rows(J, S.n)
    mats = idempotent_code_matrices(S, J)
    return LinearCode(mats.generator, mats.check, Provenance("idempotent-indices", tuple(J)), S.omega)


def rebuild(code: LinearCode) -> LinearCode:
    """Reconstruct a code from its provenance and primitive root."""
    if code.provenance is None or code.omega is None:
        raise ValueError("code has no provenance to rebuild from")
    if code.provenance.kind == "unit-rows":
        return unit_code_build(fourier_build(code.field, code.n, code.omega), code.provenance.indices)
    S = idempotent_set_build(code.field, code.n, code.omega)
    return idempotent_code_build(S, code.provenance.indices)


def min_dependent_columns(M: Matrix, budget: int | None = None) -> int:
    """Smallest number of linearly dependent columns of ``M``.

    Returns ``rank + 1`` when every set of ``rank`` columns is independent.
    """
    budget = budget_from_env(DISTANCE_BUDGET) if budget is None else budget
    field = M.field
    cols = list(zip(*M.rows))
    r = rank(M)
    for w in range(1, r + 1):
        if math.comb(M.ncols, w) > budget:
            raise BudgetExceeded(f"C({M.ncols}, {w}) column subsets exceed budget {budget}")
        for cs in combinations(range(M.ncols), w):
            if _rank_raw(field, [cols[j] for j in cs], M.nrows) < w:
                return w
    return r + 1


def min_distance(c: LinearCode, budget: int | None = None) -> int:
    """Minimum distance as the smallest number of dependent check-matrix columns."""
    if c.k == c.n:
        d = 1
    else:
        d = min_dependent_columns(c.check, budget)
    c._store_distance(d)
    return d


def span_distance(generator: Matrix, budget: int | None = None) -> int:
    """Minimum distance of the row space of ``generator``."""
    ker = kernel_basis(generator)
    if not ker:
        return 1
    return min_dependent_columns(Matrix(generator.field, ker, raw=True), budget)


def is_mds(c: LinearCode, budget: int | None = None) -> bool:
    return min_distance(c, budget) == c.n - c.k + 1


def encode(c: LinearCode, message: Sequence) -> list:
    if len(message) != c.k:
        raise ValueError(f"message of length {len(message)} for a code of dimension {c.k}")
    F = c.field
    msg = [F.coerce(m) for m in message]
    return [F.dot(msg, col) for col in zip(*c.generator.rows)]


def syndrome(c: LinearCode, word: Sequence) -> list:
    if len(word) != c.n:
        raise ValueError(f"word of length {len(word)} for a code of length {c.n}")
    F = c.field
    return c.check.apply([F.coerce(x) for x in word])


def dual_row_indices(J: Iterable[int], n: int) -> list[int]:
    """``{0..n-1}`` minus ``{-j mod n : j in J}``: the Fourier rows spanning the dual."""
    J = list(J)
    if any(not 0 <= j < n for j in J):
        raise ValueError(f"index out of range in {J}")
    negated = {(-j) % n for j in J}
    return [k for k in range(n) if k not in negated]


def dual_code(c: LinearCode) -> LinearCode:
    """The dual code, rebuilt from the complementary negated index set when possible."""
    if c.provenance is not None and c.omega is not None:
        K = dual_row_indices(c.provenance.indices, c.n)
        if c.provenance.kind == "unit-rows":
            dual = unit_code_build(fourier_build(c.field, c.n, c.omega), K)
        else:
            dual = idempotent_code_build(idempotent_set_build(c.field, c.n, c.omega), K)
        if not (c.generator @ dual.generator.transpose()).is_zero():
            raise ArithmeticError("dual rows are not orthogonal to the code")
        return dual
    return LinearCode(c.check, c.generator)


def codes_equal(a: LinearCode, b: LinearCode) -> bool:
    if a.field != b.field or a.n != b.n:
        raise ValueError("codes over different fields or lengths")
    return row_space_equal(a.generator, b.generator)


def count_codes(p: int, r: int) -> int:
    return math.comb(p, r)


def enumerate_codes(F: FourierMatrix, r: int, limit: int | None = None) -> Iterator[LinearCode]:
    """Unit-derived codes for every ``r``-subset of rows, lexicographically."""
    if not 0 < r < F.p:
        raise ValueError(f"r must lie strictly between 0 and {F.p}")
    for i, rows in enumerate(combinations(range(F.p), r)):
        if limit is not None and i >= limit:
            return
        yield unit_code_build(F, rows)

"""Complete orthogonal sets of circulant idempotents from the cyclic group ring.

``E_i = (1/n) circ(1, w^i, w^(2i), ..., w^((n-1)i))`` for ``i = 0 .. n-1``,
where ``circ(a)`` has first row ``a`` and each following row is the previous
one rotated one step to the right.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from mdscodex.field import Field, FieldElement, find_root_of_unity
from mdscodex.linalg import Matrix, rank


def circulant(field: Field, first_row: Sequence) -> Matrix:
    n = len(first_row)
    a = list(first_row)
    return Matrix(field, [a[n - r:] + a[:n - r] for r in range(n)], raw=True)


@dataclass(frozen=True)
class IdempotentSet:
    n: int
    field: Field
    omega: FieldElement
    members: tuple[Matrix, ...]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> Matrix:
        return self.members[i]

    def sum_of(self, indices: Iterable[int]) -> Matrix:
        indices = list(indices)
        for i in indices:
            if not 0 <= i < self.n:
                raise ValueError(f"index {i} out of range for n = {self.n}")
        total = Matrix.zeros(self.field, self.n, self.n)
        for i in indices:
            total = total + self.members[i]
        return total

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "omega": self.omega.encode(),
            "members": [m.to_json() for m in self.members],
        }


def verify_complete_orthogonal(members: Sequence[Matrix]) -> bool:
    """Nonzero idempotents, pairwise orthogonal, summing to the identity."""
    if not members:
        return False
    n = members[0].nrows
    field = members[0].field
    for m in members:
        if m.shape != (n, n):
            raise ValueError(f"expected {n}x{n} matrices, got {m.shape}")
        if m.field != field:
            raise ValueError("members live over different fields")
    total = Matrix.zeros(field, n, n)
    for i, e in enumerate(members):
        if e.is_zero() or e @ e != e:
            return False
        for f in members[i + 1:]:
            if not (e @ f).is_zero() or not (f @ e).is_zero():
                return False
        total = total + e
    return total == Matrix.identity(field, n)


def idempotent_set_build(field: Field, n: int, omega=None) -> IdempotentSet:
    if field.characteristic and n % field.characteristic == 0:
        raise ValueError(f"characteristic {field.characteristic} divides {n}")
    w = find_root_of_unity(field, n, omega)
    inv_n = field.inv(field.from_int(n))
    members = []
    for i in range(n):
        step = field.pow(w.raw, i)
        row, cur = [], inv_n
        for _ in range(n):
            row.append(cur)
            cur = field.mul(cur, step)
        members.append(circulant(field, row))
    if not verify_complete_orthogonal(members):
        raise ArithmeticError("circulant family failed the complete orthogonal idempotent axioms")
    return IdempotentSet(n, field, w, tuple(members))


def _check_subset(S: IdempotentSet, J: Iterable[int]) -> list[int]:
    J = sorted(set(J))
    for j in J:
        if not 0 <= j < S.n:
            raise ValueError(f"index {j} out of range for n = {S.n}")
    return J


def rank_of_sum(S: IdempotentSet, J: Iterable[int]) -> int:
    """Rank of ``sum_{j in J} E_j``, cross-checked against its trace and |J|."""
    J = _check_subset(S, J)
    if not J:
        return 0
    G = S.sum_of(J)
    r = rank(G)
    if G.trace().raw != S.field.from_int(r) or r != len(J):
        raise ArithmeticError(f"rank {r} disagrees with trace {G.trace()!r} or |J| = {len(J)}")
    return r


@dataclass(frozen=True)
class IdempotentCode:
    G: Matrix
    H: Matrix
    generator: Matrix
    check: Matrix


def idempotent_code_matrices(S: IdempotentSet, J: Iterable[int]) -> IdempotentCode:
    """Full ``G``/``H`` sums and the reduced generator/check (leading rows)."""
    J = _check_subset(S, J)
    if not J or len(J) == S.n:
        raise ValueError("index set must be a nonempty proper subset")
    rest = [i for i in range(S.n) if i not in J]
    G, H = S.sum_of(J), S.sum_of(rest)
    if not (G @ H).is_zero():
        raise ArithmeticError("G H != 0")
    r = len(J)
    generator = Matrix(S.field, G.rows[:r], raw=True)
    check = Matrix(S.field, H.transpose().rows[: S.n - r], raw=True)
    if rank(generator) != r or rank(check) != S.n - r:
        raise ArithmeticError("leading rows of the circulant sums are not independent")
    return IdempotentCode(G, H, generator, check)

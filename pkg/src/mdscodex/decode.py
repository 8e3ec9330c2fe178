"""Error-correcting pairs for Fourier row-subset codes and the pair decoder.

A ``t``-error-correcting pair ``(U, V)`` for a code ``C`` of length ``n``
satisfies

    (i)   U * V is contained in the dual of C   (``*`` = componentwise product)
    (ii)  dim U > t
    (iii) d(V^perp) > t
    (iv)  d(C) + d(U) > n

Decoding a received word ``y`` first finds a nonzero ``a`` in ``U`` with
``(a * y) . v = 0`` for every ``v`` in ``V``; its zero set contains the error
support, and the error values then follow from the syndrome by solving on
those positions.
"""

from __future__ import annotations

import math
import random
from collections.abc import Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations, product

from mdscodex.code import (
    BudgetExceeded,
    LinearCode,
    budget_from_env,
    encode,
    min_dependent_columns,
    min_distance,
    span_distance,
    unit_code_build,
)
from mdscodex.field import Field
from mdscodex.fourier import FourierMatrix, fourier_build
from mdscodex.linalg import Matrix, _kernel_raw, _solve_raw, rank

TRIAL_BUDGET = 10**7


class NoPairError(ValueError):
    """Raised when a code admits no pair with t >= 1 under this construction."""


def star(field: Field, u: Sequence, v: Sequence) -> list:
    """Componentwise product of two raw vectors."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch {len(u)} vs {len(v)}")
    mul = field.mul
    return [mul(a, b) for a, b in zip(u, v)]


@dataclass(frozen=True)
class ErrorCorrectingPair:
    code: LinearCode
    t: int
    U: Matrix
    V: Matrix
    u_rows: tuple[int, ...] | None = None
    v_rows: tuple[int, ...] | None = None

    @property
    def field(self) -> Field:
        return self.code.field

    @cached_property
    def _locator_products(self) -> list[list[list]]:
        # [j][i] -> u_i * v_j
        F = self.field
        return [[star(F, u, v) for u in self.U.rows] for v in self.V.rows]

    @cached_property
    def _u_columns(self) -> list[tuple]:
        return list(zip(*self.U.rows))

    def to_json(self) -> dict:
        return {
            "code": self.code.to_json(),
            "t": self.t,
            "U": self.U.to_json(),
            "V": self.V.to_json(),
            "u_rows": None if self.u_rows is None else list(self.u_rows),
            "v_rows": None if self.v_rows is None else list(self.v_rows),
        }

    @classmethod
    def from_json(cls, obj: dict) -> ErrorCorrectingPair:
        code = LinearCode.from_json(obj["code"])
        F = code.field
        u_rows, v_rows = obj.get("u_rows"), obj.get("v_rows")
        pair = cls(
            code,
            int(obj["t"]),
            Matrix.from_json(F, obj["U"]),
            Matrix.from_json(F, obj["V"]),
            None if u_rows is None else tuple(u_rows),
            None if v_rows is None else tuple(v_rows),
        )
        conds = ecp_verify(pair)
        if not conds.all():
            raise ValueError(f"pair fails its defining conditions: {conds.to_json()}")
        return pair


@dataclass(frozen=True)
class EcpConditions:
    product_in_dual: bool
    dim_u_exceeds_t: bool
    dual_v_distance_exceeds_t: bool
    distance_sum_exceeds_n: bool
    dim_u: int
    d_v_dual: int
    d_code: int
    d_u: int

    def all(self) -> bool:
        return (self.product_in_dual and self.dim_u_exceeds_t
                and self.dual_v_distance_exceeds_t and self.distance_sum_exceeds_n)

    def to_json(self) -> dict:
        return {
            "i_product_in_dual": self.product_in_dual,
            "ii_dim_u_exceeds_t": self.dim_u_exceeds_t,
            "iii_dual_v_distance_exceeds_t": self.dual_v_distance_exceeds_t,
            "iv_distance_sum_exceeds_n": self.distance_sum_exceeds_n,
            "dim_u": self.dim_u,
            "d_v_dual": self.d_v_dual,
            "d_code": self.d_code,
            "d_u": self.d_u,
        }


def ecp_verify(pair: ErrorCorrectingPair) -> EcpConditions:
    code, t = pair.code, pair.t
    # (i): each basis product must be orthogonal to every generator row
    gen = code.generator
    zero = code.field.zero
    product_in_dual = all(
        all(x == zero for x in gen.apply(w))
        for row in pair._locator_products for w in row
    )
    dim_u = rank(pair.U)
    d_v_dual = min_dependent_columns(pair.V)
    d_code = min_distance(code)
    d_u = span_distance(pair.U)
    return EcpConditions(
        product_in_dual,
        dim_u > t,
        d_v_dual > t,
        d_code + d_u > code.n,
        dim_u,
        d_v_dual,
        d_code,
        d_u,
    )


def progression_rows(p: int, start: int, step: int, r: int) -> list[int]:
    return [(start + i * step) % p for i in range(r)]


def find_progression(indices: Sequence[int], p: int) -> tuple[int, int] | None:
    """``(start, step)`` with smallest step, then smallest start, generating ``indices``."""
    target = set(indices)
    r = len(target)
    for step in range(1, p):
        for start in sorted(target):
            if set(progression_rows(p, start, step, r)) == target:
                return start, step
    return None


def ecp_build(
    F: FourierMatrix, start: int, step: int, r: int, code: LinearCode | None = None
) -> ErrorCorrectingPair:
    """Pair for the code spanned by rows ``start + i*step`` (mod p), ``0 <= i < r``.

    ``U`` is spanned by rows ``step*a`` for ``a = 0..t`` and ``V`` by rows
    ``-start + step*b`` for ``b = 1..t``, so every product lands on rows
    ``-start + step*m`` with ``1 <= m <= 2t``, all inside the dual.
    """
    p = F.p
    if math.gcd(step, p) != 1:
        raise ValueError(f"step {step} is not coprime to {p}")
    if not 0 < r < p:
        raise ValueError(f"r must lie strictly between 0 and {p}")
    t = (p - r) // 2
    if t < 1:
        raise NoPairError(f"(n, k) = ({p}, {r}) leaves no room for a pair with t >= 1")
    rows = progression_rows(p, start, step, r)
    if code is None:
        code = unit_code_build(F, rows)
    u_rows = tuple((step * a) % p for a in range(t + 1))
    v_rows = tuple((-start + step * b) % p for b in range(1, t + 1))
    U = Matrix(F.field, [F.forward.rows[i] for i in u_rows], raw=True)
    V = Matrix(F.field, [F.forward.rows[i] for i in v_rows], raw=True)
    pair = ErrorCorrectingPair(code, t, U, V, u_rows, v_rows)
    conds = ecp_verify(pair)
    if not conds.all():
        raise ArithmeticError(f"constructed pair fails verification: {conds.to_json()}")
    return pair


def ecp_for_code(code: LinearCode) -> ErrorCorrectingPair:
    """Pair for a code whose provenance indices form an arithmetic progression."""
    if code.provenance is None or code.omega is None:
        raise ValueError("code has no Fourier provenance")
    prog = find_progression(code.provenance.indices, code.n)
    if prog is None:
        raise NoPairError(f"indices {list(code.provenance.indices)} are not an arithmetic progression")
    F = fourier_build(code.field, code.n, code.omega)
    return ecp_build(F, prog[0], prog[1], code.k, code=code)


# --------------------------------------------------------------------------
# decoding


@dataclass(frozen=True)
class DecodeResult:
    status: str  # "corrected" | "no-error" | "failure"
    codeword: list | None = None
    error_vector: list | None = None
    error_positions: tuple[int, ...] | None = None

    def to_json(self, field: Field) -> dict:
        enc = field.encode
        return {
            "status": self.status,
            "codeword": None if self.codeword is None else [enc(x) for x in self.codeword],
            "error_vector": None if self.error_vector is None else [enc(x) for x in self.error_vector],
            "error_positions": None if self.error_positions is None else list(self.error_positions),
        }


_FAILURE = DecodeResult("failure")


def ecp_decode(pair: ErrorCorrectingPair, received: Sequence) -> DecodeResult:
    code = pair.code
    F = code.field
    n, t = code.n, pair.t
    if len(received) != n:
        raise ValueError(f"received word of length {len(received)} for code length {n}")
    y = [F.coerce(x) for x in received]
    zero = F.zero
    dot = F.dot

    s = [dot(row, y) for row in code.check.rows]
    if all(x == zero for x in s):
        return DecodeResult("no-error", y, [zero] * n, ())

    # locator: coefficients of a in U with (a * y) . v_j = 0 for all j
    system = [[dot(w, y) for w in row] for row in pair._locator_products]
    ker = _kernel_raw(F, system, t + 1)
    if not ker:
        return _FAILURE
    lam = ker[0]
    zeros = [k for k, col in enumerate(pair._u_columns) if dot(lam, col) == zero]
    if not zeros or len(zeros) > t:
        return _FAILURE

    sub = [[row[k] for k in zeros] for row in code.check.rows]
    values = _solve_raw(F, sub, s)
    if values is None:
        return _FAILURE
    e = [zero] * n
    for k, v in zip(zeros, values):
        e[k] = v
    positions = tuple(k for k in zeros if e[k] != zero)
    if not positions or len(positions) > t:
        return _FAILURE
    sub_ = F.sub
    return DecodeResult("corrected", [sub_(a, b) for a, b in zip(y, e)], e, positions)


# --------------------------------------------------------------------------
# harnesses


@dataclass
class TrialReport:
    max_weight: int
    messages: int
    trials_by_weight: dict[int, int] = dc_field(default_factory=dict)
    failures_by_weight: dict[int, int] = dc_field(default_factory=dict)
    counterexample: dict | None = None

    @property
    def total_trials(self) -> int:
        return sum(self.trials_by_weight.values())

    @property
    def total_failures(self) -> int:
        return sum(self.failures_by_weight.values())

    def to_json(self) -> dict:
        return {
            "max_weight": self.max_weight,
            "messages": self.messages,
            "total_trials": self.total_trials,
            "total_failures": self.total_failures,
            "trials_by_weight": {str(w): c for w, c in sorted(self.trials_by_weight.items())},
            "failures_by_weight": {str(w): c for w, c in sorted(self.failures_by_weight.items())},
            "counterexample": self.counterexample,
        }


def _trial_chunk(pair, codeword, msg_index, weight, positions_list, nonzero):
    F = pair.field
    add = F.add
    trials = failures = 0
    first = None
    for positions in positions_list:
        for values in product(nonzero, repeat=weight):
            y = list(codeword)
            for pos, val in zip(positions, values):
                y[pos] = add(y[pos], val)
            res = ecp_decode(pair, y)
            trials += 1
            if res.codeword != codeword:
                failures += 1
                if first is None:
                    first = {
                        "message_index": msg_index,
                        "positions": list(positions),
                        "values": [F.encode(v) for v in values],
                        "status": res.status,
                    }
    return weight, trials, failures, first


def exhaustive_trial(
    pair: ErrorCorrectingPair,
    max_weight: int,
    messages: Sequence[Sequence] | None = None,
    *,
    jobs: int = 1,
    budget: int | None = None,
) -> TrialReport:
    """Decode every error pattern of weight ``<= max_weight`` on each message's codeword."""
    code = pair.code
    F = code.field
    if not F.is_finite:
        raise ValueError("exhaustive trials need a finite field")
    if max_weight < 0 or max_weight > code.n:
        raise ValueError(f"max_weight must lie in [0, {code.n}]")
    if messages is None:
        messages = [[F.zero] * code.k]
    codewords = [encode(code, m) for m in messages]
    q1 = F.cardinality - 1
    per_word = sum(math.comb(code.n, w) * q1**w for w in range(max_weight + 1))
    budget = budget_from_env(TRIAL_BUDGET) if budget is None else budget
    if per_word * len(codewords) > budget:
        raise BudgetExceeded(f"{per_word * len(codewords)} trials exceed budget {budget}")

    nonzero = F.nonzero_elements()
    tasks = []
    for mi, cw in enumerate(codewords):
        for w in range(max_weight + 1):
            combos = list(combinations(range(code.n), w))
            per_combo = q1**w
            step = max(1, 20_000 // per_combo)
            for lo in range(0, len(combos), step):
                tasks.append((pair, cw, mi, w, combos[lo:lo + step], nonzero))

    report = TrialReport(max_weight, len(codewords))
    for w in range(max_weight + 1):
        report.trials_by_weight[w] = 0
        report.failures_by_weight[w] = 0
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_trial_chunk, *zip(*tasks), chunksize=1))
    else:
        results = [_trial_chunk(*task) for task in tasks]
    for w, trials, failures, first in results:
        report.trials_by_weight[w] += trials
        report.failures_by_weight[w] += failures
        if first is not None and report.counterexample is None:
            report.counterexample = first
    return report


WEIGHT_KINDS = ("no-error", "corrected", "miscorrected", "failure")


@dataclass
class SimulationReport:
    trials: int
    seed: int
    by_weight: dict[int, dict[str, int]]

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "by_weight": {str(w): dict(c) for w, c in sorted(self.by_weight.items())},
        }


def _weight_table(weight_dist, n: int) -> tuple[list[int], list[float]]:
    if isinstance(weight_dist, int) and not isinstance(weight_dist, bool):
        table = {weight_dist: 1.0}
    elif isinstance(weight_dist, Mapping):
        table = {int(w): float(p) for w, p in weight_dist.items()}
    else:
        raise ValueError(f"invalid weight distribution {weight_dist!r}")
    if not table or any(not 0 <= w <= n for w in table):
        raise ValueError(f"error weights must lie in [0, {n}]")
    if any(p < 0 for p in table.values()) or sum(table.values()) <= 0:
        raise ValueError("weight probabilities must be nonnegative and not all zero")
    ws = sorted(table)
    return ws, [table[w] for w in ws]


def _simulate_range(pair, seed, lo, hi, weights, probs):
    code = pair.code
    F = code.field
    n = code.n
    nonzero = F.nonzero_elements()
    counts: dict[int, dict[str, int]] = {}
    for i in range(lo, hi):
        rng = random.Random(f"{seed}:{i}")
        msg = [F.random_element(rng) for _ in range(code.k)]
        cw = encode(code, msg)
        w = rng.choices(weights, probs)[0]
        y = list(cw)
        for pos in sorted(rng.sample(range(n), w)):
            y[pos] = F.add(y[pos], rng.choice(nonzero))
        res = ecp_decode(pair, y)
        if res.status == "failure":
            kind = "failure"
        elif res.codeword != cw:
            kind = "miscorrected"
        else:
            kind = res.status
        bucket = counts.setdefault(w, dict.fromkeys(WEIGHT_KINDS, 0))
        bucket[kind] += 1
    return counts


def channel_simulate(
    pair: ErrorCorrectingPair,
    trials: int,
    weight_dist: int | Mapping[int, float],
    seed: int = 0,
    *,
    jobs: int = 1,
) -> SimulationReport:
    """Random messages and error patterns; trial ``i`` draws from ``Random(f"{seed}:{i}")``."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    if not pair.field.is_finite:
        raise ValueError("simulation needs a finite field")
    weights, probs = _weight_table(weight_dist, pair.code.n)
    step = max(1, math.ceil(trials / max(jobs, 1) / 4))
    ranges = [(lo, min(lo + step, trials)) for lo in range(0, trials, step)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_simulate_range, *zip(*[
                (pair, seed, lo, hi, weights, probs) for lo, hi in ranges])))
    else:
        parts = [_simulate_range(pair, seed, lo, hi, weights, probs) for lo, hi in ranges]
    merged: dict[int, dict[str, int]] = {}
    for part in parts:
        for w, c in part.items():
            bucket = merged.setdefault(w, dict.fromkeys(WEIGHT_KINDS, 0))
            for kind, v in c.items():
                bucket[kind] += v
    return SimulationReport(trials, seed, merged)

from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from mdscodex.code import BudgetExceeded, encode, syndrome, unit_code_build
from mdscodex.decode import (
    ErrorCorrectingPair,
    NoPairError,
    channel_simulate,
    ecp_build,
    ecp_decode,
    ecp_for_code,
    ecp_verify,
    exhaustive_trial,
    find_progression,
    star,
)
from mdscodex.field import field_make, field_make_cyclotomic
from mdscodex.fourier import fourier_build
from mdscodex.linalg import Matrix

GF11, GF23 = field_make(11), field_make(23)
F5 = fourier_build(GF11, 5, 4)
F11 = fourier_build(GF23, 11, 2)
PAIR7 = ecp_build(F11, 0, 1, 7)
PAIR5 = ecp_build(F11, 0, 2, 5)

M_U = [
    [1] * 11,
    [1, 2, 4, 8, 16, 9, 18, 13, 3, 6, 12],
    [1, 4, 16, 18, 3, 12, 2, 8, 9, 13, 6],
]


def test_star_examples():
    assert star(GF11, F5.row(1), F5.row(2)) == F5.row(3)
    v = [3, 1, 4, 1, 5]
    assert star(GF11, F5.row(0), v) == v
    assert star(GF11, [1, 2, 3], [3, 2, 1]) == [3, 4, 3]
    with pytest.raises(ValueError):
        star(GF11, [1, 2], [1, 2, 3])


@pytest.mark.parametrize(
    "F",
    [F5, F11, fourier_build(field_make_cyclotomic(5), 5), fourier_build(field_make(2, 4, [1] * 5), 5)],
)
def test_star_adds_indices(F):
    p = F.p
    for i in range(p):
        for j in range(p):
            assert star(F.field, F.row(i), F.row(j)) == F.row((i + j) % p)


def test_pair_for_first_seven_rows():
    assert PAIR7.t == 2
    assert (PAIR7.u_rows, PAIR7.v_rows) == ((0, 1, 2), (1, 2))
    assert [list(r) for r in PAIR7.U.rows] == M_U
    assert [list(r) for r in PAIR7.V.rows] == M_U[1:]


def test_step_two_pairs():
    p6 = ecp_build(F11, 0, 2, 6)
    assert (p6.t, p6.u_rows, p6.v_rows) == (2, (0, 2, 4), (2, 4))
    assert (PAIR5.t, PAIR5.u_rows, PAIR5.v_rows) == (3, (0, 2, 4, 6), (2, 4, 6))


def test_ecp_build_errors():
    with pytest.raises(NoPairError):
        ecp_build(F11, 0, 1, 10)
    with pytest.raises(ValueError):
        ecp_build(F11, 0, 11, 5)
    with pytest.raises(ValueError):
        ecp_build(F11, 0, 1, 0)


def test_verify_first_seven_rows():
    c = ecp_verify(PAIR7)
    assert c.all()
    assert (c.d_code, c.d_u, c.dim_u, c.d_v_dual) == (5, 9, 3, 3)
    assert c.d_code + c.d_u == 14


def _variant(pair, u_rows, v_rows):
    U = Matrix(GF23, [F11.forward.rows[i] for i in u_rows], raw=True)
    V = Matrix(GF23, [F11.forward.rows[i] for i in v_rows], raw=True)
    return ErrorCorrectingPair(pair.code, pair.t, U, V, tuple(u_rows), tuple(v_rows))


def test_verify_detects_widened_v():
    c = ecp_verify(_variant(PAIR7, (0, 1, 2), (1, 2, 3, 4)))
    assert not c.product_in_dual


def test_verify_detects_shrunk_u():
    c = ecp_verify(_variant(PAIR7, (0, 1), (1, 2)))
    assert not c.dim_u_exceeds_t
    assert not c.all()


@pytest.mark.parametrize("start", [0, 3, 10])
@pytest.mark.parametrize("step", range(1, 11))
def test_progression_pairs_verify(start, step):
    for r in (5, 7, 9):
        pair = ecp_build(F11, start, step, r)
        assert pair.t == (11 - r) // 2
        rows = sorted((start + i * step) % 11 for i in range(r))
        assert list(pair.code.provenance.indices) == rows


def test_find_progression():
    assert find_progression([0, 2, 4, 6, 8, 10], 11) == (0, 2)
    assert find_progression([9, 10, 0, 1], 11) == (9, 1)
    assert find_progression([0, 2, 4, 6, 10, 1], 11) is None


def test_ecp_for_code():
    code = unit_code_build(F11, [3, 4, 5, 6, 7, 8, 9])
    pair = ecp_for_code(code)
    assert pair.code is code and pair.t == 2
    with pytest.raises(NoPairError):
        ecp_for_code(unit_code_build(F11, [0, 1, 2, 4, 6, 10]))


def test_decode_codeword_is_no_error():
    cw = encode(PAIR7.code, [5, 0, 1, 22, 3, 3, 7])
    res = ecp_decode(PAIR7, cw)
    assert res.status == "no-error" and res.codeword == cw and res.error_positions == ()


def test_decode_single_error_example():
    cw = encode(PAIR7.code, [1, 2, 3, 4, 5, 6, 7])
    y = list(cw)
    y[4] = (y[4] + 7) % 23
    res = ecp_decode(PAIR7, y)
    assert res.status == "corrected"
    assert res.error_positions == (4,)
    assert res.codeword == cw
    assert res.error_vector[4] == 7


def test_all_single_errors():
    cw = encode(PAIR7.code, [1, 0, 0, 2, 0, 0, 9])
    for pos in range(11):
        for mag in range(1, 23):
            y = list(cw)
            y[pos] = (y[pos] + mag) % 23
            res = ecp_decode(PAIR7, y)
            assert res.codeword == cw and res.error_positions == (pos,)


def test_decode_length_mismatch():
    with pytest.raises(ValueError):
        ecp_decode(PAIR7, [0] * 10)


def test_decode_over_cyclotomic_field():
    C = field_make_cyclotomic(7)
    F7 = fourier_build(C, 7)
    pair = ecp_build(F7, 0, 1, 3)
    assert pair.t == 2
    cw = encode(pair.code, [1, C.gen, 2])
    y = list(cw)
    y[1] = C.add(y[1], C.from_int(3))
    y[5] = C.sub(y[5], C.gen.raw)
    res = ecp_decode(pair, y)
    assert res.status == "corrected" and res.codeword == cw and res.error_positions == (1, 5)


def _random_error(rnd, n, w, q):
    e = [0] * n
    for pos in rnd.sample(range(n), w):
        e[pos] = rnd.randrange(1, q)
    return e


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([PAIR7, PAIR5]), st.randoms(use_true_random=False))
def test_completeness_within_radius(pair, rnd):
    cw = encode(pair.code, [rnd.randrange(23) for _ in range(pair.code.k)])
    e = _random_error(rnd, 11, rnd.randint(0, pair.t), 23)
    y = [(a + b) % 23 for a, b in zip(cw, e)]
    res = ecp_decode(pair, y)
    assert res.codeword == cw
    assert res == ecp_decode(pair, y)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([PAIR7, PAIR5]), st.lists(st.integers(0, 22), min_size=11, max_size=11))
def test_soundness(pair, y):
    res = ecp_decode(pair, y)
    if res.status == "corrected":
        assert not any(syndrome(pair.code, res.codeword))
        assert 0 < sum(1 for a, b in zip(y, res.codeword) if a != b) <= pair.t
        assert [(a + b) % 23 for a, b in zip(res.codeword, res.error_vector)] == y


def test_exhaustive_first_seven_rows():
    report = exhaustive_trial(PAIR7, 2)
    assert report.trials_by_weight == {0: 1, 1: 242, 2: 26_620}
    assert report.total_failures == 0 and report.counterexample is None


def test_exhaustive_weight_zero():
    report = exhaustive_trial(PAIR5, 0)
    assert report.total_trials == 1 and report.total_failures == 0


def test_exhaustive_beyond_radius_reports_counterexample():
    report = exhaustive_trial(ecp_build(F11, 0, 1, 9), 2)
    assert report.failures_by_weight[2] > 0
    assert report.counterexample["message_index"] == 0
    assert report.counterexample["positions"] == [0, 1]


def test_exhaustive_budget(monkeypatch):
    with pytest.raises(BudgetExceeded):
        exhaustive_trial(PAIR7, 2, budget=1000)
    monkeypatch.setenv("MDSCODEX_BUDGET", "100")
    with pytest.raises(BudgetExceeded):
        exhaustive_trial(PAIR7, 1)


def test_exhaustive_jobs_agree():
    msgs = [[0] * 9, [1] * 9]
    a = exhaustive_trial(ecp_build(F11, 0, 1, 9), 2, msgs, jobs=1).to_json()
    b = exhaustive_trial(ecp_build(F11, 0, 1, 9), 2, msgs, jobs=2).to_json()
    assert a == b


def test_simulate_at_radius():
    report = channel_simulate(PAIR7, 10_000, 2, seed=1)
    assert report.by_weight[2]["corrected"] == 10_000


def test_simulate_weight_zero():
    report = channel_simulate(PAIR5, 500, 0, seed=2)
    assert report.by_weight == {0: {"no-error": 500, "corrected": 0, "miscorrected": 0, "failure": 0}}


def test_simulate_beyond_radius_counts_everything():
    report = channel_simulate(PAIR7, 2000, 3, seed=3)
    counts = report.by_weight[3]
    assert sum(counts.values()) == 2000
    assert counts["failure"] + counts["miscorrected"] > 0


def test_simulate_deterministic():
    dist = {0: 0.2, 2: 0.5, 3: 0.3}
    a = channel_simulate(PAIR7, 400, dist, seed=9).to_json()
    assert a == channel_simulate(PAIR7, 400, dist, seed=9).to_json()
    assert a == channel_simulate(PAIR7, 400, dist, seed=9, jobs=2).to_json()
    assert a != channel_simulate(PAIR7, 400, dist, seed=10).to_json()


@pytest.mark.parametrize("dist", [{}, {12: 1.0}, {1: -1.0}, {1: 0.0}, "2", True])
def test_simulate_invalid_distribution(dist):
    with pytest.raises(ValueError):
        channel_simulate(PAIR7, 10, dist)


def test_simulate_invalid_trials():
    with pytest.raises(ValueError):
        channel_simulate(PAIR7, 0, 1)


def test_pair_json_round_trip():
    obj = json.loads(json.dumps(PAIR5.to_json()))
    back = ErrorCorrectingPair.from_json(obj)
    assert back.U == PAIR5.U and back.V == PAIR5.V and back.t == 3
    bad = _variant(PAIR7, (0, 1, 2), (1, 2, 3, 4)).to_json()
    with pytest.raises(ValueError):
        ErrorCorrectingPair.from_json(bad)


def test_decode_sample_with_random_module():
    rnd = random.Random(0)
    cw = encode(PAIR5.code, [rnd.randrange(23) for _ in range(5)])
    e = _random_error(rnd, 11, 3, 23)
    res = ecp_decode(PAIR5, [(a + b) % 23 for a, b in zip(cw, e)])
    assert res.codeword == cw and res.error_vector == e

"""Command-line entry point: ``mdscodex <group> <command> [options]``.

Exit status is 0 on success, 1 when a verification fails (the JSON report
then carries the witness) and 2 for usage, input or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile
import time
from collections.abc import Sequence
from pathlib import Path

from mdscodex import code as codemod
from mdscodex import decode as decmod
from mdscodex import fourier as fmod
from mdscodex import idempotent as idmod
from mdscodex.field import Field, field_make, field_make_cyclotomic, find_root_of_unity
from mdscodex.poly import Poly

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, report: dict):
        super().__init__("verification failed")
        self.report = report


# --------------------------------------------------------------------------
# parsing helpers


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        if text.startswith("["):
            values = json.loads(text)
            return [int(v) for v in values]
        return [int(v) for v in text.split(",")]
    except (ValueError, TypeError) as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _vector(field: Field, text: str) -> list:
    """Comma-separated residues or a JSON array of element serializations."""
    text = text.strip()
    try:
        if text.startswith("["):
            return [field.decode(v) for v in json.loads(text)]
        return [field.coerce(int(v)) for v in text.split(",") if v.strip()]
    except (ValueError, TypeError) as exc:
        raise UsageError(f"cannot parse vector {text!r}: {exc}") from exc


def _omega(text: str | None):
    if text is None:
        return None
    vals = _int_list(text)
    return vals[0] if len(vals) == 1 else vals


def _field(args) -> Field:
    if args.char is None:
        raise UsageError("--char is required")
    if args.char == 0:
        p = getattr(args, "p", None) or getattr(args, "n", None)
        if p is None:
            raise UsageError("--char 0 (cyclotomic) needs --p or --n")
        if args.modulus is not None:
            raise UsageError("--modulus conflicts with --char 0")
        return field_make_cyclotomic(p)
    modulus = None if args.modulus is None else _int_list(args.modulus)
    return field_make(args.char, args.degree, modulus)


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_code(path: str) -> codemod.LinearCode:
    return codemod.LinearCode.from_json(_load_json(path))


def _load_pair(path: str) -> decmod.ErrorCorrectingPair:
    """A pair file, or a code file whose pair is then constructed."""
    obj = _load_json(path)
    if "U" in obj and "code" in obj:
        return decmod.ErrorCorrectingPair.from_json(obj)
    return decmod.ecp_for_code(codemod.LinearCode.from_json(obj))


# --------------------------------------------------------------------------
# output


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _write_atomic(path: str, text: str) -> None:
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{target.name}.", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def _render_text(obj) -> str:
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        return "".join(f"{str(k):<{width}}  {json.dumps(v)}\n" for k, v in obj.items())
    return _dumps(obj)


def _emit(args, obj) -> None:
    if getattr(args, "timestamps", False) and isinstance(obj, dict):
        obj = {**obj, "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())}
    output = getattr(args, "output", None)
    if output:
        _write_atomic(output, _dumps(obj))
        return
    sys.stdout.write(_render_text(obj) if args.format == "text" else _dumps(obj))


# --------------------------------------------------------------------------
# commands


def cmd_field_make(args):
    F = _field(args)
    out = {"field": F.to_json(), "cardinality": F.cardinality}
    if args.n is not None:
        out["root_of_unity"] = find_root_of_unity(F, args.n, _omega(args.omega)).encode()
    return out


def cmd_fourier_build(args):
    F = _field(args)
    return fmod.fourier_build(F, args.p, _omega(args.omega)).to_json()


def cmd_fourier_check(args):
    F = fmod.fourier_build(_field(args), args.p, _omega(args.omega))
    report = fmod.chebotarev_check(F, args.max_order, jobs=args.jobs, force=args.force).to_json()
    if not report["holds"]:
        raise VerificationFailed(report)
    return report


def cmd_fourier_spot(args):
    F = fmod.fourier_build(_field(args), args.p, _omega(args.omega))
    report = fmod.chebotarev_spot_check(F, args.samples, args.seed).to_json()
    if report["zeros"]:
        raise VerificationFailed(report)
    return report


def cmd_fourier_scan(args):
    pairs = fmod.scan_prime_pairs(args.p_max, args.q_max)
    return {"pairs": [{"p": p, "q": q, "tag": tag} for p, q, tag in pairs]}


def cmd_fourier_isaacs(args):
    F = _field(args)
    f = Poly(F, [F.coerce(c) for c in _int_list(args.poly)])
    return fmod.isaacs_criterion(f, args.p).to_json()


def cmd_idem_build(args):
    S = idmod.idempotent_set_build(_field(args), args.n, _omega(args.omega))
    return S.to_json()


def cmd_idem_code(args):
    S = idmod.idempotent_set_build(_field(args), args.n, _omega(args.omega))
    return codemod.idempotent_code_build(S, _int_list(args.indices)).to_json()


def cmd_code_build(args):
    F = fmod.fourier_build(_field(args), args.p, _omega(args.omega))
    return codemod.unit_code_build(F, _int_list(args.rows)).to_json()


def cmd_code_distance(args):
    c = _load_code(args.file)
    d = codemod.min_distance(c)
    return {"n": c.n, "k": c.k, "distance": d, "singleton_bound": c.n - c.k + 1}


def cmd_code_mds(args):
    c = _load_code(args.file)
    d = codemod.min_distance(c)
    report = {"n": c.n, "k": c.k, "distance": d, "mds": d == c.n - c.k + 1}
    if not report["mds"]:
        raise VerificationFailed(report)
    return report


def cmd_code_encode(args):
    c = _load_code(args.file)
    msg = _vector(c.field, args.message)
    if len(msg) != c.k:
        raise UsageError(f"message has {len(msg)} symbols, code dimension is {c.k}")
    word = codemod.encode(c, msg)
    return {"message": [c.field.encode(x) for x in msg], "codeword": [c.field.encode(x) for x in word]}


def cmd_code_dual(args):
    return codemod.dual_code(_load_code(args.file)).to_json()


def cmd_code_enum(args):
    F = fmod.fourier_build(_field(args), args.p, _omega(args.omega))
    for c in codemod.enumerate_codes(F, args.r, args.limit):
        sys.stdout.write(json.dumps(c.to_json(), ensure_ascii=False) + "\n")
    return None


def cmd_decode_build(args):
    try:
        pair = decmod.ecp_for_code(_load_code(args.file))
    except decmod.NoPairError as exc:
        raise VerificationFailed({"pair": None, "reason": str(exc)}) from exc
    return pair.to_json()


def cmd_decode_run(args):
    pair = _load_pair(args.file)
    y = _vector(pair.field, args.received)
    if len(y) != pair.code.n:
        raise UsageError(f"received word has {len(y)} symbols, code length is {pair.code.n}")
    res = decmod.ecp_decode(pair, y)
    out = res.to_json(pair.field)
    if res.status == "failure":
        raise VerificationFailed(out)
    return out


def _messages(code: codemod.LinearCode, count: int, seed: int) -> list[list]:
    """Zero message first, then ``count - 1`` seeded random messages."""
    F = code.field
    rng = random.Random(seed)
    msgs = [[F.zero] * code.k]
    while len(msgs) < count:
        msgs.append([F.random_element(rng) for _ in range(code.k)])
    return msgs


def cmd_decode_exhaust(args):
    pair = _load_pair(args.file)
    if args.messages < 1:
        raise UsageError("--messages must be at least 1")
    msgs = _messages(pair.code, args.messages, args.seed)
    report = decmod.exhaustive_trial(pair, args.max_weight, msgs, jobs=args.jobs).to_json()
    if report["total_failures"]:
        raise VerificationFailed(report)
    return report


def _weights(args):
    if args.weights is not None:
        table = {}
        for part in args.weights.split(","):
            try:
                w, prob = part.split(":")
                table[int(w)] = float(prob)
            except ValueError as exc:
                raise UsageError(f"bad --weights entry {part!r}; expected W:P") from exc
        return table
    return args.weight


def cmd_decode_simulate(args):
    pair = _load_pair(args.file)
    weights = _weights(args)
    if weights is None:
        weights = pair.t
    return decmod.channel_simulate(pair, args.trials, weights, args.seed, jobs=args.jobs).to_json()


# --------------------------------------------------------------------------
# parser


def _add_field_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("field")
    g.add_argument("--char", type=int, help="characteristic q (0 for the cyclotomic field)")
    g.add_argument("--degree", type=int, default=1, help="extension degree m")
    g.add_argument("--modulus", help="monic modulus coefficients, little-endian")
    g.add_argument("--omega", help="root of unity as an integer or coefficient list")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", "-o", help="write the JSON result to this file")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timestamps", action="store_true", help="add a timestamp to reports")

    parser = argparse.ArgumentParser(prog="mdscodex", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def command(group, name, func, help_text):
        p = group.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    # field
    g = groups.add_parser("field", help="finite and cyclotomic fields").add_subparsers(dest="cmd", required=True)
    p = command(g, "make", cmd_field_make, "build a field and optionally a root of unity")
    _add_field_args(p)
    p.add_argument("--p", type=int, help="prime p for --char 0")
    p.add_argument("--n", type=int, help="order of the root of unity to report")

    # fourier
    g = groups.add_parser("fourier", help="Fourier matrices").add_subparsers(dest="cmd", required=True)
    p = command(g, "build", cmd_fourier_build, "build F_p and its inverse")
    _add_field_args(p)
    p.add_argument("--p", type=int, required=True)
    _add_output(p)
    p = command(g, "check", cmd_fourier_check, "exhaustive Chebotarev check")
    _add_field_args(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--max-order", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--force", action="store_true", help="allow scans beyond the default limit")
    p = command(g, "spot", cmd_fourier_spot, "random submatrix determinant spot check")
    _add_field_args(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p = command(g, "scan", cmd_fourier_scan, "tag prime pairs (p, q) with a guarantee")
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--q-max", type=int, required=True)
    p = command(g, "isaacs", cmd_fourier_isaacs, "support size versus gcd degree with x^p - 1")
    _add_field_args(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--poly", required=True, help="coefficients, little-endian")

    # idem
    g = groups.add_parser("idem", help="circulant idempotents").add_subparsers(dest="cmd", required=True)
    p = command(g, "build", cmd_idem_build, "complete orthogonal idempotent set")
    _add_field_args(p)
    p.add_argument("--n", type=int, required=True)
    _add_output(p)
    p = command(g, "code", cmd_idem_code, "code from a sum of idempotents")
    _add_field_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--indices", required=True)
    _add_output(p)

    # code
    g = groups.add_parser("code", help="unit-derived codes").add_subparsers(dest="cmd", required=True)
    p = command(g, "build", cmd_code_build, "code from rows of F_p")
    _add_field_args(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--rows", required=True)
    _add_output(p)
    for name, func, text in (
        ("distance", cmd_code_distance, "exact minimum distance"),
        ("mds", cmd_code_mds, "check the Singleton bound is met"),
    ):
        p = command(g, name, func, text)
        p.add_argument("file")
    p = command(g, "encode", cmd_code_encode, "encode a message")
    p.add_argument("file")
    p.add_argument("--message", required=True)
    p = command(g, "dual", cmd_code_dual, "dual code")
    p.add_argument("file")
    _add_output(p)
    p = command(g, "enum", cmd_code_enum, "all r-row codes, one JSON line each")
    _add_field_args(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--limit", type=int)

    # decode
    g = groups.add_parser("decode", help="error-correcting pairs").add_subparsers(dest="cmd", required=True)
    p = command(g, "ecp-build", cmd_decode_build, "build and verify the pair for a code file")
    p.add_argument("file")
    _add_output(p)
    p = command(g, "run", cmd_decode_run, "decode one received word")
    p.add_argument("file")
    p.add_argument("--received", required=True)
    p = command(g, "exhaust", cmd_decode_exhaust, "decode every error pattern up to a weight")
    p.add_argument("file")
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--messages", type=int, default=1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1)
    p = command(g, "simulate", cmd_decode_simulate, "seeded random channel simulation")
    p.add_argument("file")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1)
    w = p.add_mutually_exclusive_group()
    w.add_argument("--weight", type=int, help="fixed error weight (default t)")
    w.add_argument("--weights", help="distribution as W:P pairs, e.g. 0:0.5,1:0.5")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        result = args.func(args)
    except VerificationFailed as exc:
        sys.stdout.write(_dumps(exc.report))
        return 1
    except ArithmeticError as exc:
        sys.stdout.write(_dumps({"verified": False, "error": str(exc)}))
        return 1
    except (UsageError, ValueError, TypeError, KeyError, codemod.BudgetExceeded) as exc:
        print(f"mdscodex: error: {exc}", file=sys.stderr)
        return 2
    if result is not None:
        try:
            _emit(args, result)
        except UsageError as exc:
            print(f"mdscodex: error: {exc}", file=sys.stderr)
            return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``sots <command> [options]``.

Exit codes for ``decide`` and ``represent``: 0 yes, 1 no, 2 unknown.  Usage
errors exit with 64.
"""

from __future__ import annotations

import argparse
import fcntl
import json
import os
import sys
from pathlib import Path
from typing import Optional

from . import selftest
from .aurifeuillian import aurifeuillian_pair
from .classifier import (
    RULE_EVEN_EXPONENT,
    ClassificationRecord,
    VerdictCache,
    chart,
    decide,
    poly_family,
    witness_nonsots,
)
from .core_arith import EffortBudget, Factorization
from .two_squares import NO, UNKNOWN, YES, classify, density_ratio, sots_count, yes

EXIT_CODES = {YES: 0, NO: 1, UNKNOWN: 2}
EXIT_USAGE = 64
CACHE_ENV = "SOTS_CACHE"


class UsageError(Exception):
    pass


class CacheFormatError(ValueError):
    pass


# --------------------------------------------------------------------------
# Persistent cache
# --------------------------------------------------------------------------

def default_cache_path() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "sots" / "cache.jsonl"


def _record_key(a: int, n: int) -> str:
    return f"{a},{n}"


class FileCache(VerdictCache):
    """VerdictCache backed by an append-only JSON-lines file.

    Each line is {"kind", "key", "payload"}.  Appends take an exclusive
    flock, so concurrent processes can at worst duplicate a line; duplicates
    are dropped on load.
    """

    def __init__(self, path: Path):
        super().__init__()
        self.path = Path(path)
        self._loading = False
        if self.path.exists():
            self.load()

    def load(self) -> None:
        self._loading = True
        try:
            with open(self.path, encoding="utf-8") as fh:
                fcntl.flock(fh, fcntl.LOCK_SH)
                try:
                    lines = fh.readlines()
                finally:
                    fcntl.flock(fh, fcntl.LOCK_UN)
            for lineno, line in enumerate(lines, 1):
                if not line.strip():
                    continue
                try:
                    self._load_line(line)
                except (ValueError, KeyError, TypeError, AssertionError) as exc:
                    raise CacheFormatError(f"{self.path}:{lineno}: malformed cache entry ({exc})") from exc
        finally:
            self._loading = False

    def _load_line(self, line: str) -> None:
        entry = json.loads(line)
        kind, key, payload = entry["kind"], entry["key"], entry["payload"]
        if kind == "verdict":
            rec = ClassificationRecord.from_dict(payload)
            if key != _record_key(rec.a, rec.n):
                raise ValueError("key does not match payload")
            rec.check()
            self.put(rec)
        elif kind == "factorization":
            fac = Factorization.from_dict(payload)
            if key != str(fac.value):
                raise ValueError("key does not match payload")
            fac.check()
            self.put_factorization(fac)
        else:
            raise ValueError(f"unknown kind {kind!r}")

    def _append(self, kind: str, key: str, payload: dict) -> None:
        if self._loading:
            return
        line = json.dumps({"kind": kind, "key": key, "payload": payload}, sort_keys=True)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(line + "\n")
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def put(self, rec: ClassificationRecord) -> bool:
        new = super().put(rec)
        if new:
            self._append("verdict", _record_key(rec.a, rec.n), rec.to_dict())
        return new

    def put_factorization(self, fac: Factorization) -> bool:
        new = super().put_factorization(fac)
        if new:
            self._append("factorization", str(fac.value), fac.to_dict())
        return new


# --------------------------------------------------------------------------
# Argument handling
# --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _natural(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text}")
    return value


def _positive(text: str) -> int:
    value = _natural(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return value


def _integer(text: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-ms", type=_natural, default=0, help="wall-clock cap for factoring (0 = none)")
    common.add_argument("--rho-cap", type=_natural, default=10**8, help="Pollard rho iterations per cofactor")
    common.add_argument("--trial-bound", type=_positive, default=10**5, help="trial division bound")
    common.add_argument("--seed", type=_natural, default=0, help="seed for randomised internals")
    common.add_argument("--cache", type=Path, default=None, help="cache file (default: user cache dir)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--threads", type=_positive, default=1, help="worker processes for chart rows")

    parser = _Parser(prog="sots", description="Decide whether a^n + 1 is a sum of two squares.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decide", parents=[common], help="decide a^n + 1")
    p.add_argument("a", type=_positive)
    p.add_argument("n", type=_positive)

    p = sub.add_parser("represent", parents=[common], help="write N as x^2 + y^2")
    p.add_argument("N", type=_positive)

    p = sub.add_parser("chart", parents=[common], help="table of exponents n with a^n + 1 a sum of two squares")
    p.add_argument("--a-min", type=_positive, default=1)
    p.add_argument("--a-max", type=_positive, default=50)
    p.add_argument("--n-max", type=_positive, default=19)

    p = sub.add_parser("witness", parents=[common], help="odd n with a^n + 1 not a sum of two squares")
    p.add_argument("a", type=_positive)

    p = sub.add_parser("aurifeuille", parents=[common], help="F, G with Phi_n = F^2 - k x^q G^2")
    p.add_argument("k", type=_integer)
    p.add_argument("n", type=_positive)

    p = sub.add_parser("poly", parents=[common], help="quartic f with f^p + 1 a sum of two squares")
    p.add_argument("p", type=_positive)

    p = sub.add_parser("density", parents=[common], help="S(x) sqrt(log x) / x")
    p.add_argument("x", type=_positive)

    sub.add_parser("selftest", parents=[common], help="run the built-in invariant checks")
    return parser


def _budget(args) -> EffortBudget:
    return EffortBudget(
        trial_division_bound=max(2, args.trial_bound),
        rho_iteration_cap=args.rho_cap,
        total_time_cap_ms=args.budget_ms,
        seed=args.seed,
    )


def _cache(args) -> Optional[VerdictCache]:
    if args.no_cache:
        return VerdictCache()
    return FileCache(args.cache or default_cache_path())


def _emit(args, obj: dict, text: list[str]) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print("\n".join(text))


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def _verdict_lines(verdict) -> list[str]:
    out = [f"verdict: {verdict.status}"]
    if verdict.witness is not None:
        x, y = verdict.witness
        out.append(f"witness: {x}^2 + {y}^2")
    if verdict.bad_prime is not None:
        p, r = verdict.bad_prime
        out.append(f"bad prime: {p}^{r} exactly divides")
    if verdict.obstruction is not None:
        out.append(f"obstruction: coprime divisor {verdict.obstruction} = 3 (mod 4)")
    if verdict.blocking_cofactor is not None:
        out.append(f"blocking cofactor: {verdict.blocking_cofactor}")
    return out


def cmd_decide(args) -> int:
    a, n = args.a, args.n
    if n % 2 == 0:
        rec = ClassificationRecord(a, n, yes((a ** (n // 2), 1)), RULE_EVEN_EXPONENT, {})
    else:
        rec = decide(a, n, _budget(args), _cache(args))
    lines = [f"{a}^{n} + 1", *_verdict_lines(rec.verdict), f"rule: {rec.rule}"]
    if rec.certificate:
        lines.append("certificate: " + json.dumps(rec.certificate, sort_keys=True))
    _emit(args, {"record": rec.to_dict()}, lines)
    return EXIT_CODES[rec.status]


def cmd_represent(args) -> int:
    v = classify(args.N, _budget(args))
    _emit(args, {"N": str(args.N), "verdict": v.to_dict()}, [str(args.N), *_verdict_lines(v)])
    return EXIT_CODES[v.status]


def cmd_chart(args) -> int:
    if args.a_min > args.a_max:
        raise UsageError("--a-min exceeds --a-max")
    rows = chart(args.a_max, args.n_max, _budget(args), _cache(args), threads=args.threads, a_min=args.a_min)
    cells = len(rows) * len(range(1, args.n_max + 1, 2))
    n_unknown = sum(len(r.unknown) for r in rows)
    lines = [f"{'a':>4}  {'n':<30}  property"]
    for r in rows:
        lines.append(f"{r.a:>4}  {r.display():<30}  {r.prop}")
    for r in rows:
        for n, c in r.unknown:
            lines.append(f"unknown: a = {r.a}, n = {n}, blocking cofactor {c}")
    lines.append(f"cells: {cells}, unknown: {n_unknown} ({100.0 * n_unknown / max(cells, 1):.1f}%)")
    obj = {
        "a_min": args.a_min,
        "a_max": args.a_max,
        "n_max": args.n_max,
        "rows": [r.to_dict() for r in rows],
        "cells": cells,
        "unknown": n_unknown,
    }
    _emit(args, obj, lines)
    return 0


def cmd_witness(args) -> int:
    n, cert = witness_nonsots(args.a, _budget(args), _cache(args))
    lines = [f"n = {n}", f"prime q = {cert.q}"]
    if cert.bad_prime is not None:
        p, r = cert.bad_prime
        lines.append(f"bad prime: {p}^{r} exactly divides {args.a}^{n} + 1")
    elif cert.record is not None:
        lines.append(f"decided by rule {cert.record.rule}")
    obj = {
        "a": str(args.a),
        "n": str(n),
        "q": str(cert.q),
        "bad_prime": [str(cert.bad_prime[0]), cert.bad_prime[1]] if cert.bad_prime else None,
        "record": cert.record.to_dict() if cert.record else None,
    }
    _emit(args, obj, lines)
    return 0


def cmd_aurifeuille(args) -> int:
    pair = aurifeuillian_pair(args.k, args.n)
    lines = [
        f"k = {pair.k}, n = {pair.n}, q = {pair.q}",
        f"F = {pair.F}",
        f"G = {pair.G}",
        f"identity verified: {pair.verify()}",
    ]
    obj = {
        "k": str(pair.k),
        "n": str(pair.n),
        "q": str(pair.q),
        "F": [str(c) for c in pair.F.coeffs],
        "G": [str(c) for c in pair.G.coeffs],
    }
    _emit(args, obj, lines)
    return 0


def cmd_poly(args) -> int:
    fam = poly_family(args.p)
    A = fam.A.format("X")
    lines = [
        f"p = {fam.p} = {fam.u}^2 + {fam.v}^2",
        f"f(X) = {fam.p}({A})^2",
        f"A(X) = {A}",
        f"B(X) = {fam.B.format('X')}",
        f"C(X) = {fam.C.format('X')}",
        f"g(X) = {fam.g.format('X')}",
        f"h(X) = {fam.h.format('X')}",
    ]
    obj = {
        "p": str(fam.p),
        "u": str(fam.u),
        "v": str(fam.v),
        **{name: [str(c) for c in getattr(fam, name).coeffs] for name in ("f", "g", "h", "A", "B", "C")},
    }
    _emit(args, obj, lines)
    return 0


def cmd_density(args) -> int:
    count = sots_count(args.x)
    ratio = density_ratio(args.x)
    _emit(args, {"x": str(args.x), "count": str(count), "ratio": ratio}, [f"S({args.x}) = {count}", f"ratio = {ratio:.6f}"])
    return 0


def cmd_selftest(args) -> int:
    lines: list[str] = []
    report = (lambda s: lines.append(s)) if args.json else print
    passed, failed = selftest.run(report)
    if args.json:
        print(json.dumps({"passed": passed, "failed": failed, "checks": lines}, sort_keys=True))
    else:
        print(f"{passed} passed, {failed} failed")
    return 0 if failed == 0 else 1


COMMANDS = {
    "decide": cmd_decide,
    "represent": cmd_represent,
    "chart": cmd_chart,
    "witness": cmd_witness,
    "aurifeuille": cmd_aurifeuille,
    "poly": cmd_poly,
    "density": cmd_density,
    "selftest": cmd_selftest,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"sots: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

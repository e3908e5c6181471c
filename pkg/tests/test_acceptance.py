"""Acceptance criteria 1-10, one test each, with a PASS/FAIL summary line.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

import math
import pathlib
import random
import sys
import time
from contextlib import contextmanager

ROOT = pathlib.Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:  # allow running as a script
    sys.path.insert(0, str(ROOT))

import pytest  # noqa: E402
import sympy  # noqa: E402

from sots import core_arith  # noqa: E402
from sots.aurifeuillian import (  # noqa: E402
    aurifeuillian_pair,
    aurifeuillian_split,
    is_admissible,
    sots_of_phi,
)
from sots.classifier import (  # noqa: E402
    RULE_5MOD8,
    VerdictCache,
    chart,
    compute_m,
    decide,
    poly_family,
    prime_times_square,
    px2_transfer,
    screen,
    witness_nonsots,
)
from sots.core_arith import divisors, exact_valuation, mobius, primes_up_to  # noqa: E402
from sots.cyclotomic import (  # noqa: E402
    NOT_DIVISOR,
    INTRINSIC,
    cyclotomic_poly,
    eval_cyclotomic,
    predict_valuation,
    prime_in_cyclotomic,
)
from sots.reference import expected  # noqa: E402
from sots.two_squares import NO, UNKNOWN, YES, brute_force, brute_force_table, classify, density_ratio  # noqa: E402
from tests.oracle_data import CHART_N_MAX, CHART_YES  # noqa: E402
from tests.sympy_oracle import is_sots, is_sots_number  # noqa: E402


@contextmanager
def criterion(report, k, title):
    info = {"detail": ""}
    ok = False
    try:
        yield info
        ok = True
    finally:
        detail = f" ({info['detail']})" if info["detail"] else ""
        report(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}{detail}")


def _oracle_yes(a, n):
    if math.isqrt(a) ** 2 == a:
        return True
    return n in CHART_YES[a]


def test_criterion_1_worked_examples(acceptance_report, monkeypatch):
    with criterion(acceptance_report, 1, "worked examples") as info:
        start = time.perf_counter()
        rec = decide(6, 7)
        assert rec.status == YES
        x, y = rec.verdict.witness
        assert x * x + y * y == 279937 == 476**2 + 231**2
        rec = decide(12, 3)
        assert rec.status == NO
        rec.check()
        for n in range(1, 16, 2):
            rec = decide(20, n)
            assert rec.status == NO
            rec.check()

        calls = []
        real = core_arith.factorize

        def counting(*args, **kwargs):
            calls.append(args)
            return real(*args, **kwargs)

        monkeypatch.setattr(core_arith, "factorize", counting)
        for n in range(1, 16, 2):
            rec = decide(13, n)
            assert rec.status == NO and rec.rule == RULE_5MOD8
        monkeypatch.setattr(core_arith, "factorize", real)
        assert calls == []

        n, _ = witness_nonsots(148)
        assert n == 9
        elapsed = time.perf_counter() - start
        info["detail"] = f"{elapsed:.2f}s, factoring calls for base 13: {len(calls)}"
        assert elapsed < 5


def test_criterion_2_chart_reproduction(acceptance_report):
    with criterion(acceptance_report, 2, "chart a <= 50, odd n <= 19") as info:
        start = time.perf_counter()
        rows = chart(50, 19)
        elapsed = time.perf_counter() - start
        unknown = sum(len(r.unknown) for r in rows)
        mismatches = []
        for r in rows:
            for n in range(1, 20, 2):
                got = n in r.yes
                ref = expected(r.a, n)  # None past the last entry of an open-ended row
                if ref is not None and got != ref:
                    mismatches.append(("reference", r.a, n))
                if got != _oracle_yes(r.a, n):
                    mismatches.append(("oracle", r.a, n))
        by_a = {r.a: r for r in rows}
        assert by_a[3].yes == [1, 5, 13] and by_a[7].yes == [1, 13, 17]
        assert by_a[12].yes == [1, 5, 11] and by_a[17].yes == [1, 7, 17]
        assert by_a[24].yes == [1, 7, 11, 19] and by_a[33].yes == [1, 5, 7, 17]
        assert by_a[48].yes == [1, 3, 5, 17]
        assert by_a[1].display() == "all" and by_a[46].display() == "-"
        info["detail"] = f"{elapsed:.1f}s, unknown {unknown}, mismatches {len(mismatches)}"
        assert unknown == 0 and mismatches == []
        assert elapsed < 600


def test_criterion_3_chart_extension(acceptance_report):
    with criterion(acceptance_report, 3, "chart extension 19 < n <= 29") as info:
        rows = chart(50, CHART_N_MAX, cache=VerdictCache())
        contradictions, unknown, cells = [], 0, 0
        for r in rows:
            unknown_ns = dict(r.unknown)
            for n in range(21, CHART_N_MAX + 1, 2):
                cells += 1
                if n in unknown_ns:
                    assert unknown_ns[n] > 1
                    unknown += 1
                    continue
                got = n in r.yes
                ref = expected(r.a, n)
                if ref is not None and got != ref:
                    contradictions.append(("reference", r.a, n))
                if got != _oracle_yes(r.a, n):
                    contradictions.append(("oracle", r.a, n))
        by_a = {r.a: r for r in rows}
        assert 29 in by_a[7].yes and 25 in by_a[31].yes and 29 in by_a[35].yes
        info["detail"] = f"unknown rate {unknown}/{cells} = {100 * unknown / cells:.1f}%, contradictions {len(contradictions)}"
        assert contradictions == []


def test_criterion_4_oracle_equivalence(acceptance_report):
    with criterion(acceptance_report, 4, "classify vs brute force, N <= 10^6") as info:
        limit = 10**6
        start = time.perf_counter()
        table = brute_force_table(limit)
        disagree = unknown = 0
        for N in range(1, limit + 1):
            v = classify(N)
            if v.status == UNKNOWN:
                unknown += 1
            if (v.status == YES) != (table[N, 0] >= 0):
                disagree += 1
        # the vectorised table against the scalar search
        rng = random.Random(1)
        sample = rng.sample(range(limit + 1), 2000)
        for N in sample:
            b = brute_force(N)
            assert (b is None) == (table[N, 0] < 0)
            if b is not None:
                assert b == (int(table[N, 0]), int(table[N, 1]))
        elapsed = time.perf_counter() - start
        info["detail"] = f"{elapsed:.1f}s, disagreements {disagree}, unknown {unknown}"
        assert disagree == 0 and unknown == 0
        assert elapsed < 120


def test_criterion_5_cyclotomic_suite(acceptance_report):
    with criterion(acceptance_report, 5, "cyclotomic suite") as info:
        for n in range(1, 61):
            for a in range(2, 11):
                assert math.prod(eval_cyclotomic(d, a) for d in divisors(n)) == a**n - 1
        for n in range(3, 60, 2):
            for a in range(2, 21):
                assert eval_cyclotomic(2 * n, a) == eval_cyclotomic(n, -a)
        for n in range(2, 201):
            assert cyclotomic_poly(n)[1] == -mobius(n)
        cases = 0
        for p in primes_up_to(97):
            for a in range(2, 21):
                if a % p == 0:
                    continue
                for n in range(2, 61):
                    value = eval_cyclotomic(n, a)
                    kind = prime_in_cyclotomic(p, n, a)
                    assert (value % p == 0) == (kind != NOT_DIVISOR)
                    if kind == INTRINSIC and n >= 3:
                        assert value % (p * p) != 0
                    cases += 1
        info["detail"] = f"{cases} divisor-classification cases"


def test_criterion_6_valuation_lifting(acceptance_report):
    with criterion(acceptance_report, 6, "valuation lifting") as info:
        assert predict_valuation(7, 6, 1, 7) == 2 == exact_valuation(7, 279937)
        rng = random.Random(6)
        done = lifted = 0
        while done < 500:
            p = rng.choice(primes_up_to(100)[1:])
            a = rng.randrange(2, 500)
            m = rng.randrange(1, 40, 2)
            if (a**m + 1) % p:
                continue
            c = rng.choice([1, 3, 5, 7, 9, 11])
            if c % p == 0:
                continue
            n = m * c * p ** rng.randrange(0, 4)
            if n * a.bit_length() > 200_000:
                continue
            assert predict_valuation(p, a, m, n) == exact_valuation(p, a**n + 1), (p, a, m, n)
            lifted += n % p == 0
            done += 1
        info["detail"] = f"{done} instances, {lifted} with p | n"


def test_criterion_7_aurifeuillian_suite(acceptance_report):
    with criterion(acceptance_report, 7, "Aurifeuillian suite") as info:
        pairs = 0
        for k in range(-15, 16):
            for n in range(2, 61):
                if is_admissible(k, n):
                    p = aurifeuillian_pair(k, n)
                    assert p.F * p.F - (p.G * p.G).shift(p.q) * k == cyclotomic_poly(n)
                    pairs += 1
        splits = 0
        for k in range(1, 16):
            for n in range(2, 61):
                if not is_admissible(k, n):
                    continue
                for v in range(1, 6):
                    f, g = aurifeuillian_split(k, v, n)
                    assert f * g == eval_cyclotomic(n, k * v * v) and math.gcd(f, g) == 1
                    splits += 1
        assert sots_of_phi(-5, 1, 10) == (11, 20)
        assert eval_cyclotomic(10, 5) == 521 == 11**2 + 20**2
        info["detail"] = f"{pairs} identities, {splits} splits"


def test_criterion_8_base_class_properties(acceptance_report):
    with criterion(acceptance_report, 8, "base-class property suites") as info:
        cache = VerdictCache()
        counts = {}

        def tally(name):
            counts[name] = counts.get(name, 0) + 1

        odd = range(1, 16, 2)
        # even bases
        for a in range(2, 101, 2):
            bad = [(p, e) for p, e in sympy.factorint(a + 1).items() if p % 4 == 3 and e % 2]
            for n in odd:
                if decide(a, n, cache=cache).status != YES:
                    continue
                assert is_sots(a, n)
                if not bad:
                    assert all(decide(a, d, cache=cache).status == YES for d in divisors(n))
                else:
                    assert len(bad) == 1 and n == bad[0][0]
                tally("even")
        # a = 1 mod 8
        for a in range(1, 101, 8):
            for n in odd:
                if decide(a, n, cache=cache).status == YES:
                    assert all(decide(a, d, cache=cache).status == YES for d in divisors(n))
                    tally("1mod8")
        # a = 5 mod 8
        for a in range(5, 10**4 + 1, 8):
            for n in odd:
                assert ((a**n + 1) // 2) % 4 == 3
                tally("5mod8")
        # a = 3 mod 4: congruence, valuation parity and the m-conditions
        for a in range(3, 101, 4):
            m = compute_m(a).m
            ram = [p for p, e in sympy.factorint(a + 1).items() if p % 4 == 3 and e % 2]
            for n in odd:
                if decide(a, n, cache=cache).status != YES:
                    continue
                assert n % 4 == m % 4
                assert all(exact_valuation(p, n) % 2 == 1 for p in ram)
                assert n % m == 0 and classify(n // m).status == YES
                assert decide(a, m, cache=cache).status == YES
                for d in divisors(n // m):
                    if classify(d).status == YES:
                        assert decide(a, m * d, cache=cache).status == YES
                tally("3mod4")
        # square prime in the exponent: decided without the screens
        for a in range(3, 1000, 4):
            for n, p in ((1, 3), (3, 3)):
                rec = decide(a, n * p * p, screens=False)
                if rec.status == YES:
                    rec.check()
                    assert (a**n + 1) % p == 0
                    tally("square-prime")
        # alternating sums
        for x in range(1, 51):
            for n in range(1, 46, 2):
                s = sum((-x) ** i for i in range(n))
                for b in divisors(x + 1):
                    if b <= 50:
                        assert (s % b == 0) == (n % b == 0)
        tally("alternating")
        # prime times square transfer
        for a in range(5, 151):
            if prime_times_square(a) is not None:
                rep = px2_transfer(a, 1)
                assert rep.agree and rep.base.status == (YES if is_sots_number(a + 1) else NO)
                rep.lifted.check()
                tally("prime-times-square")
        # screen soundness against factorization
        for a in range(2, 51):
            for n in odd:
                if screen(a, n) is not None:
                    assert decide(a, n, screens=False).status == NO
        assert counts.get("square-prime", 0) >= 3
        info["detail"] = ", ".join(f"{k} {v}" for k, v in sorted(counts.items()))


def test_criterion_9_polynomial_family(acceptance_report):
    with criterion(acceptance_report, 9, "polynomial family") as info:
        primes = [p for p in sympy.primerange(5, 102) if p % 4 == 1]
        for p in primes:
            fam = poly_family(p)
            assert fam.A * fam.A * p + 1 == fam.B * fam.B + fam.C * fam.C
        fam = poly_family(13)
        a = fam.f(1)
        rec = decide(a, 13)
        assert rec.status == YES
        rec.check()
        info["detail"] = f"{len(primes)} primes, f(1) = {a}, rule {rec.rule}"


def test_criterion_10_density(acceptance_report):
    with criterion(acceptance_report, 10, "density ratio") as info:
        start = time.perf_counter()
        r = [density_ratio(10**k) for k in (4, 5, 6)]
        elapsed = time.perf_counter() - start
        info["detail"] = ", ".join(f"{x:.4f}" for x in r) + f"; {elapsed:.1f}s"
        assert r[0] > r[1] > r[2]
        assert 0.76 <= r[2] <= 0.85
        assert elapsed < 60


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))

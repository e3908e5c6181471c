"""Quick invariant checks run by ``sots selftest``."""

from __future__ import annotations

import math
import random
from typing import Callable

from . import core_arith
from .aurifeuillian import aurifeuillian_pair, is_admissible
from .classifier import chart, poly_family
from .core_arith import exact_valuation, factorize, is_probable_prime, jacobi, primes_up_to
from .cyclotomic import cyclotomic_poly, eval_cyclotomic, predict_valuation
from .reference import expected
from .two_squares import brute_force_table, classify, density_ratio


def _factorize_small() -> bool:
    primes = set(primes_up_to(10**4))
    for n in range(1, 10**4 + 1):
        fac = factorize(n)
        if not fac.complete or any(p not in primes for p in fac.primes()):
            return False
        if math.prod(p**e for p, e in fac.factors) != n:
            return False
    return True


def _jacobi_euler() -> bool:
    for p in primes_up_to(300)[1:]:
        for a in range(p):
            e = pow(a, (p - 1) // 2, p)
            if jacobi(a, p) != (e if e <= 1 else -1):
                return False
    return True


def _classify_oracle() -> bool:
    table = brute_force_table(2 * 10**4)
    for N in range(1, 2 * 10**4 + 1):
        v = classify(N)
        x, y = table[N]
        if (v.status == "yes") != (x >= 0):
            return False
        if v.status == "yes" and v.witness != (int(x), int(y)):
            return False
    return True


def _cyclotomic_product() -> bool:
    for n in range(1, 41):
        divs = core_arith.divisors(n)
        for a in range(2, 8):
            prod = 1
            for d in divs:
                prod *= eval_cyclotomic(d, a)
            if prod != a**n - 1:
                return False
        if n >= 2 and cyclotomic_poly(n)[1] != -core_arith.mobius(n):
            return False
    return True


def _aurifeuillian() -> bool:
    for k in range(-15, 16):
        for n in range(2, 61, 4):
            if is_admissible(k, n) and not aurifeuillian_pair(k, n).verify():
                return False
    return True


def _valuation_lifting() -> bool:
    rng = random.Random(7)
    done = 0
    while done < 100:
        p = rng.choice(primes_up_to(60)[1:])
        a = rng.randrange(2, 60)
        m = rng.randrange(1, 16, 2)
        if (a**m + 1) % p:
            continue
        n = m * rng.choice([1, 3, 5, 7]) * p ** rng.randrange(0, 3)
        if n % 2 == 0:
            continue
        if predict_valuation(p, a, m, n) != exact_valuation(p, a**n + 1):
            return False
        done += 1
    return True


def _poly_family() -> bool:
    return all(poly_family(p).verify() for p in (5, 13, 17, 29))


def _chart() -> bool:
    for row in chart(50, 11):
        for n in range(1, 12, 2):
            want = expected(row.a, n)
            if want is not None and want != (n in row.yes):
                return False
        if row.unknown:
            return False
    return True


def _density() -> bool:
    r = [density_ratio(10**k) for k in (3, 4, 5)]
    return r[0] > r[1] > r[2] and 0.76 <= r[2] <= 0.9


def _primality() -> bool:
    sieve = set(primes_up_to(10**4))
    return all(is_probable_prime(n) == (n in sieve) for n in range(10**4))


CHECKS: list[tuple[str, Callable[[], bool]]] = [
    ("factorize reconstructs n <= 10^4", _factorize_small),
    ("primality agrees with sieve below 10^4", _primality),
    ("jacobi matches Euler's criterion", _jacobi_euler),
    ("classify agrees with brute force to 2*10^4", _classify_oracle),
    ("cyclotomic product and linear coefficient", _cyclotomic_product),
    ("Aurifeuillian identities |k| <= 15, n <= 60", _aurifeuillian),
    ("valuation lifting, 100 random cases", _valuation_lifting),
    ("polynomial family identities", _poly_family),
    ("chart a <= 50, n <= 11 against reference", _chart),
    ("density ratio decreasing", _density),
]


def run(report: Callable[[str], None] = print) -> tuple[int, int]:
    passed = failed = 0
    for name, check in CHECKS:
        try:
            ok = check()
        except Exception as exc:  # a crash is a failure, not an abort
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        report(f"{'PASS' if ok else 'FAIL'}  {name}")
        if ok:
            passed += 1
        else:
            failed += 1
    return passed, failed

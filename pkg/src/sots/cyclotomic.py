"""Cyclotomic polynomials and the cyclotomic factorization of a**n + 1."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import core_arith
from .core_arith import divisors, exact_valuation, is_probable_prime, mobius, multiplicative_order
from .polynomial import Polynomial

NOT_DIVISOR = "not_divisor"
PRIMITIVE = "primitive_divisor"
INTRINSIC = "intrinsic_divisor"

# below this degree evaluate by Horner, above it by the quotient form
HORNER_DEGREE_LIMIT = 512


def totient(n: int) -> int:
    fac = core_arith.factorize(n)
    result = n
    for p, _ in fac.factors:
        result = result // p * (p - 1)
    return result


def _x_pow_minus_1(d: int) -> Polynomial:
    return Polynomial([-1] + [0] * (d - 1) + [1])


@lru_cache(maxsize=1024)
def cyclotomic_poly(n: int) -> Polynomial:
    """Phi_n as the Moebius product of (x^d - 1) over d | n."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    num, dens = Polynomial([1]), []
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 1:
            num = num * _x_pow_minus_1(d)
        elif mu == -1:
            dens.append(d)
    for d in dens:
        num = num.exact_div(_x_pow_minus_1(d))
    return num


def _eval_small_base(n: int, a: int) -> int:
    if a == 0:
        return -1 if n == 1 else 1
    if a == 1:
        if n == 1:
            return 0
        pp = _prime_power_base(n)
        return pp if pp else 1
    # a == -1
    if n == 1:
        return -2
    if n == 2:
        return 0
    if n % 2:
        return 1
    # both Phi_{2m}(x) = Phi_m(-x) (m odd) and Phi_{2m}(x) = Phi_m(x^2) (m even) give Phi_m(1)
    return _eval_small_base(n // 2, 1)


def _prime_power_base(n: int) -> int | None:
    fac = core_arith.factorize(n)
    if len(fac.factors) == 1 and fac.complete:
        return fac.factors[0][0]
    return None


def eval_cyclotomic_horner(n: int, a: int) -> int:
    return cyclotomic_poly(n)(a)


def eval_cyclotomic_quotient(n: int, a: int) -> int:
    """Phi_n(a) as prod (a^d - 1)^mu(n/d), with every division checked exact."""
    if a in (-1, 0, 1):
        return _eval_small_base(n, a)
    num, den = 1, 1
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 1:
            num *= a**d - 1
        elif mu == -1:
            den *= a**d - 1
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"inexact quotient evaluating Phi_{n}({a})")
    return q


def eval_cyclotomic(n: int, a: int) -> int:
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    if a in (-1, 0, 1):
        return _eval_small_base(n, a)
    if totient(n) < HORNER_DEGREE_LIMIT:
        return eval_cyclotomic_horner(n, a)
    return eval_cyclotomic_quotient(n, a)


@dataclass(frozen=True)
class CyclotomicFactorList:
    a: int
    n: int
    entries: tuple[tuple[int, int], ...]  # (delta, Phi_{2 delta}(a))

    @property
    def value(self) -> int:
        return self.a**self.n + 1

    def values(self) -> list[int]:
        return [v for _, v in self.entries]


def factor_a_n_plus_1(a: int, n: int) -> CyclotomicFactorList:
    """Split a^n + 1 (n odd) into the factors Phi_{2 delta}(a), delta | n."""
    if n < 1 or n % 2 == 0:
        raise ValueError("exponent must be odd and positive")
    if a < 2:
        raise ValueError("base must be >= 2")
    entries = tuple((d, eval_cyclotomic(2 * d, a)) for d in divisors(n))
    if math.prod(v for _, v in entries) != a**n + 1:
        raise ArithmeticError("cyclotomic factors do not multiply to a^n + 1")
    return CyclotomicFactorList(a, n, entries)


def prime_in_cyclotomic(p: int, n: int, a: int) -> str:
    """Classify the prime p as a divisor of Phi_n(a) without evaluating it.

    ``primitive_divisor`` when ord_p(a) = n, ``intrinsic_divisor`` when
    p | n and n = ord_p(a) * p^k, otherwise ``not_divisor``.
    """
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    if a % p == 0:
        return NOT_DIVISOR
    order = multiplicative_order(a, p)
    if n % p:
        return PRIMITIVE if n == order else NOT_DIVISOR
    if n % order:
        return NOT_DIVISOR
    rest = n // order
    while rest % p == 0:
        rest //= p
    return INTRINSIC if rest == 1 else NOT_DIVISOR


def predict_valuation(p: int, a: int, m: int, n: int) -> int:
    """Valuation of p in a^n + 1 lifted from a^m + 1.

    If p^e exactly divides a^m + 1 and n = m * c * p^k with p not dividing c,
    then p^(e + k) exactly divides a^n + 1.
    """
    if m < 1 or n % m:
        raise ValueError("m must divide n")
    if n % 2 == 0:
        raise ValueError("n must be odd")
    base = a**m + 1
    if base % p:
        raise ValueError(f"{p} does not divide a^m + 1")
    return exact_valuation(p, base) + exact_valuation(p, n // m)

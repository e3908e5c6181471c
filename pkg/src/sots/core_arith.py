"""Integer number theory primitives used throughout the package.

Everything here works on plain Python ints, so values of any size are
supported.  Factoring is bounded by an :class:`EffortBudget`: trial division
up to a bound, then Brent's variant of Pollard rho on whatever composite
pieces remain.  Exhausting the budget is not an error; the leftover part is
reported as an unfactored cofactor.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional

ONE = "one"
PROBABLE_PRIME = "probable_prime"
COMPOSITE = "composite_unfactored"

# Strong-pseudoprime bases 2..41 are deterministic below this bound
# (Sorenson & Webster 2015).
_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_RANDOM_ROUNDS = 20


class BudgetExhausted(Exception):
    """Raised when an operation needs a complete factorization it could not get."""

    def __init__(self, message: str, cofactor: int | None = None):
        super().__init__(message)
        self.cofactor = cofactor


@dataclass(frozen=True)
class EffortBudget:
    trial_division_bound: int = 10**5
    rho_iteration_cap: int = 10**8
    total_time_cap_ms: int = 0  # 0 disables the wall-clock cap
    seed: int = 0

    def __post_init__(self):
        if self.trial_division_bound < 2:
            raise ValueError("trial_division_bound must be >= 2")
        if self.rho_iteration_cap < 0 or self.total_time_cap_ms < 0:
            raise ValueError("budget fields must be non-negative")

    def deadline(self) -> float | None:
        if not self.total_time_cap_ms:
            return None
        return time.monotonic() + self.total_time_cap_ms / 1000.0


DEFAULT_BUDGET = EffortBudget()


@dataclass
class Factorization:
    value: int
    factors: list[tuple[int, int]] = field(default_factory=list)
    cofactor: int = 1
    cofactor_status: str = ONE

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def check(self) -> None:
        """Assert the structural invariants; used by tests and the cache loader."""
        prod = self.cofactor
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1 or not is_probable_prime(p):
                raise ValueError(f"bad factor entry {p}^{e}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError("factors do not multiply back to the value")
        if (self.cofactor == 1) != (self.cofactor_status == ONE):
            raise ValueError("cofactor status inconsistent with cofactor")
        if self.cofactor_status == PROBABLE_PRIME and not is_probable_prime(self.cofactor):
            raise ValueError("cofactor marked prime but is composite")

    def to_dict(self) -> dict:
        return {
            "value": str(self.value),
            "factors": [[str(p), e] for p, e in self.factors],
            "cofactor": str(self.cofactor),
            "cofactor_status": self.cofactor_status,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Factorization":
        return cls(
            value=int(d["value"]),
            factors=[(int(p), int(e)) for p, e in d["factors"]],
            cofactor=int(d["cofactor"]),
            cofactor_status=d["cofactor_status"],
        )

    def __str__(self):
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if self.cofactor != 1:
            parts.append(f"[{self.cofactor_status}: {self.cofactor}]")
        return " * ".join(parts) if parts else "1"


# --------------------------------------------------------------------------
# Modular arithmetic and symbols
# --------------------------------------------------------------------------

def mod_pow(base: int, exp: int, modulus: int) -> int:
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    return pow(base, exp, modulus)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1, by binary reciprocity."""
    if n < 1 or n % 2 == 0:
        raise ValueError("jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def exact_valuation(p: int, n: int) -> int:
    """Largest r with p**r dividing n (n != 0)."""
    if p < 2:
        raise ValueError("valuation base must be >= 2")
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    n = abs(n)
    r = 0
    # square the divisor while it keeps dividing; keeps huge valuations cheap
    while n % p == 0:
        pk, k = p, 1
        while n % (pk * pk) == 0:
            pk *= pk
            k *= 2
        n //= pk
        r += k
    return r


def perfect_square_root(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, by Newton iteration."""
    if n < 2:
        return n
    if k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def perfect_power(n: int) -> Optional[tuple[int, int]]:
    """Return (base, k) with base**k == n, k >= 2 maximal, or None."""
    if n < 4:
        return None
    for k in primes_up_to(max(2, n.bit_length())):
        if k > n.bit_length():
            break
        r = integer_root(n, k)
        if r > 1 and r**k == n:
            inner = perfect_power(r)
            if inner:
                return inner[0], inner[1] * k
            return r, k
    return None


# --------------------------------------------------------------------------
# Primes
# --------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _sieve(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    bs = bytearray([1]) * (limit + 1)
    bs[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if bs[p]:
            bs[p * p::p] = bytes(len(range(p * p, limit + 1, p)))
    return tuple(i for i, v in enumerate(bs) if v)


def primes_up_to(limit: int) -> tuple[int, ...]:
    return _sieve(limit)


def iter_primes(start: int = 2) -> Iterator[int]:
    n = max(2, start)
    while True:
        if is_probable_prime(n):
            yield n
        n += 1


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int, seed: int = 0) -> bool:
    if n < 2:
        return False
    for p in _DETERMINISTIC_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _DETERMINISTIC_BOUND:
        return all(_strong_probable_prime(n, a, d, s) for a in _DETERMINISTIC_BASES)
    if not all(_strong_probable_prime(n, a, d, s) for a in _DETERMINISTIC_BASES):
        return False
    rng = random.Random(seed ^ (n & 0xFFFFFFFF))
    return all(_strong_probable_prime(n, rng.randrange(2, n - 1), d, s) for _ in range(_RANDOM_ROUNDS))


# --------------------------------------------------------------------------
# Factorization
# --------------------------------------------------------------------------

def _brent_rho(n: int, c: int, x0: int, cap: int, deadline: float | None) -> tuple[int, int]:
    """One Brent-rho attempt; returns (divisor or 0, iterations used)."""
    y, r, q, g = x0, 1, 1, 1
    m = 128
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        used += r
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        used += min(r, k)
        r *= 2
        if used >= cap or (deadline is not None and time.monotonic() > deadline):
            if g == 1:
                return 0, used
    if g == n:
        # batch overshot; replay one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return (g if g != n else 0), used


def rho_split(n: int, cap: int, seed: int = 0, deadline: float | None = None) -> int:
    """Find a nontrivial divisor of the odd composite n, or 0 if the cap runs out."""
    pp = perfect_power(n)
    if pp:
        return pp[0]
    rng = random.Random(seed)
    spent = 0
    while spent < cap:
        c = rng.randrange(1, n - 1)
        x0 = rng.randrange(0, n)
        d, used = _brent_rho(n, c, x0, cap - spent, deadline)
        spent += used
        if d:
            return d
        if deadline is not None and time.monotonic() > deadline:
            break
    return 0


def factorize(
    n: int,
    budget: EffortBudget = DEFAULT_BUDGET,
    on_prime: Callable[[int, int], bool] | None = None,
) -> Factorization:
    """Bounded-effort prime factorization.

    ``on_prime(p, e)`` is called for every prime found, with its full
    exponent in ``n``; returning True stops the search early and leaves the
    rest as the cofactor.
    """
    if n < 1:
        raise ValueError("can only factor positive integers")
    found: dict[int, int] = {}
    queue: list[int] = []
    stuck: list[int] = []

    def record(p: int) -> bool:
        e = exact_valuation(p, n)
        found[p] = e
        for pieces in (queue, stuck):
            for i, c in enumerate(pieces):
                while c % p == 0:
                    c //= p
                pieces[i] = c
            pieces[:] = [c for c in pieces if c > 1]
        return bool(on_prime and on_prime(p, e))

    stopped = False
    m = n
    bound = budget.trial_division_bound
    for p in primes_up_to(bound):
        if p * p > m:
            break
        if m % p == 0:
            while m % p == 0:
                m //= p
            if record(p):
                stopped = True
                break
    if m > 1:
        queue.append(m)
    if not stopped and 1 < m < (bound + 1) ** 2:
        # no prime factor up to the bound, so m has no room for two of them
        queue.clear()
        stopped = record(m)

    deadline = budget.deadline()
    attempt = 0
    while queue and not stopped:
        c = queue.pop()
        if is_probable_prime(c, budget.seed):
            stopped = record(c)
            continue
        attempt += 1
        d = rho_split(c, budget.rho_iteration_cap, seed=(budget.seed << 20) + attempt, deadline=deadline)
        if d:
            queue.extend(x for x in (d, c // d) if x > 1)
        else:
            stuck.append(c)

    leftovers = _coprime_base(queue + stuck)
    cof = math.prod(leftovers)
    if cof == 1:
        status = ONE
    elif len(leftovers) == 1 and is_probable_prime(cof, budget.seed):
        status = PROBABLE_PRIME
    else:
        status = COMPOSITE
    return Factorization(n, sorted(found.items()), cof, status)


def _coprime_base(nums: list[int]) -> list[int]:
    nums = list(nums)
    changed = True
    while changed:
        changed = False
        for i in range(len(nums)):
            for j in range(i + 1, len(nums)):
                g = math.gcd(nums[i], nums[j])
                if g > 1:
                    a, b = nums[i], nums[j]
                    nums = [x for k, x in enumerate(nums) if k not in (i, j)]
                    nums += [x for x in (g, a // g, b // g) if x > 1]
                    changed = True
                    break
            if changed:
                break
    return nums


def divisors(n: int) -> list[int]:
    fac = factorize(n)
    if not fac.complete:
        raise BudgetExhausted(f"could not factor {n} to list its divisors", fac.cofactor)
    divs = [1]
    for p, e in fac.factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    fac = factorize(n)
    if not fac.complete:
        raise BudgetExhausted(f"could not factor {n}", fac.cofactor)
    if any(e > 1 for _, e in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def is_squarefree(n: int) -> bool:
    return mobius(abs(n)) != 0


def carmichael(m: int) -> int:
    """Carmichael function lambda(m)."""
    if m < 1:
        raise ValueError("carmichael needs m >= 1")
    fac = factorize(m)
    if not fac.complete:
        raise BudgetExhausted(f"could not factor {m}", fac.cofactor)
    lam = 1
    for p, e in fac.factors:
        if p == 2:
            part = 1 if e == 1 else 2 if e == 2 else 2 ** (e - 2)
        else:
            part = (p - 1) * p ** (e - 1)
        lam = lam * part // math.gcd(lam, part)
    return lam


def multiplicative_order(a: int, m: int) -> int:
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit modulo {m}")
    a %= m
    order = m - 1 if is_probable_prime(m) else carmichael(m)
    fac = factorize(order)
    if not fac.complete:
        raise BudgetExhausted(f"could not factor group exponent {order}", fac.cofactor)
    for q, _ in fac.factors:
        while order % q == 0 and pow(a, order // q, m) == 1:
            order //= q
    return order

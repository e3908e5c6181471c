"""Sums of two squares: classification, explicit representation, oracles."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import core_arith
from .core_arith import DEFAULT_BUDGET, EffortBudget, Factorization, jacobi, perfect_square_root

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

BRUTE_FORCE_LIMIT = 10**14
DENSITY_LIMIT = 10**8
# Gaussian representations enumerated before settling for the ones found so far
REPRESENTATION_CAP = 4096


@dataclass(frozen=True)
class TwoSquaresVerdict:
    """Outcome of asking whether N is a sum of two squares.

    ``obstruction`` is used for a "no" whose bad prime is hidden inside a
    divisor d = 3 (mod 4) coprime to everything else that was found: such a
    divisor must contain a 3 (mod 4) prime to an odd power.
    """

    status: str
    witness: Optional[tuple[int, int]] = None
    bad_prime: Optional[tuple[int, int]] = None
    blocking_cofactor: Optional[int] = None
    obstruction: Optional[int] = None

    @property
    def is_yes(self) -> bool:
        return self.status == YES

    def check(self, N: int, strict: bool = True) -> None:
        """Raise AssertionError if the certificate does not match N.

        With ``strict=False`` a "no" may carry no numeric certificate at all
        (screening rules that prove non-representability by argument only).
        """
        if self.status == YES:
            assert self.witness is not None
            x, y = self.witness
            assert x >= y >= 0 and x * x + y * y == N
        elif self.status == NO:
            if self.bad_prime is not None:
                p, r = self.bad_prime
                assert p % 4 == 3 and r % 2 == 1
                assert core_arith.exact_valuation(p, N) == r
            elif self.obstruction is not None:
                d = self.obstruction
                assert d % 4 == 3 and N % d == 0
                assert math.gcd(d, N // d) == 1
            else:
                assert not strict, "no certificate for a 'no' verdict"
        elif self.status == UNKNOWN:
            c = self.blocking_cofactor
            assert c is not None and c > 1 and N % c == 0
        else:
            raise AssertionError(f"bad status {self.status!r}")

    def to_dict(self) -> dict:
        d: dict = {"status": self.status}
        if self.witness is not None:
            d["witness"] = [str(self.witness[0]), str(self.witness[1])]
        if self.bad_prime is not None:
            d["bad_prime"] = [str(self.bad_prime[0]), self.bad_prime[1]]
        if self.blocking_cofactor is not None:
            d["blocking_cofactor"] = str(self.blocking_cofactor)
        if self.obstruction is not None:
            d["obstruction"] = str(self.obstruction)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "TwoSquaresVerdict":
        w = d.get("witness")
        bp = d.get("bad_prime")
        bc = d.get("blocking_cofactor")
        ob = d.get("obstruction")
        return cls(
            status=d["status"],
            witness=(int(w[0]), int(w[1])) if w is not None else None,
            bad_prime=(int(bp[0]), int(bp[1])) if bp is not None else None,
            blocking_cofactor=int(bc) if bc is not None else None,
            obstruction=int(ob) if ob is not None else None,
        )


def yes(witness: tuple[int, int]) -> TwoSquaresVerdict:
    x, y = witness
    x, y = abs(x), abs(y)
    return TwoSquaresVerdict(YES, witness=(max(x, y), min(x, y)))


def no(bad_prime: tuple[int, int] | None = None, obstruction: int | None = None) -> TwoSquaresVerdict:
    return TwoSquaresVerdict(NO, bad_prime=bad_prime, obstruction=obstruction)


def unknown(cofactor: int) -> TwoSquaresVerdict:
    return TwoSquaresVerdict(UNKNOWN, blocking_cofactor=cofactor)


# --------------------------------------------------------------------------
# Gaussian integers, kept private: pairs (x, y) meaning x + y i
# --------------------------------------------------------------------------

def _gmul(z: tuple[int, int], w: tuple[int, int]) -> tuple[int, int]:
    # Diophantus: (a^2 + b^2)(c^2 + d^2) = (ac - bd)^2 + (ad + bc)^2
    a, b = z
    c, d = w
    return a * c - b * d, a * d + b * c


def _gpow(z: tuple[int, int], e: int) -> tuple[int, int]:
    out = (1, 0)
    while e:
        if e & 1:
            out = _gmul(out, z)
        e >>= 1
        if e:
            z = _gmul(z, z)
    return out


def _first_quadrant(z: tuple[int, int]) -> tuple[int, int]:
    """Associate of z with x > 0, y >= 0 (multiplying by a unit)."""
    x, y = z
    for _ in range(4):
        if x > 0 and y >= 0:
            return x, y
        x, y = -y, x
    return x, y  # only reached for z = 0


def compose(p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int]:
    """Diophantus composition (ac + bd, ad - bc) of two representations."""
    a, b = p
    c, d = q
    return a * c + b * d, a * d - b * c


def sqrt_minus_one(p: int) -> int:
    """A square root of -1 modulo a prime p = 1 (mod 4)."""
    if p % 4 != 1:
        raise ValueError(f"-1 is not a square modulo {p}")
    for c in core_arith.iter_primes():
        if jacobi(c, p) == -1:
            return pow(c, (p - 1) // 4, p)
    raise AssertionError("unreachable")


def prime_as_two_squares(p: int) -> tuple[int, int]:
    """(x, y) with x^2 + y^2 = p, x > y > 0, for p = 1 (mod 4) prime."""
    t = sqrt_minus_one(p)
    a, b = p, t
    while b * b > p:
        a, b = b, a % b
    y = perfect_square_root(p - b * b)
    if y is None:
        raise ValueError(f"{p} is not a prime = 1 (mod 4)")
    return max(b, y), min(b, y)


def represent(N: int, factorization: Factorization) -> tuple[int, int]:
    """Canonical (x, y), x >= y >= 0, x maximal, with x^2 + y^2 = N."""
    if factorization.value != N:
        raise ValueError("factorization is for a different number")
    if not factorization.complete:
        raise ValueError("represent needs a complete factorization")
    if N == 0:
        return 0, 0
    scalar = 1
    gauss_choices: list[list[tuple[int, int]]] = []
    for p, e in factorization.factors:
        if p == 2:
            gauss_choices.append([_gpow((1, 1), e)])
        elif p % 4 == 3:
            if e % 2:
                raise ValueError(f"{p}^{e} blocks a representation of {N}")
            scalar *= p ** (e // 2)
        else:
            pi = prime_as_two_squares(p)
            conj = (pi[0], -pi[1])
            gauss_choices.append([_gmul(_gpow(pi, i), _gpow(conj, e - i)) for i in range(e + 1)])

    reps = {(1, 0)}
    for choices in gauss_choices:
        nxt = set()
        for z, w in itertools.product(sorted(reps), choices):
            nxt.add(_first_quadrant(_gmul(z, w)))
            if len(nxt) >= REPRESENTATION_CAP:
                break
        reps = nxt
    best = None
    for x, y in reps:
        for cand in ((x, y), (y, x)):
            a, b = max(cand), min(cand)
            if best is None or a > best[0]:
                best = (a, b)
    x, y = best[0] * scalar, best[1] * scalar
    assert x * x + y * y == N
    return x, y


# --------------------------------------------------------------------------
# Classification
# --------------------------------------------------------------------------

def _first_bad(fac: Factorization) -> tuple[int, int] | None:
    for p, e in fac.factors:
        if p % 4 == 3 and e % 2:
            return p, e
    return None


def classify_with_factorization(
    N: int, budget: EffortBudget = DEFAULT_BUDGET
) -> tuple[TwoSquaresVerdict, Factorization]:
    """classify plus the (possibly partial) factorization behind the verdict."""
    if N < 1:
        raise ValueError("classify needs N >= 1")

    def stop(p: int, e: int) -> bool:
        return p % 4 == 3 and e % 2 == 1

    # trial division alone is often enough for a certificate either way
    cheap = replace(budget, rho_iteration_cap=0)
    fac = core_arith.factorize(N, cheap, on_prime=stop)
    bad = _first_bad(fac)
    if bad:
        return no(bad), fac
    if not fac.complete:
        if fac.cofactor % 4 == 3:
            return no(obstruction=fac.cofactor), fac
        fac = core_arith.factorize(N, budget, on_prime=stop)
        bad = _first_bad(fac)
        if bad:
            return no(bad), fac
    if not fac.complete:
        c = fac.cofactor
        if c % 4 == 3:
            return no(obstruction=c), fac
        if fac.cofactor_status == core_arith.PROBABLE_PRIME:
            # a lone prime = 1 (mod 4) is harmless
            fac = Factorization(N, sorted(fac.factors + [(c, 1)]), 1, core_arith.ONE)
        else:
            return unknown(c), fac
    return yes(represent(N, fac)), fac


def classify(N: int, budget: EffortBudget = DEFAULT_BUDGET) -> TwoSquaresVerdict:
    """Decide whether N is a sum of two squares, with a certificate."""
    return classify_with_factorization(N, budget)[0]


def brute_force(N: int) -> tuple[int, int] | None:
    """Exhaustive search; the first hit with y ascending has x maximal."""
    if N < 0:
        raise ValueError("N must be non-negative")
    if N > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is limited to N <= {BRUTE_FORCE_LIMIT}")
    for y in range(math.isqrt(N // 2) + 1):
        x = perfect_square_root(N - y * y)
        if x is not None:
            return x, y
    return None


def brute_force_table(limit: int) -> np.ndarray:
    """Canonical pairs for every N <= limit, as an array of shape (limit+1, 2).

    Rows for non-representable N hold (-1, -1).  Same search order as
    :func:`brute_force`, vectorised over N.
    """
    if limit > 10**8:
        raise ValueError("table limit too large")
    out = np.full((limit + 1, 2), -1, dtype=np.int64)
    for y in range(math.isqrt(limit // 2) + 1):
        xs = np.arange(y, math.isqrt(limit - y * y) + 1, dtype=np.int64)
        ns = xs * xs + y * y
        fresh = out[ns, 0] < 0
        out[ns[fresh], 0] = xs[fresh]
        out[ns[fresh], 1] = y
    return out


def sots_count(x: int) -> int:
    """Number of n in [1, x] that are sums of two squares."""
    if x < 1:
        return 0
    if x > DENSITY_LIMIT:
        raise ValueError(f"sieve is limited to x <= {DENSITY_LIMIT}")
    marks = np.zeros(x + 1, dtype=bool)
    for i in range(math.isqrt(x) + 1):
        js = np.arange(i, math.isqrt(x - i * i) + 1, dtype=np.int64)
        marks[js * js + i * i] = True
    return int(marks[1:].sum())


def density_ratio(x: int) -> float:
    """S(x) * sqrt(ln x) / x, which tends to the Landau-Ramanujan constant."""
    if x < 2:
        raise ValueError("density needs x >= 2")
    return sots_count(x) * math.sqrt(math.log(x)) / x

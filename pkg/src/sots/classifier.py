"""Deciding whether a^n + 1 (n odd) is a sum of two squares.

``decide`` tries, in order: the perfect-square base, a set of screening
rules that need no factorization of a^n + 1, the prime-times-square transfer
(which builds certificates from Aurifeuillian identities), and finally
factorization of the cyclotomic pieces Phi_{2 delta}(a), delta | n.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import core_arith
from .aurifeuillian import aurifeuillian_pair, aurifeuillian_split, sots_of_phi
from .core_arith import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    EffortBudget,
    Factorization,
    divisors,
    exact_valuation,
    is_probable_prime,
    is_squarefree,
    jacobi,
    perfect_square_root,
)
from .cyclotomic import factor_a_n_plus_1
from .polynomial import Polynomial
from .two_squares import (
    NO,
    UNKNOWN,
    YES,
    TwoSquaresVerdict,
    classify,
    compose,
    no,
    prime_as_two_squares,
    represent,
    unknown,
    yes,
)

RULE_PERFECT = "perfect-square"
RULE_EVEN_EXPONENT = "even-exponent"
RULE_5MOD8 = "base-5-mod-8"
RULE_MOD4 = "exponent-vs-m-mod-4"
RULE_EVEN_BASE = "even-base-bad-prime"
RULE_4X = "aurifeuillian-4x"
RULE_M = "m-invariant"
RULE_DIVISOR = "divisor-propagation"
RULE_PRIME_SQUARE = "prime-times-square"
RULE_FACTOR = "factorization"

# chart "property" column
TAG_PERFECT = "perfect-square"
TAG_EVEN = "even-base"
TAG_5MOD8 = "base-5-mod-8"
TAG_3MOD4 = "base-3-mod-4"
TAG_1MOD8 = "base-1-mod-8"
TAG_PRIME_SQUARE = "prime-times-square"

# skip building a^n + 1 just to attach an optional certificate beyond this
_CERT_BITS = 1 << 22
_SMALL_PRIME_BOUND = 2000


def _s(obj):
    """Render ints as decimal strings so certificates serialise losslessly."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_s(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _s(v) for k, v in obj.items()}
    return obj


@dataclass(frozen=True)
class ClassificationRecord:
    a: int
    n: int
    verdict: TwoSquaresVerdict
    rule: str
    certificate: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return self.verdict.status

    def value(self) -> int:
        return self.a**self.n + 1

    def check(self) -> None:
        self.verdict.check(self.value(), strict=False)

    def to_dict(self) -> dict:
        return {
            "a": str(self.a),
            "n": str(self.n),
            "verdict": self.verdict.to_dict(),
            "rule": self.rule,
            "certificate": self.certificate,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClassificationRecord":
        return cls(
            a=int(d["a"]),
            n=int(d["n"]),
            verdict=TwoSquaresVerdict.from_dict(d["verdict"]),
            rule=d["rule"],
            certificate=d.get("certificate", {}),
        )


class VerdictCache:
    """Decided (a, n) records and complete factorizations, shared across calls.

    Reads are lock-free dict lookups; writes are serialised.  Unknown
    verdicts are never stored since a larger budget may settle them.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.records: dict[tuple[int, int], ClassificationRecord] = {}
        self.factorizations: dict[int, Factorization] = {}

    def get(self, a: int, n: int) -> Optional[ClassificationRecord]:
        return self.records.get((a, n))

    def put(self, rec: ClassificationRecord) -> bool:
        if rec.status == UNKNOWN:
            return False
        with self._lock:
            if (rec.a, rec.n) in self.records:
                return False
            self.records[(rec.a, rec.n)] = rec
        return True

    def get_factorization(self, value: int) -> Optional[Factorization]:
        return self.factorizations.get(value)

    def put_factorization(self, fac: Factorization) -> bool:
        if not fac.complete:
            return False
        with self._lock:
            if fac.value in self.factorizations:
                return False
            self.factorizations[fac.value] = fac
        return True

    def for_base(self, a: int) -> list[ClassificationRecord]:
        return [r for (b, _), r in sorted(self.records.items()) if b == a]


# --------------------------------------------------------------------------
# Small invariants of the base
# --------------------------------------------------------------------------

def _odd_part(x: int) -> int:
    while x % 2 == 0:
        x //= 2
    return x


def _bad_primes(x: int, budget: EffortBudget) -> Optional[list[tuple[int, int]]]:
    """(p, r) for every p = 3 (mod 4) with odd exponent r in x; None if x won't factor."""
    fac = core_arith.factorize(x, budget)
    if not fac.complete:
        return None
    return [(p, e) for p, e in fac.factors if p % 4 == 3 and e % 2]


@dataclass(frozen=True)
class MInvariant:
    """Least m with (a + 1) / m a sum of two squares, for a = 3 (mod 4)."""

    a: int
    m: int
    primes: tuple[int, ...]


def compute_m(a: int, budget: EffortBudget = DEFAULT_BUDGET) -> MInvariant:
    if a % 4 != 3:
        raise ValueError("the m-invariant is defined for a = 3 (mod 4)")
    bad = _bad_primes(a + 1, budget)
    if bad is None:
        raise BudgetExhausted(f"could not factor {a + 1}")
    primes = tuple(p for p, _ in bad)
    return MInvariant(a, math.prod(primes), primes)


def prime_times_square(a: int, budget: EffortBudget = DEFAULT_BUDGET) -> Optional[tuple[int, int]]:
    """(p, v) with a = p v^2, p = 1 (mod 4) prime not dividing v, else None."""
    if a < 5:
        return None
    fac = core_arith.factorize(a, budget)
    if not fac.complete:
        return None
    odd = [(p, e) for p, e in fac.factors if e % 2]
    if len(odd) != 1 or odd[0][1] != 1 or odd[0][0] % 4 != 1:
        return None
    p = odd[0][0]
    v = perfect_square_root(a // p)
    return (p, v) if v is not None else None


def chi(a: int, n: int) -> int:
    """chi_a(n): the Jacobi symbol (a/n) for odd n, 0 for even n."""
    if n % 2 == 0:
        return 0
    if n < 0:
        raise ValueError("chi is defined for natural n")
    return jacobi(a, n)


def chi_decomposition(a: int) -> tuple[int, list[int]]:
    """(delta, [p*, ...]) with chi_a(n) = chi_delta(n) * prod chi_{p*}(n) when gcd(a, n) = 1.

    p* = p for p = 1 (mod 4) and -p for p = 3 (mod 4), over the odd primes
    dividing a to an odd power; delta is in {1, -1, 2, -2}.
    """
    if a < 1:
        raise ValueError("a must be positive")
    fac = core_arith.factorize(a)
    if not fac.complete:
        raise BudgetExhausted(f"could not factor {a}")
    b = 0
    stars = []
    for p, e in fac.factors:
        if p == 2:
            b = e
        elif e % 2:
            stars.append(p if p % 4 == 1 else -p)
    t = sum(1 for s in stars if s < 0)
    delta = (-1) ** t * 2 ** (b % 2)
    return delta, stars


def chi_factored(a: int, n: int) -> int:
    delta, stars = chi_decomposition(a)
    return chi(delta, n) * math.prod(chi(s, n) for s in stars)


# --------------------------------------------------------------------------
# Screening
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Rejection:
    rule: str
    certificate: dict
    bad_prime: Optional[tuple[int, int]] = None
    candidates: tuple[int, ...] = ()  # primes worth testing for a certificate


def screen(
    a: int, n: int, budget: EffortBudget = DEFAULT_BUDGET, cache: VerdictCache | None = None
) -> Optional[Rejection]:
    """First necessary condition violated by a^n + 1, or None if all pass.

    Only a + 1, n and cached verdicts are factored; a^n + 1 never is.
    """
    if a < 2 or n < 1 or n % 2 == 0:
        raise ValueError("screen needs a >= 2 and odd n >= 1")

    if a % 8 == 5:
        # a^n + 1 = 6 (mod 8), so its odd part is 3 (mod 4)
        return Rejection(RULE_5MOD8, {})

    if a % 4 == 3:
        # the odd part of a^n + 1 is (odd part of a + 1) * n (mod 4)
        m_mod_4 = _odd_part(a + 1) % 4
        if n % 4 != m_mod_4:
            return Rejection(RULE_MOD4, _s({"m_mod_4": m_mod_4}))

    base_bad = None
    if a % 2 == 0:
        base_bad = _bad_primes(a + 1, budget)
        if base_bad and (len(base_bad) >= 2 or n != base_bad[0][0]):
            outside = next(((p, r) for p, r in base_bad if n % p), None)
            return Rejection(RULE_EVEN_BASE, _s({"base_bad_primes": base_bad}), outside)
        if a % 4 == 0:
            x = a // 4
            if x % 4 == 3 and is_squarefree(x) and n % x == 0:
                f, g = aurifeuillian_split(x, 2, 2 * x)
                return Rejection(RULE_4X, _s({"x": x, "split": [f, g]}), candidates=tuple(sorted((f, g))))

    if a % 4 == 3:
        try:
            mi = compute_m(a, budget)
        except BudgetExhausted:
            mi = None
        if mi is not None:
            rej = _screen_m(a, n, mi, cache)
            if rej:
                return rej

    return _screen_divisors(a, n, base_bad, budget, cache)


def _screen_m(a: int, n: int, mi: MInvariant, cache: VerdictCache | None) -> Optional[Rejection]:
    m = mi.m
    if n % m:
        p = next(p for p in mi.primes if n % p)
        bp = (p, exact_valuation(p, a + 1))
        return Rejection(RULE_M, _s({"m": m, "reason": "m-does-not-divide-n"}), bp)
    q = n // m
    if classify(q).status != YES:
        return Rejection(RULE_M, _s({"m": m, "reason": "n-over-m-not-sots"}))
    for p, e in core_arith.factorize(n).factors:
        if p % 4 == 3 and e >= 2 and pow(a, n // (p * p), p) != p - 1:
            return Rejection(RULE_M, _s({"m": m, "reason": "square-exponent-prime", "p": p}))
    if cache is not None:
        if m < n:
            rec = cache.get(a, m)
            if rec is not None and rec.status == NO:
                return Rejection(RULE_M, _s({"m": m, "reason": "a^m+1-not-sots"}))
        for d in divisors(q):
            if 1 < d < q and classify(d).status == YES:
                rec = cache.get(a, m * d)
                if rec is not None and rec.status == NO:
                    return Rejection(RULE_M, _s({"m": m, "reason": "a^(m*d)+1-not-sots", "d": d}))
    return None


def _screen_divisors(
    a: int, n: int, base_bad, budget: EffortBudget, cache: VerdictCache | None
) -> Optional[Rejection]:
    # every divisor inherits non-representability when a + 1 is a sum of two squares
    # and a is even, or a = 1 (mod 8)
    inherits = (a % 2 == 0 and base_bad == []) or a % 8 == 1
    if a % 8 == 1:
        v = classify(a + 1, budget)
        if v.status == NO:
            bp = v.bad_prime if v.bad_prime and n % v.bad_prime[0] else None
            return Rejection(RULE_DIVISOR, _s({"delta": 1}), bp)
    if cache is None:
        return None
    for d in divisors(n):
        if d == n:
            break
        rec = cache.get(a, d)
        if rec is None or rec.status != NO:
            continue
        bp = rec.verdict.bad_prime
        if bp and n % bp[0]:
            # p^r || a^d + 1 and p does not divide n/d, so p^r || a^n + 1
            return Rejection(RULE_DIVISOR, _s({"delta": d}), bp)
        if inherits:
            return Rejection(RULE_DIVISOR, _s({"delta": d}))
    return None


# --------------------------------------------------------------------------
# Decision procedure
# --------------------------------------------------------------------------

def _check_args(a: int, n: int) -> None:
    if a < 1:
        raise ValueError("base must be >= 1")
    if n < 1 or n % 2 == 0:
        raise ValueError("exponent must be odd and >= 1")


def decide(
    a: int,
    n: int,
    budget: EffortBudget = DEFAULT_BUDGET,
    cache: VerdictCache | None = None,
    screens: bool = True,
) -> ClassificationRecord:
    """Decide whether a^n + 1 is a sum of two squares."""
    _check_args(a, n)
    if cache is not None:
        hit = cache.get(a, n)
        if hit is not None:
            return hit
    rec = _decide(a, n, budget, cache, screens)
    if cache is not None:
        cache.put(rec)
    return rec


def _decide(a, n, budget, cache, screens) -> ClassificationRecord:
    root = perfect_square_root(a)
    if root is not None:
        return ClassificationRecord(a, n, yes((root**n, 1)), RULE_PERFECT, _s({"root": root}))
    if screens:
        rej = screen(a, n, budget, cache)
        if rej is not None:
            return _rejection_record(a, n, rej)
    pv = prime_times_square(a, budget)
    if pv is not None and n % pv[0] == 0:
        p, v = pv
        base = decide(a, n // p, budget, cache, screens)
        return _lift_prime_square(a, n // p, p, v, base)
    return _factor_record(a, n, budget, cache)


def _certified_no(a: int, n: int, candidates: tuple[int, ...] = ()) -> TwoSquaresVerdict:
    """A "no" for a^n + 1 with the cheapest numeric certificate available.

    Called only once non-representability is already proved, so a missing
    certificate is acceptable; trial division here is not a factorization.
    """
    if n * a.bit_length() > _CERT_BITS:
        return no()
    N = a**n + 1
    for p in candidates:
        if p % 4 == 3 and is_probable_prime(p):
            r = exact_valuation(p, N)
            if r % 2:
                return no((p, r))
    for p in core_arith.primes_up_to(_SMALL_PRIME_BOUND):
        if p % 4 == 3 and N % p == 0:
            r = exact_valuation(p, N)
            if r % 2:
                return no((p, r))
    odd = _odd_part(N)
    if odd % 4 == 3:
        return no(obstruction=odd)
    return no()


def _rejection_record(a: int, n: int, rej: Rejection) -> ClassificationRecord:
    verdict = no(rej.bad_prime) if rej.bad_prime is not None else _certified_no(a, n, rej.candidates)
    return ClassificationRecord(a, n, verdict, rej.rule, rej.certificate)


def _lift_prime_square(a: int, n0: int, p: int, v: int, base: ClassificationRecord) -> ClassificationRecord:
    """Record for a^(n0 p) + 1 built from the record for a^n0 + 1."""
    n = n0 * p
    N = a**n + 1
    cert = _s({"p": p, "v": v, "base_exponent": n0, "base_rule": base.rule})
    if base.status == YES:
        w = base.verdict.witness
        # a^n + 1 = (a^n0 + 1) * prod Phi_{2 delta}(a) over delta | n with delta not dividing n0;
        # each new factor is F^2 + (p v G)^2 with x = p v^2 = a
        for d in divisors(n):
            if n0 % d:
                w = compose(w, sots_of_phi(-p, v, 2 * d))
        verdict = yes(w)
    elif base.status == NO:
        bp = base.verdict.bad_prime
        if bp is not None:
            # the new factors are sums of two squares, so they carry q to an even power
            r = exact_valuation(bp[0], N)
            assert r % 2 == 1
            verdict = no((bp[0], r))
        else:
            verdict = _certified_no(a, n)
    else:
        verdict = unknown(base.verdict.blocking_cofactor)
    rec = ClassificationRecord(a, n, verdict, RULE_PRIME_SQUARE, cert)
    if verdict.status == YES:
        rec.check()
    return rec


def _factor_piece(
    value: int, N: int, budget: EffortBudget, cache: VerdictCache | None
) -> tuple[Optional[tuple[int, int]], Factorization]:
    """Factor one cyclotomic piece, stopping at a prime that is bad for N."""
    if cache is not None:
        fac = cache.get_factorization(value)
        if fac is not None:
            for p, _ in fac.factors:
                if p % 4 == 3 and exact_valuation(p, N) % 2:
                    return (p, exact_valuation(p, N)), fac
            return None, fac

    found: list[tuple[int, int]] = []

    def stop(p: int, _e: int) -> bool:
        if p % 4 == 3:
            r = exact_valuation(p, N)
            if r % 2:
                found.append((p, r))
                return True
        return False

    fac = core_arith.factorize(value, budget, on_prime=stop)
    if found:
        return found[0], fac
    if fac.cofactor_status == core_arith.PROBABLE_PRIME:
        fac = Factorization(value, sorted(fac.factors + [(fac.cofactor, 1)]), 1, core_arith.ONE)
    if cache is not None:
        cache.put_factorization(fac)
    return None, fac


def _factor_record(a: int, n: int, budget: EffortBudget, cache: VerdictCache | None) -> ClassificationRecord:
    N = a**n + 1
    pieces = factor_a_n_plus_1(a, n)
    merged: dict[int, int] = {}
    blocking = None
    for d, value in pieces.entries:
        bad, fac = _factor_piece(value, N, budget, cache)
        if bad is not None:
            return ClassificationRecord(a, n, no(bad), RULE_FACTOR, _s({"delta": d}))
        if not fac.complete:
            c = fac.cofactor
            if c % 4 == 3 and math.gcd(c, N // c) == 1:
                return ClassificationRecord(
                    a, n, no(obstruction=c), RULE_FACTOR, _s({"delta": d})
                )
            if blocking is None:
                blocking = (d, c)
            continue
        for p, e in fac.factors:
            merged[p] = merged.get(p, 0) + e
    if blocking is not None:
        d, c = blocking
        return ClassificationRecord(a, n, unknown(c), RULE_FACTOR, _s({"delta": d}))
    full = Factorization(N, sorted(merged.items()))
    full.check()
    return ClassificationRecord(a, n, yes(represent(N, full)), RULE_FACTOR, {})


# --------------------------------------------------------------------------
# Constructions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessCertificate:
    q: int
    n: int
    bad_prime: Optional[tuple[int, int]]
    record: Optional[ClassificationRecord] = None


def witness_nonsots(
    a: int,
    budget: EffortBudget = DEFAULT_BUDGET,
    cache: VerdictCache | None = None,
    max_primes: int = 25,
) -> tuple[int, WitnessCertificate]:
    """An odd n with a^n + 1 not a sum of two squares, for non-square a.

    Uses the least prime q = 3 (mod 4), q not dividing a, with (a/q) = -1.
    Then a^((q-1)/2) = -1 (mod q); if q divides a^((q-1)/2) + 1 to an even
    power, lifting by q makes the power odd at n = q(q-1)/2.  Both candidate
    exponents are odd because q = 3 (mod 4).
    """
    if a < 2:
        raise ValueError("a must be >= 2")
    if perfect_square_root(a) is not None:
        raise ValueError(f"{a} is a perfect square; every a^n + 1 is a sum of two squares")
    tried = 0
    for q in core_arith.iter_primes(3):
        if q % 4 != 3 or a % q == 0 or jacobi(a, q) != -1:
            continue
        tried += 1
        if tried > max_primes:
            break
        n1 = (q - 1) // 2
        r = exact_valuation(q, a**n1 + 1)
        if r % 2:
            return n1, WitnessCertificate(q, n1, (q, r))
        rec = decide(a, n1, budget, cache)
        if rec.status == NO:
            return n1, WitnessCertificate(q, n1, rec.verdict.bad_prime, rec)
        n2 = q * n1
        r2 = exact_valuation(q, a**n2 + 1)
        assert r2 == r + 1
        return n2, WitnessCertificate(q, n2, (q, r2))
    raise BudgetExhausted(f"no witness among the first {max_primes} candidate primes")


@dataclass(frozen=True)
class TransferReport:
    a: int
    p: int
    v: int
    n: int
    base: ClassificationRecord
    lifted: ClassificationRecord

    @property
    def agree(self) -> bool:
        return self.base.status == self.lifted.status


def px2_transfer(
    a: int, n: int, budget: EffortBudget = DEFAULT_BUDGET, cache: VerdictCache | None = None
) -> TransferReport:
    """Status of a^n + 1 and a^(np) + 1 for a = p v^2, with certificates for both."""
    _check_args(a, n)
    pv = prime_times_square(a, budget)
    if pv is None:
        raise ValueError(f"{a} is not a prime = 1 (mod 4) times a square prime to it")
    p, v = pv
    base = decide(a, n, budget, cache)
    lifted = _lift_prime_square(a, n, p, v, base)
    lifted.check()
    assert base.status == lifted.status
    if cache is not None:
        cache.put(lifted)
    return TransferReport(a, p, v, n, base, lifted)


@dataclass(frozen=True)
class PolyFamily:
    p: int
    u: int
    v: int
    f: Polynomial
    g: Polynomial
    h: Polynomial
    A: Polynomial
    B: Polynomial
    C: Polynomial

    def verify(self) -> bool:
        ok = self.A * self.A * self.p + 1 == self.B * self.B + self.C * self.C
        return ok and self.f**self.p + 1 == self.g * self.g + self.h * self.h


def poly_family(p: int) -> PolyFamily:
    """Quartic f with f(X)^p + 1 = g(X)^2 + h(X)^2 identically."""
    if p % 4 != 1 or not is_probable_prime(p):
        raise ValueError(f"{p} is not a prime = 1 (mod 4)")
    x, y = prime_as_two_squares(p)
    u, v = (x, y) if x % 2 == 0 else (y, x)
    A = Polynomial([0, v, u // 2 * p])
    B = Polynomial([-1, 0, u * u // 2 * p])
    C = Polynomial([0, p, u * v // 2 * p])
    f = A * A * p
    if A * A * p + 1 != B * B + C * C:
        raise ArithmeticError("p A^2 + 1 = B^2 + C^2 failed")
    # f^p + 1 = (f + 1) Phi_{2p}(f) and Phi_{2p}(p A^2) = F(f)^2 + (p A G(f))^2
    pair = aurifeuillian_pair(-p, 2 * p)
    P = pair.F.compose(f)
    Q = A * pair.G.compose(f) * p
    g = B * P + C * Q
    h = B * Q - C * P
    return PolyFamily(p, u, v, f, g, h, A, B, C)


# --------------------------------------------------------------------------
# Chart
# --------------------------------------------------------------------------

def chart_property(a: int, budget: EffortBudget = DEFAULT_BUDGET) -> str:
    if perfect_square_root(a) is not None:
        return TAG_PERFECT
    if a % 2 == 0:
        return TAG_EVEN
    if a % 8 == 5:
        return TAG_5MOD8
    if a % 4 == 3:
        return TAG_3MOD4
    if prime_times_square(a, budget) is not None and classify(a + 1, budget).status == YES:
        return TAG_PRIME_SQUARE
    return TAG_1MOD8


@dataclass
class ChartRow:
    a: int
    prop: str
    yes: list[int]
    unknown: list[tuple[int, int]]  # (n, blocking cofactor)
    n_max: int

    @property
    def all_yes(self) -> bool:
        return not self.unknown and self.yes == list(range(1, self.n_max + 1, 2))

    def display(self) -> str:
        if self.prop == TAG_PERFECT and self.all_yes:
            return "all"
        if not self.yes and not self.unknown:
            return "-"
        return ", ".join(str(n) for n in self.yes)

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "property": self.prop,
            "yes": self.yes,
            "unknown": [{"n": n, "blocking_cofactor": str(c)} for n, c in self.unknown],
            "display": self.display(),
        }


def chart_row(
    a: int, n_max: int, budget: EffortBudget = DEFAULT_BUDGET, cache: VerdictCache | None = None
) -> ChartRow:
    if cache is None:
        cache = VerdictCache()
    yes_ns, unknown_ns = [], []
    for n in range(1, n_max + 1, 2):
        rec = decide(a, n, budget, cache)
        if rec.status == YES:
            yes_ns.append(n)
        elif rec.status == UNKNOWN:
            unknown_ns.append((n, rec.verdict.blocking_cofactor))
    return ChartRow(a, chart_property(a, budget), yes_ns, unknown_ns, n_max)


def _row_job(args):
    a, n_max, budget, seeded = args
    cache = VerdictCache()
    for rec in seeded:
        cache.put(rec)
    row = chart_row(a, n_max, budget, cache)
    return row, cache.for_base(a), list(cache.factorizations.values())


def chart(
    a_max: int,
    n_max: int,
    budget: EffortBudget = DEFAULT_BUDGET,
    cache: VerdictCache | None = None,
    threads: int = 1,
    a_min: int = 1,
) -> list[ChartRow]:
    """One row per base a in [a_min, a_max], listing odd n <= n_max with a yes verdict.

    With threads > 1 whole rows run in worker processes; the rows and any
    new cache entries are merged back in order of a, so output does not
    depend on scheduling.
    """
    if cache is None:
        cache = VerdictCache()
    bases = range(a_min, a_max + 1)
    if threads <= 1:
        return [chart_row(a, n_max, budget, cache) for a in bases]
    jobs = [(a, n_max, budget, cache.for_base(a)) for a in bases]
    rows = []
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for row, recs, facs in pool.map(_row_job, jobs):
            rows.append(row)
            for rec in recs:
                cache.put(rec)
            for fac in facs:
                cache.put_factorization(fac)
    return rows

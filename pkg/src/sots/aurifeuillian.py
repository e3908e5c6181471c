"""Aurifeuillian identities Phi_n(x) = F(x)^2 - k x^q G(x)^2.

For n = 2 (mod 4) and a squarefree k whose field discriminant d(k)
satisfies |d(k)| | 2n but |d(k)| does not divide n, the cyclotomic
polynomial splits over Q(sqrt(k)) once x is replaced by y^2:

    Phi_n(y^2) = h(y) * conj(h(y)),   h(y) = F(y^2) + sqrt(k) * y^q * G(y^2).

h is the product of (y - zeta_N^j), N = 2n, over the units j with
Kronecker symbol (d(k)/j) = 1.  We build that product exactly in
Z[zeta_N], express each coefficient in the basis {1, sqrt(k)} (with
sqrt(k) written as half the Gauss sum of the Kronecker character), and read
off F and G.  Every pair is checked by polynomial expansion before it is
returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core_arith import factorize, is_squarefree, jacobi
from .cyclotomic import cyclotomic_poly, eval_cyclotomic
from .polynomial import Polynomial


class InadmissibleError(ValueError):
    """(k, n) does not satisfy the hypotheses of the identity."""


def discriminant(k: int) -> int:
    """Discriminant of Q(sqrt(k)) for squarefree k."""
    return k if k % 4 == 1 else 4 * k


def is_admissible(k: int, n: int) -> bool:
    if k == 0 or n < 2 or n % 4 != 2:
        return False
    if not is_squarefree(k):
        return False
    d = abs(discriminant(k))
    return n % d != 0 and (2 * n) % d == 0


def exponent_q(n: int) -> int:
    """q = prod p^(e-1) over the odd prime powers p^e exactly dividing n."""
    q = 1
    for p, e in factorize(n // 2).factors:
        q *= p ** (e - 1)
    return q


@dataclass(frozen=True)
class AurifeuillianPair:
    k: int
    n: int
    q: int
    F: Polynomial
    G: Polynomial

    def expand(self) -> Polynomial:
        return self.F * self.F - (self.G * self.G).shift(self.q) * self.k

    def verify(self) -> bool:
        return self.expand() == cyclotomic_poly(self.n)


def _check(k: int, n: int) -> None:
    if k == 0 or not is_squarefree(k):
        raise InadmissibleError(f"k = {k} is not a nonzero squarefree integer")
    if not is_admissible(k, n):
        raise InadmissibleError(f"(k, n) = ({k}, {n}) is not admissible")


def _rotate(v: list[int], j: int) -> list[int]:
    """Multiply an element of Z[y]/(y^N - 1) by y^j."""
    N = len(v)
    j %= N
    return v[-j:] + v[:-j] if j else list(v)


def _reduce(v: list[int], phi_N: Polynomial) -> list[int]:
    _, r = Polynomial(v).divmod(phi_N)
    out = list(r.coeffs)
    return out + [0] * (phi_N.degree - len(out))


def _in_quadratic_basis(c: list[int], g2: list[int]) -> tuple[Fraction, Fraction]:
    """Write c = u + w * g2 with rational u, w (g2 = 2 sqrt(k))."""
    w = Fraction(0)
    for ci, gi in zip(c[1:], g2[1:]):
        if gi:
            w = Fraction(ci, gi)
            break
    u = c[0] - w * g2[0]
    if any(ci != w * gi for ci, gi in zip(c[1:], g2[1:])):
        raise ArithmeticError("coefficient does not lie in Q(sqrt(k))")
    return u, w


@lru_cache(maxsize=None)
def _squarefree_pair(k: int, n: int) -> tuple[Polynomial, Polynomial]:
    """F, G for n = 2 * (odd squarefree), where q = 1."""
    if n == 2:
        # Phi_2 = x + 1 = 1^2 + x * 1^2, only reachable with k = -1
        return Polynomial([1]), Polynomial([1])
    N = 2 * n
    phi_N = cyclotomic_poly(N)
    D = phi_N.degree // 2
    units = [j for j in range(1, N) if math.gcd(j, N) == 1]
    chosen = [j for j in units if jacobi(k, j) == 1]
    if len(chosen) != D:
        raise ArithmeticError("character does not halve the roots")

    zero = [0] * N
    one = [1] + [0] * (N - 1)
    h = [one]  # coefficients in y, each an element of Z[zeta_N]
    for j in chosen:
        nxt = [list(zero) for _ in range(len(h) + 1)]
        for i, c in enumerate(h):
            nxt[i + 1] = [a + b for a, b in zip(nxt[i + 1], c)]
            rc = _rotate(c, j)
            nxt[i] = [a - b for a, b in zip(nxt[i], rc)]
        h = nxt

    cond = abs(discriminant(k))
    step = N // cond
    gauss = list(zero)
    for a in range(1, cond):
        if math.gcd(a, cond) == 1:
            gauss[a * step] += jacobi(k, a)
    g2 = _reduce(gauss, phi_N)

    F_coeffs, G_coeffs = [], []
    for i, c in enumerate(h):
        u, w = _in_quadratic_basis(_reduce(c, phi_N), g2)
        v = 2 * w  # coefficient of sqrt(k)
        if i % 2 == 0:
            if v or u.denominator != 1:
                raise ArithmeticError("even part is not an integer polynomial")
            F_coeffs.append(int(u))
        else:
            if u or v.denominator != 1:
                raise ArithmeticError("odd part is not an integer multiple of sqrt(k)")
            G_coeffs.append(int(v))
    F, G = Polynomial(F_coeffs), Polynomial(G_coeffs)
    if F.leading < 0:
        F = -F
    if G.leading < 0:
        G = -G
    return F, G


def aurifeuillian_pair(k: int, n: int) -> AurifeuillianPair:
    _check(k, n)
    q = exponent_q(n)
    F, G = _squarefree_pair(k, n // q)
    if q > 1:
        # Phi_n(x) = Phi_{n/q}(x^q)
        F, G = F.substitute_power(q), G.substitute_power(q)
    pair = AurifeuillianPair(k, n, q, F, G)
    if not pair.verify():
        raise ArithmeticError(f"identity failed for (k, n) = ({k}, {n})")
    return pair


def sots_of_phi(k: int, v: int, n: int) -> tuple[int, int]:
    """Two squares summing to Phi_n(-k v^2) for admissible negative k."""
    if k >= 0:
        raise InadmissibleError("sots_of_phi needs k < 0")
    if v < 1:
        raise ValueError("v must be positive")
    pair = aurifeuillian_pair(k, n)
    x = -k * v * v
    first = abs(pair.F(x))
    second = abs(k) ** ((pair.q + 1) // 2) * v**pair.q * abs(pair.G(x))
    assert first * first + second * second == eval_cyclotomic(n, x)
    return first, second


def aurifeuillian_split(k: int, v: int, n: int) -> tuple[int, int]:
    """Coprime factors f * g = Phi_n(k v^2) for admissible positive k."""
    if k <= 0:
        raise InadmissibleError("aurifeuillian_split needs k > 0")
    if v < 1:
        raise ValueError("v must be positive")
    pair = aurifeuillian_pair(k, n)
    x = k * v * v
    fx = pair.F(x)
    c = k ** ((pair.q + 1) // 2) * v**pair.q * pair.G(x)
    f, g = fx + c, fx - c
    assert f * g == eval_cyclotomic(n, x)
    return f, g

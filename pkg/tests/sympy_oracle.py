"""Independent ground truth for a^n + 1, built on sympy factorizations."""

from functools import lru_cache

import sympy


@lru_cache(maxsize=None)
def _factor(N):
    return tuple(sorted(sympy.factorint(N).items()))


def exponents(a, n):
    """Prime exponents of a^n + 1, merged from the factors of a^d - 1 style splits."""
    out = {}
    # a^n + 1 = prod over d | 2n, d not dividing n, of Phi_d(a)
    x = sympy.Symbol("x")
    for d in sympy.divisors(2 * n):
        if n % d == 0:
            continue
        value = int(sympy.cyclotomic_poly(d, x).subs(x, a))
        for p, e in _factor(value):
            out[p] = out.get(p, 0) + e
    return out


def is_sots(a, n):
    return all(p % 4 != 3 or e % 2 == 0 for p, e in exponents(a, n).items())


def is_sots_number(N):
    return all(p % 4 != 3 or e % 2 == 0 for p, e in _factor(N))

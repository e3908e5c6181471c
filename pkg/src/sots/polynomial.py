"""Dense univariate polynomials with integer coefficients."""

from __future__ import annotations

from itertools import zip_longest
from typing import Iterable


class Polynomial:
    """Integer polynomial stored constant-term first.

    Instances are immutable and hashable; trailing zero coefficients are
    stripped so equality is structural.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial([other])
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        out = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                power = var if i == 1 else f"{var}^{i}"
                term = power if mag == 1 else f"{mag}*{power}"
            if not out:
                out.append(term if c > 0 else f"-{term}")
            else:
                out.append(("+ " if c > 0 else "- ") + term)
        return " ".join(out)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial":
        return other if isinstance(other, Polynomial) else Polynomial([other])

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = Polynomial([1]), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> "Polynomial":
        """Multiply by x**k."""
        return Polynomial([0] * k + list(self.coeffs)) if self.coeffs else self

    def divmod(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Division over Z; the divisor's leading coefficient must divide each step."""
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dl, dd = divisor.leading, divisor.degree
        q = [0] * max(0, len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            if c % dl:
                raise ArithmeticError("quotient would leave the integers")
            t = c // dl
            q[i - dd] = t
            for j, b in enumerate(divisor.coeffs):
                rem[i - dd + j] -= t * b
        return Polynomial(q), Polynomial(rem)

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError("division left a remainder")
        return q

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """self(inner(x)) by Horner's scheme."""
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def substitute_power(self, k: int) -> "Polynomial":
        """self(x**k)."""
        out = [0] * (self.degree * k + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return Polynomial(out)

    def reversed(self) -> "Polynomial":
        return Polynomial(reversed(self.coeffs))


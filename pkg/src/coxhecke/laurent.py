"""Exact Laurent polynomials in one variable u with rational coefficients.

The Hecke deformation parameter enters through u with u^2 = q, so the
structure constant p = (q - 1)/sqrt(q) is the ring element u - 1/u and
every algebra identity becomes a decidable equality of Laurent
polynomials.  Numbers only appear when a polynomial is evaluated at a
concrete sqrt(q).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping


class LaurentPoly:
    """Immutable Laurent polynomial sum of c_k u^k with rational c_k."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction | int] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(k)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return _ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _ONE

    @staticmethod
    def u_power(k: int) -> "LaurentPoly":
        return LaurentPoly({k: 1})

    @staticmethod
    def const(c) -> "LaurentPoly":
        return LaurentPoly({0: Fraction(c)})

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        out: dict[int, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not defined in this ring")
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute_u_inverse(self) -> "LaurentPoly":
        """The image under u -> 1/u (negates every exponent)."""
        return LaurentPoly({-k: c for k, c in self.terms.items()})

    def conjugate(self) -> "LaurentPoly":
        """Complex conjugation; the identity on rational coefficients."""
        return self

    def is_constant(self) -> bool:
        return all(k == 0 for k in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(0, Fraction(0))

    def evaluate(self, u_value: float) -> float:
        """Numeric value at a concrete u (callers pass sqrt(q))."""
        return float(sum(float(c) * u_value ** k for k, c in self.terms.items()))

    def evaluate_at_q(self, q: float) -> float:
        return self.evaluate(math.sqrt(q))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            if k == 0:
                mono = str(c)
            else:
                var = "u" if k == 1 else f"u^{k}"
                if c == 1:
                    mono = var
                elif c == -1:
                    mono = f"-{var}"
                else:
                    mono = f"{c}*{var}"
            parts.append(mono)
        out = " + ".join(parts).replace("+ -", "- ")
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into LaurentPoly")


_ZERO = LaurentPoly()
_ONE = LaurentPoly({0: 1})

#: The Hecke structure constant p = u - 1/u, i.e. (q - 1)/sqrt(q).
P_SYMBOL = LaurentPoly({1: 1, -1: -1})

"""Arithmetic in the Hecke algebra of a right-angled Coxeter system.

Elements are finitely supported sums over the normalized basis {T_w}.
The product is the bilinear extension of the one-generator recursion

    T_s T_w = T_{sw}            if |sw| > |w|
    T_s T_w = T_{sw} + p T_w    otherwise,

with p = (q - 1)/sqrt(q).  In exact mode coefficients are Laurent
polynomials in u (u^2 = q) and p is the ring element u - 1/u; numeric
mode fixes a concrete q > 0 and keeps float coefficients.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coxeter import LEFT, RIGHT, CoxeterSystem, Element
from .errors import InputError, ParseError
from .laurent import LaurentPoly, P_SYMBOL

EXACT = "exact"


class HeckeElement:
    """A finitely supported linear combination of normalized basis terms.

    ``q`` is None in exact mode (coefficients are LaurentPoly) and a
    positive float in numeric mode (coefficients are floats).  Values are
    immutable; all arithmetic returns fresh elements.
    """

    __slots__ = ("system", "q", "terms")

    def __init__(self, system: CoxeterSystem, terms=None, q: float | None = None):
        if q is not None:
            q = float(q)
            if q <= 0:
                raise InputError("q must be positive")
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "q", q)
        clean = {}
        if terms:
            for w, c in terms.items():
                if w.system is not system:
                    raise InputError("basis element from a different system")
                if q is None:
                    c = c if isinstance(c, LaurentPoly) else LaurentPoly.const(c)
                else:
                    c = float(c)
                if c:
                    clean[w] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("HeckeElement is immutable")

    # -- mode helpers ----------------------------------------------------------

    @property
    def mode(self) -> str:
        return EXACT if self.q is None else "numeric"

    def _p(self):
        if self.q is None:
            return P_SYMBOL
        return (self.q - 1.0) / math.sqrt(self.q)

    def _zero_coeff(self):
        return LaurentPoly.zero() if self.q is None else 0.0

    def _check_compat(self, other: "HeckeElement"):
        if self.system is not other.system:
            raise InputError("elements live over different Coxeter systems")
        if self.q != other.q:
            raise InputError("elements are in different coefficient modes")

    # -- linear structure --------------------------------------------------------

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check_compat(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, self._zero_coeff()) + c
        return HeckeElement(self.system, out, self.q)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(-1)

    def __neg__(self) -> "HeckeElement":
        return self.scale(-1)

    def scale(self, c) -> "HeckeElement":
        if self.q is None and not isinstance(c, LaurentPoly):
            c = LaurentPoly.const(c)
        return HeckeElement(self.system,
                            {w: coeff * c for w, coeff in self.terms.items()},
                            self.q)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction, float, LaurentPoly)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return mul(self, other)
        if isinstance(other, (int, Fraction, float, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        return (isinstance(other, HeckeElement) and self.system is other.system
                and self.q == other.q and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.system), self.q, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, w: Element):
        return self.terms.get(w, self._zero_coeff())

    def support(self) -> list[Element]:
        return sorted(self.terms, key=Element.sort_key)

    # -- involution and state ------------------------------------------------------

    def star(self) -> "HeckeElement":
        """The adjoint: conjugate coefficients on inverted basis words."""
        sys = self.system
        out = {}
        for w, c in self.terms.items():
            out[sys.inverse(w)] = c.conjugate() if self.q is None else c
        return HeckeElement(sys, out, self.q)

    def phi(self):
        """The vacuum state: the coefficient of the identity basis term."""
        return self.coefficient(self.system.identity)

    def specialize(self, q: float) -> "HeckeElement":
        """Evaluate exact coefficients at u = sqrt(q), yielding numeric mode."""
        if self.q is not None:
            raise InputError("element is already numeric")
        u = math.sqrt(float(q))
        return HeckeElement(self.system,
                            {w: c.evaluate(u) for w, c in self.terms.items()},
                            q=q)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in self.support():
            c = self.terms[w]
            parts.append(f"({c})*T({w})")
        return " + ".join(parts)

    def __repr__(self):
        return f"HeckeElement[{self.mode}]({self})"


# -- constructors ------------------------------------------------------------------


def unit(system: CoxeterSystem, q: float | None = None) -> HeckeElement:
    return HeckeElement(system, {system.identity: 1}, q)


def t_basis(w: Element, q: float | None = None) -> HeckeElement:
    """The normalized basis term T_w with coefficient one."""
    return HeckeElement(w.system, {w: 1}, q)


def t_tilde(w: Element, q: float | None = None) -> HeckeElement:
    """The unnormalized basis term, u^{|w|} times the normalized one."""
    if q is None:
        return HeckeElement(w.system, {w: LaurentPoly.u_power(len(w))})
    return HeckeElement(w.system, {w: float(q) ** (len(w) / 2.0)}, q)


# -- multiplication ------------------------------------------------------------------


def _gen_mul(system: CoxeterSystem, s: int, terms: dict, p, side: str, zero):
    """Multiply a term dict by the generator basis term T_s on one side."""
    out: dict[Element, object] = {}
    for w, c in terms.items():
        sw, delta = system.mult_gen(w, s, side)
        out[sw] = out.get(sw, zero) + c
        if delta < 0:
            out[w] = out.get(w, zero) + p * c
    return {w: c for w, c in out.items() if c}


def mul(a: HeckeElement, b: HeckeElement, p_override=None) -> HeckeElement:
    """The Hecke product ab.

    The left factor is peeled one generator at a time along its canonical
    word, applying the defining recursion; ``p_override`` substitutes a
    different structure constant (used for the sign-twisted target algebra
    of the duality isomorphism).
    """
    a._check_compat(b)
    sys = a.system
    p = a._p() if p_override is None else p_override
    zero = a._zero_coeff()
    result: dict[Element, object] = {}
    for wa, ca in a.terms.items():
        cur = dict(b.terms)
        for s in reversed(wa.word):
            cur = _gen_mul(sys, s, cur, p, LEFT, zero)
        for w, c in cur.items():
            acc = result.get(w, zero) + ca * c
            result[w] = acc
    return HeckeElement(sys, result, a.q)


def j_iso(a: HeckeElement) -> HeckeElement:
    """The duality isomorphism onto the inverted-parameter algebra.

    Each basis term picks up the sign (-1)^{|w|}.  The image is read in
    the algebra at parameter 1/q, which over the same coefficient ring
    multiplies with structure constant -p; the identity

        j(a b) = mul(j(a), j(b), p_override=-p)

    holds exactly, and j composed with itself is the identity.  (Rewriting
    the image in the target's own formal coordinates would substitute
    u -> 1/u in every coefficient and restore the standard p; that
    coordinate change is available as LaurentPoly.substitute_u_inverse.)
    Exact mode only; numeric elements should be specialized afterwards.
    """
    if a.q is not None:
        raise InputError("duality isomorphism needs exact mode; specialize "
                         "the image at 1/q instead")
    out = {}
    for w, c in a.terms.items():
        out[w] = -c if len(w) % 2 else c
    return HeckeElement(a.system, out, None)


def state_phi(a: HeckeElement):
    """State value <a delta_1, delta_1>, the identity coefficient."""
    return a.phi()


def inner(a: HeckeElement, b: HeckeElement):
    """l2 pairing of symbols: sum over w of coeff_a(w) * conj(coeff_b(w))."""
    a._check_compat(b)
    if a.q is None:
        total = LaurentPoly.zero()
        for w, c in a.terms.items():
            d = b.terms.get(w)
            if d is not None:
                total = total + c * d.conjugate()
        return total
    return float(sum(c * b.terms.get(w, 0.0) for w, c in a.terms.items()))


def l2_norm(a: HeckeElement) -> float:
    """Norm of the symbol; numeric mode (specialize exact elements first)."""
    if a.q is None:
        raise InputError("l2 norm needs numeric mode; use specialize(q)")
    return math.sqrt(max(inner(a, a), 0.0))


# -- truncated action matrices ----------------------------------------------------------


@dataclass(frozen=True)
class ActionMatrix:
    """Matrix of a left or right multiplication operator over a ball basis.

    ``matrix[i, j]`` is the coefficient of the i-th ball element in the
    image of the j-th basis vector.  ``exact_columns[j]`` is True iff the
    full untruncated image of that basis vector stays inside the ball, in
    which case the column is exact rather than truncated.
    """
    elements: tuple[Element, ...]
    matrix: np.ndarray
    exact_columns: np.ndarray
    side: str

    @property
    def dim(self) -> int:
        return len(self.elements)


def action_matrix(a: HeckeElement, ball: list[Element], side: str = LEFT) -> ActionMatrix:
    """Truncation of the multiplication operator of ``a`` to a metric ball."""
    if a.q is None:
        raise InputError("action matrices need numeric mode")
    if side not in (LEFT, RIGHT):
        raise InputError(f"side must be {LEFT!r} or {RIGHT!r}")
    index = {w: i for i, w in enumerate(ball)}
    n = len(ball)
    mat = np.zeros((n, n))
    exact = np.ones(n, dtype=bool)
    for j, w in enumerate(ball):
        basis = t_basis(w, q=a.q)
        image = mul(a, basis) if side == LEFT else mul(basis, a)
        for v, c in image.terms.items():
            i = index.get(v)
            if i is None:
                exact[j] = False
            else:
                mat[i, j] = c
    return ActionMatrix(tuple(ball), mat, exact, side)


# -- expression mini-language --------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<num>\d+(?:/\d+)?)      |
    (?P<name>[A-Za-z_]\w*)     |
    (?P<op>[()+\-*])           |
    (?P<ws>\s+)
""", re.VERBOSE)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}",
                             line=1, column=pos + 1)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(("end", "", pos))
    return out


class _ExprParser:
    """Recursive descent for: terms T(word), rational scalars, + - *,
    star(...), j(...) and parentheses."""

    def __init__(self, system: CoxeterSystem, text: str):
        self.system = system
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.pos]
        if kind and tok[0] != kind or value and tok[1] != value:
            raise ParseError(f"expected {value or kind}, found {tok[1]!r}",
                             line=1, column=tok[2] + 1)
        self.pos += 1
        return tok

    def parse(self) -> HeckeElement:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", line=1, column=tok[2] + 1)
        return value

    def expr(self) -> HeckeElement:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        value = self.term().scale(sign)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                value = value + (rhs if tok[1] == "+" else -rhs)
            else:
                return value

    def term(self) -> HeckeElement:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                value = mul(value, self.factor())
            else:
                return value

    def factor(self) -> HeckeElement:
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return unit(self.system).scale(Fraction(tok[1]))
        if tok[0] == "op" and tok[1] == "(":
            self.take()
            value = self.expr()
            self.take("op", ")")
            return value
        if tok[0] == "name":
            name = tok[1]
            self.take()
            if name == "T":
                self.take("op", "(")
                letters = []
                while self.peek()[1] != ")":
                    t = self.peek()
                    if t[0] not in ("name", "num"):
                        raise ParseError(f"bad word token {t[1]!r}",
                                         line=1, column=t[2] + 1)
                    letters.append(self.take()[1])
                self.take("op", ")")
                word = self.system.parse_word(" ".join(letters))
                return t_basis(self.system.normalize(word))
            if name in ("star", "j"):
                self.take("op", "(")
                value = self.expr()
                self.take("op", ")")
                return value.star() if name == "star" else j_iso(value)
            raise ParseError(f"unknown function {name!r}", line=1, column=tok[2] + 1)
        raise ParseError(f"unexpected token {tok[1]!r}", line=1, column=tok[2] + 1)


def parse_expression(system: CoxeterSystem, text: str) -> HeckeElement:
    """Parse the Hecke expression mini-language into an exact element."""
    return _ExprParser(system, text).parse()

"""Finite-support Puiseux polynomials over Q, and truncated ones over F_p.

Extended rationals (Q together with +infinity) are represented by
``fractions.Fraction`` values and the float ``math.inf``; Python's mixed
comparison and addition rules give exactly the min-plus conventions we need
(``inf`` absorbs addition, ``min(inf, x) == x``).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import PuiseuxSyntaxError, SingularMatrixError, ZeroDenominatorError

INF = math.inf

Rational = Fraction
ExtRational = Union[Fraction, float]


def is_finite(x) -> bool:
    return x != INF


def ext(x) -> ExtRational:
    """Coerce ints, Fractions, ``"p/q"`` strings and ``"inf"`` to an extended rational."""
    if isinstance(x, str):
        s = x.strip()
        if s in ("inf", "+inf", "oo", "∞"):
            return INF
        return Fraction(s)
    if isinstance(x, float):
        if x == INF:
            return INF
        if math.isnan(x) or x == -INF:
            raise ValueError(f"{x!r} is not an extended rational")
        return Fraction(x)
    return Fraction(x)


def fmt_ext(x: ExtRational) -> str:
    if x == INF:
        return "inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class PuiseuxPoly:
    """A finite sum ``sum c_e t^e`` with rational coefficients and exponents.

    Terms are kept sorted by ascending exponent with no zero coefficients, so
    ``val`` is the first exponent. Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, Fraction] = {}
        for e, c in items:
            e = Fraction(e)
            acc[e] = acc.get(e, 0) + Fraction(c)
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        self._hash = None

    @classmethod
    def _raw(cls, sorted_terms):
        obj = object.__new__(cls)
        obj._terms = sorted_terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c) -> "PuiseuxPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, c, e) -> "PuiseuxPoly":
        return cls({e: c})

    @classmethod
    def parse(cls, text: str) -> "PuiseuxPoly":
        return parse_puiseux(text)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Fraction, Fraction]:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def val(self) -> ExtRational:
        return self._terms[0][0] if self._terms else INF

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the lowest-order term (zero for the zero polynomial)."""
        return self._terms[0][1] if self._terms else Fraction(0)

    def max_exponent(self) -> ExtRational:
        return self._terms[-1][0] if self._terms else -INF

    def exponent_denominator(self) -> int:
        d = 1
        for e, _ in self._terms:
            d = d * e.denominator // math.gcd(d, e.denominator)
        return d

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            s = acc.get(e, 0) + c
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)
        return PuiseuxPoly._raw(tuple(sorted(acc.items())))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxPoly._raw(tuple((e, -c) for e, c in self._terms))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return ZERO
        acc: dict[Fraction, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return PuiseuxPoly._raw(tuple(sorted((e, c) for e, c in acc.items() if c)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, e) -> "PuiseuxPoly":
        """Multiply by ``t^e``."""
        e = Fraction(e)
        return PuiseuxPoly._raw(tuple((x + e, c) for x, c in self._terms))

    def scale(self, c) -> "PuiseuxPoly":
        c = Fraction(c)
        if c == 0:
            return ZERO
        return PuiseuxPoly._raw(tuple((e, c * x) for e, x in self._terms))

    def truncate(self, bound) -> "PuiseuxPoly":
        """Drop every term of exponent ``>= bound``."""
        return PuiseuxPoly._raw(tuple((e, c) for e, c in self._terms if e < bound))

    def divide_by_monomial(self, c, e) -> "PuiseuxPoly":
        return self.scale(1 / Fraction(c)).shift(-Fraction(e))

    def evaluate(self, t):
        """Numerical value at a real ``t > 0`` (complex ``t`` only for integer exponents)."""
        total = 0.0
        for e, c in self._terms:
            if e.denominator == 1:
                total += float(c) * t ** int(e)
            else:
                total += float(c) * t ** float(e)
        return total

    # -- protocol ---------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return format_puiseux(self)

    def __repr__(self):
        return f"PuiseuxPoly('{self}')"


def _coerce(x):
    if isinstance(x, PuiseuxPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return PuiseuxPoly.constant(x) if x else ZERO
    return NotImplemented


ZERO = PuiseuxPoly()
ONE = PuiseuxPoly({0: 1})
T = PuiseuxPoly({1: 1})


# -- parsing and printing ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m.group(1) is not None:
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("sym", m.group(2), m.start(2)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise PuiseuxSyntaxError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def accept(self, value):
        tok = self.peek()
        if tok[0] == "sym" and tok[1] == value:
            self.i += 1
            return True
        return False

    def series(self) -> PuiseuxPoly:
        if not self.tokens:
            raise PuiseuxSyntaxError("empty expression", 0)
        sign = -1 if self.accept("-") else 1
        acc: dict[Fraction, Fraction] = {}
        while True:
            e, c = self.term()
            acc[e] = acc.get(e, 0) + sign * c
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        tok = self.peek()
        if tok[0] != "end":
            raise PuiseuxSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return PuiseuxPoly(acc)

    def term(self):
        tok = self.peek()
        if tok[0] == "sym" and tok[1] == "t":
            return self.tpow(), Fraction(1)
        c = self.rational(signed=False)
        if self.accept("*"):
            return self.tpow(), c
        return Fraction(0), c

    def tpow(self) -> Fraction:
        self.take("sym", "t")
        if not self.accept("^"):
            return Fraction(1)
        if self.accept("("):
            e = self.rational(signed=True)
            self.take("sym", ")")
            return e
        return self.rational(signed=True)

    def rational(self, signed: bool) -> Fraction:
        neg = signed and self.accept("-")
        num = int(self.take("int")[1])
        if self.accept("/"):
            tok = self.take("int")
            den = int(tok[1])
            if den == 0:
                raise ZeroDenominatorError("zero denominator", tok[2])
            num = Fraction(num, den)
        return -Fraction(num) if neg else Fraction(num)


def parse_puiseux(text: str) -> PuiseuxPoly:
    """Parse an ASCII Puiseux expression such as ``"3*t + t^3"`` or ``"1/2*t^(1/3)"``."""
    return _Parser(text).series()


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_tpow(e: Fraction) -> str:
    if e == 1:
        return "t"
    if e.denominator == 1:
        return f"t^{e.numerator}"
    return f"t^({e.numerator}/{e.denominator})"


def format_puiseux(f: PuiseuxPoly) -> str:
    """Canonical form: ascending exponents, no spaces."""
    if f.is_zero():
        return "0"
    parts = []
    for k, (e, c) in enumerate(f.items()):
        sign = "-" if c < 0 else ("+" if k else "")
        a = abs(c)
        if e == 0:
            body = _fmt_rat(a)
        elif a == 1:
            body = _fmt_tpow(e)
        else:
            body = f"{_fmt_rat(a)}*{_fmt_tpow(e)}"
        parts.append(sign + body)
    return "".join(parts)


# -- truncated series over F_p -------------------------------------------------


class FpPuiseuxPoly:
    """Truncated Puiseux polynomial over the prime field F_p.

    Exponents live in ``(1/N) Z`` and only those strictly below the truncation
    bound are stored. Arithmetic is exact modulo ``t^bound``.
    """

    __slots__ = ("p", "N", "bound", "_terms")

    def __init__(self, p: int, N: int, bound, terms: Mapping | Iterable = ()):
        self.p = p
        self.N = N
        self.bound = Fraction(bound)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, int] = {}
        for e, c in items:
            e = Fraction(e)
            if (e * N).denominator != 1:
                raise ValueError(f"exponent {e} is not in (1/{N})Z")
            if e < self.bound:
                acc[e] = (acc.get(e, 0) + c) % p
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))

    @classmethod
    def from_puiseux(cls, f: PuiseuxPoly, p: int, N: int, bound) -> "FpPuiseuxPoly":
        from .errors import BadPrimeError

        terms = []
        for e, c in f.items():
            if c.denominator % p == 0:
                raise BadPrimeError(f"coefficient {c} has denominator divisible by {p}", prime=p)
            terms.append((e, c.numerator * pow(c.denominator, -1, p)))
        return cls(p, N, bound, terms)

    def _like(self, terms):
        return FpPuiseuxPoly(self.p, self.N, self.bound, terms)

    def _check(self, other):
        if not isinstance(other, FpPuiseuxPoly):
            return NotImplemented
        if (other.p, other.N) != (self.p, self.N):
            raise ValueError("mismatched prime or exponent denominator")
        return other

    @property
    def terms(self) -> dict[Fraction, int]:
        return dict(self._terms)

    def val(self) -> ExtRational:
        return self._terms[0][0] if self._terms else INF

    def is_zero(self):
        return not self._terms

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        bound = min(self.bound, other.bound)
        return FpPuiseuxPoly(self.p, self.N, bound, list(self._terms) + list(other._terms))

    def __neg__(self):
        return self._like((e, -c) for e, c in self._terms)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        # f0 g0 + O(t^min(Bf + val g, Bg + val f)); an unknown-zero factor has val >= its bound
        vf = self._terms[0][0] if self._terms else self.bound
        vg = other._terms[0][0] if other._terms else other.bound
        bound = min(self.bound + vg, other.bound + vf)
        acc: dict[Fraction, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = e1 + e2
                if e < bound:
                    acc[e] = acc.get(e, 0) + c1 * c2
        return FpPuiseuxPoly(self.p, self.N, bound, acc)

    def __eq__(self, other):
        if not isinstance(other, FpPuiseuxPoly):
            return NotImplemented
        return (self.p, self.N, self._terms) == (other.p, other.N, other._terms)

    def __hash__(self):
        return hash((self.p, self.N, self._terms))

    def __repr__(self):
        body = " + ".join(f"{c}*t^{e}" for e, c in self._terms) or "0"
        return f"FpPuiseuxPoly(p={self.p}, {body} + O(t^{self.bound}))"


# -- matrices ------------------------------------------------------------------


def det(rows) -> PuiseuxPoly:
    """Determinant of a square matrix of PuiseuxPoly by cofactor expansion with memoisation."""
    k = len(rows)
    if k == 0:
        return ONE
    memo: dict[int, PuiseuxPoly] = {0: ONE}

    def sub(row: int, cols: int) -> PuiseuxPoly:
        if cols in memo:
            return memo[cols]
        total = ZERO
        sign = 1
        for j in range(k):
            if cols >> j & 1:
                a = rows[row][j]
                if a:
                    term = a * sub(row + 1, cols & ~(1 << j))
                    total = total + term if sign > 0 else total - term
                sign = -sign
        memo[cols] = total
        return total

    return sub(0, (1 << k) - 1)


def change_basis(A, B):
    """Coordinates of the lattice ``L = rowspan(A)`` in the ordered basis given by the rows of ``B``.

    Returns ``A B^{-1}`` computed through the adjugate. When ``det B`` is a
    monomial the division is exact and a plain :class:`LatticeMatrix` is
    returned; otherwise a :class:`RationalLatticeMatrix` whose entries share
    the denominator ``det B``.
    """
    from .entropy import LatticeMatrix, RationalLatticeMatrix

    A = LatticeMatrix.coerce(A)
    B = [list(row) for row in LatticeMatrix.coerce(B).rows] if not isinstance(B, list) else B
    n = len(B)
    if any(len(row) != n for row in B) or n != A.n:
        raise SingularMatrixError("basis matrix must be n x n", n=A.n)
    d = det(B)
    if d.is_zero():
        raise SingularMatrixError("basis matrix is singular over K")
    # adj[j][i] = (-1)^(i+j) det(B without row i, col j)
    adj = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[B[a][b] for b in range(n) if b != j] for a in range(n) if a != i]
            c = det(minor)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    num = []
    for row in A.rows:
        out = []
        for j in range(n):
            acc = ZERO
            for k in range(n):
                if row[k] and adj[k][j]:
                    acc = acc + row[k] * adj[k][j]
            out.append(acc)
        num.append(out)
    if d.is_monomial():
        (e, c), = d.items()
        return LatticeMatrix([[x.divide_by_monomial(c, e) for x in row] for row in num])
    return RationalLatticeMatrix(LatticeMatrix(num, check=False), d)

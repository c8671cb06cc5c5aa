"""Exact scalars.

``QScalar`` is an element of Q(q) stored as ``q^s * num / den`` with
``num`` and ``den`` polynomials over Q (python-flint ``fmpq_poly``) that are
coprime, not divisible by q, and with ``den`` monic.  That makes the
representation canonical, so equality is structural.

``CycloScalar`` is an element of Q(zeta_l) reduced modulo the l-th
cyclotomic polynomial.  l = 1 gives Q itself, which is how the point q = 1
is handled uniformly with the roots of unity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import flint

from .errors import ConfigError, LocalizationError, NotDivisibleError, ParseError

_P = flint.fmpq_poly
_ONE_POLY = _P([1])


def _valuation(p) -> int:
    if p[0] != 0:
        return 0
    for k, c in enumerate(p.coeffs()):
        if c != 0:
            return k
    return 0


def _frac(c) -> Fraction:
    c = flint.fmpq(c)
    return Fraction(int(c.p), int(c.q))


class QScalar:
    __slots__ = ("s", "n", "d")

    def __init__(self, s: int, n, d):
        # trusted constructor; use QScalar.make for normalization
        self.s = s
        self.n = n
        self.d = d

    @staticmethod
    def make(s: int, n, d=None) -> "QScalar":
        if n.is_zero():
            return ZERO
        v = _valuation(n)
        if v:
            n = n.right_shift(v)
            s += v
        if d is None or d.is_one():
            return QScalar(s, n, _ONE_POLY)
        v = _valuation(d)
        if v:
            d = d.right_shift(v)
            s -= v
        if d.degree() > 0:
            g = n.gcd(d)
            if not g.is_one():
                n = n // g
                d = d // g
        lc = d.leading_coefficient()
        if lc != 1:
            n = n / lc
            d = d / lc
        return QScalar(s, n, d)

    @staticmethod
    def from_int(c) -> "QScalar":
        if isinstance(c, QScalar):
            return c
        if isinstance(c, Fraction):
            c = flint.fmpq(c.numerator, c.denominator)
        if c == 0:
            return ZERO
        return QScalar(0, _P([c]), _ONE_POLY)

    @staticmethod
    def laurent(coeffs: dict) -> "QScalar":
        """Build from {exponent: rational coefficient}."""
        coeffs = {e: c for e, c in coeffs.items() if c}
        if not coeffs:
            return ZERO
        lo = min(coeffs)
        hi = max(coeffs)
        arr = [0] * (hi - lo + 1)
        for e, c in coeffs.items():
            arr[e - lo] = flint.fmpq(Fraction(c).numerator, Fraction(c).denominator)
        return QScalar.make(lo, _P(arr))

    @staticmethod
    def qpow(k: int) -> "QScalar":
        return _qpow(k)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.n.is_zero()

    def __bool__(self) -> bool:
        return not self.n.is_zero()

    def is_laurent(self) -> bool:
        return self.d.is_one()

    def is_one(self) -> bool:
        return self.s == 0 and self.n.is_one() and self.d.is_one()

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QScalar):
            other = QScalar.from_int(other)
        if self.n.is_zero():
            return other
        if other.n.is_zero():
            return self
        s1, s2 = self.s, other.s
        s = min(s1, s2)
        n1 = self.n.left_shift(s1 - s) if s1 != s else self.n
        n2 = other.n.left_shift(s2 - s) if s2 != s else other.n
        if self.d.is_one() and other.d.is_one():
            return QScalar.make(s, n1 + n2)
        if self.d == other.d:
            return QScalar.make(s, n1 + n2, self.d)
        return QScalar.make(s, n1 * other.d + n2 * self.d, self.d * other.d)

    __radd__ = __add__

    def __neg__(self):
        if self.n.is_zero():
            return self
        return QScalar(self.s, -self.n, self.d)

    def __sub__(self, other):
        if not isinstance(other, QScalar):
            other = QScalar.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return QScalar.from_int(other) - self

    def __mul__(self, other):
        if not isinstance(other, QScalar):
            other = QScalar.from_int(other)
        if self.n.is_zero() or other.n.is_zero():
            return ZERO
        if self.d.is_one() and other.d.is_one():
            return QScalar(self.s + other.s, self.n * other.n, _ONE_POLY)
        return QScalar.make(self.s + other.s, self.n * other.n, self.d * other.d)

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if self.n.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QScalar.make(-self.s, self.d, self.n)

    def __truediv__(self, other):
        if not isinstance(other, QScalar):
            other = QScalar.from_int(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QScalar.from_int(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        return QScalar.make(self.s * k, self.n ** k, self.d ** k if not self.d.is_one() else None)

    def __eq__(self, other):
        if not isinstance(other, QScalar):
            try:
                other = QScalar.from_int(other)
            except Exception:
                return NotImplemented
        return self.s == other.s and self.n == other.n and self.d == other.d

    def __hash__(self):
        return hash((self.s, tuple(str(c) for c in self.n.coeffs()),
                     tuple(str(c) for c in self.d.coeffs())))

    # -- views ------------------------------------------------------------
    def laurent_coeffs(self) -> dict:
        if not self.d.is_one():
            raise ValueError("not a Laurent polynomial")
        return {self.s + k: _frac(c) for k, c in enumerate(self.n.coeffs()) if c != 0}

    def bar(self) -> "QScalar":
        """Image under q -> q^-1."""
        def flip(p):
            cs = p.coeffs()
            return _P(list(reversed(cs))), len(cs) - 1
        n, dn = flip(self.n)
        if self.d.is_one():
            return QScalar.make(-self.s - dn, n)
        d, dd = flip(self.d)
        return QScalar.make(-self.s - dn + dd, n, d)

    def numerator_denominator(self):
        """(num, den) as Laurent QScalars with den a polynomial."""
        return QScalar.make(self.s, self.n), QScalar.make(0, self.d)

    def __str__(self):
        num = _format_laurent(self.s, self.n)
        if self.d.is_one():
            return num
        den = _format_laurent(0, self.d)
        return f"({num})/({den})"

    def __repr__(self):
        return f"QScalar({self})"


ZERO = QScalar(0, _P([]), _ONE_POLY)
ONE = QScalar(0, _P([1]), _ONE_POLY)


@lru_cache(maxsize=None)
def _qpow(k: int) -> QScalar:
    return QScalar(k, _P([1]), _ONE_POLY)


q = _qpow(1)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_laurent(s: int, poly) -> str:
    terms = [(s + k, _frac(c)) for k, c in enumerate(poly.coeffs()) if c != 0]
    if not terms:
        return "0"
    out = []
    for e, c in sorted(terms, reverse=True):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if e == 0:
            body = _format_coeff(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{_format_coeff(a)}*{mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


# -- scalar text parsing ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(\^)|([-+*/()]))")


def parse_scalar(text: str) -> QScalar:
    """Parse expressions like ``(3*q^2 - 1)/(q - q^-1)``."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        toks.append(m.group(m.lastindex))
        pos = m.end()
    toks.append(None)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def expr():
        v = term()
        while peek() in ("+", "-"):
            op = take()
            w = term()
            v = v + w if op == "+" else v - w
        return v

    def term():
        v = unary()
        while peek() in ("*", "/"):
            op = take()
            w = unary()
            v = v * w if op == "*" else v / w
        return v

    def unary():
        if peek() == "-":
            take()
            return -unary()
        if peek() == "+":
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == "^":
            take()
            sign = 1
            if peek() == "-":
                take()
                sign = -1
            t = take()
            if t is None or not t.isdigit():
                raise ParseError("expected integer exponent")
            return base ** (sign * int(t))
        return base

    def atom():
        t = take()
        if t is None:
            raise ParseError("unexpected end of scalar")
        if t.isdigit():
            return QScalar.from_int(int(t))
        if t == "q":
            return q
        if t == "(":
            v = expr()
            if take() != ")":
                raise ParseError("expected ')'")
            return v
        raise ParseError(f"unexpected token {t!r}")

    v = expr()
    if peek() is not None:
        raise ParseError(f"trailing token {peek()!r}")
    return v


# -- q-combinatorics ----------------------------------------------------------

@lru_cache(maxsize=None)
def q_integer(n: int, d: int = 1) -> QScalar:
    """[n]_t at t = q^d."""
    if n < 0:
        return -q_integer(-n, d)
    return QScalar.laurent({d * (n - 1 - 2 * k): 1 for k in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int, d: int = 1) -> QScalar:
    out = ONE
    for k in range(2, n + 1):
        out = out * q_integer(k, d)
    return out


@lru_cache(maxsize=None)
def q_binomial(n: int, m: int, d: int = 1) -> QScalar:
    """[n]_t [n-1]_t ... [n-m+1]_t / [m]_t!, t = q^d; n may be negative."""
    if m < 0:
        return ZERO
    out = ONE
    for k in range(m):
        out = out * q_integer(n - k, d)
    return out / q_factorial(m, d)


@lru_cache(maxsize=None)
def q_minus_qinv(d: int = 1) -> QScalar:
    """q^d - q^-d."""
    return QScalar.laurent({d: 1, -d: -1})


# -- cyclotomic numbers -------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_poly(ell: int):
    return _P(flint.fmpz_poly.cyclotomic(ell))


class CycloScalar:
    """Element of Q(zeta) for a primitive l-th root of unity zeta."""

    __slots__ = ("ell", "p")

    def __init__(self, ell: int, p):
        self.ell = ell
        phi = cyclotomic_poly(ell)
        self.p = p % phi if p.degree() >= phi.degree() else p

    @staticmethod
    def from_int(ell: int, c) -> "CycloScalar":
        if isinstance(c, CycloScalar):
            return c
        if isinstance(c, Fraction):
            c = flint.fmpq(c.numerator, c.denominator)
        return CycloScalar(ell, _P([c]))

    @staticmethod
    def zeta(ell: int, k: int = 1) -> "CycloScalar":
        k %= ell
        return CycloScalar(ell, _P([0] * k + [1]))

    def _coerce(self, other):
        if isinstance(other, CycloScalar):
            if other.ell != self.ell:
                # rationals (ell = 1) embed into every cyclotomic field
                if other.ell == 1:
                    return CycloScalar(self.ell, other.p)
                raise ValueError("cyclotomic scalars from different fields")
            return other
        return CycloScalar.from_int(self.ell, other)

    def embed(self, ell: int) -> "CycloScalar":
        """The same number in Q(zeta_ell); only rationals move between fields."""
        if ell == self.ell:
            return self
        if self.ell != 1:
            raise ValueError("only rational numbers can be embedded")
        return CycloScalar(ell, self.p)

    def _promote(self, other):
        if isinstance(other, CycloScalar) and self.ell == 1 and other.ell != 1:
            return self.embed(other.ell)
        return self

    def __add__(self, other):
        self = self._promote(other)
        other = self._coerce(other)
        return CycloScalar(self.ell, self.p + other.p)

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.ell, -self.p)

    def __sub__(self, other):
        self = self._promote(other)
        other = self._coerce(other)
        return CycloScalar(self.ell, self.p - other.p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        self = self._promote(other)
        other = self._coerce(other)
        return CycloScalar(self.ell, self.p * other.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.p.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        g, s, _ = self.p.xgcd(cyclotomic_poly(self.ell))
        return CycloScalar(self.ell, s / g.leading_coefficient())

    def __truediv__(self, other):
        self = self._promote(other)
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloScalar.from_int(self.ell, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self.p.is_zero()

    def __bool__(self):
        return not self.p.is_zero()

    def __eq__(self, other):
        if isinstance(other, CycloScalar):
            if self.ell != other.ell and 1 in (self.ell, other.ell):
                return self._promote(other).p == other._promote(self).p
            return self.ell == other.ell and self.p == other.p
        try:
            return self.p == self._coerce(other).p
        except Exception:
            return NotImplemented

    def __hash__(self):
        return hash((self.ell, tuple(str(c) for c in self.p.coeffs())))

    def coefficients(self) -> list[Fraction]:
        return [_frac(c) for c in self.p.coeffs()]

    def to_fraction(self) -> Fraction:
        if self.p.degree() > 0:
            raise ValueError("not a rational number")
        return _frac(self.p[0])

    def __str__(self):
        cs = self.coefficients()
        terms = [(k, c) for k, c in enumerate(cs) if c != 0]
        if not terms:
            return "0"
        out = []
        for k, c in sorted(terms, reverse=True):
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if k == 0:
                body = _format_coeff(a)
            else:
                mono = "z" if k == 1 else f"z^{k}"
                body = mono if a == 1 else f"{_format_coeff(a)}*{mono}"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"CycloScalar({self}, l={self.ell})"


@dataclass(frozen=True)
class SpecPoint:
    """q = 1 (ell = 1) or q = a primitive ell-th root of unity, ell odd."""

    ell: int = 1

    def __post_init__(self):
        if self.ell < 1 or self.ell % 2 == 0:
            raise ConfigError(f"specialization order must be odd and positive, got {self.ell}")

    @property
    def is_one(self) -> bool:
        return self.ell == 1

    def check_datum(self, datum) -> None:
        if datum.letter == "G" and self.ell % 3 == 0:
            raise ConfigError("for type G2 the order must be prime to 3")

    @staticmethod
    def parse(text: str) -> "SpecPoint":
        text = text.strip()
        if text == "1":
            return SpecPoint(1)
        m = re.fullmatch(r"zeta:(\d+)", text)
        if not m:
            raise ConfigError(f"cannot parse specialization point {text!r}")
        return SpecPoint(int(m.group(1)))

    def __str__(self):
        return "1" if self.ell == 1 else f"zeta:{self.ell}"


def in_localization(a: QScalar, z: SpecPoint) -> bool:
    if a.d.is_one():
        return True
    return not (a.d % cyclotomic_poly(z.ell)).is_zero()


def specialize_scalar(a: QScalar, z: SpecPoint) -> CycloScalar:
    if a.n.is_zero():
        return CycloScalar.from_int(z.ell, 0)
    if not in_localization(a, z):
        raise LocalizationError(f"{a} has a pole at q = {z}")
    num = CycloScalar(z.ell, a.n) * CycloScalar.zeta(z.ell, a.s)
    if a.d.is_one():
        return num
    return num / CycloScalar(z.ell, a.d)


def divide_exact(a: QScalar, by: QScalar, z: SpecPoint) -> QScalar:
    out = a / by
    if not in_localization(out, z):
        raise NotDivisibleError(f"({a})/({by}) has a pole at q = {z}")
    return out

"""Expressions over U or V: tokenizer, AST and evaluator.

Grammar::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('-' | '+') unary | power
    power := atom ('^' ['-'] INT)?
    atom  := INT | 'q' | '(' expr ')' | NAME '(' args ')'

Generators: E(i) F(i) K(i|weight) A(i) B(i) Eb(k) Fb(k) Ab(k) Bb(k) Kbin(i, m)
on U, and X(i) Y(i) Z(i|weight) Xb(k) Yb(k) Zbin(i, m) on V.  Operators:
dp(gen, n), T(i, x), Tinv(i, x), S(x), Sinv(x), eps(x).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .. import cartan
from ..errors import FlavorError, ParseError, QPoissonError
from ..qalg.algebra import TriangularElement, get_algebra
from ..qalg.middle import binomial_laurent
from ..scalars import QScalar, q_factorial, q_minus_qinv

_TOKEN = re.compile(r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),])")

U_GENS = {"E", "F", "K", "A", "B", "Eb", "Fb", "Ab", "Bb", "Kbin"}
V_GENS = {"X", "Y", "Z", "Xb", "Yb", "Zbin"}
OPERATORS = {"dp", "T", "Tinv", "S", "Sinv", "eps"}
DIVIDABLE = {"E", "F", "X", "Y", "Eb", "Fb", "Xb", "Yb"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


@dataclass(frozen=True)
class Node:
    """One AST node; ``args`` holds child nodes or integer/weight literals."""
    kind: str
    value: object
    args: tuple
    offset: int


@dataclass(frozen=True)
class ParsedExpr:
    source: str
    root: Node

    def position(self, offset: int) -> tuple[int, int]:
        return _line_col(self.source, offset)


def _line_col(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _error(text, offset, message):
    line, col = _line_col(text, offset)
    return ParseError(message, line, col)


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise _error(text, pos, f"unexpected character {text[pos]!r}")
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.take()
        if t.text != text:
            found = repr(t.text) if t.kind != "end" else "end of input"
            raise _error(self.text, t.offset, f"expected {text!r}, found {found}")
        return t

    def fail(self, tok, message):
        raise _error(self.text, tok.offset, message)

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t.kind != "end":
            self.fail(t, f"unexpected {t.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take()
            node = Node("add" if op.text == "+" else "sub", None, (node, self.term()), op.offset)
        return node

    def term(self):
        node = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take()
            node = Node("mul" if op.text == "*" else "div", None, (node, self.unary()), op.offset)
        return node

    def unary(self):
        t = self.peek()
        if t.text == "-":
            self.take()
            return Node("neg", None, (self.unary(),), t.offset)
        if t.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek().text == "^":
            op = self.take()
            return Node("pow", self.signed_int(), (node,), op.offset)
        return node

    def signed_int(self):
        sign = 1
        if self.peek().text == "-":
            self.take()
            sign = -1
        t = self.take()
        if t.kind != "int":
            self.fail(t, "expected an integer")
        return sign * int(t.text)

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return Node("num", int(t.text), (), t.offset)
        if t.kind == "name":
            if t.text == "q":
                return Node("q", None, (), t.offset)
            return self.call(t)
        if t.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        self.fail(t, "unexpected end of input" if t.kind == "end" else f"unexpected {t.text!r}")

    def weight_or_index(self):
        if self.peek().text == "(":
            self.take()
            parts = [self.signed_int()]
            while self.peek().text == ",":
                self.take()
                parts.append(self.signed_int())
            self.expect(")")
            return ("weight", tuple(parts))
        return ("index", self.signed_int())

    def call(self, name):
        n = name.text
        if n not in U_GENS | V_GENS | OPERATORS:
            self.fail(name, f"unknown generator or operator {n!r}")
        self.expect("(")
        if n in ("K", "Z"):
            args = (self.weight_or_index(),)
        elif n in ("Kbin", "Zbin"):
            i = self.signed_int()
            self.expect(",")
            args = (i, self.signed_int())
        elif n == "dp":
            gen = self.peek()
            inner = self.atom()
            if inner.kind != "gen" or inner.value not in DIVIDABLE:
                self.fail(gen, "dp expects a generator E, F, X, Y or a root vector")
            self.expect(",")
            args = (inner, self.signed_int())
        elif n in ("T", "Tinv"):
            i = self.signed_int()
            self.expect(",")
            args = (i, self.expr())
        elif n in ("S", "Sinv", "eps"):
            args = (self.expr(),)
        else:
            args = (self.signed_int(),)
        self.expect(")")
        kind = "op" if n in OPERATORS else "gen"
        return Node(kind, n, args, name.offset)


def parse(text: str) -> ParsedExpr:
    """Parse an expression; errors carry line and column."""
    return ParsedExpr(text, _Parser(text).parse())


# -- evaluation ----------------------------------------------------------------

class Evaluator:
    """Evaluate a ParsedExpr to a QScalar or a TriangularElement over one Cartan datum."""

    def __init__(self, datum, flavor: str | None = None):
        self.datum = datum
        self.flavor = flavor

    def __call__(self, parsed: ParsedExpr):
        self.source = parsed.source
        try:
            return self.eval(parsed.root)
        except ParseError:
            raise
        except QPoissonError as exc:
            raise _error(self.source, parsed.root.offset, str(exc)) from exc

    def fail(self, node, message):
        raise _error(self.source, node.offset, message)

    def alg(self, node, flavor):
        if self.flavor is None:
            self.flavor = flavor
        elif self.flavor != flavor:
            self.fail(node, "expression mixes U and V generators")
        return get_algebra(self.datum, flavor)

    def index(self, node, i):
        if not 1 <= i <= self.datum.rank:
            self.fail(node, f"generator index {i} out of range for {self.datum.name}")
        return i

    def root(self, node, k):
        N = len(self.datum.longest_word())
        if not 1 <= k <= N:
            self.fail(node, f"root index {k} out of range 1..{N}")
        return k

    def eval(self, node):
        kind = node.kind
        if kind == "num":
            return QScalar.from_int(node.value)
        if kind == "q":
            return QScalar.qpow(1)
        if kind == "neg":
            return -self.eval(node.args[0])
        if kind in ("add", "sub", "mul"):
            a, b = (self.eval(x) for x in node.args)
            if isinstance(a, TriangularElement) and isinstance(b, TriangularElement) and a.alg is not b.alg:
                self.fail(node, "expression mixes U and V generators")
            if kind == "add":
                return a + b
            if kind == "sub":
                return a - b
            if isinstance(b, TriangularElement) and not isinstance(a, TriangularElement):
                return b.scale(a)
            return a * b
        if kind == "div":
            a, b = (self.eval(x) for x in node.args)
            if isinstance(b, TriangularElement):
                self.fail(node, "division is only by scalars")
            if not b:
                self.fail(node, "division by zero")
            return a.scale(b.inverse()) if isinstance(a, TriangularElement) else a / b
        if kind == "pow":
            return self.power(node, self.eval(node.args[0]), node.value)
        if kind == "gen":
            return self.generator(node)
        return self.operator(node)

    def power(self, node, x, n):
        if not isinstance(x, TriangularElement):
            if not x and n < 0:
                self.fail(node, "division by zero")
            return x ** n
        if n >= 0:
            return x ** n
        if len(x.terms) != 1:
            self.fail(node, "negative powers are only defined for K and Z monomials")
        ((f, lam, e), c), = x.terms.items()
        if f or e:
            self.fail(node, "negative powers are only defined for K and Z monomials")
        return x.alg.K(cartan.scale(n, lam)).scale(c ** n)

    def generator(self, node):
        n = node.value
        alg = self.alg(node, "U" if n in U_GENS else "V")
        d = self.datum
        if n in ("K", "Z"):
            tag, v = node.args[0]
            if tag == "index":
                return alg.Ki(self.index(node, v))
            if len(v) != d.rank:
                self.fail(node, f"weight {cartan.format_weight(v)} should have {d.rank} coordinates")
            return alg.K(v)
        if n in ("Kbin", "Zbin"):
            i, m = node.args
            self.index(node, i)
            if m < 0:
                self.fail(node, "binomial index must be >= 0")
            out = alg.zero()
            for p, c in binomial_laurent(d.d[i - 1], 0, m).items():
                out = out + alg.Ki(i, p).scale(c)
            return out
        k = node.args[0]
        if n in ("E", "X"):
            return alg.E(self.index(node, k))
        if n in ("F", "Y"):
            return alg.F(self.index(node, k))
        if n in ("A", "B"):
            i = self.index(node, k)
            x = alg.E(i) if n == "A" else alg.F(i)
            return x.scale(q_minus_qinv(d.d[i - 1]))
        k = self.root(node, k)
        evec, fvec = alg.root_vectors()[k - 1]
        if n in ("Eb", "Xb", "Ab"):
            x = alg.plus(evec)
        else:
            x = alg.minus(fvec)
        if n in ("Ab", "Bb"):
            x = x.scale(q_minus_qinv(self.root_half_norm(k)))
        return x

    def root_half_norm(self, k):
        return self.datum.longest_word().half_norms[k - 1]

    def operator(self, node):
        n = node.value
        if n == "dp":
            gen, m = node.args
            if m < 0:
                self.fail(node, "divided power exponent must be >= 0")
            x = self.generator(gen)
            if gen.value in ("E", "F", "X", "Y"):
                d = self.datum.d[self.index(gen, gen.args[0]) - 1]
            else:
                d = self.root_half_norm(gen.args[0])
            return (x ** m).scale(q_factorial(m, d).inverse())
        if n in ("T", "Tinv"):
            i, sub = node.args
            self.index(node, i)
            x = self.as_element(self.eval(sub), node)
            if x.alg.flavor != "U":
                self.fail(node, "the braid action is only defined on U")
            return x.alg.braid_T(i, x, inverse=(n == "Tinv"))
        x = self.as_element(self.eval(node.args[0]), node)
        if n == "S":
            return x.alg.antipode(x)
        if n == "Sinv":
            return x.alg.antipode_inverse(x)
        return x.alg.counit(x)

    def as_element(self, x, node):
        if isinstance(x, TriangularElement):
            return x
        return get_algebra(self.datum, self.flavor or "U").scalar(x)


def evaluate(text: str, datum, flavor: str | None = None):
    """Parse and evaluate; a bare scalar is returned as an element of U (or ``flavor``)."""
    ev = Evaluator(datum, flavor)
    value = ev(parse(text))
    if not isinstance(value, TriangularElement):
        value = get_algebra(datum, ev.flavor or flavor or "U").scalar(value)
    return value


def evaluate_in(text: str, datum, flavor: str):
    """Evaluate and require the given flavor."""
    x = evaluate(text, datum, flavor)
    if x.alg.flavor != flavor:
        raise FlavorError(f"expected an element of {flavor}")
    return x

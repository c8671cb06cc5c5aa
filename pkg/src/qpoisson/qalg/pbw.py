"""PBW monomials in the root vectors and coordinates with respect to them.

Monomials are ordered E_{beta_N}^{n_N} ... E_{beta_1}^{n_1} (descending).
Coordinates are found by inverting, once per weight, the matrix of
monomial expansions in normal-word coordinates.
"""

from __future__ import annotations

from threading import RLock

from .. import cartan
from ..errors import DomainError
from ..linalg import inverse
from ..scalars import ONE, QScalar, q_factorial, q_minus_qinv
from .algebra import TriangularElement, _acc, get_algebra

FLAVORS = ("plain", "L", "DCP")


class PBWTables:
    def __init__(self, datum):
        self.datum = datum
        self.alg = get_algebra(datum, "U")
        self.half = self.alg.half
        self.order = datum.longest_word()
        self.roots = self.order.roots
        self.N = len(self.roots)
        self._mono: dict = {}
        self._power: dict = {}
        self._expand: dict = {}
        self._coords: dict = {}
        self._lock = RLock()

    def monomials(self, gamma) -> list[tuple[int, ...]]:
        gamma = tuple(gamma)
        hit = self._mono.get(gamma)
        if hit is None:
            if not cartan.is_nonneg(gamma):
                raise DomainError(f"{gamma} is not in Q+")
            out: list = []

            def rec(k, rest, acc):
                if k < 0:
                    if not any(rest):
                        out.append(tuple(acc))
                    return
                m = 0
                r = rest
                while cartan.is_nonneg(r):
                    acc[k] = m
                    rec(k - 1, r, acc)
                    m += 1
                    r = cartan.sub(r, self.roots[k])
                acc[k] = 0

            rec(self.N - 1, gamma, [0] * self.N)
            hit = self._mono[gamma] = sorted(out)
        return hit

    def weight(self, m) -> tuple[int, ...]:
        w = self.datum.zero()
        for k, mk in enumerate(m):
            if mk:
                w = cartan.add(w, cartan.scale(mk, self.roots[k]))
        return w

    def _root_power(self, side, k, m) -> dict:
        key = (side, k, m)
        hit = self._power.get(key)
        if hit is None:
            if m == 0:
                hit = {(): ONE}
            else:
                rv = self.alg.root_vectors()[k][0 if side == "+" else 1]
                hit = self.half.multiply(self._root_power(side, k, m - 1), rv)
            self._power[key] = hit
        return hit

    def expand(self, side: str, m) -> dict:
        """Half-algebra vector of the plain monomial with exponents m."""
        m = tuple(m)
        key = (side, m)
        hit = self._expand.get(key)
        if hit is None:
            vec = {(): ONE}
            for k in reversed(range(self.N)):
                if m[k]:
                    vec = self.half.multiply(vec, self._root_power(side, k, m[k]))
            hit = self._expand[key] = vec
        return hit

    def word_coordinates(self, side: str, gamma) -> dict:
        """normal word -> {exponents: coeff}, for the plain basis."""
        gamma = tuple(gamma)
        key = (side, gamma)
        hit = self._coords.get(key)
        if hit is None:
            with self._lock:
                hit = self._coords.get(key)
                if hit is None:
                    hit = self._coords[key] = self._solve(side, gamma)
        return hit

    def _solve(self, side, gamma):
        monos = self.monomials(gamma)
        words = self.half.basis(gamma)
        if len(monos) != len(words):
            raise AssertionError(f"PBW monomials and normal words differ in number at {gamma}")
        index = self.half.index(gamma)
        n = len(words)
        mat = [[0] * n for _ in range(n)]
        for r, m in enumerate(monos):
            for w, c in self.expand(side, m).items():
                mat[r][index[w]] = c
        inv = inverse(mat)
        out = {}
        for w in words:
            row = inv[index[w]]
            out[w] = {monos[r]: QScalar.from_int(row[r]) for r in range(n) if row[r]}
        return out

    def coordinates(self, side: str, vec: dict) -> dict:
        out: dict = {}
        for w, c in vec.items():
            for m, v in self.word_coordinates(side, self.half.weight(w))[w].items():
                _acc(out, m, c * v)
        return out

    def flavor_factor(self, m, flavor: str) -> QScalar:
        """Scalar s with (flavored monomial) = s * (plain monomial)."""
        if flavor == "plain":
            return ONE
        out = ONE
        for k, mk in enumerate(m):
            if mk:
                d = self.order.half_norms[k]
                if flavor == "L":
                    out = out / q_factorial(mk, d)
                elif flavor == "DCP":
                    out = out * q_minus_qinv(d) ** mk
                else:
                    raise DomainError(f"unknown basis flavor {flavor!r}")
        return out


_TABLES: dict = {}


def pbw_tables(datum) -> PBWTables:
    t = _TABLES.get(datum)
    if t is None:
        t = _TABLES[datum] = PBWTables(datum)
    return t


def pbw_expand(alg, m, lam, n, flavor: str = "plain") -> TriangularElement:
    """F_{beta_N}^{m_N}..F_{beta_1}^{m_1} K_lam E_{beta_N}^{n_N}..E_{beta_1}^{n_1},
    with divided powers (L) or (q_b - q_b^-1)-scaled root vectors (DCP)."""
    t = pbw_tables(alg.datum)
    lam = tuple(lam)
    c = t.flavor_factor(m, flavor) * t.flavor_factor(n, flavor)
    fvec = t.expand("-", m)
    evec = t.expand("+", n)
    out: dict = {}
    for fw, fc in fvec.items():
        for ew, ec in evec.items():
            _acc(out, (fw, lam, ew), c * fc * ec)
    return TriangularElement(alg, out)


def pbw_coordinates(x: TriangularElement, flavor: str = "plain") -> dict:
    """{(m, lam, n): coeff} with respect to the flavored PBW basis."""
    t = pbw_tables(x.alg.datum)
    out: dict = {}
    for (f, lam, e), c in x.terms.items():
        fco = t.coordinates("-", {f: ONE})
        eco = t.coordinates("+", {e: ONE})
        for m, cm in fco.items():
            for n, cn in eco.items():
                v = c * cm * cn
                if flavor != "plain":
                    v = v / (t.flavor_factor(m, flavor) * t.flavor_factor(n, flavor))
                _acc(out, (m, lam, n), v)
    return out


def from_pbw(alg, coords: dict, flavor: str = "plain") -> TriangularElement:
    total = alg.zero()
    for (m, lam, n), c in coords.items():
        total = total + pbw_expand(alg, m, lam, n, flavor).scale(c)
    return total

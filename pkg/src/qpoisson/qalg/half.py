"""The half algebras U^+ (equivalently U^-, V^+, V^-) as words modulo the
quantum Serre relations.

A weight component is built from the components one letter lower: every
word of weight gamma is (normal word) * letter up to the ideal, so the
quotient is presented on that small column set, and the only new relations
are (normal word) * (Serre relation).  Columns are ordered by descending
lexicographic word order and pivots are taken leftmost, so the surviving
"normal" words are exactly the words that are not leading words of the
Serre ideal; that set is closed under taking prefixes and factors.
"""

from __future__ import annotations

from itertools import permutations
from threading import RLock

from .. import cartan
from ..errors import DomainError
from ..linalg import rref
from ..scalars import ONE, q_binomial


def word_weight(word, rank: int) -> tuple[int, ...]:
    w = [0] * rank
    for x in word:
        w[x - 1] += 1
    return tuple(w)


def _words_of_weight(gamma):
    letters = [i + 1 for i, c in enumerate(gamma) for _ in range(c)]
    return sorted(set(permutations(letters)), reverse=True)


class HalfAlgebra:
    """Serre quotient of the free algebra on letters 1..rank."""

    def __init__(self, datum: cartan.CartanDatum):
        self.datum = datum
        self.rank = datum.rank
        self._basis: dict = {}
        self._index: dict = {}
        self._right: dict = {}
        self._prod: dict = {}
        self._lock = RLock()
        self.serre = self._serre_relations()

    # -- relations --------------------------------------------------------
    def _serre_relations(self):
        rels = []
        for i in self.datum.indices:
            for j in self.datum.indices:
                if i == j:
                    continue
                r = 1 - self.datum.a[i - 1][j - 1]
                di = self.datum.d[i - 1]
                rel = {}
                for n in range(r + 1):
                    c = q_binomial(r, n, di)
                    rel[(i,) * (r - n) + (j,) + (i,) * n] = c if n % 2 == 0 else -c
                rels.append(rel)
        return rels

    # -- components -------------------------------------------------------
    def weight(self, word):
        return word_weight(word, self.rank)

    def basis(self, gamma) -> list:
        gamma = tuple(gamma)
        b = self._basis.get(gamma)
        if b is None:
            with self._lock:
                b = self._basis.get(gamma)
                if b is None:
                    b = self._build(gamma)
        return b

    def index(self, gamma) -> dict:
        self.basis(gamma)
        return self._index[tuple(gamma)]

    def dim(self, gamma) -> int:
        return len(self.basis(gamma))

    def _build(self, gamma):
        if any(c < 0 for c in gamma) or len(gamma) != self.rank:
            raise DomainError(f"{gamma} is not in Q+")
        if not any(gamma):
            self._basis[gamma] = [()]
            self._index[gamma] = {(): 0}
            return self._basis[gamma]
        columns = []
        for x in range(1, self.rank + 1):
            lower = list(gamma)
            lower[x - 1] -= 1
            if lower[x - 1] < 0:
                continue
            for n in self.basis(tuple(lower)):
                columns.append(n + (x,))
        columns.sort(reverse=True)
        rows = []
        for rel in self.serre:
            wrel = self.weight(next(iter(rel)))
            rest = cartan.sub(gamma, wrel)
            if any(c < 0 for c in rest):
                continue
            for u in self.basis(rest):
                row: dict = {}
                for s, c in rel.items():
                    head = self.reduce(u + s[:-1])
                    for n, v in head.items():
                        col = n + (s[-1],)
                        row[col] = row.get(col, 0) + c * v
                rows.append(row)
        pivot_rows, _ = rref(rows, columns)
        normal = sorted(c for c in columns if c not in pivot_rows)
        index = {w: k for k, w in enumerate(normal)}
        right = {}
        for col in columns:
            if col in index:
                right[col] = {col: ONE}
            else:
                right[col] = {c: -v for c, v in pivot_rows[col].items() if c != col}
        self._right[gamma] = right
        self._index[gamma] = index
        self._basis[gamma] = normal
        return normal

    # -- reduction --------------------------------------------------------
    def times_letter(self, vec: dict, x: int) -> dict:
        """vec * letter for vec a combination of normal words of one weight."""
        out: dict = {}
        for w, c in vec.items():
            col = w + (x,)
            gamma = self.weight(col)
            self.basis(gamma)
            for n, v in self._right[gamma][col].items():
                t = out.get(n)
                t = c * v if t is None else t + c * v
                if t:
                    out[n] = t
                else:
                    out.pop(n, None)
        return out

    def reduce(self, word) -> dict:
        """Normal-word coordinates of an arbitrary word."""
        word = tuple(word)
        gamma = self.weight(word)
        idx = self.index(gamma)
        if word in idx:
            return {word: ONE}
        vec = {(): ONE}
        for x in word:
            vec = self.times_letter(vec, x)
        return vec

    def word_product(self, u, v) -> dict:
        """Normal form of u*v for normal words u, v."""
        if not v:
            return {u: ONE}
        if not u:
            return {v: ONE}
        key = (u, v)
        out = self._prod.get(key)
        if out is None:
            vec = {u: ONE}
            for x in v:
                vec = self.times_letter(vec, x)
            out = self._prod[key] = vec
        return out

    def multiply(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for u, cu in a.items():
            for v, cv in b.items():
                c = cu * cv
                for w, cw in self.word_product(u, v).items():
                    t = out.get(w)
                    t = c * cw if t is None else t + c * cw
                    if t:
                        out[w] = t
                    else:
                        out.pop(w, None)
        return out

    def reduce_vector(self, vec: dict) -> dict:
        """Normalize a combination of arbitrary words."""
        out: dict = {}
        for w, c in vec.items():
            for n, v in self.reduce(w).items():
                t = out.get(n)
                t = c * v if t is None else t + c * v
                if t:
                    out[n] = t
                else:
                    out.pop(n, None)
        return out


def reference_component_basis(half: HalfAlgebra, gamma):
    """Direct computation: row-reduce the span of w1*S*w2 inside all words of
    weight gamma.  Quadratic in the number of words; used as a test oracle."""
    gamma = tuple(gamma)
    words = _words_of_weight(gamma)
    rows = []
    for rel in half.serre:
        wrel = half.weight(next(iter(rel)))
        rest = cartan.sub(gamma, wrel)
        if any(c < 0 for c in rest):
            continue
        for outer in _words_of_weight(rest) if any(rest) else [()]:
            for cut in range(len(outer) + 1):
                row = {}
                for s, c in rel.items():
                    w = outer[:cut] + s + outer[cut:]
                    row[w] = row.get(w, 0) + c
                rows.append(row)
    pivot_rows, _ = rref(rows, words)
    return sorted(w for w in words if w not in pivot_rows)

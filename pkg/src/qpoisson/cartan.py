"""Finite-type root data.

Weights live in the root lattice and are stored as integer tuples in the
simple-root basis.  The symmetrized form is normalized so that short roots
have squared length 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ConfigError, DomainError

MAX_RANK = 4


def _gram(letter: str, rank: int) -> list[list[int]]:
    """Matrix of (alpha_i, alpha_j) for the simple roots, Bourbaki numbering."""
    g = [[0] * rank for _ in range(rank)]
    if letter == "A":
        for i in range(rank):
            g[i][i] = 2
            if i + 1 < rank:
                g[i][i + 1] = g[i + 1][i] = -1
    elif letter == "B":
        for i in range(rank):
            g[i][i] = 4 if i < rank - 1 else 2
            if i + 1 < rank:
                g[i][i + 1] = g[i + 1][i] = -2
    elif letter == "C":
        for i in range(rank):
            g[i][i] = 2 if i < rank - 1 else 4
            if i + 1 < rank:
                g[i][i + 1] = g[i + 1][i] = -1 if i + 1 < rank - 1 else -2
    elif letter == "D":
        for i in range(rank):
            g[i][i] = 2
        for i, j in ((0, 1), (1, 2), (1, 3)):
            g[i][j] = g[j][i] = -1
    elif letter == "G":
        g = [[2, -3], [-3, 6]]
    elif letter == "F":
        g = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    return g


_VALID = {
    "A": range(1, MAX_RANK + 1),
    "B": range(2, MAX_RANK + 1),
    "C": range(3, MAX_RANK + 1),
    "D": range(4, MAX_RANK + 1),
    "G": (2,),
    "F": (4,),
}
EXCEPTIONAL = ("F", "G")


@dataclass(frozen=True)
class RootOrder:
    word: tuple[int, ...]
    roots: tuple[tuple[int, ...], ...]
    half_norms: tuple[int, ...]  # (beta, beta)/2 per root

    def __len__(self):
        return len(self.roots)


@dataclass(frozen=True)
class CartanDatum:
    letter: str
    rank: int
    a: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    gram: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.letter}{self.rank}"

    @property
    def indices(self) -> range:
        return range(1, self.rank + 1)

    def simple(self, i: int) -> tuple[int, ...]:
        self._check_index(i)
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise DomainError(f"index {i} outside 1..{self.rank} for {self.name}")

    def form(self, lam, mu) -> int:
        if len(lam) != self.rank or len(mu) != self.rank:
            raise DomainError("weight length does not match the rank")
        g = self.gram
        return sum(lam[i] * g[i][j] * mu[j]
                   for i in range(self.rank) if lam[i]
                   for j in range(self.rank) if mu[j])

    def coroot_pairing(self, i: int, lam) -> int:
        """2(lam, alpha_i)/(alpha_i, alpha_i)."""
        return sum(self.a[i - 1][j] * lam[j] for j in range(self.rank))

    def reflect(self, i: int, lam) -> tuple[int, ...]:
        self._check_index(i)
        c = self.coroot_pairing(i, lam)
        out = list(lam)
        out[i - 1] -= c
        return tuple(out)

    def longest_word(self) -> RootOrder:
        return _longest_word(self)

    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        return self.longest_word().roots

    def kostant_count(self, gamma) -> int:
        gamma = tuple(gamma)
        if len(gamma) != self.rank or any(c < 0 for c in gamma):
            raise DomainError(f"{gamma} is not in Q+")
        return _kostant(self.positive_roots(), gamma)

    def is_reduced_word_for_w0(self, word) -> bool:
        """True when the word is reduced and has the length of w0."""
        return len(word) == len(self.positive_roots()) and _is_reduced(self, word)

    def roots_of_word(self, word) -> tuple[tuple[int, ...], ...]:
        roots = []
        for k, i in enumerate(word):
            v = self.simple(i)
            for j in reversed(word[:k]):
                v = self.reflect(j, v)
            roots.append(v)
        return tuple(roots)


def height(lam) -> int:
    return sum(lam)


def add(lam, mu) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(lam, mu))


def sub(lam, mu) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(lam, mu))


def scale(c: int, lam) -> tuple[int, ...]:
    return tuple(c * x for x in lam)


def neg(lam) -> tuple[int, ...]:
    return tuple(-x for x in lam)


def is_nonneg(lam) -> bool:
    return all(x >= 0 for x in lam)


@lru_cache(maxsize=None)
def build_cartan(letter: str, rank: int, exceptional: bool = False) -> CartanDatum:
    letter = letter.upper()
    if letter not in _VALID or rank not in _VALID[letter]:
        raise ConfigError(f"unsupported Cartan type {letter}{rank}")
    if letter in EXCEPTIONAL and not exceptional:
        raise ConfigError(f"type {letter}{rank} needs the exceptional-types flag")
    g = _gram(letter, rank)
    a = tuple(tuple(2 * g[i][j] // g[i][i] for j in range(rank)) for i in range(rank))
    d = tuple(g[i][i] // 2 for i in range(rank))
    return CartanDatum(letter, rank, a, d, tuple(tuple(r) for r in g))


def parse_type(text: str, exceptional: bool = False) -> CartanDatum:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
    if not m:
        raise ConfigError(f"cannot parse Cartan type {text!r}")
    return build_cartan(m.group(1).upper(), int(m.group(2)), exceptional)


def parse_weight(text: str, rank: int | None = None) -> tuple[int, ...]:
    m = re.fullmatch(r"\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*,?\s*\)\s*", text)
    if not m:
        raise DomainError(f"cannot parse weight {text!r}")
    w = tuple(int(c) for c in m.group(1).split(","))
    if rank is not None and len(w) != rank:
        raise DomainError(f"weight {text!r} should have {rank} coordinates")
    return w


def format_weight(lam) -> str:
    return "(" + ",".join(str(c) for c in lam) + ")"


def _act(datum: CartanDatum, word, lam):
    """s_{w1} ... s_{wk} applied to lam."""
    for i in reversed(word):
        lam = datum.reflect(i, lam)
    return lam


def _is_reduced(datum, word) -> bool:
    # a word is reduced iff each step sends the next simple root positive
    prefix: list[int] = []
    for i in word:
        if not is_nonneg(_act(datum, prefix, datum.simple(i))):
            return False
        prefix.append(i)
    return True


@lru_cache(maxsize=None)
def _longest_word(datum: CartanDatum) -> RootOrder:
    # first find some reduced word for w0 by extending on the right
    w0: list[int] = []
    while True:
        for i in datum.indices:
            if is_nonneg(_act(datum, w0, datum.simple(i))):
                w0.append(i)
                break
        else:
            break
    inv0 = list(reversed(w0))
    # greedy rule: from w = w0, peel the smallest i with w^{-1}(alpha_i) < 0
    word: list[int] = []
    inv = inv0  # word of w^{-1} = inv0 followed by word reversed
    for _ in range(len(w0)):
        for i in datum.indices:
            v = _act(datum, inv, datum.simple(i))
            if not is_nonneg(v):
                word.append(i)
                inv = inv + [i]
                break
    roots = datum.roots_of_word(word)
    return RootOrder(tuple(word), roots, tuple(datum.form(b, b) // 2 for b in roots))


@lru_cache(maxsize=None)
def _kostant(roots, gamma) -> int:
    if not any(gamma):
        return 1
    if not roots:
        return 0
    first, rest = roots[0], roots[1:]
    total = 0
    g = gamma
    while is_nonneg(g):
        total += _kostant(rest, g)
        g = sub(g, first)
    return total

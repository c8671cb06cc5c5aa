"""The Drinfeld pairing tau on U^{>=0} x U^{<=0} and the pairing sigma on U x V.

tau is evaluated through per-weight Gram blocks between the normal-word
bases of U^+_gamma and U^-_{-gamma}.  sigma rewrites its left argument as a
combination of E_e K_lam S(F_f) and its right argument as Y_g X_h Z_mu, and
then multiplies three tau values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from threading import RLock

from . import cartan
from .errors import DomainError, FlavorError
from .linalg import inverse, rref
from .qalg.algebra import TriangularElement, _acc, get_algebra
from .qalg.middle import character_value
from .qalg.pbw import pbw_tables
from .scalars import (ONE, ZERO, CycloScalar, QScalar, SpecPoint, q_factorial,
                      q_minus_qinv, specialize_scalar)

_qpow = QScalar.qpow


def _dp5(datum, i) -> QScalar:
    """tau(E_i, F_i) = 1/(q_i^-1 - q_i)."""
    return -q_minus_qinv(datum.d[i - 1]).inverse()


class PairingTables:
    """Gram blocks of tau and the S-twisted coordinates used by sigma."""

    def __init__(self, datum):
        self.datum = datum
        self.alg = get_algebra(datum, "U")
        self.valg = get_algebra(datum, "V")
        self.half = self.alg.half
        self._gram: dict = {}
        self._twist_inv: dict = {}
        self._twisted: dict = {}
        self._lock = RLock()

    # -- Gram blocks --------------------------------------------------------
    def gram(self, gamma) -> dict:
        """{(e, f): tau(E_e, F_f)} over normal words of weight gamma."""
        gamma = tuple(gamma)
        hit = self._gram.get(gamma)
        if hit is None:
            with self._lock:
                hit = self._gram.get(gamma)
                if hit is None:
                    hit = self._gram[gamma] = self._build_gram(gamma)
        return hit

    def _build_gram(self, gamma):
        if not cartan.is_nonneg(gamma):
            raise DomainError(f"{gamma} is not in Q+")
        words = self.half.basis(gamma)
        if not any(gamma):
            return {((), ()): ONE}
        form = self.datum.form
        out = {}
        for f in words:
            j = f[-1]
            rest = f[:-1]
            sub = self.gram(self.half.weight(rest))
            for e in words:
                # tau(x, y F_j) = sum tau(x_(1), y) tau(x_(2), F_j); only
                # x_(2) = E_j contributes, with x_(1) = K_nu E_u
                total = ZERO
                for ((nu, u), v), c in self.alg._coproduct_plus(e).items():
                    if v != (j,):
                        continue
                    g = sub.get((u, rest))
                    if g:
                        total = total + c * _qpow(form(nu, self.half.weight(u))) * g
                if total:
                    out[(e, f)] = total * _dp5(self.datum, j)
        return out

    def gram_matrix(self, gamma):
        words = self.half.basis(gamma)
        g = self.gram(gamma)
        return [[g.get((e, f), ZERO) for f in words] for e in words]

    # -- S-twisted coordinates ----------------------------------------------
    def _twist_inverse(self, gamma):
        """Inverse of f -> S(F_f) K_{-gamma} on U^-_{-gamma}, as row dicts."""
        hit = self._twist_inv.get(gamma)
        if hit is None:
            words = self.half.basis(gamma)
            idx = self.half.index(gamma)
            mat = [[ZERO] * len(words) for _ in words]
            for r, f in enumerate(words):
                for (g, lam, _), c in self.alg._antipode_minus(f).terms.items():
                    if lam != gamma:
                        raise AssertionError("antipode of U^- left U^- K_gamma")
                    mat[r][idx[g]] = c
            inv = inverse(mat)
            hit = {g: {words[r]: inv[idx[g]][r] for r in range(len(words)) if inv[idx[g]][r]}
                   for g in words}
            self._twist_inv[gamma] = hit
        return hit

    def twisted_coordinates_key(self, key) -> dict:
        """F_f K_mu E_e = sum c E_e' K_lam S(F_f'), as {(e', lam, f'): c}."""
        hit = self._twisted.get(key)
        if hit is not None:
            return hit
        alg = self.alg
        half = self.half
        form = self.datum.form
        rest = {key: ONE}
        out: dict = {}
        while rest:
            top = max(len(f) + len(e) for f, _, e in rest)
            groups: dict = {}
            for (f, mu, e), c in rest.items():
                if len(f) + len(e) == top:
                    groups.setdefault((e, mu, half.weight(f)), {})[f] = c
            for (e, mu, gamma), vec in groups.items():
                lam = cartan.sub(mu, gamma)
                # top part of E_e K_lam S(F_f) is q^{-(lam,gamma)-(mu,wt e)} s(f) K_mu E_e
                scale = _qpow(form(lam, gamma) + form(mu, half.weight(e)))
                tinv = self._twist_inverse(gamma)
                coeffs: dict = {}
                for g, c in vec.items():
                    for f, v in tinv[g].items():
                        _acc(coeffs, f, c * v * scale)
                for f, a in coeffs.items():
                    _acc(out, (e, lam, f), a)
                    piece = alg.plus_word(e) * alg.K(lam) * alg._antipode_minus(f)
                    for k, v in piece.terms.items():
                        _acc(rest, k, -(a * v))
        self._twisted[key] = out
        return out

    def twisted_coordinates(self, u: TriangularElement) -> dict:
        out: dict = {}
        for key, c in u.terms.items():
            for k, v in self.twisted_coordinates_key(key).items():
                _acc(out, k, c * v)
        return out


_TABLES: dict = {}
_TLOCK = RLock()


def pairing_tables(datum) -> PairingTables:
    with _TLOCK:
        t = _TABLES.get(datum)
        if t is None:
            t = _TABLES[datum] = PairingTables(datum)
    return t


def gram_block(datum, gamma):
    """(normal words, Gram matrix) for weight gamma."""
    t = pairing_tables(datum)
    return t.half.basis(tuple(gamma)), t.gram_matrix(tuple(gamma))


def gram_invertible(datum, gamma) -> bool:
    try:
        inverse(gram_block(datum, gamma)[1])
    except ArithmeticError:
        return False
    return True


def _check_u(x, name):
    if x.alg.flavor != "U":
        raise FlavorError(f"{name} must be an element of U")


def tau(x: TriangularElement, y: TriangularElement) -> QScalar:
    """tau(x, y) for x in U^{>=0}, y in U^{<=0}."""
    _check_u(x, "x")
    _check_u(y, "y")
    if any(f for f, _, _ in x.terms):
        raise DomainError("first argument of tau must lie in U^{>=0}")
    if any(e for _, _, e in y.terms):
        raise DomainError("second argument of tau must lie in U^{<=0}")
    t = pairing_tables(x.alg.datum)
    form = t.datum.form
    half = t.half
    total = ZERO
    for (_, lam, e), cx in x.terms.items():
        we = half.weight(e)
        for (f, mu, _), cy in y.terms.items():
            if half.weight(f) != we:
                continue
            g = t.gram(we).get((e, f))
            if g:
                # K_lam E_e = q^{(lam, wt e)} E_e K_lam
                total = total + cx * cy * g * _qpow(form(lam, we) - form(lam, mu))
    return total


def tau_recursive(x: TriangularElement, y: TriangularElement) -> QScalar:
    """Independent evaluation of tau straight from the defining rules.

    Works on raw words (no Gram blocks, no coproduct tables): the last letter
    of the F-word is split off, the coproduct of the E-word is expanded one
    letter at a time, and every K is moved by the commutation rule.
    """
    _check_u(x, "x")
    _check_u(y, "y")
    datum = x.alg.datum
    form = datum.form
    half = x.alg.half
    total = ZERO
    for (f0, lam, e), cx in x.terms.items():
        if f0:
            raise DomainError("first argument of tau must lie in U^{>=0}")
        for (f, mu, e0), cy in y.terms.items():
            if e0:
                raise DomainError("second argument of tau must lie in U^{<=0}")
            we = half.weight(e)
            if we != half.weight(f):
                continue
            v = _tau_words(datum, e, f)
            if v:
                total = total + cx * cy * v * _qpow(form(lam, we) - form(lam, mu))
    return total


@lru_cache(maxsize=None)
def _tau_words(datum, e: tuple, f: tuple) -> QScalar:
    if len(e) != len(f):
        return ZERO
    if not e:
        return ONE
    j = f[-1]
    total = ZERO
    for k, x in enumerate(e):
        if x != j:
            continue
        # leg 1 is E_{e<k} K_j E_{e>k} = q^{(alpha_j, wt e>k)} E_{e without k} K_j
        after = sum(datum.form(datum.simple(j), datum.simple(y)) for y in e[k + 1:])
        sub = _tau_words(datum, e[:k] + e[k + 1:], f[:-1])
        if sub:
            total = total + _qpow(after) * sub
    return total * _dp5(datum, j) if total else ZERO


def tau_pbw_closed_form(datum, m) -> QScalar:
    """tau(E^m, F^m) for the descending PBW monomials with exponents m."""
    order = datum.longest_word()
    if len(m) != len(order.roots):
        raise DomainError("exponent vector length must equal the number of positive roots")
    out = ONE
    for mk, d in zip(m, order.half_norms):
        if mk < 0:
            raise DomainError("exponents must be nonnegative")
        if mk:
            sign = -1 if mk % 2 else 1
            out = out * q_factorial(mk, d) * _qpow(d * mk * (mk - 1) // 2) * sign
            out = out / q_minus_qinv(d) ** mk
    return out


def tau_pbw(datum, n, m, oracle: bool = True) -> QScalar:
    """tau(E^n, F^m) on plain PBW monomials."""
    t = pbw_tables(datum)
    alg = t.alg
    x = alg.plus(t.expand("+", n))
    y = alg.minus(t.expand("-", m))
    return tau_recursive(x, y) if oracle else tau(x, y)


# -- sigma ------------------------------------------------------------------

def sigma(u: TriangularElement, v: TriangularElement) -> QScalar:
    """sigma(u, v) for u in U and v in V."""
    return sigma_row(u, [v])[0]


def sigma_row(u: TriangularElement, vs) -> list:
    """[sigma(u, v) for v in vs], sharing the twisted coordinates of u."""
    if u.alg.flavor != "U" or any(v.alg.flavor != "V" for v in vs):
        raise FlavorError("sigma pairs an element of U with an element of V")
    if any(u.alg.datum != v.alg.datum for v in vs):
        raise DomainError("arguments belong to different Cartan data")
    t = pairing_tables(u.alg.datum)
    form = t.datum.form
    half = t.half
    tw = [((e, lam, f), cu, half.weight(e), half.weight(f)) for (e, lam, f), cu in t.twisted_coordinates(u).items()]
    out = []
    for v in vs:
        total = ZERO
        for (e, lam, f), cu, we, wf in tw:
            ge, gf = t.gram(we), t.gram(wf)
            for (g, mu, h), cv in v.terms.items():
                if half.weight(g) != we or half.weight(h) != wf:
                    continue
                a = ge.get((e, g))
                if not a:
                    continue
                b = gf.get((h, f))
                if not b:
                    continue
                # Y_g Z_mu X_h = q^{(mu, wt h)} Y_g X_h Z_mu
                total = total + cu * cv * a * b * _qpow(form(lam, mu) + form(mu, wf))
        out.append(total)
    return out


def sigma_binomial_row(u: TriangularElement, v: TriangularElement, mids) -> list:
    """[sigma(u, Y_v M X_v) for M in mids] where v = sum Y_g X_h has trivial middle
    and M runs over binomial middle keys; uses sigma(K_lam, M) = character_value."""
    t = pairing_tables(u.alg.datum)
    datum, half = t.datum, t.half
    acc: dict = {}
    for (e, lam, f), cu in t.twisted_coordinates(u).items():
        we, wf = half.weight(e), half.weight(f)
        ge, gf = t.gram(we), t.gram(wf)
        for (g, mu, h), cv in v.terms.items():
            if any(mu):
                raise DomainError("v must have trivial middle part")
            if half.weight(g) != we or half.weight(h) != wf:
                continue
            a = ge.get((e, g))
            b = gf.get((h, f)) if a else None
            if a and b:
                _acc(acc, cartan.add(lam, wf), cu * cv * a * b)
    out = []
    for mid in mids:
        total = ZERO
        for shift, c in acc.items():
            total = total + c * character_value(datum, mid, shift)
        out.append(total)
    return out


def sigma_invariance_check(u: TriangularElement, v: TriangularElement, v2: TriangularElement) -> bool:
    """sigma(u, v v2) == sum sigma(u_(1), v) sigma(u_(2), v2)."""
    lhs = sigma(u, v * v2)
    alg = u.alg
    rhs = ZERO
    for (k1, k2), c in alg.coproduct(u).terms.items():
        a = sigma(alg.basis_element(k1), v)
        if a:
            rhs = rhs + c * a * sigma(alg.basis_element(k2), v2)
    return lhs == rhs


# -- radical of the specialized pairing on V^0 ------------------------------

def middle_keys(rank: int, degree: int):
    """Binomial basis keys with every m_i <= degree."""
    one = [(eps, m) for m in range(degree + 1) for eps in (0, 1)]
    return list(itertools.product(one, repeat=rank))


def evaluation_box(rank: int, ell: int, degree: int):
    side = ell * (degree + 1)
    coords = range(-side + 1, side)
    return list(itertools.product(coords, repeat=rank))


def _spec_value(datum, key, lam, z):
    return character_value(datum, key, lam, z)


def middle_vanishes(datum, z: SpecPoint, coords: dict) -> bool:
    """Whether sum c * prod Z^eps [Z; m] pairs to zero with every K_lam at z.

    ``coords`` maps binomial keys to CycloScalar (or specializable QScalar)
    coefficients.
    """
    if not coords:
        return True
    degree = max(m for key in coords for _, m in key)
    for lam in evaluation_box(datum.rank, z.ell, degree):
        total = CycloScalar.from_int(z.ell, 0)
        for key, c in coords.items():
            if isinstance(c, QScalar):
                c = specialize_scalar(c, z)
            total = total + c * _spec_value(datum, key, lam, z)
        if total:
            return False
    return True


@dataclass(frozen=True)
class RadicalBasis:
    """Kernel of lam -> sigma_z(K_lam, .) on binomial degree <= bound."""
    datum: object
    point: SpecPoint
    bound: int
    vectors: tuple

    def __len__(self):
        return len(self.vectors)

    def contains(self, coords: dict) -> bool:
        """Membership of a V^0 element (binomial coordinates) in the radical."""
        return middle_vanishes(self.datum, self.point, coords)


def radical_truncated(datum, z: SpecPoint, bound: int) -> RadicalBasis:
    z.check_datum(datum)
    cols = middle_keys(datum.rank, bound)
    basis: dict = {}
    rows_seen = 0
    for lam in evaluation_box(datum.rank, z.ell, bound):
        row = {k: _spec_value(datum, k, lam, z) for k in cols}
        basis, _ = _extend(basis, row, cols)
        rows_seen += 1
        if len(basis) == len(cols):
            break
    pivots = [c for c in cols if c in basis]
    vectors = []
    for fcol in cols:
        if fcol in basis:
            continue
        vec = {fcol: CycloScalar.from_int(z.ell, 1)}
        for p in pivots:
            c = basis[p].get(fcol)
            if c:
                vec[p] = -c
        vectors.append(vec)
    return RadicalBasis(datum, z, bound, tuple(vectors))


def _extend(basis, row, cols):
    rows = list(basis.values()) + [row]
    return rref(rows, cols)

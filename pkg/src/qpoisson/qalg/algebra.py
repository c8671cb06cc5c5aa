"""Triangular normal forms for U = U_q(g) and V = U_q(m).

An element is a finite sum of keys ``(f, lam, e)`` meaning
``F_f * K_lam * E_e`` (U) or ``Y_f * Z_lam * X_e`` (V), where ``f`` and
``e`` are normal words of the half algebra.  Both flavors share one
``HalfAlgebra`` per Cartan datum, which is what makes the eta maps trivial
on coordinates.
"""

from __future__ import annotations

from functools import lru_cache
from threading import RLock

from .. import cartan
from ..errors import DomainError, FlavorError
from ..scalars import ONE, ZERO, QScalar, q_factorial, q_minus_qinv
from .half import HalfAlgebra

_qpow = QScalar.qpow


def _acc(out: dict, key, c) -> None:
    t = out.get(key)
    t = c if t is None else t + c
    if t:
        out[key] = t
    else:
        out.pop(key, None)


class TriangularElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms: dict):
        self.alg = alg
        self.terms = terms

    # -- arithmetic -------------------------------------------------------
    def _same(self, other):
        if not isinstance(other, TriangularElement):
            return self.alg.scalar(other)
        if other.alg is not self.alg:
            raise FlavorError("elements belong to different algebras")
        return other

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return TriangularElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return TriangularElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        if isinstance(other, TriangularElement):
            return self.alg.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only defined for K")
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c):
        c = QScalar.from_int(c)
        if not c:
            return TriangularElement(self.alg, {})
        return TriangularElement(self.alg, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TriangularElement):
            try:
                other = self.alg.scalar(other)
            except Exception:
                return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def weight(self):
        """Weight if homogeneous, else None."""
        ws = {self.alg.key_weight(k) for k in self.terms}
        if len(ws) == 1:
            return ws.pop()
        if not ws:
            return self.alg.datum.zero()
        return None

    def __str__(self):
        from .printing import format_element
        return format_element(self)

    def __repr__(self):
        return f"<{self.alg.flavor}({self.alg.datum.name}) {self}>"


class TensorElement:
    """Sum of pure tensors of triangular keys, all from one algebra."""

    __slots__ = ("alg", "arity", "terms")

    def __init__(self, alg, arity: int, terms: dict):
        self.alg = alg
        self.arity = arity
        self.terms = terms

    def __add__(self, other):
        if other.arity != self.arity:
            raise ValueError("tensor arity mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return TensorElement(self.alg, self.arity, out)

    def __neg__(self):
        return TensorElement(self.alg, self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = QScalar.from_int(c)
        return TensorElement(self.alg, self.arity,
                             {k: v * c for k, v in self.terms.items()} if c else {})

    def __eq__(self, other):
        return (isinstance(other, TensorElement) and self.arity == other.arity
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms))

    def legs(self):
        """Iterate (coeff, [TriangularElement per leg])."""
        for keys, c in self.terms.items():
            yield c, [self.alg.basis_element(k) for k in keys]

    def multiply(self, other):
        """Leg-wise product."""
        alg = self.alg
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                pieces = [alg.multiply_keys(a, b) for a, b in zip(k1, k2)]
                _expand_tensor(out, pieces, c1 * c2)
        return TensorElement(alg, self.arity, out)

    def apply(self, maps):
        """Apply one linear map (key -> TriangularElement) per leg."""
        out: dict = {}
        for keys, c in self.terms.items():
            pieces = [f(k).terms for f, k in zip(maps, keys)]
            _expand_tensor(out, pieces, c)
        return TensorElement(self.alg, self.arity, out)

    def contract(self) -> TriangularElement:
        """Multiply the legs together in order."""
        alg = self.alg
        total = alg.zero()
        for keys, c in self.terms.items():
            x = alg.basis_element(keys[0])
            for k in keys[1:]:
                x = alg.multiply(x, alg.basis_element(k))
            total = total + x.scale(c)
        return total

    def __str__(self):
        from .printing import format_tensor
        return format_tensor(self)


def _expand_tensor(out, pieces, c):
    partial = [((), c)]
    for piece in pieces:
        partial = [(ks + (k,), pc * v) for ks, pc in partial for k, v in piece.items()]
    for ks, v in partial:
        _acc(out, ks, v)


class QuantumAlgebra:
    """U_q(g) (flavor 'U') or U_q(m) (flavor 'V') for a Cartan datum."""

    def __init__(self, datum: cartan.CartanDatum, flavor: str = "U", half: HalfAlgebra | None = None):
        if flavor not in ("U", "V"):
            raise FlavorError(f"unknown flavor {flavor!r}")
        self.datum = datum
        self.flavor = flavor
        self.half = half or HalfAlgebra(datum)
        self.order = datum.longest_word()
        # K_lam F_w = q^{sign (lam, wt w)} F_w K_lam
        self.minus_sign = -1 if flavor == "U" else 1
        self._lock = RLock()
        self._straight: dict = {}
        self._cop_plus: dict = {}
        self._cop_minus: dict = {}
        self._s_plus: dict = {}
        self._s_minus: dict = {}
        self._braid: dict = {}
        self._roots = None
        self._zero_w = datum.zero()

    def __repr__(self):
        return f"QuantumAlgebra({self.datum.name}, {self.flavor})"

    # -- construction -----------------------------------------------------
    def element(self, terms: dict) -> TriangularElement:
        out = {}
        for k, c in terms.items():
            c = QScalar.from_int(c)
            if c:
                _acc(out, k, c)
        return TriangularElement(self, out)

    def zero(self):
        return TriangularElement(self, {})

    def one(self):
        return TriangularElement(self, {((), self._zero_w, ()): ONE})

    def scalar(self, c):
        c = QScalar.from_int(c)
        return TriangularElement(self, {((), self._zero_w, ()): c} if c else {})

    def basis_element(self, key) -> TriangularElement:
        return TriangularElement(self, {key: ONE})

    def K(self, lam) -> TriangularElement:
        lam = tuple(lam)
        if len(lam) != self.datum.rank:
            raise DomainError("weight length does not match the rank")
        return TriangularElement(self, {((), lam, ()): ONE})

    def Ki(self, i: int, power: int = 1) -> TriangularElement:
        return self.K(cartan.scale(power, self.datum.simple(i)))

    def E(self, i: int) -> TriangularElement:
        self.datum._check_index(i)
        return TriangularElement(self, {((), self._zero_w, (i,)): ONE})

    def F(self, i: int) -> TriangularElement:
        self.datum._check_index(i)
        return TriangularElement(self, {((i,), self._zero_w, ()): ONE})

    # the V generators are the same slots
    X = E
    Y = F
    Z = K

    def plus(self, vec: dict) -> TriangularElement:
        """Embed a half-algebra vector on the E (or X) side."""
        return TriangularElement(self, {((), self._zero_w, w): c for w, c in vec.items()})

    def minus(self, vec: dict) -> TriangularElement:
        return TriangularElement(self, {(w, self._zero_w, ()): c for w, c in vec.items()})

    def plus_word(self, word) -> TriangularElement:
        return self.plus(self.half.reduce(word))

    def minus_word(self, word) -> TriangularElement:
        return self.minus(self.half.reduce(word))

    def key_weight(self, key):
        f, _, e = key
        return cartan.sub(self.half.weight(e), self.half.weight(f))

    # -- multiplication ---------------------------------------------------
    def multiply(self, a: TriangularElement, b: TriangularElement) -> TriangularElement:
        if a.alg is not self or b.alg is not self:
            raise FlavorError("elements belong to different algebras")
        out: dict = {}
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                c = ca * cb
                for k, v in self.multiply_keys(ka, kb).items():
                    _acc(out, k, c * v)
        return TriangularElement(self, out)

    def multiply_keys(self, ka, kb) -> dict:
        f1, l1, e1 = ka
        f2, l2, e2 = kb
        half = self.half
        form = self.datum.form
        out: dict = {}
        for (f, mu, e), c in self._straighten(e1, f2).items():
            exp = self.minus_sign * form(l1, half.weight(f)) - form(l2, half.weight(e))
            cc = c * _qpow(exp) if exp else c
            lam = tuple(x + y + z for x, y, z in zip(l1, mu, l2))
            fpart = half.word_product(f1, f)
            epart = half.word_product(e, e2)
            for fw, fc in fpart.items():
                for ew, ec in epart.items():
                    _acc(out, (fw, lam, ew), cc * fc * ec)
        return out

    def _straighten(self, e, f) -> dict:
        """E_e F_f as a dict of keys (normal words in, normal words out)."""
        if not e or not f or self.flavor == "V":
            return {(f, self._zero_w, e): ONE}
        key = (e, f)
        hit = self._straight.get(key)
        if hit is not None:
            return hit
        half = self.half
        form = self.datum.form
        x = e[-1]
        e0 = e[:-1]
        ax = self.datum.simple(x)
        out: dict = {}
        # E_e0 F_f E_x
        for (g, mu, h), c in self._straighten(e0, f).items():
            for hw, hc in half.word_product(h, (x,)).items():
                _acc(out, (g, mu, hw), c * hc)
        # commutator terms
        denom = q_minus_qinv(self.datum.d[x - 1]).inverse()
        for t, letter in enumerate(f):
            if letter != x:
                continue
            after = half.weight(f[t + 1:])
            p = form(ax, after)
            rest = half.reduce(f[:t] + f[t + 1:])
            for sign, nu, coef in ((1, ax, _qpow(-p)), (-1, cartan.neg(ax), _qpow(p))):
                base = denom * coef if sign > 0 else -(denom * coef)
                for g, gc in rest.items():
                    for (g2, mu, h), c in self._straighten(e0, g).items():
                        ex = -form(nu, half.weight(h))
                        val = base * gc * c
                        if ex:
                            val = val * _qpow(ex)
                        _acc(out, (g2, cartan.add(mu, nu), h), val)
        self._straight[key] = out
        return out

    # -- Hopf structure ---------------------------------------------------
    def counit(self, a: TriangularElement) -> QScalar:
        total = ZERO
        for (f, _, e), c in a.terms.items():
            if not f and not e:
                total = total + c
        return total

    def _coproduct_plus(self, e) -> dict:
        """Delta(E_e) = sum c (K_nu E_u) (x) E_v, keys ((nu, u), v)."""
        hit = self._cop_plus.get(e)
        if hit is not None:
            return hit
        if not e:
            return {((self._zero_w, ()), ()): ONE}
        half = self.half
        form = self.datum.form
        x = e[-1]
        ax = self.datum.simple(x)
        out: dict = {}
        for ((nu, u), v), c in self._coproduct_plus(e[:-1]).items():
            for uw, uc in half.word_product(u, (x,)).items():
                _acc(out, ((nu, uw), v), c * uc)
            p = -form(ax, half.weight(u))
            cc = c * _qpow(p) if p else c
            for vw, vc in half.word_product(v, (x,)).items():
                _acc(out, ((cartan.add(nu, ax), u), vw), cc * vc)
        self._cop_plus[e] = out
        return out

    def _coproduct_minus(self, f) -> dict:
        """Delta(F_f) = sum c F_a (x) (F_b K_mu), keys (a, (b, mu))."""
        hit = self._cop_minus.get(f)
        if hit is not None:
            return hit
        if not f:
            return {((), ((), self._zero_w)): ONE}
        half = self.half
        form = self.datum.form
        x = f[-1]
        ax = self.datum.simple(x)
        kx = ax if self.flavor == "V" else cartan.neg(ax)
        out: dict = {}
        for (a, (b, mu)), c in self._coproduct_minus(f[:-1]).items():
            for aw, ac in half.word_product(a, (x,)).items():
                _acc(out, (aw, (b, cartan.add(mu, kx))), c * ac)
            p = self.minus_sign * form(mu, ax)
            cc = c * _qpow(p) if p else c
            for bw, bc in half.word_product(b, (x,)).items():
                _acc(out, (a, (bw, mu)), cc * bc)
        self._cop_minus[f] = out
        return out

    def coproduct_keys(self, key) -> dict:
        f, lam, e = key
        out: dict = {}
        plus = self._coproduct_plus(e)
        for (a, (b, mu)), cf in self._coproduct_minus(f).items():
            for ((nu, u), v), ce in plus.items():
                left = (a, cartan.add(lam, nu), u)
                right = (b, cartan.add(mu, lam), v)
                _acc(out, (left, right), cf * ce)
        return out

    def coproduct(self, a: TriangularElement, n: int = 1) -> TensorElement:
        """Delta_n(a) with n+1 tensor legs."""
        if n < 1:
            raise ValueError("coproduct order must be >= 1")
        out: dict = {}
        for k, c in a.terms.items():
            for pair, v in self.coproduct_keys(k).items():
                _acc(out, pair, c * v)
        t = TensorElement(self, 2, out)
        for m in range(2, n + 1):
            nxt: dict = {}
            for keys, c in t.terms.items():
                for (l, r), v in self.coproduct_keys(keys[0]).items():
                    _acc(nxt, (l, r) + keys[1:], c * v)
            t = TensorElement(self, m + 1, nxt)
        return t

    def _antipode_plus(self, e) -> TriangularElement:
        hit = self._s_plus.get(e)
        if hit is not None:
            return hit
        if not e:
            return self.one()
        x = e[-1]
        sx = -(self.Ki(x, -1) * self.E(x))
        out = sx * self._antipode_plus(e[:-1])
        self._s_plus[e] = out
        return out

    def _antipode_minus(self, f) -> TriangularElement:
        hit = self._s_minus.get(f)
        if hit is not None:
            return hit
        if not f:
            return self.one()
        x = f[-1]
        sx = -(self.F(x) * self.Ki(x, 1 if self.flavor == "U" else -1))
        out = sx * self._antipode_minus(f[:-1])
        self._s_minus[f] = out
        return out

    def antipode(self, a: TriangularElement) -> TriangularElement:
        total = self.zero()
        for (f, lam, e), c in a.terms.items():
            x = self._antipode_plus(e) * self.K(cartan.neg(lam)) * self._antipode_minus(f)
            total = total + x.scale(c)
        return total

    def antipode_inverse(self, a: TriangularElement) -> TriangularElement:
        """S^{-1}, an algebra anti-automorphism."""
        total = self.zero()
        for (f, lam, e), c in a.terms.items():
            x = self.one()
            for letter in reversed(e):
                x = x * self._antipode_inv_gen("+", letter)
            x = x * self.K(cartan.neg(lam))
            for letter in reversed(f):
                x = x * self._antipode_inv_gen("-", letter)
            total = total + x.scale(c)
        return total

    def _antipode_inv_gen(self, side, i):
        # S(-E_i K_i^-1) = E_i ; S(-q_i^-2 F_i K_i) = F_i  (U)
        # S(-X_i Z_i^-1) = X_i ; S(-q_i^-2 Y_i Z_i^-1) = Y_i (V)
        di = self.datum.d[i - 1]
        if side == "+":
            return -(self.E(i) * self.Ki(i, -1))
        power = 1 if self.flavor == "U" else -1
        return (self.F(i) * self.Ki(i, power)).scale(-_qpow(-2 * di))

    # -- braid group action -----------------------------------------------
    def braid_T(self, i: int, a: TriangularElement, inverse: bool = False) -> TriangularElement:
        if self.flavor != "U":
            raise FlavorError("the braid group action is only defined on U")
        self.datum._check_index(i)
        total = self.zero()
        for (f, lam, e), c in a.terms.items():
            x = self._braid_word(i, inverse, "-", f)
            x = x * self.K(self.datum.reflect(i, lam))
            x = x * self._braid_word(i, inverse, "+", e)
            total = total + x.scale(c)
        return total

    def _braid_word(self, i, inverse, side, word):
        key = (i, inverse, side, word)
        hit = self._braid.get(key)
        if hit is not None:
            return hit
        if not word:
            return self.one()
        out = self._braid_word(i, inverse, side, word[:-1]) * self._braid_gen(i, inverse, side, word[-1])
        self._braid[key] = out
        return out

    @lru_cache(maxsize=None)
    def _braid_gen(self, i, inverse, side, j):
        d = self.datum
        di = d.d[i - 1]
        if i == j:
            if side == "+":
                # T(E_i) = -F_i K_i ; T^-1(E_i) = -K_i^-1 F_i
                if not inverse:
                    return -(self.F(i) * self.Ki(i))
                return -(self.Ki(i, -1) * self.F(i))
            # T(F_i) = -K_i^-1 E_i ; T^-1(F_i) = -E_i K_i
            if not inverse:
                return -(self.Ki(i, -1) * self.E(i))
            return -(self.E(i) * self.Ki(i))
        r = -d.a[i - 1][j - 1]
        vec: dict = {}
        for k in range(r + 1):
            sign = -1 if k % 2 else 1
            if side == "+":
                c = _qpow(-k * di) * sign / (q_factorial(r - k, di) * q_factorial(k, di))
                word = (i,) * (k if inverse else r - k) + (j,) + (i,) * (r - k if inverse else k)
            else:
                c = _qpow(k * di) * sign / (q_factorial(r - k, di) * q_factorial(k, di))
                word = (i,) * (r - k if inverse else k) + (j,) + (i,) * (k if inverse else r - k)
            for w, v in self.half.reduce(word).items():
                _acc(vec, w, c * v)
        return self.plus(vec) if side == "+" else self.minus(vec)

    def braid_word(self, word, a: TriangularElement, inverse: bool = False) -> TriangularElement:
        """T_{i1} ... T_{ik}(a) (rightmost applied first)."""
        for i in reversed(tuple(word)):
            a = self.braid_T(i, a, inverse)
        return a

    # -- root vectors -----------------------------------------------------
    def root_vectors(self):
        """[(E_beta_k, F_beta_k)] as half-algebra vectors, k = 1..N."""
        if self._roots is None:
            with self._lock:
                if self._roots is None:
                    self._roots = _root_vectors(self.datum, self.half)
        return self._roots

    def Eb(self, k: int) -> TriangularElement:
        return self.plus(self._root(k)[0])

    def Fb(self, k: int) -> TriangularElement:
        return self.minus(self._root(k)[1])

    def _root(self, k):
        roots = self.root_vectors()
        if not 1 <= k <= len(roots):
            raise DomainError(f"root index {k} outside 1..{len(roots)}")
        return roots[k - 1]


_INSTANCES: dict = {}
_HALVES: dict = {}
_GLOBAL_LOCK = RLock()


def get_algebra(datum: cartan.CartanDatum, flavor: str = "U") -> QuantumAlgebra:
    key = (datum, flavor)
    with _GLOBAL_LOCK:
        alg = _INSTANCES.get(key)
        if alg is None:
            half = _HALVES.get(datum)
            if half is None:
                half = _HALVES[datum] = HalfAlgebra(datum)
            alg = _INSTANCES[key] = QuantumAlgebra(datum, flavor, half)
    return alg


def _root_vectors(datum, half):
    alg = get_algebra(datum, "U")
    order = datum.longest_word()
    out = []
    for k, ik in enumerate(order.word):
        prefix = order.word[:k]
        ev = alg.braid_word(prefix, alg.E(ik))
        fv = alg.braid_word(prefix, alg.F(ik))
        beta = order.roots[k]
        evec = {}
        for (f, lam, e), c in ev.terms.items():
            if f or any(lam) or half.weight(e) != beta:
                raise AssertionError(f"root vector {k + 1} is not in U+ of weight {beta}")
            evec[e] = c
        fvec = {}
        for (f, lam, e), c in fv.terms.items():
            if e or any(lam) or half.weight(f) != beta:
                raise AssertionError(f"root vector {k + 1} is not in U- of weight -{beta}")
            fvec[f] = c
        out.append((evec, fvec))
    return out


# -- transport between V and U -------------------------------------------------

def eta(v: TriangularElement, which: str) -> TriangularElement:
    """eta^{<=0}: Y -> F, Z_lam -> K_{-lam};  eta^{>=0}: X -> E, Z_lam -> K_lam."""
    if v.alg.flavor != "V":
        raise FlavorError("eta maps V into U")
    u = get_algebra(v.alg.datum, "U")
    out = {}
    for (f, lam, e), c in v.terms.items():
        if which == "<=0":
            if e:
                raise DomainError("eta^{<=0} is defined on V^{<=0}")
            out[(f, cartan.neg(lam), e)] = c
        elif which == ">=0":
            if f:
                raise DomainError("eta^{>=0} is defined on V^{>=0}")
            out[(f, lam, e)] = c
        else:
            raise DomainError(f"unknown half {which!r}")
    return TriangularElement(u, out)


def eta_inverse(x: TriangularElement, which: str) -> TriangularElement:
    if x.alg.flavor != "U":
        raise FlavorError("eta^{-1} maps U into V")
    v = get_algebra(x.alg.datum, "V")
    out = {}
    for (f, lam, e), c in x.terms.items():
        if (which == "<=0" and e) or (which == ">=0" and f):
            raise DomainError(f"element is not in U^{{{which}}}")
        out[(f, cartan.neg(lam) if which == "<=0" else lam, e)] = c
    return TriangularElement(v, out)


def coproduct_component(F: TriangularElement, i: int, r: int, s: int) -> TriangularElement:
    """phi^i_{r,s}(F): the middle leg of Delta_2(F) against F_i^{(r)} and F_i^{(s)}, K factors removed."""
    alg = F.alg
    if alg.flavor != "U":
        raise FlavorError("coproduct_component acts on U^-")
    di = alg.datum.d[i - 1]
    ai = alg.datum.simple(i)
    out = alg.zero()
    for (k1, k2, k3), c in alg.coproduct(F, 2).terms.items():
        (f1, _, e1), (f2, l2, e2), (f3, _, e3) = k1, k2, k3
        if e1 or e2 or e3:
            raise DomainError("F must lie in U^-")
        if f1 != (i,) * r or f3 != (i,) * s:
            continue
        if tuple(l2) != cartan.scale(-r, ai):
            raise AssertionError("unexpected K factor in the middle leg")
        # F_i^r = [r]! F_i^(r)
        out = out + alg.minus({f2: c * q_factorial(r, di) * q_factorial(s, di)})
    return out

"""Integral forms, specialization, classical limits and the Frobenius maps.

Three integral bases are used, each indexed by a triple key:

* ``"L"`` (Lusztig form of U):  F^{(m)} * prod K_i^eps [K_i; m_i] * E^{(n)},
  key ``(m, ((eps_1, m_1), ...), n)``;
* ``"V"`` (the form V_A of V):  the same shape in Y, Z, X;
* ``"DCP"`` (De Concini-Procesi form of U):  B^m * K_lam * A^n, key ``(m, lam, n)``.

Here F^{(m)} means F_{b_N}^{(m_N)} ... F_{b_1}^{(m_1)} and A_b = (q_b - q_b^-1) E_b.
A :class:`SpecializedElement` stores exact coordinates in one of these bases
after q has been sent to 1 or to a primitive ell-th root of unity.
"""

from __future__ import annotations

from fractions import Fraction
from threading import RLock

from . import cartan
from .errors import DomainError, FlavorError, LocalizationError, MembershipError
from .pairing import middle_vanishes, pairing_tables
from .qalg.algebra import TriangularElement, _acc, get_algebra
from .qalg.middle import binomial_to_laurent, weight_to_binomial
from .qalg.pbw import pbw_coordinates, pbw_expand, pbw_tables
from .scalars import ONE, CycloScalar, QScalar, SpecPoint, in_localization, specialize_scalar

TAGS = {"L": "U", "DCP": "U", "V": "V"}

_CACHE: dict = {}
_LOCK = RLock()


def _cached(key, build):
    hit = _CACHE.get(key)
    if hit is None:
        with _LOCK:
            hit = _CACHE.get(key)
            if hit is None:
                hit = _CACHE[key] = build()
    return hit


def _check_tag(tag):
    if tag not in TAGS:
        raise DomainError(f"unknown integral form {tag!r}; expected one of {sorted(TAGS)}")
    return TAGS[tag]


def form_algebra(datum, tag):
    return get_algebra(datum, _check_tag(tag))


# -- bases and coordinates ----------------------------------------------------

def basis_element(datum, tag, key) -> TriangularElement:
    """The integral basis element with the given key, as an element over Q(q)."""
    def build():
        alg = form_algebra(datum, tag)
        m, mid, n = key
        if tag == "DCP":
            return pbw_expand(alg, m, mid, n, "DCP")
        total = alg.zero()
        for lam, c in binomial_to_laurent(datum, mid).items():
            total = total + pbw_expand(alg, m, lam, n, "L").scale(c)
        return total
    return _cached(("basis", datum, tag, key), build)


def _key_coordinates(alg, tag, key) -> dict:
    """Integral coordinates of the single normal-form monomial ``key``."""
    def build():
        coords = pbw_coordinates(alg.basis_element(key), "DCP" if tag == "DCP" else "L")
        if tag == "DCP":
            return coords
        out: dict = {}
        for (m, lam, n), c in coords.items():
            for mid, v in weight_to_binomial(alg.datum, lam).items():
                _acc(out, (m, mid, n), c * v)
        return out
    return _cached(("keycoords", alg.datum, tag, key), build)


def integral_coordinates(x: TriangularElement, tag: str) -> dict:
    """Coordinates of x over Q(q) with respect to the tagged integral basis."""
    if x.alg.flavor != _check_tag(tag):
        raise FlavorError(f"the {tag} basis lives in {TAGS[tag]}, not in {x.alg.flavor}")
    out: dict = {}
    for key, c in x.terms.items():
        for k, v in _key_coordinates(x.alg, tag, key).items():
            _acc(out, k, c * v)
    return out


def integral_membership(x: TriangularElement, tag: str, z: SpecPoint | None = None) -> dict:
    """Coordinates of x if it lies in the integral form (over A_z when z is given).

    Without z the coefficient ring is Q[q, q^-1].  Raises MembershipError with
    the first offending (key, coefficient) as witness.
    """
    coords = integral_coordinates(x, tag)
    for key in sorted(coords):
        c = coords[key]
        ok = c.is_laurent() if z is None else in_localization(c, z)
        if not ok:
            where = "Q[q, q^-1]" if z is None else f"the localization at q = {z}"
            raise MembershipError(f"coordinate {c} at {format_basis_key(x.alg.datum, tag, key)} "
                                  f"is not in {where}", witness=(key, c))
    return coords


# -- text form of basis keys -----------------------------------------------------

def _root_name(datum, k, letter):
    """E.g. E(1) for a simple root, Eb(2) for a non-simple one."""
    order = datum.longest_word()
    beta = order.roots[k]
    if cartan.height(beta) == 1:
        return f"{letter}({beta.index(1) + 1})"
    return f"{letter}b({k + 1})"


def _power(text, n):
    return text if n == 1 else f"{text}^{n}"


def format_basis_key(datum, tag, key) -> str:
    m, mid, n = key
    N = len(m)
    if tag == "DCP":
        parts = [_power(_root_name(datum, k, "B"), m[k]) for k in reversed(range(N)) if m[k]]
        if any(mid):
            parts.append(f"K({cartan.format_weight(mid)})")
        parts += [_power(_root_name(datum, k, "A"), n[k]) for k in reversed(range(N)) if n[k]]
        return "*".join(parts) or "1"
    fl, kl, el = ("F", "K", "E") if tag == "L" else ("Y", "Z", "X")

    def dp(k, e, letter):
        name = _root_name(datum, k, letter)
        return name if e == 1 else f"dp({name}, {e})"

    parts = [dp(k, m[k], fl) for k in reversed(range(N)) if m[k]]
    for i, (eps, mi) in enumerate(mid):
        if eps:
            parts.append(f"{kl}({i + 1})")
        if mi:
            parts.append(f"{kl}bin({i + 1}, {mi})")
    parts += [dp(k, n[k], el) for k in reversed(range(N)) if n[k]]
    return "*".join(parts) or "1"


def _format_sum(pieces) -> str:
    if not pieces:
        return "0"
    out = ""
    for c, mono in pieces:
        text = str(c)
        simple = " " not in text.lstrip("-")
        neg = simple and text.startswith("-")
        body = text[1:] if neg else text
        if not simple:
            body = f"({text})"
        if mono == "1":
            term = body
        elif body == "1":
            term = mono
        else:
            term = f"{body}*{mono}"
        if not out:
            out = ("-" if neg else "") + term
        else:
            out += (" - " if neg else " + ") + term
    return out


# -- scalars at a specialization point ---------------------------------------

def _cyclo(c, ell=1) -> CycloScalar:
    if isinstance(c, CycloScalar):
        return c
    if isinstance(c, QScalar):
        raise TypeError("specialize QScalar coefficients before mixing them in")
    return CycloScalar.from_int(ell, c)


def lift_scalar(c: CycloScalar, point: SpecPoint) -> QScalar:
    """A Laurent polynomial in q specializing to c at the point (zeta -> q)."""
    if c.ell == 1:
        return QScalar.from_int(c.to_fraction())
    if c.ell != point.ell:
        raise DomainError(f"{c} does not live over the specialization point {point}")
    return QScalar.laurent({j: a for j, a in enumerate(c.coefficients()) if a})


# -- specialized elements ----------------------------------------------------------

class SpecializedElement:
    """An element of U^L_z, U_z or V_z in coordinates over the tagged basis.

    Coefficients are CycloScalars.  At z = 1 they may still lie in Q(zeta_l)
    (images of the Frobenius maps); products are then computed from the
    specialized structure constants of the basis, never through a lift.
    """

    __slots__ = ("datum", "tag", "point", "coords")

    def __init__(self, datum, tag, point: SpecPoint, coords: dict):
        _check_tag(tag)
        self.datum = datum
        self.tag = tag
        self.point = point
        self.coords = {k: c for k, c in coords.items() if c}

    @property
    def alg(self):
        return form_algebra(self.datum, self.tag)

    @classmethod
    def basis(cls, datum, tag, point, key):
        return cls(datum, tag, point, {key: CycloScalar.from_int(point.ell, 1)})

    @classmethod
    def one(cls, datum, tag, point):
        zero = (0,) * len(datum.longest_word())
        mid = datum.zero() if tag == "DCP" else ((0, 0),) * datum.rank
        return cls.basis(datum, tag, point, (zero, mid, zero))

    def _same(self, other):
        if not isinstance(other, SpecializedElement):
            return self.one(self.datum, self.tag, self.point).scale(other)
        if (other.datum, other.tag, other.point) != (self.datum, self.tag, self.point):
            raise FlavorError("specialized elements live in different algebras")
        return other

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.coords)
        for k, c in other.coords.items():
            _acc(out, k, c)
        return SpecializedElement(self.datum, self.tag, self.point, out)

    __radd__ = __add__

    def __neg__(self):
        return SpecializedElement(self.datum, self.tag, self.point, {k: -c for k, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def scale(self, c):
        c = _cyclo(c, self.point.ell)
        return SpecializedElement(self.datum, self.tag, self.point, {k: v * c for k, v in self.coords.items()})

    def __mul__(self, other):
        if not isinstance(other, SpecializedElement):
            return self.scale(other)
        other = self._same(other)
        out: dict = {}
        for k1, c1 in self.coords.items():
            for k2, c2 in other.coords.items():
                c = c1 * c2
                for k, v in basis_product(self.datum, self.tag, self.point, k1, k2).items():
                    _acc(out, k, c * v)
        return SpecializedElement(self.datum, self.tag, self.point, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = self.one(self.datum, self.tag, self.point)
        for _ in range(k):
            out = out * self
        return out

    def commutator(self, other):
        return self * other - other * self

    def __eq__(self, other):
        if not isinstance(other, SpecializedElement):
            return self == self._same(other)
        return (self.datum, self.tag, self.point) == (other.datum, other.tag, other.point) \
            and self.coords == other.coords

    def __hash__(self):
        return hash((self.tag, self.point, frozenset(self.coords)))

    def is_zero(self) -> bool:
        return not self.coords

    def __bool__(self):
        return bool(self.coords)

    def is_liftable(self) -> bool:
        return all(c.ell in (1, self.point.ell) for c in self.coords.values())

    def lift(self) -> TriangularElement:
        """An element of the integral form over Q(q) specializing to self."""
        total = self.alg.zero()
        for k, c in self.coords.items():
            total = total + basis_element(self.datum, self.tag, k).scale(lift_scalar(c, self.point))
        return total

    def coproduct(self) -> dict:
        """{(key1, key2): coeff} over the tensor square of the basis."""
        out: dict = {}
        for k, c in self.coords.items():
            for pair, v in basis_coproduct(self.datum, self.tag, self.point, k).items():
                _acc(out, pair, c * v)
        return out

    def terms(self):
        return sorted(self.coords.items())

    def __str__(self):
        return _format_sum([(c, format_basis_key(self.datum, self.tag, k)) for k, c in self.terms()])

    def __repr__(self):
        return f"SpecializedElement({self.tag} at {self.point}: {self})"

    def to_json(self) -> dict:
        terms = []
        for (m, mid, n), c in self.terms():
            terms.append({"basis": self.tag,
                          "monomial": {"f": list(m), "k": [list(p) for p in mid] if self.tag != "DCP" else list(mid),
                                       "e": list(n)},
                          "text": format_basis_key(self.datum, self.tag, (m, mid, n)),
                          "coeff": str(c)})
        return {"point": str(self.point), "terms": terms}


def _spec_coords(coords: dict, point: SpecPoint) -> dict:
    return {k: specialize_scalar(c, point) for k, c in coords.items()}


def basis_product(datum, tag, point, k1, k2) -> dict:
    """Specialized coordinates of (basis k1) * (basis k2)."""
    def build():
        x = basis_element(datum, tag, k1) * basis_element(datum, tag, k2)
        coords = integral_membership(x, tag, point)
        return {k: v for k, v in _spec_coords(coords, point).items() if v}
    return _cached(("prod", datum, tag, point, k1, k2), build)


def _tensor_coordinates(alg, tag, tensor) -> dict:
    out: dict = {}
    for keys, c in tensor.terms.items():
        partial = [((), c)]
        for key in keys:
            co = _key_coordinates(alg, tag, key)
            partial = [(ks + (k,), pc * v) for ks, pc in partial for k, v in co.items()]
        for ks, v in partial:
            _acc(out, ks, v)
    return out


def basis_coproduct(datum, tag, point, key) -> dict:
    def build():
        alg = form_algebra(datum, tag)
        coords = _tensor_coordinates(alg, tag, alg.coproduct(basis_element(datum, tag, key)))
        out = {}
        for ks, c in coords.items():
            if not in_localization(c, point):
                raise LocalizationError(f"coproduct coordinate {c} has a pole at {point}")
            v = specialize_scalar(c, point)
            if v:
                out[ks] = v
        return out
    return _cached(("cop", datum, tag, point, key), build)


def specialize(x: TriangularElement, z: SpecPoint, tag: str) -> SpecializedElement:
    """The image of x in U^L_z, U_z or V_z; x must lie in the form over A_z."""
    z.check_datum(x.alg.datum)
    coords = integral_membership(x, tag, z)
    return SpecializedElement(x.alg.datum, tag, z, _spec_coords(coords, z))


def specialize_tensor(t, z: SpecPoint, tag: str) -> dict:
    coords = _tensor_coordinates(t.alg, tag, t)
    for ks, c in coords.items():
        if not in_localization(c, z):
            raise MembershipError(f"tensor coordinate {c} has a pole at {z}", witness=(ks, c))
    return {ks: v for ks, v in _spec_coords(coords, z).items() if v}


# -- quotients by the radical --------------------------------------------------

def quotient_equal(a: SpecializedElement, b: SpecializedElement) -> bool:
    """Equality in the quotient of U^L_z (resp. V_z) by the radical of the pairing.

    The plus and minus parts inject into the quotient; for each pair of them
    the Cartan part must pair to zero with every K_lam.
    """
    if a.tag != b.tag or a.point != b.point or a.datum != b.datum:
        raise FlavorError("quotient elements must share the form and the point")
    if a.tag == "DCP":
        raise FlavorError("the radical quotient is defined for the L and V forms")
    blocks: dict = {}
    for (m, mid, n), c in (a - b).coords.items():
        blocks.setdefault((m, n), {})[mid] = c
    return all(middle_vanishes(a.datum, a.point, block) for block in blocks.values())


# -- classical limits ------------------------------------------------------------------

class ClassicalElement:
    """An element of U(g) (flavor U) or U(m) (flavor V).

    Keys are ``(m, h, n)``: the divided-power PBW monomial in f (resp. y), the
    product of binom(h_i, h_i) (resp. binom(t_i, .)) and the divided-power
    monomial in e (resp. x).
    """

    __slots__ = ("datum", "flavor", "terms")

    def __init__(self, datum, flavor: str, terms: dict):
        self.datum = datum
        self.flavor = flavor
        self.terms = {k: _cyclo(c) for k, c in terms.items() if c}

    @property
    def tag(self):
        return "L" if self.flavor == "U" else "V"

    def _same(self, other):
        if not isinstance(other, ClassicalElement):
            zero = (0,) * len(self.datum.longest_word())
            return ClassicalElement(self.datum, self.flavor,
                                    {(zero, (0,) * self.datum.rank, zero): _cyclo(other)})
        if other.flavor != self.flavor or other.datum != self.datum:
            raise FlavorError("classical elements live in different algebras")
        return other

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return ClassicalElement(self.datum, self.flavor, out)

    __radd__ = __add__

    def __neg__(self):
        return ClassicalElement(self.datum, self.flavor, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def scale(self, c):
        c = _cyclo(c)
        return ClassicalElement(self.datum, self.flavor, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ClassicalElement):
            return self.scale(other)
        return classical_limit(classical_lift(self) * classical_lift(self._same(other)))

    def __rmul__(self, other):
        return self.scale(other)

    def commutator(self, other):
        return self * other - other * self

    def __eq__(self, other):
        if not isinstance(other, ClassicalElement):
            other = self._same(other)
        return self.flavor == other.flavor and self.terms == other.terms

    def __hash__(self):
        return hash((self.flavor, frozenset(self.terms)))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(m) + sum(h) + sum(n) for m, h, n in self.terms), default=0)

    def coproduct(self) -> dict:
        """Delta in U(g) or U(m): {(key1, key2): coeff}."""
        lifted = classical_lift(self)
        out: dict = {}
        for (k1, k2), c in lifted.coproduct().items():
            _acc(out, (_classical_key(k1), _classical_key(k2)), c)
        return out

    def __str__(self):
        return _format_sum([(c, format_classical_key(self.datum, self.flavor, k))
                            for k, c in sorted(self.terms.items(), key=lambda kc: (sum(map(sum, kc[0])), kc[0]))])

    def __repr__(self):
        return f"ClassicalElement({self})"


def _classical_key(key):
    m, mid, n = key
    return (m, tuple(mi for _, mi in mid), n)


def format_classical_key(datum, flavor, key) -> str:
    m, h, n = key
    fl, hl, el = ("f", "h", "e") if flavor == "U" else ("y", "t", "x")
    order = datum.longest_word()
    N = len(m)

    def name(k, letter):
        beta = order.roots[k]
        if cartan.height(beta) == 1:
            return f"{letter}{beta.index(1) + 1}"
        return f"{letter}b{k + 1}"

    def dp(k, e, letter):
        return name(k, letter) if e == 1 else f"{name(k, letter)}^({e})"

    parts = [dp(k, m[k], fl) for k in reversed(range(N)) if m[k]]
    for i, hi in enumerate(h):
        if hi == 1:
            parts.append(f"{hl}{i + 1}")
        elif hi:
            parts.append(f"binom({hl}{i + 1}, {hi})")
    parts += [dp(k, n[k], el) for k in reversed(range(N)) if n[k]]
    return "*".join(parts) or "1"


def classical_limit(x: SpecializedElement) -> ClassicalElement:
    """K_lam -> 1 and [K_i; m] -> binom(h_i, m) (resp. Z and t_i) at q = 1."""
    if not x.point.is_one:
        raise DomainError("the classical limit is taken at q = 1")
    if x.tag == "DCP":
        raise FlavorError("the classical limit is taken from the L or V form")
    out: dict = {}
    for key, c in x.coords.items():
        _acc(out, _classical_key(key), c)
    return ClassicalElement(x.datum, TAGS[x.tag], out)


def classical_lift(c: ClassicalElement) -> SpecializedElement:
    coords = {(m, tuple((0, hi) for hi in h), n): v for (m, h, n), v in c.terms.items()}
    return SpecializedElement(c.datum, c.tag, SpecPoint(1), coords)


def classical_generator(datum, flavor: str, kind: str, i: int) -> ClassicalElement:
    """e_i, f_i, h_i (flavor U) or x_i, y_i, t_i (flavor V) as classical elements."""
    datum._check_index(i)
    order = datum.longest_word()
    N = len(order)
    zero = (0,) * N
    h = [0] * datum.rank
    k = order.roots.index(datum.simple(i))
    unit = tuple(1 if j == k else 0 for j in range(N))
    if kind in ("e", "x"):
        key = (zero, tuple(h), unit)
    elif kind in ("f", "y"):
        key = (unit, tuple(h), zero)
    elif kind in ("h", "t"):
        h[i - 1] = 1
        key = (zero, tuple(h), zero)
    else:
        raise DomainError(f"unknown classical generator {kind!r}")
    return ClassicalElement(datum, flavor, {key: CycloScalar.from_int(1, 1)})


# -- twisted DCP coordinates ----------------------------------------------------

def _half_dcp(datum, side, word) -> dict:
    def build():
        t = pbw_tables(datum)
        out = {}
        for m, c in t.coordinates(side, {word: ONE}).items():
            out[m] = c / t.flavor_factor(m, "DCP")
        return out
    return _cached(("halfdcp", datum, side, word), build)


def twisted_dcp_coordinates(x: TriangularElement) -> dict:
    """x = sum c A^r K_lam S(B^s), as {(r, lam, s): c}."""
    if x.alg.flavor != "U":
        raise FlavorError("twisted DCP coordinates are defined on U")
    datum = x.alg.datum
    out: dict = {}
    for (e, lam, f), c in pairing_tables(datum).twisted_coordinates(x).items():
        for r, cr in _half_dcp(datum, "+", e).items():
            for s, cs in _half_dcp(datum, "-", f).items():
                _acc(out, (r, lam, s), c * cr * cs)
    return out


def twisted_dcp_element(datum, r, lam, s) -> TriangularElement:
    def build():
        alg = get_algebra(datum, "U")
        zero = (0,) * len(r)
        a = pbw_expand(alg, zero, datum.zero(), r, "DCP")
        b = pbw_expand(alg, s, datum.zero(), zero, "DCP")
        return a * alg.K(lam) * alg.antipode(b)
    return _cached(("twdcp", datum, tuple(r), tuple(lam), tuple(s)), build)


# -- Frobenius maps --------------------------------------------------------------------

def _divide_key(key, ell, keep_eps=True):
    m, mid, n = key
    if any(x % ell for x in m + n) or any(mi % ell for _, mi in mid):
        return None
    return (tuple(x // ell for x in m),
            tuple(((eps if keep_eps else 0), mi // ell) for eps, mi in mid),
            tuple(x // ell for x in n))


def frobenius_xiL(x: SpecializedElement) -> SpecializedElement:
    """Lusztig's Frobenius map U^L_zeta -> U^L_1 (coefficients stay in Q(zeta))."""
    if x.tag != "L" or x.point.is_one:
        raise DomainError("the Frobenius map xi^L acts on U^L at a root of unity")
    ell = x.point.ell
    out: dict = {}
    for key, c in x.coords.items():
        k = _divide_key(key, ell)
        if k is not None:
            _acc(out, k, c)
    return SpecializedElement(x.datum, "L", SpecPoint(1), out)


def frobenius_xi(v: SpecializedElement) -> ClassicalElement:
    """The Frobenius map on the quotient of V_zeta, landing in U(m).

    Applied to a representative; Z_lam -> 1 and the divided powers are divided by ell.
    """
    if v.tag != "V" or v.point.is_one:
        raise DomainError("the Frobenius map xi acts on V at a root of unity")
    ell = v.point.ell
    out: dict = {}
    for key, c in v.coords.items():
        k = _divide_key(key, ell, keep_eps=False)
        if k is not None:
            _acc(out, k, c)
    return classical_limit(SpecializedElement(v.datum, "V", SpecPoint(1), out))


def frobenius_transpose(u: SpecializedElement, ell: int) -> SpecializedElement:
    """The transpose Frobenius map U_1 -> U_zeta on the DCP form.

    A^r K_lam S(B^s) at q = 1 goes to A^{ell r} K_{ell lam} S(B^{ell s}) at zeta.
    """
    if u.tag != "DCP" or not u.point.is_one:
        raise DomainError("the transpose Frobenius map acts on the DCP form at q = 1")
    if not u.is_liftable():
        raise DomainError("the input must have rational coefficients")
    zeta = SpecPoint(ell)
    zeta.check_datum(u.datum)
    if zeta.is_one:
        raise DomainError("the order must be an odd integer >= 3")
    one = SpecPoint(1)
    out = SpecializedElement(u.datum, "DCP", zeta, {})
    for (r, lam, s), c in twisted_dcp_coordinates(u.lift()).items():
        if not in_localization(c, one):
            raise MembershipError(f"twisted coordinate {c} has a pole at q = 1", witness=((r, lam, s), c))
        v = specialize_scalar(c, one)
        if v:
            out = out + _txi_basis(u.datum, ell, r, lam, s).scale(v.embed(ell))
    return out


def _txi_basis(datum, ell, r, lam, s) -> SpecializedElement:
    def build():
        x = twisted_dcp_element(datum, tuple(ell * a for a in r), cartan.scale(ell, lam),
                                tuple(ell * b for b in s))
        return specialize(x, SpecPoint(ell), "DCP")
    return _cached(("txi", datum, ell, tuple(r), tuple(lam), tuple(s)), build)


def rational(c) -> Fraction:
    """A rational CycloScalar as a Fraction."""
    return _cyclo(c).to_fraction()


# -- specialized pairings ----------------------------------------------------------

def _basis_pairing(kind, datum, point, xtag, xkey, ytag, ykey):
    from .pairing import sigma, tau

    def build():
        x = basis_element(datum, xtag, xkey)
        y = basis_element(datum, ytag, ykey)
        value = sigma(x, y) if kind == "sigma" else tau(x, y)
        return specialize_scalar(value, point)
    return _cached(("pair", kind, datum, point, xtag, xkey, ytag, ykey), build)


def _as_specialized(v, point):
    if isinstance(v, ClassicalElement):
        if not point.is_one:
            raise DomainError("classical elements live at q = 1")
        return classical_lift(v)
    return v


def sigma_bar(u: SpecializedElement, v) -> CycloScalar:
    """The specialized pairing of U_z with V_z (or with U(m) at z = 1)."""
    v = _as_specialized(v, u.point)
    if u.tag != "DCP" or v.tag != "V":
        raise FlavorError("sigma pairs the DCP form of U with the V form")
    if u.point != v.point:
        raise DomainError("arguments are specialized at different points")
    total = CycloScalar.from_int(u.point.ell, 0)
    for k1, c1 in u.coords.items():
        for k2, c2 in v.coords.items():
            total = total + c1 * c2 * _basis_pairing("sigma", u.datum, u.point, "DCP", k1, "V", k2)
    return total


def tau_bar(x: SpecializedElement, y) -> CycloScalar:
    """The specialized Drinfeld pairing of U_z^{>=0} (DCP) with U^{L,<=0}_z."""
    y = _as_specialized(y, x.point)
    if x.tag != "DCP" or y.tag != "L":
        raise FlavorError("tau pairs the DCP form of U^{>=0} with the Lusztig form of U^{<=0}")
    if x.point != y.point:
        raise DomainError("arguments are specialized at different points")
    total = CycloScalar.from_int(x.point.ell, 0)
    for k1, c1 in x.coords.items():
        for k2, c2 in y.coords.items():
            total = total + c1 * c2 * _basis_pairing("tau", x.datum, x.point, "DCP", k1, "L", k2)
    return total


def _weights_up_to(rank, height):
    import itertools
    return [w for w in itertools.product(range(height + 1), repeat=rank) if sum(w) <= height]


def perfect_pairing_rank(datum, z: SpecPoint, height: int, radius: int = 1, degree: int | None = None) -> dict:
    """Row ranks of the specialized sigma between U_z and a truncation of V_z.

    Rows are the twisted DCP monomials A^r K_lam S(B^s) with ht(r) + ht(s) <= height
    and lam in the box [-radius, radius]^rank; columns are the V-form monomials of
    the matching weights with binomial middles of degree <= ``degree``.  The pairing
    is block diagonal in (wt r, wt s).  Returns {(wt r, wt s): (rank, number of rows)}.
    """
    from .linalg import rank
    from .pairing import middle_keys, sigma_binomial_row
    import itertools
    z.check_datum(datum)
    if degree is None:
        degree = 2 * radius + 1 if z.is_one else z.ell + 1
    t = pbw_tables(datum)
    lams = list(itertools.product(range(-radius, radius + 1), repeat=datum.rank))
    mids = middle_keys(datum.rank, degree)
    zero_mid = ((0, 0),) * datum.rank
    out = {}
    for g1 in _weights_up_to(datum.rank, height):
        for g2 in _weights_up_to(datum.rank, height - sum(g1)):
            ms, ns = t.monomials(g1), t.monomials(g2)
            if not ms or not ns:
                continue
            cols = [(m, mid, n) for m in ms for n in ns for mid in mids]
            plain = {(m, n): basis_element(datum, "V", (m, zero_mid, n)) for m in ms for n in ns}
            rows = []
            for r in ms:
                for s in ns:
                    for lam in lams:
                        u = twisted_dcp_element(datum, r, lam, s)
                        row = {}
                        for (m, n), v in plain.items():
                            for mid, x in zip(mids, sigma_binomial_row(u, v, mids)):
                                if x:
                                    row[(m, mid, n)] = specialize_scalar(x, z)
                        rows.append(row)
            out[(g1, g2)] = (rank(rows, cols), len(rows))
    return out

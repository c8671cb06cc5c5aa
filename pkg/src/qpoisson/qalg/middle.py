"""The Cartan part in the binomial basis.

The integral forms use the basis  prod_i K_i^{eps_i} [K_i; m_i]  with
eps_i in {0, 1}; here one factor is a pair (eps, m).  A middle element is a
dict  ((eps_1, m_1), ..., (eps_r, m_r)) -> coeff.
"""

from __future__ import annotations

from functools import lru_cache

from ..scalars import ONE, QScalar, q_binomial, q_minus_qinv, specialize_scalar
from .algebra import _acc

_qpow = QScalar.qpow


@lru_cache(maxsize=None)
def binomial_laurent(d: int, eps: int, m: int) -> dict:
    """K^eps [K; m] as a Laurent polynomial {power of K: coeff}, q_i = q^d."""
    poly = {eps: ONE}
    for s in range(m):
        den = q_minus_qinv(d * (s + 1)).inverse()
        a = _qpow(-d * s) * den
        b = -(_qpow(d * s) * den)
        nxt: dict = {}
        for p, c in poly.items():
            _acc(nxt, p + 1, c * a)
            _acc(nxt, p - 1, c * b)
        poly = nxt
    return poly


@lru_cache(maxsize=None)
def laurent_to_binomial(d: int, power: int) -> dict:
    """K^power in the basis {K^eps [K; m]}: {(eps, m): coeff}."""
    target = {power: ONE}
    out: dict = {}
    while target:
        hi = max(target)
        lo = min(target)
        # the top exponent n+1 only occurs in K[K;n], the bottom -n in [K;n]
        if hi >= 1 and hi - 1 >= -lo:
            key = (1, hi - 1)
            top = hi
        else:
            key = (0, -lo)
            top = lo
        elem = binomial_laurent(d, *key)
        c = target[top] / elem[top]
        out[key] = out.get(key, 0) + c
        for p, v in elem.items():
            _acc(target, p, -(c * v))
    return {k: v for k, v in out.items() if v}


def weight_to_binomial(datum, lam) -> dict:
    """K_lam in the product binomial basis."""
    out = {(): ONE}
    for i, p in enumerate(lam):
        factor = laurent_to_binomial(datum.d[i], p)
        out = {k + (fk,): c * fc for k, c in out.items() for fk, fc in factor.items()}
    return out


def binomial_to_laurent(datum, key) -> dict:
    """prod_i K_i^eps_i [K_i; m_i] as {weight: coeff}."""
    out = {(): ONE}
    for i, (eps, m) in enumerate(key):
        poly = binomial_laurent(datum.d[i], eps, m)
        out = {k + (p,): c * pc for k, c in out.items() for p, pc in poly.items()}
    return out


def middle_from_weights(datum, vec: dict) -> dict:
    """{weight: coeff} -> binomial coordinates."""
    out: dict = {}
    for lam, c in vec.items():
        for k, v in weight_to_binomial(datum, lam).items():
            _acc(out, k, c * v)
    return out


def binomial_value(d: int, eps: int, m: int, n: int) -> QScalar:
    """sigma(K_lam, Z^eps [Z; m]) for (lam, alpha_i^vee) = n: q_i^{n eps} [n; m]_{q_i}."""
    return _qpow(d * n * eps) * q_binomial(n, m, d)


def character_value(datum, key, lam, z=None):
    """sigma(K_lam, prod_i Z_i^eps_i [Z_i; m_i]), optionally specialized."""
    out = ONE
    for i, (eps, m) in enumerate(key):
        n = datum.coroot_pairing(i + 1, lam)
        out = out * binomial_value(datum.d[i], eps, m, n)
    if z is None:
        return out
    return specialize_scalar(out, z)

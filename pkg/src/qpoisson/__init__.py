"""Exact computations with U_q(g), U_q(m), their pairings, integral forms,
specializations, Frobenius maps and Poisson brackets."""

from .cartan import CartanDatum, build_cartan, parse_type
from .errors import (ConfigError, DomainError, FlavorError, LocalizationError, MembershipError,
                     NotDivisibleError, ParseError, QPoissonError)
from .pairing import sigma, tau
from .poisson import poisson_u1, poisson_zzeta, res, upsilon_eval
from .qalg.algebra import TensorElement, TriangularElement, get_algebra
from .scalars import CycloScalar, QScalar, SpecPoint
from .specfrob import (ClassicalElement, SpecializedElement, frobenius_transpose, frobenius_xi,
                       frobenius_xiL, specialize)

__all__ = [
    "CartanDatum", "ClassicalElement", "ConfigError", "CycloScalar", "DomainError", "FlavorError",
    "LocalizationError", "MembershipError", "NotDivisibleError", "ParseError", "QPoissonError",
    "QScalar", "SpecPoint", "SpecializedElement", "TensorElement", "TriangularElement", "build_cartan",
    "frobenius_transpose", "frobenius_xi", "frobenius_xiL", "get_algebra", "parse_type", "poisson_u1",
    "poisson_zzeta", "res", "sigma", "specialize", "tau", "upsilon_eval",
]

from fractions import Fraction

import pytest

from qpoisson import get_algebra, parse_type
from qpoisson.scalars import SpecPoint


def qeval(x, t):
    """Evaluate a QScalar at a rational value of q."""
    t = Fraction(t)

    def poly(p):
        return sum((Fraction(int(c.p), int(c.q)) * t ** k for k, c in enumerate(p.coeffs())), Fraction(0))

    return t ** x.s * poly(x.n) / poly(x.d)


@pytest.fixture(scope="session")
def a1():
    return parse_type("A1")


@pytest.fixture(scope="session")
def a2():
    return parse_type("A2")


@pytest.fixture(scope="session")
def b2():
    return parse_type("B2")


@pytest.fixture(scope="session")
def u1(a1):
    return get_algebra(a1)


@pytest.fixture(scope="session")
def v1(a1):
    return get_algebra(a1, "V")


@pytest.fixture(scope="session")
def u2(a2):
    return get_algebra(a2)


@pytest.fixture(scope="session")
def v2(a2):
    return get_algebra(a2, "V")


@pytest.fixture(scope="session")
def at_one():
    return SpecPoint.parse("1")


@pytest.fixture(scope="session")
def zeta3():
    return SpecPoint.parse("zeta:3")

import pytest

from qpoisson import get_algebra, parse_type
from qpoisson.errors import DomainError, FlavorError, MembershipError
from qpoisson.scalars import CycloScalar, QScalar, SpecPoint, q_factorial, q_minus_qinv
from qpoisson.specfrob import (
    SpecializedElement, classical_generator, classical_limit, frobenius_transpose, frobenius_xi,
    frobenius_xiL, integral_coordinates, integral_membership, quotient_equal, specialize,
)

ONE = SpecPoint(1)
Z3 = SpecPoint(3)


def dp(x, n):
    return (x ** n).scale(q_factorial(n).inverse())


@pytest.fixture(scope="module")
def sl2():
    u = get_algebra(parse_type("A1"))
    a = u.E(1).scale(q_minus_qinv())
    b = u.F(1).scale(q_minus_qinv())
    return u, a, b


def test_membership_examples(u1):
    coords = integral_membership(dp(u1.E(1), 2), "L")
    assert coords == {((0,), ((0, 0),), (2,)): QScalar.from_int(1)}
    with pytest.raises(MembershipError) as info:
        integral_membership(u1.E(1), "DCP")
    key, c = info.value.witness
    assert c == q_minus_qinv().inverse()
    assert integral_membership(u1.E(1), "DCP", SpecPoint(3))


def test_v_form_membership(v2):
    coords = integral_membership(dp(v2.Y(1), 2) * v2.Z((1, 0)), "V")
    assert all(c.is_laurent() for c in coords.values())
    with pytest.raises(FlavorError):
        integral_coordinates(v2.X(1), "L")


def test_u1_is_commutative(sl2):
    u, a, b = sl2
    assert specialize(a * b - b * a, ONE, "DCP").is_zero()
    assert not (a * b - b * a).is_zero()


def test_k_multiplication_at_zeta(u2):
    k = lambda lam: specialize(u2.K(lam), Z3, "DCP")
    assert k((1, 0)) * k((0, 2)) == k((1, 2))


def test_divided_power_product_at_one(u1):
    e = u1.E(1)
    got = specialize(dp(e, 2), ONE, "L") * specialize(e, ONE, "L")
    assert got == specialize(dp(e, 3), ONE, "L").scale(3)


def test_a_cubed_is_central_at_zeta3(sl2):
    u, a, b = sl2
    a3 = specialize(a ** 3, Z3, "DCP")
    for g in (b, a, u.K((1,))):
        x = specialize(g, Z3, "DCP")
        assert (a3 * x - x * a3).is_zero()
    a1 = specialize(a, Z3, "DCP")
    bb = specialize(b, Z3, "DCP")
    assert not (a1 * bb - bb * a1).is_zero()


def test_specialize_rejects_poles(u1):
    with pytest.raises(MembershipError):
        specialize(u1.E(1), ONE, "DCP")
    # [3] vanishes at zeta_3
    with pytest.raises(MembershipError):
        specialize(dp(u1.E(1), 3).scale(q_factorial(3).inverse()), Z3, "L")


def test_quotient_equal_examples(v1):
    assert quotient_equal(specialize(v1.Z((2,)), ONE, "V"), SpecializedElement.one(v1.datum, "V", ONE))
    assert not quotient_equal(specialize(v1.Z((1,)), Z3, "V"), SpecializedElement.one(v1.datum, "V", Z3))
    assert quotient_equal(specialize(v1.Z((3,)), Z3, "V"), SpecializedElement.one(v1.datum, "V", Z3))


def test_classical_limits(u1, a1):
    e, f = u1.E(1), u1.F(1)
    assert classical_limit(specialize(e, ONE, "L")) == classical_generator(a1, "U", "e", 1)
    assert str(classical_limit(specialize(f * e, ONE, "L"))) == "f1*e1"
    h = (u1.K((1,)) - u1.K((-1,))).scale(q_minus_qinv().inverse())
    assert classical_limit(specialize(h, ONE, "L")) == classical_generator(a1, "U", "h", 1)
    with pytest.raises(DomainError):
        classical_limit(specialize(e, Z3, "L"))


def test_classical_sl2_relations(a1):
    e, f, h = (classical_generator(a1, "U", k, 1) for k in "efh")
    assert e.commutator(f) == h
    assert h.commutator(e) == e.scale(2)
    assert h.commutator(f) == f.scale(-2)


def test_xi_lusztig_examples(u1):
    e, f = u1.E(1), u1.F(1)
    got = frobenius_xiL(specialize(dp(f, 3) * dp(e, 6), Z3, "L"))
    assert got == specialize(f * dp(e, 2), ONE, "L")
    assert frobenius_xiL(specialize(e, Z3, "L")).is_zero()
    with pytest.raises(DomainError):
        frobenius_xiL(specialize(e, ONE, "L"))


def test_xi_lusztig_multiplicative(u1):
    e, f = u1.E(1), u1.F(1)
    xs = [dp(e, 3), dp(f, 3), dp(e, 6), dp(f, 3) * dp(e, 3)]
    for x in xs:
        for y in xs:
            sx, sy = specialize(x, Z3, "L"), specialize(y, Z3, "L")
            assert frobenius_xiL(sx * sy) == frobenius_xiL(sx) * frobenius_xiL(sy)


def test_xi_on_v(v1, a1):
    assert frobenius_xi(specialize(dp(v1.Y(1), 3), Z3, "V")) == classical_generator(a1, "V", "y", 1)
    assert frobenius_xi(specialize(v1.Y(1), Z3, "V")).is_zero()


def test_transpose_frobenius_on_generators(sl2):
    u, a, b = sl2
    assert frobenius_transpose(specialize(a, ONE, "DCP"), 3) == specialize(a ** 3, Z3, "DCP")
    assert frobenius_transpose(specialize(u.K((1,)), ONE, "DCP"), 3) == specialize(u.K((3,)), Z3, "DCP")
    with pytest.raises(DomainError):
        frobenius_transpose(specialize(a, Z3, "DCP"), 3)


def test_transpose_frobenius_is_multiplicative(sl2):
    u, a, b = sl2
    gens = [a, b, u.K((1,)), u.K((-1,))]
    txi = lambda x: frobenius_transpose(specialize(x, ONE, "DCP"), 3)
    for x in gens:
        for y in gens:
            assert txi(x * y) == txi(x) * txi(y)


def test_specialized_coefficients_live_in_cyclotomic_field(u1):
    x = specialize(u1.E(1).scale(q_minus_qinv()), Z3, "DCP")
    (c,) = x.coords.values()
    assert isinstance(c, CycloScalar) and c.ell == 3

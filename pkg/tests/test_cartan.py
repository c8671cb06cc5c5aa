import itertools

import pytest
from hypothesis import given, strategies as st

from qpoisson.cartan import build_cartan, format_weight, parse_type, parse_weight
from qpoisson.errors import ConfigError, DomainError


def test_rank_one(a1):
    assert a1.a == ((2,),)
    assert a1.d == (1,)


def test_a2_simply_laced(a2):
    assert a2.a == ((2, -1), (-1, 2))
    assert a2.d == (1, 1)


def test_b2_symmetrizable(b2):
    a, d = b2.a, b2.d
    assert a[0][1] * a[1][0] == 2
    assert min(d) == 1
    for i, j in itertools.product(range(2), repeat=2):
        assert d[i] * a[i][j] == d[j] * a[j][i]
    # Bourbaki numbering: the first simple root is long
    assert d == (2, 1)


def test_form_examples(a2):
    assert a2.form((1, 0), (1, 0)) == 2
    assert a2.form((1, 0), (0, 1)) == a2.d[0] * a2.a[0][1] == -1
    assert a2.form((0, 0), (3, -2)) == 0


def test_reflections(a2):
    assert a2.reflect(1, (1, 0)) == (-1, 0)
    assert a2.reflect(1, (0, 1)) == (1, 1)


@given(st.sampled_from(["A1", "A2", "A3", "B2", "B3", "C3", "D4"]),
       st.lists(st.integers(-4, 4), min_size=4, max_size=4), st.data())
def test_reflection_involution_and_isometry(name, coeffs, data):
    datum = parse_type(name)
    lam = tuple(coeffs[:datum.rank])
    mu = tuple(reversed(coeffs))[:datum.rank]
    i = data.draw(st.sampled_from(list(datum.indices)))
    assert datum.reflect(i, datum.reflect(i, lam)) == lam
    assert datum.form(datum.reflect(i, lam), datum.reflect(i, mu)) == datum.form(lam, mu)


def test_longest_words(a1, a2, b2):
    w = a1.longest_word()
    assert tuple(w.word) == (1,) and tuple(w.roots) == ((1,),)
    w = a2.longest_word()
    assert tuple(w.word) == (1, 2, 1)
    assert tuple(w.roots) == ((1, 0), (1, 1), (0, 1))
    w = b2.longest_word()
    assert len(w.word) == 4
    assert sorted(w.roots) == sorted(b2.positive_roots())
    assert len(set(w.roots)) == 4


@pytest.mark.parametrize("name,count", [("A1", 1), ("A3", 6), ("B3", 9), ("C3", 9), ("D4", 12), ("G2", 6)])
def test_positive_root_counts(name, count):
    datum = parse_type(name, exceptional=name[0] in "EFG")
    assert len(datum.positive_roots()) == count
    assert datum.is_reduced_word_for_w0(datum.longest_word().word)


def test_roots_of_word_match_longest(a2):
    assert a2.roots_of_word((2, 1, 2)) == ((0, 1), (1, 1), (1, 0))
    assert a2.is_reduced_word_for_w0((2, 1, 2))
    assert not a2.is_reduced_word_for_w0((1, 1, 2))


def test_kostant_counts(a2, b2):
    assert a2.kostant_count((0, 0)) == 1
    assert a2.kostant_count((1, 1)) == 2
    assert a2.kostant_count((2, 1)) == 2
    # B2 with roots a1, a1+a2, a1+2a2, a2: partitions of a1+2a2
    assert b2.kostant_count((1, 2)) == 3


def test_weight_text_round_trip():
    assert parse_weight("(1,-2)", 2) == (1, -2)
    assert format_weight((1, -2)) == "(1,-2)"


@pytest.mark.parametrize("text", ["X2", "A0", "E9", "B1"])
def test_bad_types(text):
    with pytest.raises(ConfigError):
        parse_type(text, exceptional=True)


def test_exceptional_requires_flag():
    with pytest.raises(ConfigError):
        build_cartan("G", 2)
    assert build_cartan("G", 2, exceptional=True).rank == 2


def test_kostant_rejects_negative(a2):
    with pytest.raises(DomainError):
        a2.kostant_count((-1, 0))

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from modcut.cf import (
    OcfDigits,
    acf_of,
    acf_to_digits,
    acf_to_farey,
    acf_value,
    convergents,
    digits_to_acf,
    farey_of,
    farey_to_acf,
    format_digits,
    ocf_digits,
    ocf_value,
    parse_digits,
)
from modcut.exactnum import ParseError, sqrt_exact

fracs = st.fractions(min_value=-100, max_value=100, max_denominator=10**4)
pos_fracs = fracs.map(lambda x: abs(x)).filter(lambda x: x > 0)


def test_known_digits():
    assert ocf_digits(Fraction(5, 14)).all_digits() == (0, 2, 1, 4)
    assert ocf_digits(Fraction(136, 103)).all_digits() == (1, 3, 8, 4)
    assert ocf_digits(Fraction(-5, 14)).all_digits() == (-1, 1, 1, 1, 4)


def test_never_ends_in_one():
    for q in range(2, 80):
        for p in range(1, q):
            d = ocf_digits(Fraction(p, q))
            if d.tail:
                assert d.tail[-1] != 1, (p, q)


@given(fracs)
def test_value_roundtrip(x):
    assert ocf_value(ocf_digits(x)) == x


def test_surd_prefix():
    d = ocf_digits(sqrt_exact(3), limit=8)
    assert not d.finite
    assert d.all_digits() == (1, 1, 2, 1, 2, 1, 2, 1)


def test_convergents():
    cps = list(convergents(ocf_digits(Fraction(5, 14))))
    assert cps[-1].value() == Fraction(5, 14)
    for cp in cps:
        assert abs(cp.m.det()) == 1


def test_acf_words():
    assert digits_to_acf(ocf_digits(Fraction(5, 14))) == "FRRFRFRRRRF"
    assert acf_of(Fraction(5, 14)) == "FRRFRFRRRRF"
    assert farey_of(Fraction(5, 14)) == "DDRDDDD"


@given(fracs.filter(lambda x: x >= 0))
def test_acf_digit_roundtrip(x):
    d = ocf_digits(x)
    assert acf_to_digits(digits_to_acf(d)) == d


@given(pos_fracs)
def test_acf_farey_inverse(x):
    w = acf_of(x)
    assert farey_to_acf(acf_to_farey(w)) == w
    assert acf_to_farey(w) == farey_of(x)


def test_acf_value():
    assert acf_value("FRRFRFRRRRF") == Fraction(5, 14)
    assert acf_value("RRFRRF") == Fraction(5, 2)
    with pytest.raises(ValueError):
        acf_value("RR")  # integer words have no finite matrix value


def test_word_parse_errors():
    with pytest.raises(ParseError):
        acf_to_digits("RFX")
    with pytest.raises(ParseError):
        acf_to_digits("RFFR")
    with pytest.raises(ParseError):
        farey_to_acf("RQ")


def test_digit_text_format():
    d = parse_digits("0;2,1,4")
    assert d == OcfDigits(0, (2, 1, 4), True)
    assert format_digits(d) == "0;2,1,4"
    assert format_digits(parse_digits("7")) == "7"

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from modcut.exactnum import (
    IntMatrix2,
    NINF,
    PINF,
    ParseError,
    compare,
    format_extreal,
    is_infinite,
    lft_apply,
    parse_extreal,
    rational_between,
    sqrt_exact,
    squarefree_split,
    surd,
    surd_floor,
)

fracs = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**4)


def test_squarefree_split():
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(49) == (7, 1)
    assert squarefree_split(1) == (1, 1)


def test_surd_arithmetic():
    s3 = sqrt_exact(3)
    x = (s3 - 1) * Fraction(1, 2)
    assert x.sign() == 1
    assert compare(x, Fraction(366, 1000)) == 1
    assert compare(x, Fraction(367, 1000)) == -1
    assert (s3 * s3).rational_value() == 3
    assert surd_floor(s3) == 1
    assert surd_floor(-s3) == -2


def test_surd_inverse():
    s2 = sqrt_exact(2)
    x = s2 + Fraction(1, 3)
    assert ((x.inverse()) * x).rational_value() == 1


def test_sqrt_exact_perfect_square():
    assert sqrt_exact(Fraction(9, 4)).rational_value() == Fraction(3, 2)


def test_infinity():
    assert is_infinite(PINF) and is_infinite(NINF)
    assert compare(PINF, 10**100) == 1
    assert compare(NINF, -(10**100)) == -1
    assert compare(NINF, PINF) == -1


def test_matrix_ops():
    m = IntMatrix2(2, 1, 1, 1)
    assert m.det() == 1
    assert m * m.inverse() == IntMatrix2(1, 0, 0, 1)
    assert IntMatrix2(1, 2, 3, 4).det() == -2
    assert lft_apply(IntMatrix2(2, 1, 1, 1), Fraction(1, 2)) == Fraction(4, 3)
    assert lft_apply(IntMatrix2(1, 0, 0, 1), PINF) is PINF


@given(fracs, fracs)
def test_rational_between(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    m = rational_between(lo, hi)
    assert lo < m < hi


def test_rational_between_infinite_ends():
    assert rational_between(NINF, Fraction(0)) < 0
    assert rational_between(Fraction(0), PINF) > 0


@given(fracs)
def test_parse_format_roundtrip_fraction(x):
    assert parse_extreal(format_extreal(x)) == x


def test_parse_surd_both_orders():
    a = parse_extreal("(-1+1*sqrt(3))/2")
    b = parse_extreal("(1*sqrt(3)-1)/2")
    assert compare(a, b) == 0
    assert parse_extreal(format_extreal(a)) == a


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_extreal("three halves")
    with pytest.raises(ParseError):
        parse_extreal("(1+2*sqrt(3))/0")


def test_compare_surd_vs_rational():
    s5 = sqrt_exact(5)
    assert compare(s5, Fraction(9, 4)) == -1
    assert compare(s5, Fraction(11, 5)) == 1
    assert compare(s5, s5) == 0

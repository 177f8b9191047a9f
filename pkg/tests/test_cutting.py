import math
from fractions import Fraction

import pytest

from modcut.cutting import (
    CUTTING_MATS,
    EDGE_FORBIDDEN,
    acf_from_cutting,
    corner_resolutions,
    cutting_from_mgcf,
    cutting_word_matrix,
    find_edge_forbidden,
    format_cutting,
    mgcf_from_cutting,
    parse_cutting,
    parse_segments,
)
from modcut.exactnum import ParseError
from modcut.cf import acf_of
from modcut.mgcf import mgcf_direct


def small_rationals(qmax):
    for q in range(3, qmax + 1):
        for p in range(1, (q - 1) // 2 + 1):
            if 2 * p < q and math.gcd(p, q) == 1:
                yield Fraction(p, q)
                yield Fraction(-p, q)


def test_parity_map():
    assert cutting_from_mgcf("JRRJRJ") == ("J", "L", "L", "J", "R", "J")
    assert cutting_from_mgcf("JRRCRRRRJ") == (
        "J", "L", "L", "C1", "L", "L", "L", "L", "J")


def test_parity_inverse():
    for f in small_rationals(40):
        w = mgcf_direct(f, limit=500)
        assert mgcf_from_cutting(cutting_from_mgcf(w)) == w, f


def test_corner_parity_checked():
    with pytest.raises(ParseError):
        mgcf_from_cutting(("C1",))  # C1 only occurs in odd parity
    with pytest.raises(ParseError):
        mgcf_from_cutting(("J", "C2"))


def test_corner_resolution_matrices():
    for tok in ("C1", "C2"):
        target = CUTTING_MATS[tok]
        for res in corner_resolutions(tok):
            m = cutting_word_matrix(res)
            assert m == target or m == IntNeg(target)


def IntNeg(m):
    from modcut.exactnum import IntMatrix2

    return IntMatrix2(-m.a, -m.b, -m.c, -m.d)


def test_edge_forbidden_scan():
    assert find_edge_forbidden(("J", "J")) == (0, ("J", "J"))
    assert find_edge_forbidden(("L", "L", "R")) == (1, ("L", "R"))
    assert find_edge_forbidden(("J", "L", "L", "J")) is None
    assert len(EDGE_FORBIDDEN) == 9


def test_parse_segments_known():
    sp = parse_segments(parse_cutting("JLLJRJ"))
    assert sp.a0 == 0
    assert [seg.digits for seg in sp.segments] == [((2, None),), ((1, "h"),)]
    assert sp.incomplete_suffix == ()


def test_parse_segments_suffix_readings():
    sp = parse_segments(parse_cutting("JLLJRRR"))
    assert sp.incomplete_suffix == ("R", "R", "R")
    assert ("ge", 3) in sp.suffix_encodings
    assert ("pair", 2, "m") in sp.suffix_encodings


def test_parse_segments_negative_opening():
    w = cutting_from_mgcf(mgcf_direct(Fraction(-1, 3)))
    sp = parse_segments(w)
    assert sp.a0 == -1


def test_acf_from_cutting_matches():
    for f in small_rationals(30):
        if f <= 0:
            continue
        w = cutting_from_mgcf(mgcf_direct(f, limit=500))
        if any(t.startswith("C") for t in w):
            continue  # corner words encode the balanced case, not plain digits
        acf = acf_from_cutting(w)
        assert acf_of(f).startswith(acf), f


def test_text_format():
    assert parse_cutting("JRRC1LJ") == ("J", "R", "R", "C1", "L", "J")
    assert parse_cutting("J,R,C2") == ("J", "R", "C2")
    assert format_cutting(("J", "C1", "L")) == "JC1L"
    with pytest.raises(ParseError):
        parse_cutting("JCX")
    with pytest.raises(ParseError):
        parse_cutting("JQ")

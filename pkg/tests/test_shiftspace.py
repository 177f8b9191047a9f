import math
from fractions import Fraction

import pytest

from modcut.cutting import EDGE_FORBIDDEN, corner_resolutions, cutting_from_mgcf
from modcut.mgcf import mgcf_direct
from modcut.shiftspace import (
    INFTY,
    AmbiguityQuery,
    central_block,
    central_head_to_tail,
    decide_block,
    edge_forbidden_blocks,
    enumerate_minimal_forbidden,
    excluded_initial,
    follower_separation,
    is_ambiguous,
    random_cross_check,
    verdict_json,
)


def W(text):
    from modcut.cutting import parse_cutting

    return parse_cutting(text)


# ---------------------------------------------------------------------------
# frozen verdicts (each admissible witness was tracer-confirmed when frozen)

FORBIDDEN = [
    "LLLJRJLLL",
    "LJRRRJRRRJLL",
    "JLLLJRJLLLJ",
    "JLLJLLJ",
    "JLJRRRJRRJ",
    "JLLJLLLJRRJ",
    "LLLLLJRJLLLLL",
    "JLLJLLLJ",
    "RJLLJRJLLLLJR",
]

ADMISSIBLE = [
    "JLLJRJLLLJ",
    "LJLLJRJLLLLJL",
    "RJLLJRJLLLLJL",
    "JLLC1LLLLJ",
    "JLLLJRJLLJRJ",
    "LLJLL",
]


@pytest.mark.parametrize("word", FORBIDDEN)
def test_frozen_forbidden(word):
    v = decide_block(W(word))
    assert v.forbidden, word
    assert random_cross_check(W(word), v)


@pytest.mark.parametrize("word", ADMISSIBLE)
def test_frozen_admissible(word):
    v = decide_block(W(word))
    assert v.status == "admissible", word
    assert v.witness is not None, word


def test_edge_forbidden_short_circuit():
    v = decide_block(W("JLLJJ"))
    assert v.status == "edge-forbidden"
    assert "JJ" in v.reason


def test_edge_forbidden_blocks_listing():
    assert tuple(edge_forbidden_blocks()) == EDGE_FORBIDDEN


def test_verdicts_are_sound_on_corpus():
    """Every factor of a real cutting sequence must be admissible."""
    factors = set()
    for q in range(3, 40):
        for p in range(1, (q - 1) // 2 + 1):
            if math.gcd(p, q) != 1:
                continue
            for s in (1, -1):
                w = cutting_from_mgcf(mgcf_direct(Fraction(s * p, q), limit=200))
                for n in range(2, 7):
                    for i in range(len(w) - n + 1):
                        factors.add(w[i:i + n])
    for blk in sorted(factors):
        v = decide_block(blk)
        assert v.status == "admissible", blk
        assert v.witness is not None, blk


def test_central_head_to_tail():
    assert central_head_to_tail([2]) == (4,)
    assert central_head_to_tail([2] * 6) == (3, 8, 4)
    assert central_head_to_tail([3] + [2] * 6) == (3, 8, 4, 10)
    assert central_head_to_tail([1]) == ()


def test_central_block_head2():
    core, theta = central_block([2])
    assert theta == Fraction(5, 14)
    assert core == W("JLLC1LLLLJ")


def test_head2_eight_word_split():
    core, _ = central_block([2])
    ci = next(i for i, t in enumerate(core) if t.startswith("C"))
    forbidden = set()
    for res in corner_resolutions(core[ci]):
        for pre in ("L", "R"):
            for suf in ("L", "R"):
                blk = (pre,) + core[:ci] + res + core[ci + 1:] + (suf,)
                if decide_block(blk).forbidden:
                    forbidden.add("".join(blk))
    assert forbidden == {"RJLLJRJLLLLJR", "LJLLLJLLLLLJL"}


def test_enumeration_counts():
    n1 = enumerate_minimal_forbidden(17, max_head=1)
    n2 = enumerate_minimal_forbidden(29, max_head=2)
    assert len(n1) == 11
    assert len(n2) == 19
    assert all(len(b) <= 29 for b in n2)


def test_anchored_initial_words():
    for f in (Fraction(5, 14), Fraction(-5, 14), Fraction(1, 3), Fraction(2, 7)):
        w = cutting_from_mgcf(mgcf_direct(f, limit=200))
        v = decide_block(w, anchored=True)
        assert v.status == "admissible", f
        assert v.witness is not None
    assert excluded_initial(W("LLJ"))
    assert excluded_initial(W("JJ"))
    assert not excluded_initial(W("JLLJ"))


def test_follower_separation():
    sep = follower_separation(1, 2)
    assert sep["after_j"] != sep["after_k"]
    vj = decide_block(sep["word_j"] + sep["continuation"], anchored=True)
    vk = decide_block(sep["word_k"] + sep["continuation"], anchored=True)
    assert vj.forbidden != vk.forbidden
    with pytest.raises(ValueError):
        follower_separation(2, 2)


def test_is_ambiguous():
    # point-valued head marker: delta = [0,2] = 1/2, N(1/2) = 5/4
    assert is_ambiguous(AmbiguityQuery((INFTY, 2), (4,)))  # 5/4 in [6/5, 5/4]
    assert not is_ambiguous(AmbiguityQuery((INFTY, 2), (2,)))  # outside [4/3, 3/2]
    with pytest.raises(ValueError):
        AmbiguityQuery((), (2,)).deltas()


def test_verdict_json_shape():
    v = decide_block(W("JLLJRJLLLJ"))
    doc = verdict_json(v)
    assert doc["block"] == "JLLJRJLLLJ"
    assert doc["status"] == "admissible"
    assert set(doc) == {"block", "status", "witness", "reason"}
    assert doc["witness"]["head"] == "inf"

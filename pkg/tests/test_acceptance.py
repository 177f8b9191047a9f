"""Acceptance gate: one test per criterion, one pass/fail line each."""

import math
import random
import time
from fractions import Fraction

from modcut.cf import (
    OcfDigits,
    acf_of,
    digits_to_acf,
    ocf_digits,
    ocf_value,
)
from modcut.cutting import cutting_from_mgcf, find_edge_forbidden
from modcut.exactnum import PINF, compare, sqrt_exact
from modcut.mgcf import (
    AnnotatedDigits,
    annotate_ones,
    mgcf_direct,
    mgcf_from_acf,
    mgcf_from_annotated,
    n_transform,
)
from modcut.shiftspace import (
    central_block,
    central_head_to_tail,
    decide_block,
    enumerate_minimal_forbidden,
    follower_separation,
    random_cross_check,
)
from modcut.tessellation import (
    GeodesicSpec,
    corner_hits_vertical,
    periodic_corner_count,
    trace,
)
from modcut.automata import unbounded_lookahead_demo

from conftest import rationals

HALF = Fraction(1, 2)


def test_criterion_01_trace_prefix():
    t0 = time.perf_counter()
    steps = []
    for step in trace(GeodesicSpec(Fraction(-5, 2), Fraction(5, 2))):
        steps.append(step.symbol)
        if len(steps) == 5:
            break
    assert steps == ["R", "R", "J", "L", "L"]
    assert time.perf_counter() - t0 < 1.0


def test_criterion_02_triple_oracle(corpus200):
    t0 = time.perf_counter()
    for f, word in corpus200.items():
        via_tags = mgcf_from_annotated(annotate_ones(ocf_digits(f), f))
        assert word == via_tags, f
        traced = tuple(s.symbol for s in trace(GeodesicSpec(PINF, f), limit=500))
        assert cutting_from_mgcf(word) == traced, f
    assert time.perf_counter() - t0 < 300


def _tags_of(digs):
    od = OcfDigits(digs[0], tuple(digs[1:]), True)
    return annotate_ones(od, ocf_value(od)).tail


def test_criterion_03_sign_cases():
    assert _tags_of([0, 2, 1, 4])[1] == (1, "c")
    assert _tags_of([0, 2, 1, 3])[1] == (1, "h")
    assert _tags_of([0, 2, 1, 5])[1] == (1, "m")
    for j in (1, 2, 3):
        digs = [0] + [2, 1] * j + [2, 1] + [2, 1] * j + [4]
        expected = [(2, None), (1, "h")] * j + [(2, None), (1, "c")]
        expected += [(2, None), (1, "m")] * j + [(4, None)]
        od = OcfDigits(0, tuple(digs[1:]), True)
        theta = ocf_value(od)
        if j == 1:
            assert theta == Fraction(71, 194)
        assert list(annotate_ones(od, theta).tail) == expected


def test_criterion_04_periodic_example():
    t0 = time.perf_counter()
    theta = (sqrt_exact(3) - 1) * HALF
    od = ocf_digits(theta, limit=41)
    ad = annotate_ones(od, theta)
    assert list(ad.tail[:40]) == [(2, None), (1, "h")] * 20
    assert time.perf_counter() - t0 < 1.0


def test_criterion_05_corner_census(corpus200):
    t0 = time.perf_counter()
    half_hits = corner_hits_vertical(HALF)
    s3 = sqrt_exact(3)
    vals = {str(h.t_value()) for h in half_hits}
    assert vals == {str(s3 * HALF), str(s3 * Fraction(1, 6))}
    for f, word in corpus200.items():
        hits = corner_hits_vertical(f)
        assert len(hits) <= 1, f
        assert ("C" in word) == (len(hits) == 1), f
    assert time.perf_counter() - t0 < 120


def test_criterion_06_central_tails():
    assert n_transform(Fraction(70, 169)) == Fraction(136, 103)
    assert ocf_digits(Fraction(136, 103)).all_digits() == (1, 3, 8, 4)
    for j in (1, 2, 3):
        assert central_head_to_tail([2] * (4 * j + 2)) == (3,) + (8, 4) * j


def test_criterion_07_expansion_length_bound():
    heads = [[]]
    for total in range(1, 13):
        stack = [(total, [])]
        while stack:
            rem, acc = stack.pop()
            if rem == 0:
                heads.append(acc)
                continue
            for d in range(1, rem + 1):
                stack.append((rem - d, acc + [d]))
    checked = 0
    for head in heads:
        if not head:
            continue
        alpha = ocf_value(OcfDigits(0, tuple(head), True))
        la = len(digits_to_acf(ocf_digits(alpha)))
        ln = len(digits_to_acf(ocf_digits(n_transform(alpha))))
        assert ln <= 3 * la, head
        checked += 1
    assert checked == 2 ** 12 - 1


def test_criterion_08_forbidden_blocks(corpus200):
    t0 = time.perf_counter()
    # (a) edge-forbidden factors never occur, q <= 500, 200 symbols each
    for f, word in corpus200.items():
        assert find_edge_forbidden(cutting_from_mgcf(word)) is None, f
    for f in rationals(500, qmin=201):
        w = cutting_from_mgcf(mgcf_direct(f, limit=200))
        assert find_edge_forbidden(w) is None, f
    # (b) the two digit families are decided forbidden
    for word in ("JLLLJRJLLLJ", "LLLLLJRJLLLLL", "JLLJLLJ", "LJRRRJRRRJLL"):
        v = decide_block(tuple(word))
        assert v.forbidden, word
        assert random_cross_check(tuple(word), v)
    # (c) admissible verdicts carry tracer-confirmed witnesses (length <= 10)
    factors = set()
    for f in rationals(50):
        w = cutting_from_mgcf(mgcf_direct(f, limit=200))
        for n in range(2, 11):
            for i in range(len(w) - n + 1):
                factors.add(w[i:i + n])
    sample = sorted(factors)[:: max(1, len(factors) // 300)]
    rng = random.Random(11)
    for _ in range(60):
        sample.append(tuple(rng.choice("LLRRJ") for _ in range(rng.randint(2, 10))))
    admissible = 0
    for blk in sample:
        v = decide_block(blk)
        if v.status == "admissible":
            admissible += 1
            assert v.witness is not None, blk
    assert admissible > 100
    assert time.perf_counter() - t0 < 900


def test_criterion_09_minimal_enumeration():
    for n in (1, 2):
        blocks = enumerate_minimal_forbidden(12 * n + 5, max_head=n)
        assert len(set(blocks)) == len(blocks)
        assert len(blocks) >= 2 ** (n + 1)
        for blk in blocks:
            assert len(blk) <= 12 * n + 5
            for sub in (blk[1:], blk[:-1]):
                assert not decide_block(sub).forbidden, (blk, sub)
    # six-admissible / two-forbidden split for the head-[2] central sequence
    core, _theta = central_block([2])
    ci = next(i for i, t in enumerate(core) if t.startswith("C"))
    from modcut.cutting import corner_resolutions

    statuses = []
    for res in corner_resolutions(core[ci]):
        for pre in ("L", "R"):
            for suf in ("L", "R"):
                blk = (pre,) + core[:ci] + res + core[ci + 1:] + (suf,)
                statuses.append(decide_block(blk).forbidden)
    assert statuses.count(True) == 2
    assert statuses.count(False) == 6


def test_criterion_10_follower_separation():
    for j in (1, 2, 3):
        for k in (1, 2, 3):
            if j == k:
                continue
            sep = follower_separation(j, k)
            vj = decide_block(sep["word_j"] + sep["continuation"], anchored=True)
            vk = decide_block(sep["word_k"] + sep["continuation"], anchored=True)
            assert vj.status == sep["after_j"]
            assert vk.status == sep["after_k"]
            assert vj.forbidden != vk.forbidden


def test_criterion_11_periodic_corner_counts():
    t0 = time.perf_counter()
    assert periodic_corner_count(13) == 4
    assert time.perf_counter() - t0 < 60
    t0 = time.perf_counter()
    assert periodic_corner_count(133) == 4
    assert time.perf_counter() - t0 < 60


def test_criterion_12_benchmark():
    theta = (sqrt_exact(3) - 1) * HALF
    full = acf_of(theta, limit=4000)
    rows = []
    for n in (1000, 2000, 4000):
        w = full[:n]
        t0 = time.perf_counter()
        _word, stats = mgcf_from_acf(w)
        rows.append((n, time.perf_counter() - t0, stats["retained_digits"]))
    xs = [math.log(n) for n, _, _ in rows]
    ys = [math.log(t) for _, t, _ in rows]
    xb, yb = sum(xs) / 3, sum(ys) / 3
    slope = sum((x - xb) * (y - yb) for x, y in zip(xs, ys)) / sum(
        (x - xb) ** 2 for x in xs
    )
    assert 1.5 <= slope <= 2.3, rows
    r1, r4 = rows[0][2], rows[2][2]
    assert r4 <= 4 * 1.3 * r1
    assert r4 >= 4 / 1.3 * r1


def test_criterion_13_unbounded_lookahead():
    prev = 0
    for j in (1, 2, 3):
        demo = unbounded_lookahead_demo(j)
        base, var_h = demo["digits_base"], demo["digits_h"]
        assert base[: 4 * j + 3] == var_h[: 4 * j + 3]
        assert demo["agree_digits"] >= 4 * j + 2
        tags = demo["tags"]
        assert tags["base"] == "c" and tags["h"] == "h" and tags["m"] == "m"
        assert demo["lookahead"] >= 14 * j + 6 - 2
        assert demo["lookahead"] > prev
        prev = demo["lookahead"]

"""Forbidden-block analysis of the vertical cutting-sequence shift.

A block over {L, R, J, C1, C2} is parsed into readings: complete digits with
their 1-tags plus free boundary variables y (head continuation, the value
[0; e1, e2, ...] of the digits preceding the block read outward) and z (tail
continuation).  Each tagged 1 at digit index i contributes one exact
linear-fractional constraint

    beta_i(z)  >  N(alpha_i(y))   for 1_h,
    beta_i(z)  <  N(alpha_i(y))   for 1_m,
    beta_i(z)  =  N(alpha_i(y))   for 1_c,

with alpha_i = [0, d_{i-1}, ..., d_0 + y] and beta_i = [1, d_{i+1}, ...,
d_last + z].  The block is whole-forbidden iff every reading's system is
infeasible over the open box; feasibility is decided exactly by isolating
the y-values where constraint curves cross (integer quadratics) and testing
a rational sample point in every cell.  Admissible verdicts come with a
rational witness geodesic re-checked against the tracer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exactnum import (
    ExtReal,
    IntMatrix2,
    PINF,
    QuadSurd,
    compare,
    lft_apply,
    rational_between,
    sqrt_exact,
)
from .cf import OcfDigits, ocf_digits, ocf_value
from .mgcf import N_MAT, annotate_ones, mgcf_direct, n_transform
from .cutting import (
    CuttingWord,
    EDGE_FORBIDDEN,
    corner_resolutions,
    cutting_from_mgcf,
    find_edge_forbidden,
)
from .tessellation import GeodesicSpec, corner_hits_vertical

__all__ = [
    "AmbiguityQuery",
    "BlockVerdict",
    "edge_forbidden_blocks",
    "is_ambiguous",
    "central_head_to_tail",
    "central_block",
    "decide_block",
    "excluded_initial",
    "enumerate_minimal_forbidden",
    "follower_separation",
    "random_cross_check",
    "verdict_json",
]

INFTY = "inf"  # head marker for initial sequences


# ---------------------------------------------------------------------------
# ambiguity (interval intersection after applying N)


@dataclass(frozen=True)
class AmbiguityQuery:
    head: tuple  # d1..dn, d1 may be INFTY
    tail: tuple[int, ...]  # b1..bm

    def deltas(self) -> tuple[Fraction, Fraction]:
        h = list(self.head)
        if not h:
            raise ValueError("empty head")
        if h[0] == INFTY:
            ds = h[1:]
            v = _cf_value([0] + list(reversed(ds)))
            return v, v
        d0 = _cf_value([0] + list(reversed(h)))
        d1 = _cf_value([0] + list(reversed(h[:-1])) + [h[-1] + 1])
        return d0, d1

    def betas(self) -> tuple[Fraction, Fraction]:
        b = list(self.tail)
        b0 = _cf_value([1] + b)
        b1 = _cf_value([1] + b[:-1] + [b[-1] + 1]) if b else Fraction(2)
        return b0, b1


def _cf_value(digits: Sequence[int]) -> Fraction:
    v = Fraction(digits[-1])
    for d in reversed(digits[:-1]):
        v = d + (1 / v if v else v)
    return Fraction(v)


def is_ambiguous(q: AmbiguityQuery) -> bool:
    d0, d1 = q.deltas()
    b0, b1 = q.betas()
    n0, n1 = n_transform(d0), n_transform(d1)
    lo_n, hi_n = min(n0, n1), max(n0, n1)
    lo_b, hi_b = min(b0, b1), max(b0, b1)
    return max(lo_n, lo_b) <= min(hi_n, hi_b)


def central_head_to_tail(head: Sequence[int]) -> tuple[int, ...]:
    """Tail digits b1..bm making head,1_c,tail central.

    alpha = [0, d_n, ..., d_1]; the tail is the continued fraction of
    N(alpha) = [1, b_1, ..., b_m] with the leading 1 removed.  Empty for the
    degenerate head [1] (alpha = 1, N(1) = 1, associated rational 1/2).
    """
    if not head or any(d < 1 for d in head):
        raise ValueError("head digits must be positive")
    alpha = _cf_value([0] + list(reversed(head)))
    nv = Fraction(n_transform(alpha))
    d = ocf_digits(nv)
    if d.a0 != 1:
        raise AssertionError("N maps (0,1] into (1,2]")
    return d.tail


# ---------------------------------------------------------------------------
# block parsing into readings


@dataclass
class _Reading:
    digits: list  # [(value, tag)]: tag in {"h","m","c",None}; None = plain >= 2
    y_hi: Optional[Fraction] = None  # y in (0, y_hi); None = (0,1)
    z_lo: Fraction = Fraction(0)
    z_hi: Fraction = Fraction(1)
    anchored: bool = False  # head pinned (initial word); y absent
    anchor_prefix: tuple[int, ...] = ()  # digits closing the alpha chains
    z_hi_closed: bool = False  # z = z_hi realizable (partial digit, then end)
    trailing_pair: Optional[int] = None  # trailing run read as a full pair
    # run of digit `trailing_pair`; the pair's unseen 1_m adds a constraint


def _tokens_to_items(w: Sequence[str]):
    """Group a block into runs and separators."""
    items = []
    for tok in w:
        if tok in ("L", "R"):
            if items and items[-1][0] == "run" and items[-1][1] == tok:
                items[-1] = ("run", tok, items[-1][2] + 1)
            else:
                items.append(("run", tok, 1))
        elif tok in ("J", "C1", "C2"):
            items.append((tok,))
        else:
            raise ValueError("bad cutting token %r" % tok)
    return items


def _corner_type(tok: str) -> str:
    return "L" if tok == "C1" else "R"


def _digit_tag(v: int) -> Optional[str]:
    # a complete digit of value 1 standing alone heads its own segment
    return "h" if v == 1 else None


def _interior_parse(items, start, first_deficit, digits, anchored_end):
    """Consume items[start:] given that the current run has lost
    ``first_deficit`` leading letters to a pair tail.  Returns list of
    (digits, tail_kind, tail_info) alternatives or None if structurally
    impossible.  tail_kind: "none" (ended at separator boundary),
    "run" (trailing run r), "runJ" (run r then J), "runC" (run r then C).
    """
    out = []
    i = start
    deficit = first_deficit
    digs = list(digits)
    while True:
        if i >= len(items):
            out.append((digs, "none", None))
            return out
        it = items[i]
        if it[0] != "run":
            return None  # two separators in a row (JJ caught earlier, C cases)
        sym, r = it[1], it[2] - deficit
        if r < 0:
            return None
        if i + 1 >= len(items):
            if r == 0:
                # the run was exactly a pair tail; block ends there
                out.append((digs, "none", None))
            else:
                out.append((digs, "run", (sym, r)))
            return out
        if r == 0:
            return None  # next separator reached with no digit letters
        sep = items[i + 1]
        if sep[0] == "J":
            if i + 2 >= len(items):
                if r == 0:
                    return None
                out.append((digs, "runJ", (sym, r)))
                return out
            nxt = items[i + 2]
            if nxt[0] == "run" and nxt[1] == sym:
                # same letter across J: forced pair, digit r-1 then 1_m,
                # the next run loses its first letter
                if r < 2:
                    return None
                digs = digs + [(r - 1, _digit_tag(r - 1)), (1, "m")]
                deficit, i = 1, i + 2
                continue
            if nxt[0] == "run":
                if r == 0:
                    return None
                digs = digs + [(r, _digit_tag(r))]
                deficit, i = 0, i + 2
                continue
            if nxt[0] in ("C1", "C2"):
                return None  # J then C with no run between
            return None
        # corner separator
        if _corner_type(sep[0]) != sym or r == 0:
            return None
        if i + 2 >= len(items):
            out.append((digs, "runC", (sym, r)))
            return out
        nxt = items[i + 2]
        if nxt[0] != "run" or nxt[1] != sym:
            return None  # corner keeps the letter type
        digs = digs + [(r, _digit_tag(r)), (1, "c")]
        deficit, i = 0, i + 2


def _block_readings(w: Sequence[str], anchored: bool = False) -> list[_Reading]:
    """All consistent (head reading, interior, tail reading) combinations."""
    items = _tokens_to_items(w)
    if not items:
        return [_Reading([])]
    heads = []  # (start_index, deficit, head_digits, y_hi)
    it0 = items[0]
    if anchored:
        # the word begins at a digit-run boundary; no unseen predecessors
        heads.append((0, 0, [], None))
    elif it0[0] == "run":
        sym, r = it0[1], it0[2]
        # (a) the run is the tail of a partial digit e >= r, absorbed into y
        #     -- only meaningful when a separator follows; the partial digit
        #     flows into y with bound 1/r (plain/corner) or 1/(r-1) (pair)
        if len(items) == 1:
            # bare letter run: realized by any digit >= r
            return [_Reading([], y_hi=None)]
        sep = items[1]
        if sep[0] == "J":
            nxt = items[2] if len(items) > 2 else None
            if nxt is not None and nxt[0] == "run" and nxt[1] == sym:
                # forced pair across the J: partial digit e-1 >= r-1 into y;
                # a digit 1 owning a run must be tagged h, so split it out
                if r >= 3:
                    heads.append((2, 1, [(1, "m")], Fraction(1, r - 1)))
                else:
                    heads.append((2, 1, [(1, "m")], Fraction(1, 2)))
                    heads.append((2, 1, [(1, "h"), (1, "m")], None))
            else:
                if r >= 2:
                    heads.append((2, 0, [], Fraction(1, r)))
                else:
                    heads.append((2, 0, [], Fraction(1, 2)))
                    heads.append((2, 0, [(1, "h")], None))
        elif sep[0] in ("C1", "C2"):
            if _corner_type(sep[0]) == sym:
                if r >= 2:
                    heads.append((2, 0, [(1, "c")], Fraction(1, r)))
                else:
                    heads.append((2, 0, [(1, "c")], Fraction(1, 2)))
                    heads.append((2, 0, [(1, "h"), (1, "c")], None))
        # (b) first letter is the tail of an unseen pair: boundary 1_m with
        #     alpha = y free, then a complete digit of r-1 letters
        if r >= 2 or (r == 1 and len(items) == 1):
            sub = [("run", sym, r - 1)] + list(items[1:]) if r >= 2 else []
            heads.append((("sub", sub), 0, [(1, "m")], None))
        elif r == 1 and len(items) >= 2 and items[1][0] == "J":
            # the whole first run is a pair tail; the digit after the 1_m
            # has no letters before the next separator: impossible
            pass
    elif it0[0] == "J":
        nxt = items[1] if len(items) > 1 else None
        # (i) plain separator, head free
        heads.append((1, 0, [], None))
        # (ii) the J belongs to an unseen pair; consumes the next run's
        #      first letter
        if nxt is not None and nxt[0] == "run":
            heads.append((1, 1, [(1, "m")], None))
    else:  # corner first
        nxt = items[1] if len(items) > 1 else None
        if nxt is None or (nxt[0] == "run" and nxt[1] == _corner_type(it0[0])):
            heads.append((1, 0, [(1, "c")], None))

    readings = []
    for start, deficit, hdigits, y_hi in heads:
        if isinstance(start, tuple):  # substituted item list (head case b)
            sub = start[1]
            if not sub:
                readings.append(_Reading(list(hdigits), y_hi=None))
                continue
            alts = _interior_parse(sub, 0, 0, hdigits, False)
        else:
            alts = _interior_parse(items, start, deficit, hdigits, False)
        if alts is None:
            continue
        for digs, tkind, tinfo in alts:
            for rd in _tail_readings(digs, tkind, tinfo):
                rd.y_hi = y_hi
                readings.append(rd)
    return readings


def _tail_readings(digs, tkind, tinfo) -> list[_Reading]:
    out = []
    if tkind == "none":
        out.append(_Reading(list(digs)))
    elif tkind == "run":
        sym, r = tinfo
        # (a) partial digit e >= r: z in (0, 1/r], closed when e = r ends
        # the expansion; a digit 1 owning a run must be tagged h, so the
        # e = 1 case is split out with its constraint
        if r >= 2:
            out.append(_Reading(list(digs), z_hi=Fraction(1, r),
                                z_hi_closed=True))
        else:
            out.append(_Reading(list(digs), z_hi=Fraction(1, 2),
                                z_hi_closed=True))
            out.append(_Reading(list(digs) + [(1, "h")]))
        # (b) the run is a full pair run of length exactly r (digit r-1,
        #     J and pair tail unseen): continuation [0, r-1, 1, ...],
        #     z in (1/r, 2/(2r-1)), plus the unseen 1_m's tag constraint
        if r >= 2:
            out.append(_Reading(list(digs), z_lo=Fraction(1, r),
                                z_hi=Fraction(2, 2 * r - 1),
                                trailing_pair=r - 1))
    elif tkind == "runJ":
        sym, r = tinfo
        # plain separator: digit r complete, z free
        out.append(_Reading(list(digs) + [(r, _digit_tag(r))]))
        # pair: digit r-1 then 1_m whose pair tail is unseen
        if r >= 2:
            out.append(_Reading(list(digs) + [(r - 1, _digit_tag(r - 1)),
                                              (1, "m")]))
    elif tkind == "runC":
        sym, r = tinfo
        out.append(_Reading(list(digs) + [(r, _digit_tag(r)), (1, "c")]))
    return out


# ---------------------------------------------------------------------------
# exact feasibility of a reading


_F = IntMatrix2(0, 1, 1, 0)
_ONE_PLUS = IntMatrix2(1, 1, 0, 1)


def _alpha_matrix(digits, i) -> IntMatrix2:
    """alpha_i = [0, d_{i-1}, ..., d_0 + y] as an LFT of y."""
    m = IntMatrix2(1, digits[0][0], 0, 1) if i > 0 else IntMatrix2(1, 0, 0, 1)
    for k in range(1, i):
        m = IntMatrix2(digits[k][0], 1, 1, 0) * m
    return _F * m if i > 0 else m  # i == 0: alpha = y itself


def _alpha_value(digits, i, prefix) -> Fraction:
    """Anchored alpha_i = [0, d_{i-1}, ..., d_0, prefix...] exactly."""
    chain = [digits[k][0] for k in range(i - 1, -1, -1)] + list(prefix)
    if not chain:
        return Fraction(0)
    return _cf_value([0] + chain)


def _beta_matrix(digits, i) -> IntMatrix2:
    """beta_i = 1 + [0, d_{i+1}, ..., d_last + z] as an LFT of z."""
    last = len(digits) - 1
    if i == last:
        return _ONE_PLUS
    m = IntMatrix2(1, digits[last][0], 0, 1)
    for k in range(last - 1, i, -1):
        m = IntMatrix2(digits[k][0], 1, 1, 0) * m
    return _ONE_PLUS * _F * m


def _quad_roots(A: int, B: int, C: int):
    """Real roots of A x^2 + B x + C (exact)."""
    if A == 0:
        if B == 0:
            return []
        return [Fraction(-C, B)]
    D = B * B - 4 * A * C
    if D < 0:
        return []
    if D == 0:
        return [Fraction(-B, 2 * A)]
    s = sqrt_exact(D)
    half = Fraction(1, 2 * A)
    return [(-B + s) * half, (-B - s) * half]


def _lft_at(m: IntMatrix2, x: Fraction):
    den = m.c * x + m.d
    if den == 0:
        return None
    return (m.a * x + m.b) / den


@dataclass
class _System:
    constraints: list  # (op, beta_mat, alpha_mat_or_value)
    y_lo: Fraction
    y_hi: Fraction
    z_lo: Fraction
    z_hi: Fraction
    anchored: bool
    z_hi_closed: bool = False

    def satisfied(self, y, z) -> bool:
        for op, bm, am in self.constraints:
            beta = _lft_at(bm, z)
            alpha = am if isinstance(am, Fraction) else _lft_at(am, y)
            if beta is None or alpha is None:
                return False
            nv = n_transform(alpha) if not isinstance(am, Fraction) else n_transform(am)
            c = (beta > nv) - (beta < nv)
            if (op == ">" and c <= 0) or (op == "<" and c >= 0) or \
               (op == "=" and c != 0):
                return False
        return True


def _build_system(rd: _Reading) -> _System:
    cons = []
    for i, (v, tag) in enumerate(rd.digits):
        if tag not in ("h", "m", "c"):
            continue
        bm = _beta_matrix(rd.digits, i)
        if rd.anchored:
            am = _alpha_value(rd.digits, i, rd.anchor_prefix)
        else:
            am = _alpha_matrix(rd.digits, i)
        op = {"h": ">", "m": "<", "c": "="}[tag]
        cons.append((op, bm, am))
    if rd.trailing_pair is not None:
        # the unseen 1_m after the trailing pair digit a = trailing_pair:
        # z = [0, a, 1 + 1/t] with t the continuation; beta = 1 + 1/t
        a = rd.trailing_pair
        m_zt = _F * IntMatrix2(1, a, 0, 1) * _F * _ONE_PLUS * _F
        bm = _ONE_PLUS * _F * m_zt.inverse()
        ext = list(rd.digits) + [(a, None), (1, "m")]
        if rd.anchored:
            am = _alpha_value(ext, len(ext) - 1, rd.anchor_prefix)
        else:
            am = _alpha_matrix(ext, len(ext) - 1)
        cons.append(("<", bm, am))
    y_hi = rd.y_hi if rd.y_hi is not None else Fraction(1)
    return _System(cons, Fraction(0), y_hi, rd.z_lo, rd.z_hi, rd.anchored,
                   rd.z_hi_closed)


def _z_set_at(sys_: _System, y) -> Optional[tuple[Fraction, Fraction, Optional[Fraction]]]:
    """Open z-interval satisfying all constraints at fixed rational y.
    Returns (lo, hi, pinned) where pinned is the forced z of equality
    constraints (then lo < pinned < hi must hold), or None if empty.
    """
    lo, hi = sys_.z_lo, sys_.z_hi
    pinned = None
    for op, bm, am in sys_.constraints:
        alpha = am if isinstance(am, Fraction) else _lft_at(am, y)
        if alpha is None or not (0 < alpha <= 1):
            return None
        T = Fraction(n_transform(alpha))
        binv = bm.inverse()
        zstar = _lft_at(binv, T)
        if op == "=":
            if zstar is None:
                return None
            if pinned is not None and pinned != zstar:
                return None
            pinned = zstar
            continue
        # beta is monotone on (z_lo, z_hi); probe a point to orient
        probe = (lo + hi) / 2
        bp = _lft_at(bm, probe)
        if bp is None:
            return None
        want_gt = op == ">"
        if zstar is None:
            # beta never reaches T on the line; constant side decides
            if (bp > T) != want_gt:
                return None
            continue
        side_of_probe = bp > T
        if side_of_probe == want_gt:
            # probe's side is the good one: the interval containing probe
            if zstar <= probe:
                lo = max(lo, zstar)
            else:
                hi = min(hi, zstar)
        else:
            if zstar <= probe:
                hi = min(hi, zstar)
            else:
                lo = max(lo, zstar)
        if lo >= hi:
            return None
    if pinned is not None:
        ok = lo < pinned < hi
        # terminating expansions realize the closed endpoints: z = 0 when
        # the tail stops at the block's final separator, z = z_hi when a
        # partial trailing digit is the word's last
        if not ok and pinned == sys_.z_lo == 0 and lo == sys_.z_lo:
            ok = True
        if not ok and sys_.z_hi_closed and pinned == sys_.z_hi == hi:
            ok = True
        if not ok:
            return None
    return (lo, hi, pinned)


def _feasible(sys_: _System) -> Optional[tuple[Fraction, Fraction]]:
    """Exact feasibility; returns a rational solution or None."""
    if sys_.anchored:
        zi = _z_set_at(sys_, Fraction(0))
        if zi is None:
            return None
        lo, hi, pinned = zi
        z = pinned if pinned is not None else rational_between(lo, hi)
        return (Fraction(0), z)
    # candidate y breakpoints
    cands: list = [sys_.y_lo, sys_.y_hi]
    mats = []
    for op, bm, am in sys_.constraints:
        if isinstance(am, Fraction):
            continue
        psi = bm.inverse() * N_MAT * am  # z-boundary curve psi(y)
        mats.append(psi)
        if psi.c != 0:
            cands.append(Fraction(-psi.d, psi.c))  # pole
        for zb in (sys_.z_lo, sys_.z_hi):
            # psi(y) = zb: (a - zb c) y + (b - zb d) = 0
            a = psi.a - zb * psi.c
            b = psi.b - zb * psi.d
            if a != 0:
                cands.append(Fraction(b * -1, a))
        if am.c != 0:
            cands.append(Fraction(-am.d, am.c))
    for p in range(len(mats)):
        for q in range(p + 1, len(mats)):
            m1, m2 = mats[p], mats[q]
            A = m1.a * m2.c - m2.a * m1.c
            B = m1.a * m2.d + m1.b * m2.c - m2.a * m1.d - m2.b * m1.c
            C = m1.b * m2.d - m2.b * m1.d
            cands.extend(_quad_roots(A, B, C))
    inside = [c for c in cands
              if compare(c, sys_.y_lo) >= 0 and compare(c, sys_.y_hi) <= 0]
    inside.sort(key=_SortKey)
    dedup = []
    for c in inside:
        if not dedup or compare(dedup[-1], c) != 0:
            dedup.append(c)
    for a, b in zip(dedup, dedup[1:]):
        if compare(a, b) == 0:
            continue
        y = rational_between(a, b)
        zi = _z_set_at(sys_, y)
        if zi is None:
            continue
        lo, hi, pinned = zi
        z = pinned if pinned is not None else rational_between(lo, hi)
        return (y, z)
    return None


class _SortKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return compare(self.v, other.v) < 0


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class BlockVerdict:
    block: CuttingWord
    status: str  # admissible | edge-forbidden | whole-forbidden
    witness: Optional[GeodesicSpec] = None
    reason: Optional[str] = None

    @property
    def forbidden(self) -> bool:
        return self.status != "admissible"


def edge_forbidden_blocks() -> list[CuttingWord]:
    return list(EDGE_FORBIDDEN)


def _theta_from(rd: _Reading, y: Fraction, z: Fraction) -> list[Fraction]:
    """Candidate foot values realizing the reading at (y, z).

    The head continuation digits come from the two continued fraction
    representations of y (their lengths differ by one), since the parity of
    the head digit count fixes on which side of the strip the block's
    letters fall; values outside [-1/2, 1/2) are shifted by -1, which
    corresponds to the a0 = -1 word opening.
    """
    tail = list(ocf_digits(z).tail) if z else []
    body = [v for v, _t in rd.digits]
    heads: list[list[int]] = []
    if rd.anchored:
        heads.append(([1] if rd.anchor_prefix else []))
    else:
        hd = list(ocf_digits(y).tail) if y else []
        heads.append(list(reversed(hd)))
        if hd:  # the other representation: [..., a] == [..., a-1, 1]
            alt = hd[:-1] + ([hd[-1] - 1, 1] if hd[-1] >= 2 else [])
            if alt and alt != hd:
                heads.append(list(reversed(alt)))
        # y == 0: only the empty head exists, single parity
    out = []
    for head in heads:
        digits = head + body + tail
        if not digits:
            continue
        if digits[-1] == 1:
            if len(digits) >= 2:
                digits = digits[:-2] + [digits[-2] + 1]
            else:
                continue
        try:
            od = OcfDigits(0, tuple(digits), True)
        except ValueError:
            continue
        theta = ocf_value(od)
        if theta >= Fraction(1, 2):
            theta -= 1
        if rd.anchored and rd.anchor_prefix:
            theta = ocf_value(OcfDigits(-1, tuple(digits), True))
        if -Fraction(1, 2) <= theta < Fraction(1, 2):
            out.append(theta)
    return out


def _occurs(block: CuttingWord, theta: Fraction) -> bool:
    word = cutting_from_mgcf(mgcf_direct(theta, limit=4000))
    n = len(block)
    return any(word[i:i + n] == tuple(block) for i in range(len(word) - n + 1))


def decide_block(w: Sequence[str], anchored: bool = False,
                 anchor_prefix: Sequence[int] = ()) -> BlockVerdict:
    """Verdict for a cutting-word factor (or an initial word if anchored)."""
    w = tuple(w)
    hit = find_edge_forbidden(w)
    if hit is not None:
        return BlockVerdict(w, "edge-forbidden",
                            reason="contains %s at %d" % ("".join(hit[1]), hit[0]))
    body = w
    if anchored:
        if not w or w[0] != "J":
            return BlockVerdict(w, "whole-forbidden",
                                reason="initial words start with J")
        body = w[1:]
        if body and body[0] == "R" and not anchor_prefix:
            # the J R opening encodes a0 = -1 with the consumed 1_m digit
            anchor_prefix = (1,)
            body = body[1:]
    readings = _block_readings(body, anchored=anchored)
    if anchored:
        for rd in readings:
            rd.anchored = True
            rd.anchor_prefix = tuple(anchor_prefix)
            rd.y_hi = None
    if not readings:
        return BlockVerdict(w, "whole-forbidden",
                            reason="no segment factorization")
    solutions = []
    for rd in readings:
        sys_ = _build_system(rd)
        sol = _feasible(sys_)
        if sol is not None:
            solutions.append((rd, sol))
    if not solutions:
        return BlockVerdict(w, "whole-forbidden",
                            reason="all %d readings infeasible" % len(readings))
    # construct a tracer-checked witness
    for rd, (y, z) in solutions:
        for cand in _witness_candidates(rd, y, z):
            for theta in _theta_from(rd, cand[0], cand[1]):
                if theta == 0:
                    continue
                if _occurs(w, theta):
                    return BlockVerdict(w, "admissible",
                                        witness=GeodesicSpec(PINF, theta))
    return BlockVerdict(w, "admissible", witness=None,
                        reason="feasible but no rational witness found")


def _witness_candidates(rd: _Reading, y: Fraction, z: Fraction):
    yield (y, z)
    sys_ = _build_system(rd)
    rng = random.Random(1729)
    for _ in range(60):
        yy = Fraction(rng.randint(1, 400), 401) * (sys_.y_hi - sys_.y_lo) + sys_.y_lo
        zi = _z_set_at(sys_, yy)
        if zi is None:
            continue
        lo, hi, pinned = zi
        zz = pinned if pinned is not None else rational_between(lo, hi)
        yield (yy, zz)


def random_cross_check(w: Sequence[str], verdict: BlockVerdict,
                       samples: int = 300, seed: int = 7) -> bool:
    """Random rational sampling must never contradict an infeasible verdict."""
    if verdict.status != "whole-forbidden":
        return True
    rng = random.Random(seed)
    for rd in _block_readings(tuple(w)):
        sys_ = _build_system(rd)
        for _ in range(samples):
            y = Fraction(rng.randint(1, 997), 998) * (sys_.y_hi - sys_.y_lo)
            zi = Fraction(rng.randint(1, 997), 998)
            z = sys_.z_lo + zi * (sys_.z_hi - sys_.z_lo)
            if sys_.satisfied(y, z):
                return False
    return True


# ---------------------------------------------------------------------------
# excluded initial blocks, minimal enumeration, follower separation


def excluded_initial(w: Sequence[str]) -> bool:
    """True iff w cannot start a cutting sequence read from the cusp."""
    w = tuple(w)
    if not w:
        return False
    if w[0] in ("R", "L"):
        # L and R edges meet at infinity; any forbidden extension applies,
        # and vertical words must open with J
        return True
    return decide_block(w, anchored=True).forbidden


def _central_block(head: Sequence[int]) -> Optional[tuple[CuttingWord, Fraction]]:
    """Cutting word W1 S W2 of the central sequence from ``head``."""
    tail = central_head_to_tail(head)
    if not tail:
        return None
    digits = list(head) + [1] + list(tail)
    theta = ocf_value(OcfDigits(0, tuple(digits), True))
    if theta == Fraction(1, 2):
        return None
    if theta > Fraction(1, 2):
        theta -= 1  # normalize into [-1/2, 1/2)
    word = cutting_from_mgcf(mgcf_direct(theta, limit=4000))
    if word[0] != "J" or word[-1] != "J":
        return None
    if not any(t.startswith("C") for t in word):
        return None  # not realized as a corner hit; skip
    return word, theta


def central_block(head: Sequence[int]) -> Optional[tuple[CuttingWord, Fraction]]:
    """Public entry point for the central-sequence cutting word."""
    return _central_block(head)


def enumerate_minimal_forbidden(max_len: int, max_head: int = 3,
                                check_minimal: bool = True,
                                jobs: int = 1) -> list[CuttingWord]:
    """Edge-forbidden blocks plus central-derived minimal forbidden blocks.

    Heads range over {1,2}^n for n <= max_head plus all heads with digit sum
    <= 8; each central sequence's eight prefix/resolution/suffix words are
    decided and the forbidden ones kept.
    """
    heads = []
    for n in range(1, max_head + 1):
        for mask in range(2 ** n):
            heads.append([1 + ((mask >> i) & 1) for i in range(n)])
    candidates: list[CuttingWord] = []
    seen_theta = set()
    for head in heads:
        cb = _central_block(head)
        if cb is None:
            continue
        core, theta = cb
        if theta in seen_theta:
            continue
        seen_theta.add(theta)
        ci = next(i for i, t in enumerate(core) if t.startswith("C"))
        w1, s, w2 = core[:ci], core[ci], core[ci + 1:]
        for res in corner_resolutions(s):
            for pre in ("L", "R"):
                for suf in ("L", "R"):
                    candidates.append((pre,) + w1 + res + w2 + (suf,))
    uniq = list(dict.fromkeys(candidates))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = dict(zip(uniq, pool.map(decide_block, uniq)))
    else:
        verdicts = {blk: decide_block(blk) for blk in uniq}
    seen_blocks: dict[CuttingWord, None] = {}
    result: list[CuttingWord] = [b for b in EDGE_FORBIDDEN if len(b) <= max_len]
    for blk in candidates:
        if verdicts[blk].forbidden and len(blk) <= max_len and blk not in seen_blocks:
            if check_minimal and not _is_minimal(blk):
                continue
            seen_blocks[blk] = None
            result.append(blk)
    return result


def _is_minimal(blk: CuttingWord) -> bool:
    for sub in (blk[1:], blk[:-1]):
        if sub and decide_block(sub).forbidden:
            return False
    return True


def follower_separation(j: int, k: int) -> dict:
    """A continuation admissible after the j-style initial word but
    forbidden after the k-style one (or vice versa).

    The initial words encode [0; 3, 2^(4j+2)] up to the end of the last
    2-run; continuations come from the central family with head
    [3, 2^(4j+2)].
    """
    if j == k or j < 1 or k < 1:
        raise ValueError("need distinct j, k >= 1")

    def initial_word(jj):
        # J, then digit 3 (odd position: L letters), then 2-runs; stop at
        # the end of the last 2-run, before its separator
        toks = ["J"] + ["L"] * 3 + ["J"]
        sym = "R"
        for _ in range(4 * jj + 2):
            toks += [sym] * 2 + ["J"]
            sym = "L" if sym == "R" else "R"
        # drop the final separator: the word ends inside the last run
        return tuple(toks[:-1]), sym  # sym = letter type *after* toggling

    wj, _ = initial_word(j)
    wk, _ = initial_word(k)
    # letter type of the last 2-run
    last_j, last_k = wj[-1], wk[-1]
    if last_j != last_k:
        raise AssertionError("run parities of the two prefixes differ")
    X = last_j
    corner = "C1" if X == "L" else "C2"

    def encode_tail(tail, sym):
        toks = []
        s = sym
        for d in tail:
            toks += [s] * d + ["J"]
            s = "L" if s == "R" else "R"
        return toks

    tail_j = central_head_to_tail([3] + [2] * (4 * j + 2))
    tail_k = central_head_to_tail([3] + [2] * (4 * k + 2))
    nxt = "L" if X == "R" else "R"  # letter type after the corner: same as X
    candidates = []
    for tail in (tail_j, tail_k):
        for rep in ((corner,),) + corner_resolutions(corner):
            cont = tuple(rep) + tuple(encode_tail(tail, X))
            candidates.append(cont)
            candidates.append(cont[:-1])  # without the final separator
    for cont in candidates:
        vj = decide_block(wj + cont, anchored=True)
        vk = decide_block(wk + cont, anchored=True)
        if vj.forbidden != vk.forbidden:
            return {
                "j": j, "k": k,
                "continuation": cont,
                "after_j": vj.status,
                "after_k": vk.status,
                "word_j": wj, "word_k": wk,
            }
    raise AssertionError("no separating continuation found for (%d, %d)" % (j, k))


# ---------------------------------------------------------------------------
# JSON


def verdict_json(v: BlockVerdict) -> dict:
    from .exactnum import format_extreal
    wit = None
    if v.witness is not None:
        wit = {"head": format_extreal(v.witness.head),
               "foot": format_extreal(v.witness.foot)}
    return {"block": "".join(v.block), "status": v.status,
            "witness": wit, "reason": v.reason}

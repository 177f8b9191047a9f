"""Cutting-sequence alphabet and conversions.

Symbols are the tokens "L", "R", "J", "C1", "C2" (rendered with bars in the
math).  A cutting word is stored as a tuple of tokens.  The MGCF <-> cutting
conversion is a two-state parity machine: in even parity L->L, R->R, J->J; in
odd parity L->R, R->L, J->J; L and J toggle the parity, R preserves it, and a
corner C maps to C2 (even) or C1 (odd).  Parity always equals the determinant
sign of the consumed MGCF prefix; the corner convention matches the geodesic
tracer (a left-corner crossing resolves as JRJ ~ LJL, the C1 matrix).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .exactnum import IntMatrix2, ParseError
from .mgcf import AnnotatedDigits, annotated_from_mgcf, mgcf_from_annotated

__all__ = [
    "CUTTING_MATS",
    "CuttingWord",
    "Segment",
    "SegmentParse",
    "cutting_from_mgcf",
    "mgcf_from_cutting",
    "parse_segments",
    "acf_from_cutting",
    "parse_cutting",
    "format_cutting",
    "cutting_word_matrix",
    "corner_resolutions",
]

CuttingWord = tuple[str, ...]

LBAR = IntMatrix2(1, -1, 0, 1)
RBAR = IntMatrix2(1, 1, 0, 1)
JBAR = IntMatrix2(0, 1, -1, 0)
C1BAR = IntMatrix2(-1, 0, 1, -1)
C2BAR = IntMatrix2(-1, 0, -1, -1)

CUTTING_MATS = {"L": LBAR, "R": RBAR, "J": JBAR, "C1": C1BAR, "C2": C2BAR}


def cutting_word_matrix(word: Sequence[str]) -> IntMatrix2:
    """h_j = g_1 g_2 ... g_j, multiplied left-to-right."""
    m = IntMatrix2(1, 0, 0, 1)
    for tok in word:
        m = m * CUTTING_MATS[tok]
    return m


def corner_resolutions(tok: str) -> tuple[CuttingWord, CuttingWord]:
    """The two three-letter words whose product equals the corner matrix."""
    if tok == "C1":
        return (("J", "R", "J"), ("L", "J", "L"))
    if tok == "C2":
        return (("J", "L", "J"), ("R", "J", "R"))
    raise ValueError("not a corner token: %r" % tok)


def cutting_from_mgcf(word: str, start_parity: int = 0) -> CuttingWord:
    """Parity letter-replacement MGCF -> cutting."""
    out: list[str] = []
    parity = start_parity  # 0 = even, 1 = odd
    for sym in word:
        if sym == "J":
            out.append("J")
            parity ^= 1
        elif sym == "R":
            out.append("R" if parity == 0 else "L")
        elif sym == "L":
            out.append("L" if parity == 0 else "R")
            parity ^= 1
        elif sym == "C":
            out.append("C2" if parity == 0 else "C1")
        else:
            raise ParseError("bad MGCF symbol %r" % sym)
    return tuple(out)


def mgcf_from_cutting(word: Sequence[str], start_parity: int = 0) -> str:
    """Exact inverse of cutting_from_mgcf (parity tracked by determinant)."""
    out: list[str] = []
    parity = start_parity
    for tok in word:
        if tok == "J":
            out.append("J")
            parity ^= 1
        elif tok == "R":
            if parity == 0:
                out.append("R")
            else:
                out.append("L")
                parity ^= 1
        elif tok == "L":
            if parity == 0:
                out.append("L")
                parity ^= 1
            else:
                out.append("R")
        elif tok == "C1":
            if parity != 1:
                raise ParseError("C1 in even parity")
            out.append("C")
        elif tok == "C2":
            if parity != 0:
                raise ParseError("C2 in odd parity")
            out.append("C")
        else:
            raise ParseError("bad cutting token %r" % tok)
    return "".join(out)


# ---------------------------------------------------------------------------
# edge-forbidden scanning (shared with shiftspace)

EDGE_FORBIDDEN: tuple[CuttingWord, ...] = (
    ("J", "J"),
    ("L", "R"),
    ("R", "L"),
    ("L", "J", "L", "J"),
    ("R", "J", "R", "J"),
    ("J", "L", "J", "L"),
    ("J", "R", "J", "R"),
    ("L", "J", "L", "L", "J", "L"),
    ("R", "J", "R", "R", "J", "R"),
)


def find_edge_forbidden(word: Sequence[str]) -> Optional[tuple[int, CuttingWord]]:
    """Position and identity of the first edge-forbidden factor, if any."""
    w = tuple(word)
    for i in range(len(w)):
        for blk in EDGE_FORBIDDEN:
            if w[i : i + len(blk)] == blk:
                return i, blk
    return None


# ---------------------------------------------------------------------------
# segment factorization of vertical cutting words


@dataclass(frozen=True)
class Segment:
    parity: int  # n mod 2 of the leading digit position
    digits: tuple[tuple[int, Optional[str]], ...]  # (digit, tag)
    tokens: CuttingWord


@dataclass(frozen=True)
class SegmentParse:
    initial: CuttingWord  # the B0-bar part
    a0: Optional[int]
    segments: tuple[Segment, ...]
    incomplete_suffix: CuttingWord
    suffix_encodings: tuple[tuple, ...]  # possible digit readings of the suffix


def parse_segments(word: Sequence[str]) -> SegmentParse:
    """Greedy unique factorization of a vertical cutting word.

    The word must start with J-bar.  A trailing letter run is reported as an
    incomplete suffix together with its consistent digit readings:
    ("ge", k) for a_next >= k, and ("pair", k-1, "m") for a_next = k-1
    followed by a 1_m.  A bare single-letter run (no separator at all) is
    accepted and reported entirely as an incomplete suffix.
    """
    w = tuple(word)
    hit = find_edge_forbidden(w)
    if hit is not None:
        raise ParseError("edge-forbidden factor %s at %d" % ("".join(hit[1]), hit[0]))
    if w and all(t == w[0] for t in w) and w[0] in ("L", "R"):
        k = len(w)
        encs: list[tuple] = [("ge", k)]
        if k >= 2:
            encs.append(("pair", k - 1, "m"))
        return SegmentParse((), None, (), w, tuple(encs))
    if not w or w[0] != "J":
        raise ParseError("vertical cutting words start with J")
    mg = mgcf_from_cutting(w)
    ad = annotated_from_mgcf(mg)
    # initial block
    if ad.a0 == -1:
        initial = w[:2]
        pos = 2
        pairs = ad.tail[1:]
    else:
        initial = w[:1]
        pos = 1
        pairs = ad.tail
    segments: list[Segment] = []
    n = 1  # digit position of the next leading digit
    i = 0
    while i < len(pairs):
        d, tag = pairs[i]
        nxt = pairs[i + 1] if i + 1 < len(pairs) else None
        if nxt is not None and nxt[0] == 1 and nxt[1] == "m":
            toklen = d + 1 + 2
            seg_digits = ((d, tag), (1, "m"))
            i += 2
            ndigits = 2
        elif nxt is not None and nxt[0] == 1 and nxt[1] == "c":
            toklen = d + 1
            seg_digits = ((d, tag), (1, "c"))
            i += 2
            ndigits = 2
        else:
            toklen = d + 1
            seg_digits = ((d, tag),)
            i += 1
            ndigits = 1
        segments.append(Segment(n % 2, seg_digits, w[pos : pos + toklen]))
        pos += toklen
        n += ndigits
    suffix = w[pos:]
    encodings: list[tuple] = []
    if suffix:
        k = len(suffix)
        # suffix is a pure letter run (the greedy parse stopped before it)
        encodings.append(("ge", k))
        if k >= 2:
            encodings.append(("pair", k - 1, "m"))
    return SegmentParse(initial, ad.a0, tuple(segments), suffix, tuple(encodings))


def acf_from_cutting(word: Sequence[str]) -> str:
    """Vertical cutting word -> ACF word prefix (strip tags, emit digits).

    Stream semantics: the trailing F that would close a terminating expansion
    is never emitted, so the output is a valid prefix whether or not the
    underlying expansion continues.
    """
    sp = parse_segments(word)
    if sp.a0 is None:
        raise ParseError("not a vertical cutting word")
    if sp.a0 < 0:
        raise ValueError("ACF words are defined for theta > 0 only (a0 >= 0)")
    digits = [d for seg in sp.segments for (d, _t) in seg.digits]
    from .cf import OcfDigits, digits_to_acf

    od = OcfDigits(sp.a0, tuple(digits), True)
    wacf = digits_to_acf(od)
    if digits and wacf.endswith("F"):
        wacf = wacf[:-1]
    return wacf


# ---------------------------------------------------------------------------
# text format: letters with C1/C2 tokens, e.g. "JRRC1..." or "J,R,R,C1"


def parse_cutting(text: str) -> CuttingWord:
    t = text.strip()
    if "," in t:
        toks = [p.strip() for p in t.split(",") if p.strip()]
        for tok in toks:
            if tok not in CUTTING_MATS:
                raise ParseError("bad cutting token %r" % tok)
        return tuple(toks)
    toks = []
    i = 0
    while i < len(t):
        ch = t[i]
        if ch == "C":
            if i + 1 >= len(t) or t[i + 1] not in "12":
                raise ParseError("corner token must be C1 or C2 (position %d)" % i)
            toks.append("C" + t[i + 1])
            i += 2
        elif ch in "LRJ":
            toks.append(ch)
            i += 1
        else:
            raise ParseError("bad cutting letter %r at %d" % (ch, i))
    return tuple(toks)


def format_cutting(word: Sequence[str]) -> str:
    return "".join(word)

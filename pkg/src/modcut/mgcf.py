"""Minkowski geodesic continued fraction.

Three routes to the same word live here:

* ``mgcf_direct`` — event-driven simulation of the Minkowski-reduced basis of
  the lattice spanned by the rows of P * B_t(theta) as t decreases, computed
  in s = t^2 space where every squared vector norm is affine in s;
* ``annotate_ones`` + ``mgcf_from_annotated`` — the digit-segment codec,
  with every interior digit 1 tagged h, m, or c by comparing the tail value
  beta_n against N(alpha_n), N(z) = (z+2)/(2z+1);
* ``mgcf_from_acf`` — an online converter from an additive-CF prefix, which
  can only look at the digits it has been given (used by the benchmark).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .exactnum import (
    ExtReal,
    IntMatrix2,
    ParseError,
    QuadSurd,
    as_surd,
    compare,
    is_infinite,
)
from .cf import OcfDigits, acf_to_digits, convergents, ocf_digits, ocf_value

__all__ = [
    "L_MAT",
    "R_MAT_M",
    "J_MAT",
    "C_MAT",
    "N_MAT",
    "AnnotatedDigits",
    "mgcf_direct",
    "annotate_ones",
    "mgcf_from_annotated",
    "annotated_from_mgcf",
    "mgcf_from_acf",
    "n_transform",
    "parse_annotated",
    "format_annotated",
    "symbol_matrix",
    "word_matrix",
]

# symbol matrices; these multiply on the LEFT of the convergent matrix P
L_MAT = IntMatrix2(1, 0, 1, -1)
R_MAT_M = IntMatrix2(1, 0, 1, 1)
J_MAT = IntMatrix2(0, 1, 1, 0)
C_MAT = IntMatrix2(1, 1, 0, 1)

# the trichotomy transformation N(z) = (z+2)/(2z+1)
N_MAT = IntMatrix2(1, 2, 2, 1)

_SYMBOLS = {"L": L_MAT, "R": R_MAT_M, "J": J_MAT, "C": C_MAT}


def symbol_matrix(sym: str) -> IntMatrix2:
    return _SYMBOLS[sym]


def word_matrix(word: str) -> IntMatrix2:
    """Product of symbol matrices, applied left-to-right as left factors."""
    m = IntMatrix2(1, 0, 0, 1)
    for sym in word:
        m = _SYMBOLS[sym] * m
    return m


def n_transform(x) -> ExtReal:
    from .exactnum import lft_apply

    return lft_apply(N_MAT, x)


# ---------------------------------------------------------------------------
# direct simulation


def mgcf_direct(
    theta: ExtReal, limit: int = 200, collect_s: bool = False
):
    """MGCF word of theta in [-1/2, 1/2) by direct lattice reduction.

    Returns the word string, or (word, critical s-values) if collect_s.
    Terminates for rational theta; emits up to ``limit`` symbols otherwise.
    """
    if is_infinite(theta):
        raise ValueError("theta must be finite")
    if compare(theta, Fraction(-1, 2)) < 0 or compare(theta, Fraction(1, 2)) >= 0:
        raise ValueError("theta outside [-1/2, 1/2)")
    # rational inputs stay in Fraction arithmetic; surds need QuadSurd
    if isinstance(theta, (int, Fraction)):
        th = Fraction(theta)
    else:
        th = as_surd(theta)
    rows = [(1, 0), (0, 1)]
    s_cur: Optional[object] = None  # None means +infinity
    word: list[str] = []
    s_vals: list[object] = []

    def sgn(s):
        if isinstance(s, Fraction):
            return (s > 0) - (s < 0)
        return as_surd(s).sign()

    def aff(row):
        # squared norm (p - q theta)^2 + q^2 s as (constant, slope)
        p, q = row
        lin = th * (-q) + p
        return lin * lin, q * q

    while len(word) < limit:
        (p1, q1), (p2, q2) = rows
        A1, B1 = aff(rows[0])
        A2, B2 = aff(rows[1])
        cands = []  # (s_star, kind)
        if B2 > B1:
            s = (A1 - A2) * Fraction(1, B2 - B1)
            cands.append((s, "J"))
        if q1 > 0:
            w = (p1 + p2, q1 + q2)
            Aw, Bw = aff(w)
            s = (A2 - Aw) * Fraction(1, Bw - B2)
            cands.append((s, "R"))
        if q1 > 2 * q2:
            w = (p1 - p2, q1 - q2)
            Aw, Bw = aff(w)
            s = (A2 - Aw) * Fraction(1, Bw - B2)
            cands.append((s, "L"))
        valid = [
            (s, k)
            for (s, k) in cands
            if sgn(s) > 0 and (s_cur is None or compare(s, s_cur) < 0)
        ]
        if not valid:
            break
        best = valid[0][0]
        for s, _k in valid[1:]:
            if compare(s, best) > 0:
                best = s
        kinds = {k for (s, k) in valid if compare(s, best) == 0}
        if kinds == {"J", "R"}:
            sym = "C"
        elif len(kinds) == 1:
            sym = kinds.pop()
        else:  # pragma: no cover - impossible tie combinations
            raise AssertionError("unexpected simultaneous events %s" % kinds)
        old_rows = [rows[0], rows[1]]
        if sym == "J":
            rows = [old_rows[1], old_rows[0]]
        elif sym == "R":
            rows = [old_rows[0], (p1 + p2, q1 + q2)]
            assert q1 + q2 > q2
        elif sym == "L":
            rows = [old_rows[0], (p1 - p2, q1 - q2)]
            assert q1 - q2 > q2
        else:  # C
            rows = [(p1 + p2, q1 + q2), old_rows[1]]
            assert q1 + q2 > q1
        word.append(sym)
        s_vals.append(best)
        s_cur = best
    out = "".join(word)
    if collect_s:
        return out, s_vals
    return out


# ---------------------------------------------------------------------------
# annotated digits


@dataclass(frozen=True)
class AnnotatedDigits:
    """OCF digits in which interior 1s carry a tag from {h, m, c}.

    ``tail`` holds (digit, tag) pairs; tag is None for digits != 1 and for
    nothing else.  A digit a1 = 1 is always tagged m.
    """

    a0: int
    tail: tuple[tuple[int, Optional[str]], ...] = ()
    finite: bool = True

    def digits(self) -> OcfDigits:
        return OcfDigits(self.a0, tuple(d for d, _t in self.tail), self.finite)

    def __repr__(self):
        return "AnnotatedDigits(%s%s)" % (
            format_annotated(self),
            "" if self.finite else "...",
        )


def annotate_ones(digits: OcfDigits, theta: ExtReal) -> AnnotatedDigits:
    """Tag every digit 1 of the expansion of theta with h, m, or c.

    For a_{n+1} = 1 with n >= 1, alpha_n = q_{n-1}/q_n and
    beta_n = -(p_{n-1} - q_{n-1} theta)/(p_n - q_n theta); the tag is h, c, m
    according to beta_n >, =, < N(alpha_n).  a_1 = 1 is always tagged m.
    """
    if is_infinite(theta):
        raise ValueError("theta must be finite")
    check = ocf_digits(theta, limit=len(digits) + 1)
    ref = check.all_digits()[: len(digits)]
    if ref != digits.all_digits() or (digits.finite and not check.finite):
        raise ValueError("digits are not the expansion of theta")
    th = as_surd(theta)
    pairs: list[tuple[int, Optional[str]]] = []
    convs = list(convergents(digits))
    tail = digits.tail
    for i, a in enumerate(tail):
        if a != 1:
            pairs.append((a, None))
            continue
        if i == 0:
            pairs.append((1, "m"))
            continue
        n = i  # a = a_{n+1} with n = i >= 1
        cp = convs[n]
        alpha = Fraction(cp.q_prev, cp.q)
        num = -(th * (-cp.q_prev) + cp.p_prev)
        den = th * (-cp.q) + cp.p
        beta = num / den
        n_alpha = Fraction(alpha + 2, 2 * alpha + 1)
        c = compare(beta, n_alpha)
        if c > 0:
            tag = "h"
        elif c == 0:
            tag = "c"
        else:
            tag = "m"
        pairs.append((1, tag))
    return AnnotatedDigits(digits.a0, tuple(pairs), digits.finite)


def mgcf_from_annotated(ad: AnnotatedDigits) -> str:
    """Segment codec: annotated digits -> MGCF word."""
    tail = list(ad.tail)
    out = []
    if ad.a0 == 0:
        out.append("J")
    elif ad.a0 == -1:
        if not tail or tail[0][0] != 1:
            raise ValueError("a0 = -1 requires a1 = 1")
        out.append("J")
        out.append("L")
        tail = tail[1:]
    else:
        raise ValueError("normalized digits require a0 in {0, -1}")
    i = 0
    while i < len(tail):
        a, tag = tail[i]
        if tag == "c" and not ad.finite:
            raise ValueError("1_c on a non-terminating expansion")
        nxt = tail[i + 1] if i + 1 < len(tail) else None
        if nxt is None and not ad.finite:
            # unknown continuation: only the run of R's is determined
            out.append("R" * a)
            break
        if nxt is not None and nxt[0] == 1 and nxt[1] == "m":
            out.append("R" * (a + 1))
            out.append("J")
            out.append("L")
            i += 2
        elif nxt is not None and nxt[0] == 1 and nxt[1] == "c":
            out.append("R" * a)
            out.append("C")
            i += 2
        else:
            out.append("R" * a)
            out.append("J")
            i += 1
    return "".join(out)


def annotated_from_mgcf(word: str) -> AnnotatedDigits:
    """Greedy inverse of mgcf_from_annotated; rejects unfactorizable words."""
    if not word:
        raise ParseError("empty MGCF word")
    if word[0] != "J":
        raise ParseError("no segment may precede the initial J (position 0)")
    i = 1
    if i < len(word) and word[i] == "L":
        a0 = -1
        pairs: list[tuple[int, Optional[str]]] = [(1, "m")]
        i += 1
    else:
        a0 = 0
        pairs = []
    complete = True
    while i < len(word):
        k = 0
        while i < len(word) and word[i] == "R":
            k += 1
            i += 1
        if i == len(word):
            complete = False  # trailing run: digit >= k, undetermined
            break
        sep = word[i]
        if sep == "J":
            if k == 0:
                raise ParseError("segment with no R run at position %d" % i)
            if i + 1 < len(word) and word[i + 1] == "L":
                if k < 2:
                    raise ParseError("J L after a single R at position %d" % i)
                pairs.append((k - 1, None))
                pairs.append((1, "m"))
                i += 2
            else:
                pairs.append((k, None))
                i += 1
        elif sep == "C":
            if k == 0:
                raise ParseError("corner with no R run at position %d" % i)
            pairs.append((k, None))
            pairs.append((1, "c"))
            i += 1
        else:
            raise ParseError("unexpected symbol %r at position %d" % (sep, i))
    # re-mark plain 1 digits that precede nothing special: interior 1s created
    # as (k-1) or k may equal 1; their tags are h by the grammar (they head
    # their own segment), except the pair-consumed ones already tagged
    fixed: list[tuple[int, Optional[str]]] = []
    for idx, (d, t) in enumerate(pairs):
        if d == 1 and t is None:
            fixed.append((1, "m" if idx == 0 else "h"))
        else:
            fixed.append((d, t))
    return AnnotatedDigits(a0, tuple(fixed), complete)


# ---------------------------------------------------------------------------
# online conversion from an additive-CF prefix (benchmark subject)


def _cmp_vs_prefix_interval(t: Fraction, digs: list[int]) -> int:
    """Position of t relative to all reals whose CF starts with ``digs``.

    Returns -1 (t below every such real), +1 (above), 0 (cannot be decided
    from the prefix / t lies among them).  Lazy: walks t's CF digits by
    Euclid steps, stopping at the first difference.
    """
    for i, target in enumerate(digs):
        n, d = t.numerator, t.denominator
        a = n // d
        if a != target:
            side = 1 if a > target else -1
            return side if i % 2 == 0 else -side
        frac = t - a
        if frac == 0:
            if i == len(digs) - 1:
                return 0  # equals a closed-interval endpoint
            return -1 if i % 2 == 0 else 1
        t = 1 / frac
    return 0


def mgcf_from_acf(word: str, complete: bool = False):
    """Convert an ACF word (prefix) to the determined MGCF prefix.

    With complete=False only symbols forced by the available digits are
    emitted; tags of interior 1s are decided by comparing N(alpha_n) against
    the interval of possible tail values.  Returns (mgcf_word, stats) where
    stats has the retained digit count and comparison-step count.
    """
    d = acf_to_digits(word) if complete else _acf_prefix_digits(word)
    digits = d.all_digits()
    tail = digits[1:]
    # convergent q's
    q_prev, q = 1, 0
    p_prev, p = 0, 1
    qs = [(q, q_prev)]
    for a in [digits[0]] + list(tail):
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        qs.append((q, q_prev))
    steps = 0
    pairs: list[tuple[int, Optional[str]]] = []
    resolved = len(tail)
    for i, a in enumerate(tail):
        if a != 1:
            pairs.append((a, None))
            continue
        if i == 0:
            pairs.append((1, "m"))
            continue
        n = i
        qn, qn_prev = qs[n + 1]
        alpha = Fraction(qn_prev, qn)
        n_alpha = Fraction(alpha + 2, 2 * alpha + 1)
        suffix = list(tail[i:])
        if complete:
            beta = ocf_value(OcfDigits(suffix[0], tuple(suffix[1:]), True))
            c = -1 if n_alpha > beta else (0 if n_alpha == beta else 1)
            steps += len(suffix)
            tag = {1: "h", 0: "c", -1: "m"}[c]
            pairs.append((1, tag))
            continue
        cmpres = _cmp_vs_prefix_interval(n_alpha, suffix)
        steps += len(suffix)
        if cmpres == -1:
            pairs.append((1, "h"))
        elif cmpres == 1:
            pairs.append((1, "m"))
        else:
            resolved = i  # undecidable from this prefix; stop here
            break
    ad = AnnotatedDigits(digits[0], tuple(pairs[:resolved]), complete)
    out = mgcf_from_annotated(ad)
    stats = {"retained_digits": len(digits), "compare_steps": steps}
    return out, stats


def _acf_prefix_digits(word: str) -> OcfDigits:
    # like acf_to_digits but for a truncated word: the last run is a lower
    # bound on the next digit and is dropped
    runs = []
    count = 0
    for ch in word:
        if ch == "R":
            count += 1
        elif ch == "F":
            runs.append(count)
            count = 0
        else:
            raise ParseError("bad ACF letter %r" % ch)
    a0 = runs[0] if runs else 0
    tail = tuple(runs[1:])
    if any(a < 1 for a in tail):
        raise ParseError("ACF word contains FF")
    return OcfDigits(a0, tail, False)


# ---------------------------------------------------------------------------
# annotated digit text format: "0;2,1c,4"


def parse_annotated(text: str) -> AnnotatedDigits:
    t = text.strip()
    head, _, rest = t.partition(";")
    a0 = int(head)
    pairs: list[tuple[int, Optional[str]]] = []
    if rest:
        for tok in rest.split(","):
            tok = tok.strip()
            if tok and tok[-1] in "hmc":
                d = int(tok[:-1])
                if d != 1:
                    raise ParseError("tag on a digit != 1: %r" % tok)
                pairs.append((1, tok[-1]))
            else:
                pairs.append((int(tok), None))
    return AnnotatedDigits(a0, tuple(pairs), True)


def format_annotated(ad: AnnotatedDigits) -> str:
    if not ad.tail:
        return str(ad.a0)
    toks = [("%d%s" % (d, t) if t else str(d)) for d, t in ad.tail]
    return "%d;%s" % (ad.a0, ",".join(toks))

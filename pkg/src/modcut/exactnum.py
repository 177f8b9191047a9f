"""Exact number tower: rationals, real quadratic surds, extended reals, 2x2 integer matrices.

Everything here is immutable and pure; no floating point is used anywhere.
Rationals are stdlib ``fractions.Fraction``; a surd is u + v*sqrt(d) with
rational u, v and a square-free radicand d.  Comparisons between surds over
different radicands are decided by repeated squaring with sign tracking.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction

__all__ = [
    "Rational",
    "QuadSurd",
    "ExtReal",
    "IntMatrix2",
    "PINF",
    "NINF",
    "INF",
    "surd",
    "as_surd",
    "lft_apply",
    "surd_floor",
    "compare",
    "sqrt_exact",
    "rational_between",
    "parse_extreal",
    "format_extreal",
    "squarefree_split",
]


def squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s*s*d and d square-free, for n >= 0."""
    if n < 0:
        raise ValueError("negative radicand")
    s, d = 1, 1
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            e = 0
            while m % f == 0:
                m //= f
                e += 1
            s *= f ** (e // 2)
            if e % 2:
                d *= f
        f += 1 if f == 2 else 2
    d *= m
    return s, d


def _isqrt_floor(p: int, q: int) -> int:
    # floor(sqrt(p/q)) for p, q > 0
    r = math.isqrt(p // q)
    while (r + 1) * (r + 1) * q <= p:
        r += 1
    while r * r * q > p:
        r -= 1
    return r


@dataclass(frozen=True)
class QuadSurd:
    """Exact value u + v*sqrt(d), with d square-free and >= 0.

    d in {0, 1} collapses to a rational (v folded into u).  Use the
    :func:`surd` helper rather than the raw constructor: it normalizes.
    """

    u: Fraction
    v: Fraction
    d: int

    def is_rational(self) -> bool:
        return self.v == 0

    def rational_value(self) -> Fraction:
        if self.v != 0:
            raise ValueError("not rational: %s" % (self,))
        return self.u

    def sign(self) -> int:
        u, v, d = self.u, self.v, self.d
        if v == 0:
            return 0 if u == 0 else (1 if u > 0 else -1)
        if u == 0:
            return 1 if v > 0 else -1
        if u > 0 and v > 0:
            return 1
        if u < 0 and v < 0:
            return -1
        # opposite signs: compare u^2 with v^2 d; sign follows the larger side
        lhs, rhs = u * u, v * v * d
        if lhs == rhs:
            return 0
        big_is_u = lhs > rhs
        return (1 if u > 0 else -1) if big_is_u else (1 if v > 0 else -1)

    # arithmetic (same radicand only, or one side rational)
    def _coerce(self, other: "QuadSurd") -> int:
        if self.v == 0:
            return other.d
        if other.v == 0:
            return self.d
        if self.d != other.d:
            raise ValueError("mixed-radicand arithmetic is unsupported")
        return self.d

    def __add__(self, other):
        other = as_surd(other)
        d = self._coerce(other)
        return surd(self.u + other.u, self.v + other.v, d)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return surd(-self.u, -self.v, self.d)

    def __sub__(self, other):
        return self.__add__(-as_surd(other))

    def __rsub__(self, other):
        return (-self).__add__(as_surd(other))

    def __mul__(self, other):
        other = as_surd(other)
        d = self._coerce(other)
        return surd(
            self.u * other.u + self.v * other.v * d,
            self.u * other.v + self.v * other.u,
            d,
        )

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "QuadSurd":
        if self.sign() == 0:
            raise ZeroDivisionError("1/0 surd")
        norm = self.u * self.u - self.v * self.v * self.d
        if norm == 0:  # pragma: no cover - impossible for square-free d
            raise ZeroDivisionError("zero norm")
        return surd(self.u / norm, -self.v / norm, self.d)

    def __truediv__(self, other):
        return self.__mul__(as_surd(other).inverse())

    def __rtruediv__(self, other):
        return as_surd(other).__mul__(self.inverse())

    # total order
    def _cmp(self, other) -> int:
        other = as_surd(other)
        if self.v == 0 and other.v == 0:
            a, b = self.u, other.u
            return 0 if a == b else (1 if a > b else -1)
        if self.v == 0 or other.v == 0 or self.d == other.d:
            return (self - other).sign()
        # different radicands, both irrational: sign of A + B*sqrt(p) - C*sqrt(q)
        return _sign_mixed(self.u - other.u, self.v, self.d, -other.v, other.d)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (QuadSurd, int, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        if self.v == 0:
            return hash(self.u)
        return hash((self.u, self.v, self.d))

    def __repr__(self):
        return "QuadSurd(%s)" % format_extreal(self)


def _sign_mixed(a: Fraction, b: Fraction, p: int, c: Fraction, q: int) -> int:
    """Sign of a + b*sqrt(p) + c*sqrt(q), p != q both square-free > 1."""
    # s = a + b*sqrt(p) lives in one field; t = c*sqrt(q)
    s = surd(a, b, p)
    t = surd(Fraction(0), c, q)
    ss, ts = s.sign(), t.sign()
    if ss == 0:
        return ts
    if ts == 0:
        return ss
    if ss == ts:
        return ss
    # opposite signs: compare |s| with |t| via squares; s^2 is a single-field surd
    s2 = s * s
    t2 = Fraction(c * c * q)
    diff = (s2 - t2).sign()
    if diff == 0:
        return 0
    return ss if diff > 0 else ts


def surd(u, v=0, d: int = 0) -> QuadSurd:
    """Normalized constructor for u + v*sqrt(d)."""
    u = Fraction(u)
    v = Fraction(v)
    if v == 0 or d == 0:
        return QuadSurd(u, Fraction(0), 0)
    if d < 0:
        raise ValueError("negative radicand")
    s, d0 = squarefree_split(d)
    v = v * s
    if d0 == 1:
        return QuadSurd(u + v, Fraction(0), 0)
    return QuadSurd(u, v, d0)


def as_surd(x) -> QuadSurd:
    if isinstance(x, QuadSurd):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadSurd(Fraction(x), Fraction(0), 0)
    raise TypeError("cannot interpret %r as a surd" % (x,))


def sqrt_exact(x) -> QuadSurd:
    """Exact square root of a non-negative rational, as a QuadSurd."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative operand")
    # sqrt(p/q) = sqrt(p q)/q
    n = x.numerator * x.denominator
    s, d = squarefree_split(n)
    return surd(0, Fraction(s, x.denominator), d)


class _Infinity:
    __slots__ = ("positive",)

    def __init__(self, positive: bool):
        self.positive = positive

    def __repr__(self):
        return "+inf" if self.positive else "-inf"

    def __neg__(self):
        return NINF if self.positive else PINF

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash(("inf", self.positive))


PINF = _Infinity(True)
NINF = _Infinity(False)
INF = PINF

ExtReal = Union[Fraction, int, QuadSurd, _Infinity]


def is_infinite(x: ExtReal) -> bool:
    return isinstance(x, _Infinity)


def compare(x: ExtReal, y: ExtReal) -> int:
    """Exact three-way comparison on the extended real line (-1, 0, +1)."""
    if is_infinite(x) or is_infinite(y):
        if x is y:
            return 0
        if is_infinite(x):
            return 1 if x.positive else -1
        return -1 if y.positive else 1
    return as_surd(x)._cmp(y)


def surd_floor(x) -> int:
    """The unique integer n with n <= x < n+1, by exact integer comparisons."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator // x.denominator
    x = as_surd(x)
    if x.v == 0:
        return x.u.numerator // x.u.denominator
    # initial estimate: floor(u) + floor-ish(v*sqrt(d)), then exact adjust
    v, d = x.v, x.d
    vp, vq = abs(v.numerator), v.denominator
    mag = _isqrt_floor(vp * vp * d, vq * vq)  # floor(|v| sqrt d)
    est = (x.u.numerator // x.u.denominator) + (mag if v > 0 else -mag - 1)
    while x._cmp(est) < 0:
        est -= 1
    while x._cmp(est + 1) >= 0:
        est += 1
    return est


@dataclass(frozen=True)
class IntMatrix2:
    """2x2 integer matrix acting on the extended reals by z -> (az+b)/(cz+d)."""

    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __mul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "IntMatrix2":
        det = self.det()
        if det == 1:
            return IntMatrix2(self.d, -self.b, -self.c, self.a)
        if det == -1:
            return IntMatrix2(-self.d, self.b, self.c, -self.a)
        raise ValueError("inverse requires det +-1, got %d" % det)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    def __repr__(self):
        return "IntMatrix2[[%d,%d],[%d,%d]]" % (self.a, self.b, self.c, self.d)


IDENTITY = IntMatrix2(1, 0, 0, 1)


def lft_apply(m: IntMatrix2, x: ExtReal) -> ExtReal:
    """Apply the linear fractional map of m to x, with the usual inf conventions."""
    if m.det() == 0:
        raise ValueError("singular matrix in lft_apply")
    if is_infinite(x):
        if m.c == 0:
            return PINF
        return Fraction(m.a, m.c)
    xs = as_surd(x)
    den = xs * m.c + m.d
    num = xs * m.a + m.b
    if den.sign() == 0:
        return PINF
    r = num / den
    return r.rational_value() if r.is_rational() else r


def rational_between(lo: ExtReal, hi: ExtReal) -> Fraction:
    """Some rational strictly between lo and hi (lo < hi required)."""
    if compare(lo, hi) >= 0:
        raise ValueError("empty interval")
    if is_infinite(lo) and is_infinite(hi):
        return Fraction(0)
    if is_infinite(lo):
        return Fraction(surd_floor(hi) - 1 if _is_integer(hi) else surd_floor(hi))
    if is_infinite(hi):
        return Fraction(surd_floor(lo) + 1)
    # Stern-Brocot style walk: first integer in (lo, hi) if any, else recurse
    n = surd_floor(lo) + 1
    if compare(n, hi) < 0:
        if compare(lo, n) < 0:
            return Fraction(n)
    f = surd_floor(lo)
    # both in [f, f+1): mediant descent on the fractional parts
    a = as_surd(lo) - f
    b = as_surd(hi) - f
    # invert: find rational between 1/b and 1/a, then flip back
    inner = rational_between(
        b.inverse() if b.sign() != 0 else Fraction(0),
        a.inverse() if a.sign() != 0 else PINF,
    )
    return Fraction(f) + 1 / inner


def _is_integer(x) -> bool:
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    x = as_surd(x)
    return x.v == 0 and x.u.denominator == 1


# ---------------------------------------------------------------------------
# text formats: "p/q" | "n" | "(u+v*sqrt(d))/w" | "inf"

_SURD_RE = re.compile(
    r"^\(\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*/\s*(\d+)$"
)
# same value with the radical written first: "(v*sqrt(d)+u)/w"
_SURD_RE2 = re.compile(
    r"^\(\s*(-?\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*([+-])\s*(\d+)\s*\)\s*/\s*(\d+)$"
)


class ParseError(ValueError):
    pass


def parse_extreal(text: str) -> ExtReal:
    t = text.strip()
    if t in ("inf", "+inf"):
        return PINF
    if t == "-inf":
        return NINF
    m = _SURD_RE.match(t)
    if m:
        u, sgn, v, d, w = m.groups()
    else:
        m2 = _SURD_RE2.match(t)
        if m2 is None:
            u = None
        else:
            v, d, sgn2, u, w = m2.groups()
            u = u if sgn2 == "+" else "-" + u
            sgn = "+" if int(v) >= 0 else "-"
            v = str(abs(int(v)))
    if u is not None:
        w = int(w)
        if w == 0:
            raise ParseError("zero denominator in %r" % text)
        vv = Fraction(int(v), w)
        if sgn == "-":
            vv = -vv
        val = surd(Fraction(int(u), w), vv, int(d))
        return val.rational_value() if val.is_rational() else val
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError("cannot parse %r as an exact number" % text) from exc


def format_extreal(x: ExtReal) -> str:
    if is_infinite(x):
        return "inf" if x.positive else "-inf"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    x = as_surd(x)
    if x.v == 0:
        return str(x.u)
    w = math.lcm(x.u.denominator, x.v.denominator)
    u = x.u.numerator * (w // x.u.denominator)
    v = x.v.numerator * (w // x.v.denominator)
    sgn = "+" if v >= 0 else "-"
    return "(%d%s%d*sqrt(%d))/%d" % (u, sgn, abs(v), x.d, w)

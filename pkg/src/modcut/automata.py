"""Finite-state transducers for the word conversions, and their limits.

A Transducer is deterministic: at most one edge per (state, input symbol),
each edge printing a finite (possibly empty) output word.  A ``finals`` map
gives the word flushed when the input ends in a given state, so machines with
held-back output (separator look-ahead) still agree with the batch
conversions on complete inputs.

The homographic machine computes the additive-word expansion of m(x) from
the additive word of x by an absorb/emit loop on a 2x2 integer matrix: an
output letter is emitted as soon as it is forced for every continuation of
the input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .exactnum import IntMatrix2, ParseError
from .cf import F_MAT, R_MAT, digits_to_acf, ocf_digits, ocf_value, OcfDigits
from .mgcf import annotate_ones

__all__ = [
    "Transducer",
    "run",
    "run_with_lag",
    "max_lag",
    "compose",
    "acf_to_farey_machine",
    "farey_to_acf_machine",
    "mgcf_to_cutting_machine",
    "cutting_to_mgcf_machine",
    "mgcf_to_acf_machine",
    "cutting_to_acf_machine",
    "HomographicMachine",
    "homographic_acf",
    "unbounded_lookahead_demo",
]

Word = tuple[str, ...]


@dataclass(frozen=True)
class Transducer:
    states: tuple
    initial: object
    transitions: Mapping[tuple, tuple]  # (state, in) -> (next, out word)
    finals: Mapping[object, Word] = field(default_factory=dict)

    def step(self, state, sym):
        key = (state, sym)
        if key not in self.transitions:
            raise ParseError("no edge from state %r on %r" % (state, sym))
        return self.transitions[key]

    def to_json(self) -> str:
        edges = [
            {"from": _s(s), "in": a, "out": list(out), "to": _s(t)}
            for (s, a), (t, out) in sorted(
                self.transitions.items(), key=lambda kv: (_s(kv[0][0]), kv[0][1])
            )
        ]
        doc = {
            "states": sorted(_s(s) for s in self.states),
            "initial": _s(self.initial),
            "edges": edges,
            "finals": {_s(s): list(w) for s, w in sorted(
                self.finals.items(), key=lambda kv: _s(kv[0])) if True},
        }
        return json.dumps(doc, indent=2)


def _s(state) -> str:
    return state if isinstance(state, str) else "|".join(map(str, state))


def run(t: Transducer, stream: Iterable[str]) -> Word:
    out, _ = run_with_lag(t, stream)
    return out


def run_with_lag(t: Transducer, stream: Iterable[str]) -> tuple[Word, int]:
    """Output word and the worst look-ahead: max over output letters of
    (input symbols consumed when the letter appeared) - (its 1-based index).
    """
    state = t.initial
    out: list[str] = []
    lag = 0
    consumed = 0
    for i, sym in enumerate(stream):
        consumed += 1
        try:
            state, w = t.step(state, sym)
        except ParseError as e:
            raise ParseError("%s (input position %d)" % (e, i))
        for ch in w:
            out.append(ch)
            lag = max(lag, consumed - len(out))
    for ch in t.finals.get(state, ()):
        out.append(ch)
        lag = max(lag, consumed - len(out))
    return tuple(out), lag


def max_lag(t: Transducer, corpus: Iterable[Iterable[str]]) -> int:
    worst = 0
    for stream in corpus:
        _, lag = run_with_lag(t, stream)
        worst = max(worst, lag)
    return worst


def compose(t1: Transducer, t2: Transducer) -> Transducer:
    """Machine whose runs equal feeding t1's output into t2, state-by-state."""
    initial = (t1.initial, t2.initial)
    trans = {}
    finals = {}
    alphabet = sorted({a for (_, a) in t1.transitions})
    seen = {initial}
    queue = [initial]
    while queue:
        s1, s2 = queue.pop()
        # final flush: t1's final word through t2, then t2's own flush
        w1 = t1.finals.get(s1)
        if w1 is not None:
            s2f, buf = s2, []
            ok = True
            for ch in w1:
                try:
                    s2f, w2 = t2.step(s2f, ch)
                except ParseError:
                    ok = False
                    break
                buf.extend(w2)
            if ok and s2f in t2.finals:
                finals[(s1, s2)] = tuple(buf) + tuple(t2.finals[s2f])
        for a in alphabet:
            if (s1, a) not in t1.transitions:
                continue
            n1, w1 = t1.transitions[(s1, a)]
            n2, buf = s2, []
            ok = True
            for ch in w1:
                try:
                    n2, w2 = t2.step(n2, ch)
                except ParseError:
                    ok = False
                    break
                buf.extend(w2)
            if not ok:
                continue
            trans[((s1, s2), a)] = ((n1, n2), tuple(buf))
            if (n1, n2) not in seen:
                seen.add((n1, n2))
                queue.append((n1, n2))
    return Transducer(tuple(seen), initial, trans, finals)


# ---------------------------------------------------------------------------
# the concrete machines


def acf_to_farey_machine() -> Transducer:
    trans = {
        ("even", "R"): ("even", ("R",)),
        ("even", "F"): ("odd", ()),
        ("odd", "R"): ("odd", ("D",)),
        ("odd", "F"): ("even", ()),
    }
    return Transducer(("even", "odd"), "even", trans, {"even": (), "odd": ()})


def farey_to_acf_machine() -> Transducer:
    # three states: the trailing F is owed as soon as the first D appears
    trans = {
        ("int", "R"): ("int", ("R",)),
        ("int", "D"): ("odd", ("F", "R")),
        ("odd", "D"): ("odd", ("R",)),
        ("odd", "R"): ("even", ("F", "R")),
        ("even", "R"): ("even", ("R",)),
        ("even", "D"): ("odd", ("F", "R")),
    }
    finals = {"int": (), "odd": ("F",), "even": ("F",)}
    return Transducer(("int", "odd", "even"), "int", trans, finals)


def mgcf_to_cutting_machine() -> Transducer:
    trans = {
        ("even", "J"): ("odd", ("J",)),
        ("even", "R"): ("even", ("R",)),
        ("even", "L"): ("odd", ("L",)),
        ("even", "C"): ("even", ("C2",)),
        ("odd", "J"): ("even", ("J",)),
        ("odd", "R"): ("odd", ("L",)),
        ("odd", "L"): ("even", ("R",)),
        ("odd", "C"): ("odd", ("C1",)),
    }
    return Transducer(("even", "odd"), "even", trans, {"even": (), "odd": ()})


def cutting_to_mgcf_machine() -> Transducer:
    trans = {
        ("even", "J"): ("odd", ("J",)),
        ("even", "R"): ("even", ("R",)),
        ("even", "L"): ("odd", ("L",)),
        ("even", "C2"): ("even", ("C",)),
        ("odd", "J"): ("even", ("J",)),
        ("odd", "L"): ("odd", ("R",)),
        ("odd", "R"): ("even", ("L",)),
        ("odd", "C1"): ("odd", ("C",)),
    }
    return Transducer(("even", "odd"), "even", trans, {"even": (), "odd": ()})


def mgcf_to_acf_machine() -> Transducer:
    """Vertical MGCF word -> additive word, with separator look-ahead.

    States: q0 before the initial J; q1 just after it; p1 inside a run with
    one R held back; pj after the run's J while plain-vs-JL is undecided;
    sep after a completed pair, holding the segment's closing F.
    """
    trans = {
        ("q0", "J"): ("q1", ()),
        ("q1", "R"): ("p1", ("F",)),
        ("p1", "R"): ("p1", ("R",)),
        ("p1", "J"): ("pj", ()),
        ("p1", "C"): ("sep", ("R", "F", "R")),
        ("pj", "R"): ("p1", ("R", "F")),
        ("pj", "L"): ("sep", ("F", "R")),
        ("sep", "R"): ("p1", ("F",)),
    }
    finals = {"q0": (), "q1": (), "pj": ("R",), "sep": (), "p1": ()}
    return Transducer(("q0", "q1", "p1", "pj", "sep"), "q0", trans, finals)


def cutting_to_acf_machine() -> Transducer:
    return compose(cutting_to_mgcf_machine(), mgcf_to_acf_machine())


# ---------------------------------------------------------------------------
# homographic machine


class HomographicMachine:
    """Absorb/emit computation of the additive word of m(x).

    The state matrix m starts at the given matrix and maintains the exact
    identity  (emitted prefix) o (current m) = (original m) o (consumed
    input).  An output letter is emitted once the image of (0, inf] under m
    lies entirely above 1 (emit R) or entirely below 1 (emit F); a tie at an
    endpoint defers.
    """

    def __init__(self, m: IntMatrix2):
        if m.det() == 0:
            raise ValueError("matrix must be nonsingular")
        if min(m.a, m.b, m.c, m.d) < 0:
            raise ValueError("nonnegative entries required")
        self.m = m
        self.em = IntMatrix2(1, 0, 0, 1)  # matrix of the emitted prefix
        self.emitted: list[str] = []
        self.absorbed = 0
        self.max_lag = 0

    def _endpoints(self):
        m = self.m
        e0 = Fraction(m.b, m.d) if m.d else None  # m(0); None = infinite
        e1 = Fraction(m.a, m.c) if m.c else None  # m(inf)
        return e0, e1

    def _emit_ready(self) -> Optional[str]:
        e0, e1 = self._endpoints()
        if (e0 is None or e0 > 1) and (e1 is None or e1 > 1):
            return "R"
        if e0 is not None and e1 is not None and e0 < 1 and e1 < 1:
            return "F"
        return None

    def absorb(self, sym: str) -> list[str]:
        if sym == "R":
            self.m = self.m * R_MAT
        elif sym == "F":
            self.m = self.m * F_MAT
        else:
            raise ParseError("bad additive-word letter %r" % sym)
        self.absorbed += 1
        out = []
        while True:
            ch = self._emit_ready()
            if ch is None:
                break
            if ch == "R":
                self.m = IntMatrix2(self.m.a - self.m.c, self.m.b - self.m.d,
                                    self.m.c, self.m.d)
                self.em = self.em * R_MAT
            else:
                self.m = IntMatrix2(self.m.c, self.m.d, self.m.a, self.m.b)
                self.em = self.em * F_MAT
            out.append(ch)
            self.emitted.append(ch)
        self.max_lag = max(self.max_lag, self.absorbed - len(self.emitted))
        return out

    def finish(self) -> str:
        """Complete the canonical word of the total value m_orig(x)."""
        total = self.em * self.m  # = original matrix times the consumed input
        if total.c == 0:
            raise ValueError("result is infinite")
        v = Fraction(total.a, total.c)
        if v <= 0:
            raise ValueError("image is not positive")
        word = digits_to_acf(ocf_digits(v))
        prefix = "".join(self.emitted)
        if not word.startswith(prefix):
            raise AssertionError("emitted letters are not a canonical prefix")
        tail = word[len(prefix):]
        self.emitted.extend(tail)
        return tail


def homographic_acf(m: IntMatrix2, word: str, with_lag: bool = False):
    """Additive word of m(x) given the (finite) additive word of x > 0."""
    hm = HomographicMachine(m)
    out = []
    for ch in word:
        out.extend(hm.absorb(ch))
    out.append(hm.finish())
    res = "".join(out)
    return (res, hm.max_lag) if with_lag else res


# ---------------------------------------------------------------------------
# no finite machine computes the 1-tags: forced look-ahead grows with j


def unbounded_lookahead_demo(j: int) -> dict:
    """Two digit strings agreeing far past a critical 1 whose tags differ.

    Base digits [0; 2^(4j+2), 1, 3, (8,4)^j] make the critical 1 exactly
    balanced (1_c); lowering the final 4 to a 3 tips it to 1_h, raising it
    to a 5 tips it to 1_m.  Any machine reading digits left to right must
    see 14j+6 additive letters beyond the critical 1 before deciding.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    base = [0] + [2] * (4 * j + 2) + [1] + [3] + [8, 4] * j
    var_h = base[:-1] + [3]
    var_m = base[:-1] + [5]
    idx = 4 * j + 2  # position of the critical 1 within the tail

    def tag_of(digs):
        od = OcfDigits(digs[0], tuple(digs[1:]), True)
        theta = ocf_value(od)
        ad = annotate_ones(od, theta)
        return theta, ad.tail[idx][1]

    th_c, t_c = tag_of(base)
    th_h, t_h = tag_of(var_h)
    th_m, t_m = tag_of(var_m)
    # additive letters from the critical 1 through the end of the base word
    lookahead = sum(base[idx + 1:]) + len(base) - (idx + 1)
    return {
        "j": j,
        "digits_base": base,
        "digits_h": var_h,
        "digits_m": var_m,
        "theta_base": th_c,
        "theta_h": th_h,
        "theta_m": th_m,
        "tags": {"base": t_c, "h": t_h, "m": t_m},
        "agree_digits": len(base) - 1,
        "lookahead": lookahead,
    }

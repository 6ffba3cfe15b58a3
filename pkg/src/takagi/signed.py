"""Signed relatives f(x) = sum_n r_n 2^-n dist(2^n x, Z) for периодic signs.

Only eventually periodic sign sequences r are representable — exactly the
class where everything below stays exact: the digit walk picks up the sign
r_{i-1} at step i, evaluation at rationals closes over one aligned period,
and the max/min come from first-passage times of the sign walk
s_n = r_0 + ... + r_{n-1}:

    max f = sum_k (1/2)^{tau_{2k-1}},   min f = -sum_k (1/2)^{tau_{1-2k}},

with (1/2)^inf = 0.  Past the transient the passage times to odd levels form
an arithmetic progression, so both sums collapse to a finite part plus a
geometric tail.  The height max - min always lands in [1/2, 2/3].

Full level-set classification is deliberately absent: the feasibility
envelope of the unsigned machine becomes a per-phase fixed-point system
here.  What is provided is the leading-hump census against a horizontal
line (``truncated_local_count``) and the exact truncated expectation window
around 3/2..2 that it witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from .curve import TWO_THIRDS, ZERO
from .rationals import require_supported, to_binary
from .stats import catalan

HALF = Fraction(1, 2)


def _canonical(preperiod: tuple[int, ...], period: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # primitive period
    p = len(period)
    for d in range(1, p + 1):
        if p % d == 0 and period == period[:d] * (p // d):
            period = period[:d]
            break
    # minimal preperiod: absorb matching tail signs into the rotation
    preperiod = tuple(preperiod)
    while preperiod and preperiod[-1] == period[-1]:
        preperiod = preperiod[:-1]
        period = (period[-1],) + period[:-1]
    return preperiod, period


@dataclass(frozen=True)
class SignSequence:
    """Eventually periodic sequence of +-1 signs, canonicalized on creation.

    ``term(n)`` is r_n (0-based).  Construction normalizes to the primitive
    period and minimal preperiod, so equal sequences compare equal.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.period:
            raise ValueError("period must be nonempty")
        if any(s not in (-1, 1) for s in self.preperiod + self.period):
            raise ValueError("signs must be +1 or -1")
        pre, per = _canonical(self.preperiod, self.period)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def parse(cls, period: str, preperiod: str = "") -> "SignSequence":
        """Build from '+'/'-' strings, e.g. parse("++-") or parse("+-", "+")."""
        def decode(text: str) -> tuple[int, ...]:
            out = []
            for ch in text:
                if ch == "+":
                    out.append(1)
                elif ch == "-":
                    out.append(-1)
                else:
                    raise ValueError(f"sign string may contain only + and -: {text!r}")
            return tuple(out)

        return cls(decode(preperiod), decode(period))

    def __str__(self) -> str:
        render = lambda signs: "".join("+" if s > 0 else "-" for s in signs)
        head = render(self.preperiod)
        return f"{head}({render(self.period)})" if head else f"({render(self.period)})"

    def term(self, n: int) -> int:
        if n < 0:
            raise IndexError("sign index must be >= 0")
        q = len(self.preperiod)
        if n < q:
            return self.preperiod[n]
        return self.period[(n - q) % len(self.period)]

    def shift(self, k: int) -> "SignSequence":
        """The sequence (r_k, r_{k+1}, ...)."""
        q = len(self.preperiod)
        if k <= q:
            return SignSequence(self.preperiod[k:], self.period)
        r = (k - q) % len(self.period)
        return SignSequence((), self.period[r:] + self.period[:r])

    def flipped(self) -> "SignSequence":
        return SignSequence(
            tuple(-s for s in self.preperiod), tuple(-s for s in self.period)
        )

    @property
    def transient(self) -> int:
        return len(self.preperiod)

    @property
    def period_length(self) -> int:
        return len(self.period)

    @property
    def drift(self) -> int:
        """Net movement of the sign walk over one period."""
        return sum(self.period)


ALL_PLUS = SignSequence((), (1,))
ALTERNATING = SignSequence((), (1, -1))


class SignedWord:
    """Binary word with the sign-weighted walk and exact partial values.

    Mirrors :class:`takagi.curve.DigitWord` with step i weighted by r_{i-1}:
    v_i = v_{i-1} + eps_i (D_{i-1} + r_{i-1}) / 2^i and D moves by ±r_{i-1}.
    """

    __slots__ = ("signs", "_digits", "_slopes", "_values")

    def __init__(self, signs: SignSequence, digits: Iterable[int] = ()) -> None:
        self.signs = signs
        self._digits: list[int] = []
        self._slopes: list[int] = [0]
        self._values: list[Fraction] = [ZERO]
        for bit in digits:
            self.push(bit)

    def push(self, bit: int) -> None:
        if bit not in (0, 1):
            raise ValueError(f"binary digit expected, got {bit!r}")
        i = len(self._digits) + 1
        r = self.signs.term(i - 1)
        d = self._slopes[-1]
        v = self._values[-1]
        if bit:
            v = v + Fraction(d + r, 1 << i)
            d -= r
        else:
            d += r
        self._digits.append(bit)
        self._slopes.append(d)
        self._values.append(v)

    def pop(self) -> int:
        bit = self._digits.pop()
        self._slopes.pop()
        self._values.pop()
        return bit

    def __len__(self) -> int:
        return len(self._digits)

    @property
    def digits(self) -> tuple[int, ...]:
        return tuple(self._digits)

    @property
    def slope(self) -> int:
        return self._slopes[-1]

    def slope_at(self, j: int) -> int:
        return self._slopes[j]

    @property
    def value(self) -> Fraction:
        return self._values[-1]


def eval_signed_dyadic(x: Fraction, signs: SignSequence) -> Fraction:
    """f(x) at a dyadic x in [0, 1], exactly."""
    if not 0 <= x <= 1:
        raise ValueError(f"need 0 <= x <= 1, got {x}")
    if x == 1:
        return ZERO
    expansion = to_binary(x)
    if not expansion.is_terminating:
        raise ValueError(f"{x} is not dyadic")
    return SignedWord(signs, expansion.preperiod).value


def eval_signed_rational(x: Fraction, signs: SignSequence) -> Fraction:
    """f(x) at any rational x in [0, 1], exactly.

    Align both periodicities: past q = max(expansion preperiod, sign
    transient), a block of P = lcm(digit period, sign period) digits repeats
    with the same signs, so the tail value solves a one-block self-affinity
    just as in the unsigned case.
    """
    if not 0 <= x <= 1:
        raise ValueError(f"need 0 <= x <= 1, got {x}")
    if x == 1:
        return ZERO
    expansion = to_binary(x)
    if expansion.is_terminating:
        return SignedWord(signs, expansion.preperiod).value
    q = max(len(expansion.preperiod), signs.transient)
    block = lcm(len(expansion.period), signs.period_length)
    head = SignedWord(signs, expansion.digits(q))
    scaled = x * (1 << q)
    tail = scaled - (scaled.numerator // scaled.denominator)
    cycle = SignedWord(signs.shift(q), tuple(expansion.digit(q + 1 + i) for i in range(block)))
    scale = Fraction(1, 1 << block)
    tail_value = (cycle.value + cycle.slope * tail * scale) / (1 - scale)
    return head.value + (head.slope * tail + tail_value) / (1 << q)


def signed_constant(signs: SignSequence) -> Fraction:
    """C(r) = sum_n r_n 2^-(n+2), exactly: 1/2 for all-plus, 1/6 alternating."""
    head = sum(Fraction(s, 1 << n) for n, s in enumerate(signs.preperiod))
    q = len(signs.preperiod)
    p = signs.period_length
    cycle = sum(Fraction(s, 1 << i) for i, s in enumerate(signs.period))
    total = head + Fraction(cycle, 1 << q) / (1 - Fraction(1, 1 << p))
    return total / 4


def signed_d_expression_residual(x: Fraction, signs: SignSequence, terms: int) -> Fraction:
    """Defect of f(x) = C(r) - (1/4) sum (-1)^(eps_{n+1}) D_n 2^-n after ``terms``.

    Bounded by (terms + 2) 2^-terms exactly as in the unsigned case, since
    |D_n| <= n regardless of signs.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    expansion = to_binary(x)
    word = SignedWord(signs, tuple(expansion.digit(i) for i in range(1, terms + 2)))
    acc = ZERO
    for n in range(1, terms + 1):
        sign = -1 if expansion.digit(n + 1) else 1
        acc += Fraction(sign * word.slope_at(n), 1 << n)
    partial = signed_constant(signs) - acc / 4
    return abs(eval_signed_rational(x, signs) - partial)


# ---------------------------------------------------------------------------
# First passages of the sign walk and the exact extrema.


def _walk_head(signs: SignSequence) -> list[int]:
    """s_0 .. s_{alpha + pi} of the sign walk."""
    out = [0]
    for n in range(signs.transient + signs.period_length):
        out.append(out[-1] + signs.term(n))
    return out


def first_passage(signs: SignSequence, level: int) -> Optional[int]:
    """First n with s_n = level, or None if the walk never gets there.

    Within the transient plus one period the head values are scanned
    directly; beyond, s_{alpha+i+k*pi} = s_{alpha+i} + k*drift reduces the
    search to one congruence per phase.
    """
    if level == 0:
        return 0
    alpha, pi, delta = signs.transient, signs.period_length, signs.drift
    s = _walk_head(signs)
    for n in range(1, len(s)):
        if s[n] == level:
            return n
    if delta == 0:
        return None
    best: Optional[int] = None
    for i in range(1, pi + 1):
        need = level - s[alpha + i]
        if need % delta == 0:
            k = need // delta
            if k >= 1:
                n = alpha + i + k * pi
                if best is None or n < best:
                    best = n
    return best


@dataclass(frozen=True)
class PassageProgression:
    """tau at the odd levels on one side, finite head + arithmetic tail.

    ``times[i]`` is tau at ``levels[i]`` (None = never reached).  When the
    walk drifts toward this side, every level past ``tail_from`` satisfies
    tau(level + level_stride) = tau(level) + time_stride; otherwise the last
    listed level is unreachable (None) and so is everything beyond it.
    """

    levels: tuple[int, ...]
    times: tuple[Optional[int], ...]
    tail_from: Optional[int]
    level_stride: Optional[int]
    time_stride: Optional[int]


def first_passages(signs: SignSequence, side: int) -> PassageProgression:
    """Passage times to the odd levels 1, 3, 5, ... (side=+1) or -1, -3, ...

    Levels are reported as positive integers on both sides (the walk is
    flipped for side=-1).  All-plus: tau = 1, 3, 5, ...; alternating
    positive side: tau_1 = 1, tau_3 = infinity.
    """
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    walk = signs if side == 1 else signs.flipped()
    reach = max(_walk_head(walk))
    delta = walk.drift
    if delta > 0:
        window_end = reach + 2 * delta
        tail_from = reach + 1 if reach % 2 == 0 else reach + 2
        level_stride: Optional[int] = 2 * delta
        time_stride: Optional[int] = 2 * walk.period_length
    else:
        window_end = reach + 2  # one unreachable level, so the infinity shows
        tail_from = level_stride = time_stride = None
    levels = tuple(range(1, max(window_end, 0) + 1, 2))
    times = tuple(first_passage(walk, lv) for lv in levels)
    return PassageProgression(levels, times, tail_from, level_stride, time_stride)


def _side_sum(signs: SignSequence) -> Fraction:
    """sum over odd j of (1/2)^{tau_j} for this walk, exactly."""
    prog = first_passages(signs, 1)
    total = ZERO
    delta = signs.drift
    if delta <= 0:
        for t in prog.times:
            if t is not None:
                total += Fraction(1, 1 << t)
        return total
    geometric = 1 - Fraction(1, 1 << (2 * signs.period_length))
    for level, t in zip(prog.levels, prog.times):
        if t is None:
            continue
        if prog.tail_from is not None and level >= prog.tail_from:
            # anchor of an arithmetic progression of passage times
            total += Fraction(1, 1 << t) / geometric
        else:
            total += Fraction(1, 1 << t)
    return total


@dataclass(frozen=True)
class SignedExtrema:
    maximum: Fraction
    minimum: Fraction
    positive: PassageProgression
    negative: PassageProgression

    @property
    def height(self) -> Fraction:
        return self.maximum - self.minimum


def signed_extrema(signs: SignSequence) -> SignedExtrema:
    """Exact max and min of f over [0, 1] via first-passage sums.

    all-plus -> (2/3, 0); alternating -> (1/2, 0).  The height always lies
    in [1/2, 2/3] (f(1/2) = ±1/2 gives the lower bound); violations would
    mean a broken passage analysis, so they raise.
    """
    maximum = _side_sum(signs)
    minimum = -_side_sum(signs.flipped())
    extrema = SignedExtrema(
        maximum=maximum,
        minimum=minimum,
        positive=first_passages(signs, 1),
        negative=first_passages(signs, -1),
    )
    if not HALF <= extrema.height <= TWO_THIRDS:
        raise AssertionError(f"height {extrema.height} of {signs} outside [1/2, 2/3]")
    return extrema


# ---------------------------------------------------------------------------
# Signed humps against a horizontal line.


def _suffix_extrema_table(signs: SignSequence, max_depth: int) -> list[tuple[Fraction, Fraction]]:
    """(min, max) of the shifted function f^(j) for each depth j <= max_depth."""
    alpha, pi = signs.transient, signs.period_length
    cache: dict[int, tuple[Fraction, Fraction]] = {}
    table = []
    for j in range(max_depth + 1):
        phase = j if j < alpha else alpha + (j - alpha) % pi
        if phase not in cache:
            shifted = signs.shift(phase)
            cache[phase] = (-_side_sum(shifted.flipped()), _side_sum(shifted))
        table.append(cache[phase])
    return table


def truncated_local_count(y: Fraction, signs: SignSequence, max_order: int) -> int:
    """Leading signed humps of order <= max_order whose truncated band hits y.

    A leading signed hump is a word with signed walk D_j >= 0 throughout and
    D_{2m} = 0; its truncated projection spans (1/2) 4^-m from f(x0) in the
    direction of the first suffix sign r_{2m}.  The count for the all-plus
    sequence reproduces the unsigned leading-hit count; the root hump is
    included (its band is [0, 1/2] when r_0 = +1).
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    y = require_supported(y)
    depth_cap = 2 * max_order
    suffix = _suffix_extrema_table(signs, depth_cap + 1)
    word = SignedWord(signs)
    count = 0

    def descend() -> None:
        nonlocal count
        depth = len(word)
        if depth % 2 == 0 and word.slope == 0:
            a = word.value
            band = HALF / (1 << depth)
            if signs.term(depth) > 0:
                hit = a <= y <= a + band
            else:
                hit = a - band <= y <= a
            if hit:
                count += 1
        if depth == depth_cap:
            return
        scale = Fraction(1, 1 << (depth + 1))
        m_min = max((depth + 2) // 2, 1)
        slack = HALF / (1 << (2 * m_min))
        lo_suffix, hi_suffix = suffix[depth + 1]
        for bit in (0, 1):
            d = word.slope + signs.term(depth) * (1 if bit == 0 else -1)
            if d < 0:  # leading humps only
                continue
            word.push(bit)
            v = word.value
            lo = v + (min(0, d) + lo_suffix) * scale
            hi = v + (max(0, d) + hi_suffix) * scale
            if lo - slack <= y <= hi + slack:
                descend()
            word.pop()

    descend()
    return count


def expected_local_window(signs: SignSequence, max_order: int) -> Fraction:
    """Truncated expected number of local level sets per unit ordinate.

    sum_{m<=M} C_m (1/2) 4^-m divided by the exact height; the full series
    sums to 1, so the value sits in [3/2 * (1 - tail), 2] with
    tail = sum_{m>M} C_m 4^-m / 2 — the finite shadow of "between 3/2 and 2".
    """
    partial = sum(Fraction(catalan(m), 1 << (2 * m)) for m in range(max_order + 1)) / 2
    return partial / signed_extrema(signs).height

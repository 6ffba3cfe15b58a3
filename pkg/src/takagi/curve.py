"""Exact evaluation of the blancmange curve T(x) = sum_n 2^-n dist(2^n x, Z).

The workhorse is the digit walk: reading binary digits eps_1 eps_2 ... of x,
the running slope D_j = #zeros - #ones among the first j digits is the slope
of the degree-j piecewise-linear truncation on the dyadic interval containing
x, and the exact value at the truncated point updates in O(1) per digit:

    v_j = v_{j-1} + eps_j * (D_{j-1} + 1) / 2^j.

Appending digit 0 leaves the value unchanged (the new breakpoint sits at the
left end); appending 1 crosses the tent of every earlier level plus the new
one, which is what the (D + 1) accounts for.  From the walk one also gets a
closed form on eventually periodic expansions, i.e. exact values at every
rational, and certified two-sided truncation error at any depth.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rationals import BinaryExpansion, to_binary

ZERO = Fraction(0)
TWO_THIRDS = Fraction(2, 3)


def triangle_wave(x: Fraction) -> Fraction:
    """Distance from x to the nearest integer."""
    f = x - (x.numerator // x.denominator)
    return min(f, 1 - f)


class DigitWord:
    """A finite binary word with its slope walk and exact partial values.

    Push/pop are O(1), which makes this the right carrier for depth-first
    searches over words.  ``value`` is the exact curve value at the dyadic
    point 0.eps_1...eps_k (all series terms beyond the word vanish there).
    """

    __slots__ = ("_digits", "_slopes", "_values")

    def __init__(self, digits: Iterable[int] = ()) -> None:
        self._digits: list[int] = []
        self._slopes: list[int] = [0]
        self._values: list[Fraction] = [ZERO]
        for bit in digits:
            self.push(bit)

    def push(self, bit: int) -> None:
        if bit not in (0, 1):
            raise ValueError(f"binary digit expected, got {bit!r}")
        d = self._slopes[-1]
        v = self._values[-1]
        if bit:
            v = v + Fraction(d + 1, 1 << (len(self._digits) + 1))
            d -= 1
        else:
            d += 1
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
        """D_k = #zeros - #ones over the whole word."""
        return self._slopes[-1]

    def slope_at(self, j: int) -> int:
        """D_j for 0 <= j <= len(word)."""
        return self._slopes[j]

    @property
    def value(self) -> Fraction:
        """Exact curve value at the word's dyadic point."""
        return self._values[-1]

    def value_at(self, j: int) -> Fraction:
        return self._values[j]

    def point(self) -> Fraction:
        """The dyadic rational 0.eps_1...eps_k."""
        n = 0
        for b in self._digits:
            n = (n << 1) | b
        return Fraction(n, 1 << len(self._digits))

    @classmethod
    def from_expansion(cls, expansion: BinaryExpansion, depth: int) -> "DigitWord":
        return cls(expansion.digits(depth))


def walk_of(digits: Sequence[int]) -> tuple[int, ...]:
    """Slope walk D_1..D_k of a word (D_j = sum of +1 for 0, -1 for 1)."""
    word = DigitWord(digits)
    return tuple(word.slope_at(j) for j in range(1, len(word) + 1))


def eval_dyadic(x: Fraction) -> Fraction:
    """T at a dyadic rational in [0, 1], exactly, via the digit walk."""
    if not 0 <= x <= 1:
        raise ValueError(f"need 0 <= x <= 1, got {x}")
    if x == 1:
        return ZERO
    expansion = to_binary(x)
    if not expansion.is_terminating:
        raise ValueError(f"{x} is not dyadic")
    return DigitWord(expansion.preperiod).value


def _periodic_value(cycle_word: DigitWord, tail: Fraction) -> Fraction:
    """T(t) for t = 0.(c)^inf with tail = t, using self-affinity over one period.

    One pass over the period scales the picture by 2^-p and shifts by the
    period's own walk: T(t) = v_p + 2^-p (D_p t + T(t)), solved for T(t).
    """
    p = len(cycle_word)
    scale = Fraction(1, 1 << p)
    return (cycle_word.value + cycle_word.slope * tail * scale) / (1 - scale)


def eval_rational(x: Fraction) -> Fraction:
    """T at any rational in [0, 1] — general denominators welcome (1/5 included).

    Dyadic arguments terminate; otherwise the expansion's preperiod u and
    primitive period c give

        T(x) = v_q(u) + 2^-q (D_q(u) * t + T(t)),   t = 0.(c)^inf,

    with T(t) from the one-period self-affinity.  Everything is a Fraction,
    so the result is exact, e.g. T(1/3) = 2/3, T(1/6) = 1/2, T(1/5) = 8/15.
    """
    if not 0 <= x <= 1:
        raise ValueError(f"need 0 <= x <= 1, got {x}")
    if x == 1:
        return ZERO
    expansion = to_binary(x)
    head = DigitWord(expansion.preperiod)
    if expansion.is_terminating:
        return head.value
    q = len(expansion.preperiod)
    cycle = DigitWord(expansion.period)
    tail = Fraction(
        sum(b << (len(expansion.period) - 1 - i) for i, b in enumerate(expansion.period)),
        (1 << len(expansion.period)) - 1,
    )
    t_value = _periodic_value(cycle, tail)
    return head.value + (head.slope * tail + t_value) / (1 << q)


def eval_approx(x: Fraction, depth: int) -> tuple[Fraction, Fraction]:
    """Value at the depth-digit truncation of x, with a certified error bound.

    Returns (T(x_n), bound) where x_n keeps the first ``depth`` digits and
    |T(x) - T(x_n)| <= bound = (|D_n| + 2/3) * 2^-n.  The bound is per-input:
    a blanket 2^(1-n) would be wrong near 0, where D_n ~ n.  When the
    expansion terminates within ``depth`` digits the truncation is exact and
    the bound is 0.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if not 0 <= x <= 1:
        raise ValueError(f"need 0 <= x <= 1, got {x}")
    if x == 1:
        return ZERO, ZERO
    expansion = to_binary(x)
    word = DigitWord.from_expansion(expansion, depth)
    if word.point() == x:
        return word.value, ZERO
    bound = (abs(word.slope) + TWO_THIRDS) / (1 << depth)
    return word.value, bound


def d_expression_residual(x: Fraction, terms: int) -> Fraction:
    """Defect of the partial slope-series identity at x, truncated after ``terms``.

    The identity T(x) = 1/2 - (1/4) sum_{n>=1} (-1)^(eps_{n+1}) D_n 2^-n holds
    for every x in [0, 1); the returned residual |T(x) - partial sum| obeys
    residual <= (terms + 2) * 2^-terms (indeed a quarter of that), which the
    tests pin down.  Needs digits up to eps_{terms+1}.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    expansion = to_binary(x)
    word = DigitWord.from_expansion(expansion, terms + 1)
    acc = ZERO
    for n in range(1, terms + 1):
        sign = -1 if expansion.digit(n + 1) else 1
        acc += Fraction(sign * word.slope_at(n), 1 << n)
    partial = Fraction(1, 2) - acc / 4
    return abs(eval_rational(x) - partial)

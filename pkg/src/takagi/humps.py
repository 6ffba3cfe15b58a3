"""Hump combinatorics: balanced words, their boxes, and truncated projections.

A balanced word (as many zeros as ones) of length 2m marks a dyadic corner
x0 = 0.w at which the curve restarts a scaled copy of itself: over
I = [x0, x0 + 4^-m] the graph is an affine image of the whole curve, lifted
to height a = T(x0).  The box I x [a, a + (2/3) 4^-m] is the hump of order m;
its truncated projection [a, a + (1/2) 4^-m] is the part guaranteed by the
first half of the copy.  Humps of order m are counted by binomial(2m, m) and
the leading ones (slope walk never negative) by the Catalan number C_m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Optional, Sequence

from .curve import DigitWord
from .rationals import to_binary

HALF = Fraction(1, 2)
TWO_THIRDS = Fraction(2, 3)


class NotBalancedError(ValueError):
    """Word (or dyadic point) does not mark a hump corner."""


@dataclass(frozen=True)
class Hump:
    word: tuple[int, ...]
    order: int
    generation: int
    is_leading: bool
    base: Fraction
    x_interval: tuple[Fraction, Fraction]
    y_projection: tuple[Fraction, Fraction]
    y_projection_truncated: tuple[Fraction, Fraction]

    @property
    def corner(self) -> Fraction:
        return self.x_interval[0]


def analyze_word(word: Sequence[int]) -> Hump:
    """Classify a balanced word into its hump; empty word gives the root.

    Raises :class:`NotBalancedError` on odd length or nonzero final slope.
    Examples: "01" -> order 1, generation 1, leading, box [1/4, 1/2] x
    [1/2, 2/3]-ish; "0110" -> order 2, generation 2, not leading.
    """
    w = DigitWord(word)
    if len(w) % 2 or w.slope != 0:
        raise NotBalancedError(f"not balanced: {''.join(map(str, word))!r}")
    order = len(w) // 2
    generation = sum(1 for j in range(1, len(w) + 1) if w.slope_at(j) == 0)
    leading = all(w.slope_at(j) >= 0 for j in range(1, len(w) + 1))
    corner = w.point()
    width = Fraction(1, 1 << (2 * order))
    base = w.value
    return Hump(
        word=w.digits,
        order=order,
        generation=generation,
        is_leading=leading,
        base=base,
        x_interval=(corner, corner + width),
        y_projection=(base, base + TWO_THIRDS * width),
        y_projection_truncated=(base, base + HALF * width),
    )


ROOT_HUMP = analyze_word(())


def enumerate_balanced(
    order: int,
    *,
    leading: bool = False,
    generation: Optional[int] = None,
    budget: int = 12,
) -> list[Hump]:
    """All humps of the given order, ascending by corner.

    ``leading=True`` keeps Dyck words only; ``generation=g`` filters on the
    number of returns of the slope walk to zero.  Counts: binomial(2m, m)
    in total, Catalan(m) leading.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if order > budget:
        raise ValueError(f"order {order} exceeds budget {budget}")
    result: list[Hump] = []
    word = DigitWord()

    def descend() -> None:
        depth = len(word)
        if depth == 2 * order:
            if word.slope == 0:
                hump = analyze_word(word.digits)
                if generation is not None and hump.generation != generation:
                    return
                result.append(hump)
            return
        remaining = 2 * order - depth
        for bit in (0, 1):
            d = word.slope + (1 if bit == 0 else -1)
            if abs(d) > remaining - 1:
                continue
            if leading and d < 0:
                continue
            word.push(bit)
            descend()
            word.pop()

    descend()
    return result


def census(order: int) -> tuple[int, int]:
    """(humps, leading humps) of the given order: (binom(2m, m), Catalan(m))."""
    return comb(2 * order, order), comb(2 * order, order) // (order + 1)


def truncated_hits(
    y: Fraction, max_order: int, *, leading_only: bool = False
) -> list[Hump]:
    """Humps of order <= max_order whose truncated projection contains y.

    Works for any rational y (exact arithmetic throughout).  The search walks
    the word tree pruning by the reachable-value window: below a prefix of
    length j with slope D, every curve value lies within
    [v + min(0, D) 2^-j, v + (max(0, D) + 2/3) 2^-j], and a hit of order
    m >= m_min(j) needs T(x0) within (1/2) 4^-m_min of y.  The root hump
    counts whenever 0 <= y <= 1/2.  Results sorted by (order, corner).
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    hits: list[Hump] = []
    word = DigitWord()

    def descend() -> None:
        depth = len(word)
        if depth % 2 == 0 and word.slope == 0:
            a = word.value
            half_width = HALF / (1 << depth)  # (1/2) * 4^-m at depth 2m
            if a <= y <= a + half_width:
                hump = analyze_word(word.digits)
                if not leading_only or hump.is_leading:
                    hits.append(hump)
        if depth == 2 * max_order:
            return
        scale = Fraction(1, 1 << (depth + 1))
        m_min = max((depth + 2) // 2, 1)
        window_lo = y - HALF / (1 << (2 * m_min))
        for bit in (0, 1):
            d = word.slope + (1 if bit == 0 else -1)
            if leading_only and d < 0:
                continue
            word.push(bit)
            v = word.value
            lo = v + min(0, d) * scale
            hi = v + (max(0, d) + TWO_THIRDS) * scale
            if hi >= window_lo and lo <= y:
                descend()
            word.pop()

    descend()
    hits.sort(key=lambda h: (h.order, h.corner))
    return hits


def balanced_word_of(x: Fraction) -> Optional[tuple[int, ...]]:
    """The balanced word whose corner is x, or None if x is not a corner.

    The terminating digits of a dyadic x in [0, 1) extend to a balanced word
    exactly when their slope is <= 0 (pad with that many zeros; parity is
    automatic).  5/8 -> (1,0,1,0); 7/8 -> (1,1,1,0,0,0); 1/8 -> None.
    """
    if not 0 <= x < 1:
        raise ValueError(f"need 0 <= x < 1, got {x}")
    expansion = to_binary(x)
    if not expansion.is_terminating:
        return None
    w = DigitWord(expansion.preperiod)
    if w.slope > 0:
        return None
    return w.digits + (0,) * (-w.slope)


def dyadic_partner(x: Fraction) -> Fraction:
    """A strictly deeper dyadic x' != x with T(x') = T(x).

    With terminating digits of length n containing j zeros: if j < n - j,
    append n - 2j - 1 zeros and a one; otherwise replace the final one by a
    zero followed by 2j + 2 - n ones.  Iterating yields infinitely many
    points on the same level: 3/4 -> 13/16, 1/2 -> 3/4, 1/4 -> 3/16.
    """
    if not 0 < x < 1:
        raise ValueError(f"need 0 < x < 1, got {x}")
    expansion = to_binary(x)
    if not expansion.is_terminating:
        raise ValueError(f"{x} is not dyadic")
    digits = expansion.preperiod
    n = len(digits)
    j = sum(1 for b in digits if b == 0)
    if j < n - j:
        partner = digits + (0,) * (n - 2 * j - 1) + (1,)
    else:
        partner = digits[:-1] + (0,) + (1,) * (2 * j + 2 - n)
    return DigitWord(partner).point()


def level_points(x: Fraction, count: int) -> Iterator[Fraction]:
    """x followed by ``count`` successive dyadic partners (all on one level)."""
    yield x
    for _ in range(count):
        x = dyadic_partner(x)
        yield x

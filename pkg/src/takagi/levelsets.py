"""Level-set facade: classification plus local-level-set combinatorics.

The heavy lifting (state graph, verdicts, exact preimages) lives in
:mod:`takagi.machine`; this module re-exports it and adds the word-level
side: two prefixes belong to the same local level set when their slope walks
agree in absolute value, and the partners of a word are produced by flipping
whole blocks between returns of the walk to zero.
"""

from __future__ import annotations

from typing import Sequence

from .curve import DigitWord
from .machine import (
    BudgetExceededError,
    LevelSetReport,
    PreimagePath,
    StateGraph,
    Verdict,
    analyze,
    classify,
    close_graph,
    group_by_profile,
    leftmost_preimage,
    reconstruct_preimages,
)

__all__ = [
    "BudgetExceededError",
    "LevelSetReport",
    "PreimagePath",
    "StateGraph",
    "Verdict",
    "analyze",
    "classify",
    "close_graph",
    "group_by_profile",
    "leftmost_preimage",
    "local_level_set_count",
    "local_partner_count",
    "local_partners",
    "reconstruct_preimages",
]


def _zero_positions(word: DigitWord) -> list[int]:
    # Positions j < len with D_j = 0; j = 0 always qualifies, so every word
    # has at least one flippable block.
    return [j for j in range(len(word)) if word.slope_at(j) == 0]


def local_partners(word: Sequence[int]) -> list[tuple[int, ...]]:
    """All words sharing the |D_j| profile of ``word``, sorted.

    Between consecutive zeros of the slope walk the sign of D is constant,
    so the digits there can only be kept or complemented wholesale; each of
    the 2^blocks choices is a partner and nothing else is.
    Examples: "01" -> {01, 10}; "0110" -> {0101, 0110, 1001, 1010}.
    """
    w = DigitWord(word)
    n = len(w)
    starts = _zero_positions(w)
    bounds = starts + [n]
    digits = list(w.digits)
    partners = set()
    for mask in range(1 << len(starts)):
        candidate = digits[:]
        for i in range(len(starts)):
            if mask >> i & 1:
                for k in range(bounds[i], bounds[i + 1]):
                    candidate[k] ^= 1
        partners.add(tuple(candidate))
    return sorted(partners)


def local_partner_count(word: Sequence[int]) -> int:
    """2^(number of blocks) without materializing the partner list."""
    return 1 << len(_zero_positions(DigitWord(word)))


def local_level_set_count(report: LevelSetReport) -> int:
    """Number of local level sets in a Finite report (profile classes)."""
    if report.verdict is not Verdict.FINITE or report.paths is None:
        raise ValueError(f"level set of {report.ordinate} is not finite")
    if report.n_local is not None:
        return report.n_local
    return len(group_by_profile(list(report.paths)))

"""Approximate occurrence search over snippet text.

Two interchangeable routes compute the same thing: for every text position,
the minimal edit distance of a pattern against some window ending there
(semi-global search, free window start). `bpm_search` is the bit-parallel
scorer used in production for patterns that fit in a machine word;
`dp_occurrence_search` is the plain dynamic-programming table that serves as
the verification oracle and as the transparent fallback for long patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

WORD_WIDTH = 64


@dataclass(frozen=True, order=True)
class MatchHit:
    """One approximate occurrence: 0-based end position and its edit distance."""

    end_pos: int
    distance: int


class HitList(list):
    """Hits ordered by end position.

    ``fallback`` is True when the result was computed by the DP route because
    the pattern exceeded the bit-parallel word width.
    """

    def __init__(self, hits: Iterable[MatchHit] = (), fallback: bool = False):
        super().__init__(hits)
        self.fallback = fallback


@dataclass(frozen=True)
class PatternMasks:
    """Per-symbol bitmasks: bit i of ``masks[c]`` is set iff pattern[i] == c."""

    m: int
    masks: dict

    def mask_for(self, symbol: str) -> int:
        return self.masks.get(symbol, 0)


def build_masks(pattern: str) -> PatternMasks:
    if not pattern:
        raise ValueError("pattern must be non-empty")
    masks: dict = {}
    for i, ch in enumerate(pattern):
        masks[ch] = masks.get(ch, 0) | (1 << i)
    return PatternMasks(m=len(pattern), masks=masks)


def _check_query(pattern: str, k: int) -> None:
    if not pattern:
        raise ValueError("pattern must be non-empty")
    if k < 0:
        raise ValueError("k must be >= 0")


def edit_distance(a: str, b: str) -> int:
    """Unit-cost global edit distance (classic two-row DP)."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        append = cur.append
        for j, cb in enumerate(b, start=1):
            append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def dp_occurrence_search(pattern: str, text: str, k: int) -> HitList:
    """Semi-global search by the O(m*n) table whose first row is zero.

    Row i holds the best distance of pattern[:i] against windows ending at
    each text position; rows are updated vectorized over the text, with the
    insertion (left) dependency closed by a prefix minimum over skewed costs.
    """
    _check_query(pattern, k)
    n = len(text)
    if n == 0:
        return HitList()
    t = np.fromiter((ord(c) for c in text), dtype=np.int64, count=n)
    idx = np.arange(n + 1, dtype=np.int64)
    row = np.zeros(n + 1, dtype=np.int64)
    step = np.empty(n + 1, dtype=np.int64)
    for ch in pattern:
        step[0] = row[0] + 1
        np.minimum(row[:-1] + (t != ord(ch)), row[1:] + 1, out=step[1:])
        row = np.minimum.accumulate(step - idx) + idx
    ends = np.flatnonzero(row[1:] <= k)
    return HitList(MatchHit(int(j), int(row[j + 1])) for j in ends)


def bpm_search(pattern: str, text: str, k: int) -> HitList:
    """Bit-parallel occurrence search (one word operation batch per text char).

    Maintains the vertical delta of the DP column in two bit vectors (VP/VN)
    and tracks the score of the last pattern row; a position is reported
    whenever that score drops to <= k. Matches `dp_occurrence_search` exactly.
    Patterns longer than WORD_WIDTH fall back to the DP route and mark the
    result with ``fallback=True``.
    """
    _check_query(pattern, k)
    m = len(pattern)
    if m > WORD_WIDTH:
        return HitList(dp_occurrence_search(pattern, text, k), fallback=True)
    masks = build_masks(pattern).masks
    full = (1 << m) - 1
    high = 1 << (m - 1)
    vp = full
    vn = 0
    score = m
    hits = []
    for j, ch in enumerate(text):
        eq = masks.get(ch, 0)
        xv = eq | vn
        xh = (((eq & vp) + vp) ^ vp) | eq
        ph = vn | (full & ~(xh | vp))
        mh = vp & xh
        if ph & high:
            score += 1
        elif mh & high:
            score -= 1
        ph = (ph << 1) & full
        vp = ((mh << 1) & full) | (full & ~(xv | ph))
        vn = ph & xv
        if score <= k:
            hits.append(MatchHit(j, score))
    return HitList(hits)

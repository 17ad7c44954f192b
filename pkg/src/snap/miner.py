"""Frequent sequential pattern mining over API-call sequences.

PrefixSpan grows patterns one symbol at a time, recursing on the projected
database (the suffixes after each symbol's first occurrence), so only
sequences that can still extend the current prefix are ever rescanned. A
direct subsequence enumerator doubles as the verification oracle on small
inputs. Support counts each sequence at most once per pattern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable


@dataclass(frozen=True)
class FrequentPattern:
    """A mined pattern with its exact support set."""

    symbols: tuple
    support: int
    support_ids: frozenset


@dataclass(frozen=True)
class SequenceDB:
    """Ordered (snippet_id, sequence) pairs with unique ids."""

    entries: tuple

    def __post_init__(self):
        ids = [sid for sid, _ in self.entries]
        if len(ids) != len(set(ids)):
            raise ValueError("snippet ids must be unique")

    @classmethod
    def from_items(cls, items: Iterable) -> "SequenceDB":
        return cls(tuple((sid, tuple(seq)) for sid, seq in items))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)


def is_subsequence(pattern, sequence) -> bool:
    """True iff `pattern` embeds in `sequence` in order (gaps allowed)."""
    it = iter(sequence)
    return all(symbol in it for symbol in pattern)


def default_min_support(db_size: int) -> int:
    """Threshold used when the caller does not pass one."""
    return max(2, math.ceil(0.1 * db_size))


def _project(entries, symbol):
    """Suffixes strictly after the first occurrence of `symbol`; sequences
    without it are omitted. Ids are preserved."""
    projected = []
    for sid, seq in entries:
        try:
            pos = seq.index(symbol)
        except ValueError:
            continue
        projected.append((sid, seq[pos + 1 :]))
    return projected


def project(db: SequenceDB, symbol) -> SequenceDB:
    return SequenceDB(tuple(_project(db.entries, symbol)))


def prefixspan(db: SequenceDB, min_support: int) -> list:
    """All non-empty patterns with support >= min_support, ranked.

    Each recursion level counts the frequent symbols of the projected
    database, emits prefix+symbol (pre-order), and recurses on the symbol's
    projection; the projected entries' ids are exactly the sequences
    supporting the grown pattern, so support sets are exact by construction.
    """
    if min_support < 1:
        raise ValueError("min_support must be >= 1")
    found = []

    def grow(prefix, entries):
        counts: dict = {}
        for sid, seq in entries:
            for symbol in set(seq):
                counts.setdefault(symbol, set()).add(sid)
        for symbol in sorted(counts):
            ids = counts[symbol]
            if len(ids) < min_support:
                continue
            pattern = prefix + (symbol,)
            found.append(FrequentPattern(pattern, len(ids), frozenset(ids)))
            grow(pattern, _project(entries, symbol))

    grow((), list(db))
    return rank(found)


def brute_force_patterns(db: SequenceDB, min_support: int, max_len: int) -> list:
    """Oracle: enumerate every distinct subsequence up to max_len and count
    supports by direct testing. Intended for small inputs only."""
    if min_support < 1:
        raise ValueError("min_support must be >= 1")
    candidates = set()
    for _, seq in db:
        for length in range(1, min(max_len, len(seq)) + 1):
            for positions in combinations(range(len(seq)), length):
                candidates.add(tuple(seq[p] for p in positions))
    found = []
    for symbols in candidates:
        ids = frozenset(sid for sid, seq in db if is_subsequence(symbols, seq))
        if len(ids) >= min_support:
            found.append(FrequentPattern(symbols, len(ids), ids))
    return rank(found)


def rank(patterns: list) -> list:
    """Total order: support desc, then length desc, then symbols ascending."""
    return sorted(patterns, key=lambda p: (-p.support, -len(p.symbols), p.symbols))

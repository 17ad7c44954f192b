"""Reduce raw candidates to similar sources.

Exact duplicates (same normalized body) are removed first; survivors must
then carry a verified anchor occurrence of the query pattern, with optional
pre and post context verified inside windows measured from that anchor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matcher import MatchHit, bpm_search
from .tokenizer import strip_comments

DEFAULT_K_PATTERN = 1
DEFAULT_K_CONTEXT = 2
DEFAULT_WINDOW = 120


@dataclass(frozen=True)
class ContextQuery:
    """A pattern with optional surrounding context and match tolerances."""

    pattern: str
    pre: str | None = None
    post: str | None = None
    k_pattern: int = DEFAULT_K_PATTERN
    k_context: int = DEFAULT_K_CONTEXT
    window: int = DEFAULT_WINDOW

    def validate(self) -> "ContextQuery":
        if not self.pattern:
            raise ValueError("pattern must be non-empty")
        if self.k_pattern < 0 or self.k_context < 0:
            raise ValueError("edit-distance bounds must be >= 0")
        for name, ctx in (("pre", self.pre), ("post", self.post)):
            if ctx is not None and not ctx:
                raise ValueError(f"{name} context must be non-empty when given")
            if ctx is not None and self.window < len(ctx):
                raise ValueError(f"window must be >= |{name}| ({len(ctx)})")
        return self


@dataclass(frozen=True)
class FilteredSnippet:
    """A surviving snippet with its anchor and any verified context hits."""

    snippet: object
    anchor: MatchHit
    pre_hit: MatchHit | None = None
    post_hit: MatchHit | None = None


def normalize_body(text: str) -> str:
    """Comparison key for duplicate codes: comments stripped, whitespace collapsed."""
    return " ".join(strip_comments(text).split())


def dedupe(snippets: list) -> list:
    """Keep one representative (smallest id) per normalized body, preserving
    the relative order of survivors."""
    keeper: dict = {}
    keys = {}
    seen_ids = set()
    deduped_input = []
    for snippet in snippets:
        if snippet.id in seen_ids:
            continue
        seen_ids.add(snippet.id)
        deduped_input.append(snippet)
        key = normalize_body(snippet.raw_text)
        keys[snippet.id] = key
        if key not in keeper or snippet.id < keeper[key]:
            keeper[key] = snippet.id
    return [s for s in deduped_input if keeper[keys[s.id]] == s.id]


def _best_hit(hits) -> MatchHit | None:
    return min(hits, key=lambda h: (h.distance, h.end_pos)) if hits else None


def context_filter(snippets: list, q: ContextQuery) -> list:
    """Snippets whose text anchors the pattern and satisfies the context
    checks, ordered by (anchor distance, snippet id)."""
    q.validate()
    kept = []
    for snippet in snippets:
        text = snippet.raw_text
        anchor = _best_hit(bpm_search(q.pattern, text, q.k_pattern))
        if anchor is None:
            continue
        # Window start under edits is ambiguous; approximate from the end.
        anchor_start = max(0, anchor.end_pos - len(q.pattern) + 1)
        pre_hit = post_hit = None
        if q.pre is not None:
            region_start = max(0, anchor_start - q.window)
            best = _best_hit(bpm_search(q.pre, text[region_start:anchor_start], q.k_context)) \
                if anchor_start > region_start else None
            if best is None:
                continue
            pre_hit = MatchHit(region_start + best.end_pos, best.distance)
        if q.post is not None:
            region_start = anchor.end_pos + 1
            region = text[region_start : region_start + q.window]
            best = _best_hit(bpm_search(q.post, region, q.k_context)) if region else None
            if best is None:
                continue
            post_hit = MatchHit(region_start + best.end_pos, best.distance)
        kept.append(FilteredSnippet(snippet, anchor, pre_hit, post_hit))
    kept.sort(key=lambda f: (f.anchor.distance, f.snippet.id))
    return kept

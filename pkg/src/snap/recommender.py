"""End-to-end pipeline: tiered search, filtering, mining, skeleton synthesis.

A query runs against the offline tier first; explicit rejects escalate the
session one tier at a time (offline, then the two remote tiers), each re-run
only ever adding candidates. Every run leaves a stage-count trace on the
session.
"""

from __future__ import annotations

import csv
import io
import uuid
from bisect import bisect_right
from dataclasses import dataclass, field, replace

from .corpus import CorpusIndex, RepoTier, fetch_remote, search_raw
from .filtering import ContextQuery, context_filter, dedupe
from .miner import (
    FrequentPattern,
    SequenceDB,
    default_min_support,
    is_subsequence,
    prefixspan,
)
from .tokenizer import canonical, iter_code_chars, lex_snippet

ACCEPT = "accept"
REJECT = "reject"

HOLE_LINE = "/* … */"

DEFAULT_TOP_K = 10


class SessionStateError(RuntimeError):
    """Feedback or a re-run was attempted on a closed or exhausted session."""


@dataclass(frozen=True)
class Recommendation:
    """A ranked skeleton with its mined pattern and exemplar provenance."""

    pattern: FrequentPattern
    skeleton_text: str
    exemplar_ids: tuple
    score: float


@dataclass
class Session:
    """Per-query escalation state across repository tiers."""

    id: str
    query: ContextQuery
    current_tier: RepoTier = RepoTier.OLR
    exhausted: bool = False
    closed: bool = False
    trace_history: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.exhausted:
            return "exhausted"
        if self.closed:
            return "closed"
        return "active"


@dataclass(frozen=True)
class PipelineTrace:
    """Stage counts of one pipeline run (raw >= deduped >= filtered == sequences)."""

    raw: int
    deduped: int
    filtered: int
    sequences: int
    patterns: int
    recommended: int
    tier: RepoTier
    warnings: tuple = ()


@dataclass(frozen=True)
class EvalRow:
    query: str
    baseline_count: int
    snap_count: int


def new_session(query: ContextQuery) -> Session:
    return Session(id=uuid.uuid4().hex[:12], query=query.validate())


def run_pipeline(
    index: CorpusIndex,
    clients: dict | None,
    q: ContextQuery,
    session: Session,
    top_k: int = DEFAULT_TOP_K,
    min_support: int | None = None,
):
    """One pass over all tiers up to the session's current one.

    Returns (recommendations, trace); the trace is also appended to the
    session history. Deterministic for fixed inputs.
    """
    if session.exhausted:
        raise SessionStateError("session is exhausted")
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    q.validate()
    warnings: list = []

    active = {tier for tier in RepoTier if tier <= session.current_tier}
    candidates = list(search_raw(index, q.pattern, active, q.k_pattern))
    seen = {s.id for s in candidates}
    for tier in (RepoTier.SNAR, RepoTier.OSSNR):
        if tier not in active:
            continue
        client = (clients or {}).get(tier)
        if client is None:
            continue
        for snippet in fetch_remote(client, q.pattern, on_warning=warnings.append):
            if snippet.id not in seen:
                seen.add(snippet.id)
                candidates.append(snippet)

    deduped = dedupe(candidates)
    filtered = context_filter(deduped, q)
    db = SequenceDB.from_items((f.snippet.id, f.snippet.sequence) for f in filtered)
    support = min_support if min_support is not None else default_min_support(len(db))
    patterns = prefixspan(db, support)
    by_id = {f.snippet.id: f.snippet for f in filtered}

    recommendations = []
    for pattern in patterns[:top_k]:
        exemplar_ids = tuple(sorted(pattern.support_ids))
        skeleton = synthesize_skeleton(pattern, [by_id[i] for i in exemplar_ids])
        recommendations.append(
            Recommendation(
                pattern=pattern,
                skeleton_text=skeleton,
                exemplar_ids=exemplar_ids,
                score=pattern.support / len(filtered),
            )
        )

    trace = PipelineTrace(
        raw=len(candidates),
        deduped=len(deduped),
        filtered=len(filtered),
        sequences=len(db),
        patterns=len(patterns),
        recommended=len(recommendations),
        tier=session.current_tier,
        warnings=tuple(warnings),
    )
    session.trace_history.append(trace)
    return recommendations, trace


def run_with_escalation(
    index: CorpusIndex,
    clients: dict | None,
    q: ContextQuery,
    session: Session,
    top_k: int = DEFAULT_TOP_K,
    min_support: int | None = None,
):
    """Walk tiers automatically while runs come back empty (one-shot mode;
    interactive surfaces escalate through explicit rejects instead)."""
    recommendations, trace = run_pipeline(index, clients, q, session, top_k, min_support)
    while not recommendations and session.current_tier is not RepoTier.OSSNR:
        session.current_tier = session.current_tier.next_tier()
        recommendations, trace = run_pipeline(index, clients, q, session, top_k, min_support)
    return recommendations, trace


def apply_feedback(session: Session, verdict: str) -> Session:
    """accept closes the session; reject advances one tier, exhausting after
    the last one. Reject on a closed or exhausted session is a state error."""
    if verdict == ACCEPT:
        session.closed = True
        return session
    if verdict != REJECT:
        raise ValueError(f"verdict must be {ACCEPT!r} or {REJECT!r}, got {verdict!r}")
    if session.exhausted:
        raise SessionStateError("session is exhausted; no repository tiers remain")
    if session.closed:
        raise SessionStateError("session is closed")
    nxt = session.current_tier.next_tier()
    if nxt is None:
        session.exhausted = True
    else:
        session.current_tier = nxt
    return session


def synthesize_skeleton(pattern: FrequentPattern, exemplars: list) -> str:
    """Editable skeleton: the smallest exemplar reduced to the pattern's call
    lines plus their enclosing brace lines, other statement runs elided."""
    if not exemplars:
        raise ValueError("at least one exemplar is required")
    supporting = [e for e in exemplars if is_subsequence(pattern.symbols, e.sequence)]
    if not supporting:
        raise ValueError("no exemplar supports the pattern")
    chosen = min(supporting, key=lambda s: (len(s.sequence), s.id))
    return _skeleton_text(chosen.raw_text, pattern.symbols)


def _line_starts(text: str) -> list:
    starts = [0]
    for i, ch in enumerate(text):
        if ch == "\n":
            starts.append(i + 1)
    return starts


def _skeleton_text(text: str, symbols) -> str:
    tokens = lex_snippet(text)
    canon = [canonical(t) for t in tokens]

    # leftmost embedding of the pattern into the exemplar's call sequence
    chosen = []
    pos = 0
    for symbol in symbols:
        while pos < len(canon) and canon[pos] != symbol:
            pos += 1
        if pos == len(canon):
            raise ValueError(f"exemplar does not contain {symbol!r}")
        chosen.append(tokens[pos])
        pos += 1

    starts = _line_starts(text)

    def line_of(offset: int) -> int:
        return bisect_right(starts, offset) - 1

    keep = set()
    for token in chosen:
        keep.update(range(line_of(token.start), line_of(max(token.start, token.end - 1)) + 1))

    # minimal enclosing brace lines, closed under line co-residence
    pairs = _brace_pairs(text)
    changed = True
    while changed:
        changed = False
        for open_off, close_off in pairs:
            lo, lc = line_of(open_off), line_of(close_off)
            if (lo in keep or lc in keep) and not (lo in keep and lc in keep):
                keep.update((lo, lc))
                changed = True

    lines = text.split("\n")
    out = []
    i = 0
    while i < len(lines):
        if i in keep:
            out.append(lines[i])
            i += 1
            continue
        j = i
        blank_only = True
        indent = ""
        while j < len(lines) and j not in keep:
            if lines[j].strip() and blank_only:
                blank_only = False
                indent = lines[j][: len(lines[j]) - len(lines[j].lstrip())]
            j += 1
        if not blank_only:
            out.append(indent + HOLE_LINE)
        i = j
    return "\n".join(out)


def _brace_pairs(text: str) -> list:
    """Matched {(open, close)} offset pairs outside strings and comments."""
    stack = []
    pairs = []
    for offset, ch in iter_code_chars(text):
        if ch == "{":
            stack.append(offset)
        elif ch == "}" and stack:
            pairs.append((stack.pop(), offset))
    return pairs


def baseline_count(index: CorpusIndex, pattern: str) -> int:
    """Naive-search stand-in: snippets (all tiers) containing the pattern
    as an exact substring."""
    if not pattern:
        raise ValueError("pattern must be non-empty")
    return sum(1 for s in index.snippets.values() if pattern in s.raw_text)


def evaluate(index: CorpusIndex, clients: dict | None, queries: list) -> list:
    """One row per query: exact-substring baseline vs the number of distinct
    snippets recommended by a fresh offline-tier run with exact anchoring."""
    if not queries:
        raise ValueError("at least one query is required")
    rows = []
    for q in queries:
        q.validate()
        eval_q = replace(q, k_pattern=0)
        session = new_session(eval_q)
        recommendations, _ = run_pipeline(index, clients, eval_q, session)
        recommended = {i for rec in recommendations for i in rec.exemplar_ids}
        rows.append(
            EvalRow(
                query=q.pattern,
                baseline_count=baseline_count(index, q.pattern),
                snap_count=len(recommended),
            )
        )
    return rows


def _serials(rows) -> list:
    width = max(2, len(str(len(rows))))
    return [str(i).zfill(width) for i in range(1, len(rows) + 1)]


def render_eval_table(rows: list) -> str:
    """Fixed-width comparison table: Serial | Query | Baseline | SNAP."""
    serials = _serials(rows)
    headers = ("Serial", "Query", "Baseline", "SNAP")
    queries = [r.query for r in rows]
    widths = (
        max(len(headers[0]), *(len(s) for s in serials)) if rows else len(headers[0]),
        max(len(headers[1]), *(len(q) for q in queries)) if rows else len(headers[1]),
        max(len(headers[2]), *(len(str(r.baseline_count)) for r in rows)) if rows else len(headers[2]),
        max(len(headers[3]), *(len(str(r.snap_count)) for r in rows)) if rows else len(headers[3]),
    )
    def fmt(serial, query, base, snap):
        return " | ".join(
            (
                serial.ljust(widths[0]),
                query.ljust(widths[1]),
                str(base).rjust(widths[2]),
                str(snap).rjust(widths[3]),
            )
        )
    lines = [fmt(*headers)]
    for serial, row in zip(serials, rows):
        lines.append(fmt(serial, row.query, row.baseline_count, row.snap_count))
    return "\n".join(lines)


def render_eval_csv(rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["serial", "query", "baseline", "snap"])
    for serial, row in zip(_serials(rows), rows):
        writer.writerow([serial, row.query, row.baseline_count, row.snap_count])
    return buf.getvalue()


def recommendation_payload(recommendation: Recommendation, ordinal: int) -> dict:
    return {
        "id": f"rec-{ordinal}",
        "symbols": list(recommendation.pattern.symbols),
        "support": recommendation.pattern.support,
        "score": recommendation.score,
        "skeleton": recommendation.skeleton_text,
        "exemplar_ids": list(recommendation.exemplar_ids),
    }


def trace_payload(trace: PipelineTrace) -> dict:
    return {
        "raw": trace.raw,
        "deduped": trace.deduped,
        "filtered": trace.filtered,
        "sequences": trace.sequences,
        "patterns": trace.patterns,
        "recommended": trace.recommended,
        "tier": trace.tier.name,
        "warnings": list(trace.warnings),
    }


def session_payload(session: Session, recommendations: list, trace: PipelineTrace) -> dict:
    """The wire shape shared by the HTTP API and the CLI's JSON output."""
    return {
        "session_id": session.id,
        "tier": session.current_tier.name,
        "status": session.status,
        "recommendations": [
            recommendation_payload(rec, i) for i, rec in enumerate(recommendations, start=1)
        ],
        "trace": trace_payload(trace),
    }

"""Tiered snippet repository: ingestion, indexing, persistence, raw search.

The index is built single-writer and treated as immutable afterwards, so it
can be shared across concurrent readers without locking. Remote tiers are
served by SourceClient implementations; the shipped one replays fixture
files, keeping searches deterministic and offline.
"""

from __future__ import annotations

import enum
import hashlib
import json
import threading
from bisect import bisect_left, insort
from dataclasses import dataclass, field
from pathlib import Path

from .matcher import bpm_search
from .tokenizer import ApiSequence, call_sequence

DEFAULT_EXTENSIONS = frozenset({".java", ".js", ".php", ".txt", ".code"})

INDEX_FORMAT = "snap-index"
INDEX_VERSION = 1


class RepoTier(enum.IntEnum):
    """The three bridged repository tiers, in escalation order."""

    OLR = 1
    SNAR = 2
    OSSNR = 3

    @classmethod
    def from_name(cls, name: str) -> "RepoTier":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown repository tier: {name!r}") from None

    def next_tier(self) -> "RepoTier | None":
        return RepoTier(self + 1) if self is not RepoTier.OSSNR else None


class IndexFormatError(ValueError):
    """A persisted index could not be decoded; the message names the record."""


class SourceUnavailableError(RuntimeError):
    """A remote tier's backing store could not be reached."""


@dataclass
class Snippet:
    """One stored code fragment with tier provenance and its cached call sequence."""

    id: str
    tier: RepoTier
    origin: str
    raw_text: str
    sequence: ApiSequence
    meta: dict = field(default_factory=dict)


@dataclass
class IngestReport:
    ingested: int = 0
    skipped: int = 0
    skip_reasons: list = field(default_factory=list)

    def skip(self, path: str, reason: str) -> None:
        self.skipped += 1
        self.skip_reasons.append((path, reason))


def make_snippet(
    raw_text: str,
    tier: RepoTier,
    origin: str = "",
    meta: dict | None = None,
    snippet_id: str | None = None,
) -> Snippet:
    """Build a snippet with the canonical id scheme and cached lexer output."""
    if not raw_text:
        raise ValueError("raw_text must be non-empty")
    if snippet_id is None:
        digest = hashlib.sha256(raw_text.encode("utf-8")).hexdigest()[:12]
        snippet_id = f"{tier.name.lower()}-{digest}"
    return Snippet(
        id=snippet_id,
        tier=tier,
        origin=origin,
        raw_text=raw_text,
        sequence=call_sequence(raw_text),
        meta=dict(meta or {}),
    )


class CorpusIndex:
    """Snippets by id, call-symbol postings, and tier membership."""

    def __init__(self):
        self.snippets: dict = {}
        self.postings: dict = {}
        self.tier_members: dict = {t: set() for t in RepoTier}

    def __len__(self) -> int:
        return len(self.snippets)

    def __contains__(self, snippet_id: str) -> bool:
        return snippet_id in self.snippets

    def get(self, snippet_id: str) -> Snippet | None:
        return self.snippets.get(snippet_id)

    def add(self, snippet: Snippet) -> None:
        if snippet.id in self.snippets:
            raise ValueError(f"duplicate snippet id: {snippet.id}")
        self.snippets[snippet.id] = snippet
        self.tier_members[snippet.tier].add(snippet.id)
        for symbol in set(snippet.sequence):
            ids = self.postings.setdefault(symbol, [])
            pos = bisect_left(ids, snippet.id)
            if pos == len(ids) or ids[pos] != snippet.id:
                insort(ids, snippet.id)

    def iter_tier(self, tier: RepoTier):
        """Snippets of one tier in ascending id order."""
        for snippet_id in sorted(self.tier_members[tier]):
            yield self.snippets[snippet_id]

    def snippets_calling(self, symbol: str) -> list:
        """Snippets whose cached sequence contains the canonical symbol."""
        return [self.snippets[i] for i in self.postings.get(symbol, [])]


def ingest_directory(
    index: CorpusIndex,
    path: str,
    tier: RepoTier,
    extensions: frozenset = DEFAULT_EXTENSIONS,
) -> IngestReport:
    """Ingest every accepted file under `path` (recursively) into `index`.

    A file is accepted when its extension is in the allow-list and it decodes
    as UTF-8 text; everything else is counted skipped with a reason. Only an
    unreadable root aborts.
    """
    root = Path(path)
    if not root.is_dir():
        raise FileNotFoundError(f"not a readable directory: {path}")
    report = IngestReport()
    for file in sorted(p for p in root.rglob("*") if p.is_file()):
        name = str(file)
        if file.suffix.lower() not in extensions:
            report.skip(name, "extension not allowed")
            continue
        try:
            raw = file.read_bytes()
        except OSError as exc:
            report.skip(name, f"unreadable: {exc}")
            continue
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            report.skip(name, "not UTF-8 text")
            continue
        if not text.strip():
            report.skip(name, "empty file")
            continue
        snippet = make_snippet(text, tier, origin=name)
        if snippet.id in index:
            report.skip(name, f"duplicate content of {snippet.id}")
            continue
        index.add(snippet)
        report.ingested += 1
    return report


def search_raw(index: CorpusIndex, pattern: str, tiers, k: int) -> list:
    """Snippets in the given tiers with an approximate occurrence of `pattern`
    within edit distance `k`, ordered by (tier, id)."""
    if not pattern:
        raise ValueError("pattern must be non-empty")
    if k < 0:
        raise ValueError("k must be >= 0")
    out = []
    for tier in sorted(tiers):
        for snippet in index.iter_tier(tier):
            if bpm_search(pattern, snippet.raw_text, k):
                out.append(snippet)
    return out


class SourceClient:
    """A remote-tier source. Implementations must be concurrency safe."""

    tier: RepoTier

    def fetch(self, pattern: str) -> list:
        raise NotImplementedError


class FixtureClient(SourceClient):
    """Fixture-backed remote tier: a JSON object mapping query pattern to an
    array of snippet objects. Loaded once, then served from memory."""

    def __init__(self, tier: RepoTier, path: str):
        if tier is RepoTier.OLR:
            raise ValueError("fixture clients serve remote tiers only")
        self.tier = tier
        self.path = path
        self._lock = threading.Lock()
        self._mapping: dict | None = None

    def _load(self) -> dict:
        with self._lock:
            if self._mapping is None:
                try:
                    with open(self.path, encoding="utf-8") as fh:
                        data = json.load(fh)
                except (OSError, json.JSONDecodeError) as exc:
                    raise SourceUnavailableError(
                        f"{self.tier.name} fixture {self.path}: {exc}"
                    ) from exc
                mapping = {}
                for pattern, records in data.items():
                    mapping[pattern] = [
                        make_snippet(
                            rec["raw_text"],
                            self.tier,
                            origin=rec.get("origin", f"fixture:{pattern}"),
                            meta=rec.get("meta"),
                            snippet_id=rec.get("id"),
                        )
                        for rec in records
                    ]
                self._mapping = mapping
            return self._mapping

    def fetch(self, pattern: str) -> list:
        return list(self._load().get(pattern, ()))


def fetch_remote(client: SourceClient, pattern: str, on_warning=None) -> list:
    """Snippets from a remote tier; an unreachable store degrades to an empty
    result, reported through `on_warning` so the search never aborts."""
    try:
        return client.fetch(pattern)
    except SourceUnavailableError as exc:
        if on_warning is not None:
            on_warning(f"{client.tier.name} unavailable: {exc}")
        return []


def write_fixture(path: str, mapping: dict) -> None:
    """Write a remote-tier fixture file: pattern -> list of snippet records
    ({"raw_text", "origin"?, "meta"?, "id"?})."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(mapping, fh, indent=2)


def _snippet_record(snippet: Snippet) -> dict:
    return {
        "id": snippet.id,
        "tier": snippet.tier.name,
        "origin": snippet.origin,
        "raw_text": snippet.raw_text,
        "meta": snippet.meta,
    }


def _snippet_from_record(record: dict, where: str) -> Snippet:
    try:
        tier = RepoTier.from_name(record["tier"])
        return make_snippet(
            record["raw_text"],
            tier,
            origin=record.get("origin", ""),
            meta=record.get("meta"),
            snippet_id=record["id"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise IndexFormatError(f"{where}: bad snippet record ({exc})") from exc


def save_corpus_file(path: str, snippets) -> None:
    """JSON-Lines corpus: one snippet object per line, no header."""
    with open(path, "w", encoding="utf-8") as fh:
        for snippet in snippets:
            fh.write(json.dumps(_snippet_record(snippet)) + "\n")


def load_corpus_file(path: str) -> list:
    snippets = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IndexFormatError(f"record {lineno}: invalid JSON ({exc})") from exc
            snippets.append(_snippet_from_record(record, f"record {lineno}"))
    return snippets


def save_index(index: CorpusIndex, path: str) -> None:
    """Persist as JSON-Lines: a header record, then one record per snippet."""
    header = {"format": INDEX_FORMAT, "version": INDEX_VERSION, "count": len(index)}
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header) + "\n")
        for snippet_id in sorted(index.snippets):
            fh.write(json.dumps(_snippet_record(index.snippets[snippet_id])) + "\n")


def load_index(path: str) -> CorpusIndex:
    """Inverse of save_index; a corrupt or mismatched file raises
    IndexFormatError naming the offending record."""
    index = CorpusIndex()
    with open(path, encoding="utf-8") as fh:
        try:
            header_line = next(fh)
        except StopIteration:
            raise IndexFormatError("record 1: missing header") from None
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            raise IndexFormatError(f"record 1: invalid JSON ({exc})") from exc
        if not isinstance(header, dict) or header.get("format") != INDEX_FORMAT:
            raise IndexFormatError("record 1: not a snap-index header")
        if header.get("version") != INDEX_VERSION:
            raise IndexFormatError(
                f"record 1: unsupported version {header.get('version')!r}"
            )
        expected = header.get("count")
        count = 0
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IndexFormatError(f"record {lineno}: invalid JSON ({exc})") from exc
            snippet = _snippet_from_record(record, f"record {lineno}")
            try:
                index.add(snippet)
            except ValueError as exc:
                raise IndexFormatError(f"record {lineno}: {exc}") from exc
            count += 1
    if expected is not None and count != expected:
        raise IndexFormatError(
            f"record {count + 1}: truncated index (header count {expected}, found {count})"
        )
    return index

"""snap: API usage pattern recommendation over a tiered snippet corpus.

Query a local snippet index (plus fixture-backed remote tiers) for code that
approximately matches a pattern and its surrounding context, mine the
survivors' API-call sequences for frequent patterns, and return ranked,
editable code skeletons. Rejected recommendations escalate the search one
repository tier at a time.
"""

from .corpus import (
    CorpusIndex,
    FixtureClient,
    IndexFormatError,
    IngestReport,
    RepoTier,
    Snippet,
    SourceClient,
    SourceUnavailableError,
    fetch_remote,
    ingest_directory,
    load_corpus_file,
    load_index,
    make_snippet,
    save_corpus_file,
    save_index,
    search_raw,
    write_fixture,
)
from .filtering import ContextQuery, FilteredSnippet, context_filter, dedupe, normalize_body
from .matcher import (
    HitList,
    MatchHit,
    PatternMasks,
    bpm_search,
    build_masks,
    dp_occurrence_search,
    edit_distance,
)
from .miner import (
    FrequentPattern,
    SequenceDB,
    brute_force_patterns,
    default_min_support,
    is_subsequence,
    prefixspan,
    project,
    rank,
)
from .recommender import (
    EvalRow,
    PipelineTrace,
    Recommendation,
    Session,
    SessionStateError,
    apply_feedback,
    baseline_count,
    evaluate,
    new_session,
    render_eval_csv,
    render_eval_table,
    run_pipeline,
    run_with_escalation,
    session_payload,
    synthesize_skeleton,
)
from .tokenizer import (
    ApiCallToken,
    ApiSequence,
    call_sequence,
    canonical,
    lex_snippet,
    lex_snippet_with_warnings,
)

__version__ = "0.1.0"

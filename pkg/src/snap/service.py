"""HTTP JSON API over the recommendation pipeline.

Sessions live in memory; operations on one session are serialized by a
per-session lock while distinct sessions proceed concurrently. The corpus
index is shared read-only. Remote-tier snippets fetched during escalation
are cached so exemplar lookups keep resolving after the run.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .corpus import CorpusIndex, SourceClient
from .filtering import ContextQuery
from .recommender import (
    DEFAULT_TOP_K,
    Session,
    SessionStateError,
    apply_feedback,
    new_session,
    run_pipeline,
    session_payload,
)

DEFAULT_ADDR = "127.0.0.1:7077"
ADDR_ENV_VAR = "SNAP_ADDR"


class QueryBody(BaseModel):
    pattern: str = ""
    pre: str | None = None
    post: str | None = None
    k_pattern: int | None = None
    k_context: int | None = None
    window: int | None = None
    min_support: int | None = None
    top_k: int | None = None


class FeedbackBody(BaseModel):
    verdict: str = ""


class _CachingClient(SourceClient):
    """Wraps a remote client, recording every fetched snippet in a shared cache."""

    def __init__(self, inner: SourceClient, cache: dict):
        self.inner = inner
        self.tier = inner.tier
        self._cache = cache

    def fetch(self, pattern: str) -> list:
        snippets = self.inner.fetch(pattern)
        for snippet in snippets:
            self._cache[snippet.id] = snippet
        return snippets


@dataclass
class _SessionRuntime:
    session: Session
    top_k: int
    min_support: int | None
    payload: dict
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """session_id -> runtime state, plus the remote-snippet cache."""

    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict = {}
        self.snippet_cache: dict = {}

    def put(self, runtime: _SessionRuntime) -> None:
        with self._lock:
            self._sessions[runtime.session.id] = runtime

    def get(self, session_id: str) -> _SessionRuntime | None:
        with self._lock:
            return self._sessions.get(session_id)


def query_from_body(body: QueryBody) -> ContextQuery:
    kwargs = {"pattern": body.pattern}
    for name in ("pre", "post", "k_pattern", "k_context", "window"):
        value = getattr(body, name)
        if value is not None:
            kwargs[name] = value
    return ContextQuery(**kwargs).validate()


def create_app(
    index: CorpusIndex,
    clients: dict | None = None,
    ui_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="snap", docs_url=None, redoc_url=None)
    store = SessionStore()
    remote = {
        tier: _CachingClient(client, store.snippet_cache)
        for tier, client in (clients or {}).items()
    }
    app.state.store = store

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/sessions", status_code=201)
    def create_session(body: QueryBody):
        try:
            query = query_from_body(body)
            top_k = body.top_k if body.top_k is not None else DEFAULT_TOP_K
            if top_k < 1:
                raise ValueError("top_k must be >= 1")
            if body.min_support is not None and body.min_support < 1:
                raise ValueError("min_support must be >= 1")
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        session = new_session(query)
        recommendations, trace = run_pipeline(
            index, remote, query, session, top_k, body.min_support
        )
        runtime = _SessionRuntime(
            session=session,
            top_k=top_k,
            min_support=body.min_support,
            payload=session_payload(session, recommendations, trace),
        )
        store.put(runtime)
        return runtime.payload

    @app.post("/api/sessions/{session_id}/feedback")
    def post_feedback(session_id: str, body: FeedbackBody):
        runtime = store.get(session_id)
        if runtime is None:
            raise HTTPException(status_code=404, detail="unknown session")
        if body.verdict not in ("accept", "reject"):
            raise HTTPException(status_code=400, detail="verdict must be accept or reject")
        with runtime.lock:
            session = runtime.session
            try:
                apply_feedback(session, body.verdict)
            except SessionStateError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            if body.verdict == "reject" and not session.exhausted:
                recommendations, trace = run_pipeline(
                    index, remote, session.query, session, runtime.top_k, runtime.min_support
                )
                runtime.payload = session_payload(session, recommendations, trace)
            else:
                runtime.payload = {
                    **runtime.payload,
                    "tier": session.current_tier.name,
                    "status": session.status,
                }
            return runtime.payload

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        runtime = store.get(session_id)
        if runtime is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return runtime.payload

    @app.get("/api/snippets/{snippet_id}")
    def get_snippet(snippet_id: str):
        snippet = index.get(snippet_id) or store.snippet_cache.get(snippet_id)
        if snippet is None:
            raise HTTPException(status_code=404, detail="unknown snippet")
        return {
            "id": snippet.id,
            "tier": snippet.tier.name,
            "raw_text": snippet.raw_text,
            "meta": snippet.meta,
        }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app

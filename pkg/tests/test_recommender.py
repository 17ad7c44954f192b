import json
import random

import pytest

from snap.corpus import CorpusIndex, FixtureClient, RepoTier, make_snippet, write_fixture
from snap.filtering import ContextQuery
from snap.fixtures import (
    EVAL_QUERY_STRINGS,
    MENU_CONTEXT_SNIPPET,
    synthetic_index,
    trio_index,
)
from snap.miner import FrequentPattern
from snap.recommender import (
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

from helpers import (
    brace_balanced,
    build_corpus,
    random_context_query,
    skeleton_contains_pattern,
)

APPEND = "manager.appendToGroup/2"


def fresh_run(index, pattern="appendToGroup", min_support=None, **kwargs):
    q = ContextQuery(pattern=pattern, **kwargs)
    session = new_session(q)
    recs, trace = run_pipeline(index, None, q, session, min_support=min_support)
    return recs, trace, session


class TestRunPipeline:
    def test_trio_fixture(self):
        recs, trace, _ = fresh_run(trio_index(), min_support=3)
        assert len(recs) == 1
        rec = recs[0]
        assert APPEND in rec.pattern.symbols
        assert rec.pattern.support == 3
        assert len(rec.exemplar_ids) == 3
        assert rec.score == 1.0
        assert (trace.raw, trace.deduped, trace.filtered, trace.sequences) == (3, 3, 3, 3)
        assert trace.recommended == 1

    def test_empty_corpus(self):
        recs, trace, _ = fresh_run(CorpusIndex())
        assert recs == []
        assert (trace.raw, trace.deduped, trace.filtered, trace.patterns, trace.recommended) == (
            0,
            0,
            0,
            0,
            0,
        )

    def test_trace_recorded_on_session(self):
        _, trace, session = fresh_run(trio_index())
        assert session.trace_history == [trace]

    def test_exhausted_session_rejected(self):
        q = ContextQuery(pattern="x")
        session = new_session(q)
        session.current_tier = RepoTier.OSSNR
        session.exhausted = True
        with pytest.raises(SessionStateError):
            run_pipeline(CorpusIndex(), None, q, session)

    def test_top_k_validated(self):
        q = ContextQuery(pattern="x")
        with pytest.raises(ValueError):
            run_pipeline(CorpusIndex(), None, q, new_session(q), top_k=0)

    def test_deterministic_output(self):
        index = synthetic_index()
        a = fresh_run(index, pattern="setContent")[0]
        b = fresh_run(index, pattern="setContent")[0]
        payload_a = json.dumps([r.skeleton_text for r in a] + [list(r.exemplar_ids) for r in a])
        payload_b = json.dumps([r.skeleton_text for r in b] + [list(r.exemplar_ids) for r in b])
        assert payload_a == payload_b

    def test_remote_tiers_added_when_advanced(self, tmp_path):
        index = CorpusIndex()
        index.add(make_snippet("local.probe(a);\nlocal.handle(b);", RepoTier.OLR, origin="l1"))
        index.add(make_snippet("local.probe(c);\nlocal.handle(d);", RepoTier.OLR, origin="l2"))
        fixture = tmp_path / "snar.json"
        write_fixture(
            str(fixture),
            {
                "probe": [
                    {"raw_text": "remote.probe(x);\nremote.sync();"},
                    {"raw_text": "remote.probe(y);\nremote.sync();"},
                ]
            },
        )
        clients = {RepoTier.SNAR: FixtureClient(RepoTier.SNAR, str(fixture))}
        q = ContextQuery(pattern="probe")
        session = new_session(q)
        _, olr_trace = run_pipeline(index, clients, q, session)
        assert olr_trace.raw == 2  # remote tier not yet active
        apply_feedback(session, "reject")
        _, snar_trace = run_pipeline(index, clients, q, session)
        assert snar_trace.tier is RepoTier.SNAR
        assert snar_trace.raw == 4  # escalation only ever adds candidates

    def test_unreachable_remote_warns_but_continues(self, tmp_path):
        index = trio_index()
        clients = {RepoTier.SNAR: FixtureClient(RepoTier.SNAR, str(tmp_path / "missing.json"))}
        q = ContextQuery(pattern="appendToGroup")
        session = new_session(q)
        session.current_tier = RepoTier.SNAR
        recs, trace = run_pipeline(index, clients, q, session, min_support=3)
        assert len(recs) == 1
        assert any("SNAR unavailable" in w for w in trace.warnings)

    def test_invariants_on_random_pairs(self):
        rng = random.Random(41)
        for _ in range(25):
            index = build_corpus(rng, rng.randint(0, 30))
            q = random_context_query(rng)
            session = new_session(q)
            recs, trace = run_pipeline(index, None, q, session, top_k=rng.randint(1, 8))
            assert trace.raw >= trace.deduped >= trace.filtered == trace.sequences
            assert trace.recommended <= min(trace.patterns, 8)
            for rec in recs:
                assert brace_balanced(rec.skeleton_text)
                assert skeleton_contains_pattern(rec.skeleton_text, rec.pattern.symbols)
                assert set(rec.exemplar_ids) == set(rec.pattern.support_ids)


class TestRunWithEscalation:
    def test_walks_to_snar_on_empty_olr(self, tmp_path):
        index = CorpusIndex()
        index.add(make_snippet("unrelated.noise();", RepoTier.OLR, origin="n"))
        fixture = tmp_path / "snar.json"
        write_fixture(
            str(fixture),
            {
                "openChannel": [
                    {"raw_text": "chan.openChannel(cfg);\nchan.bind(a);"},
                    {"raw_text": "chan.openChannel(cfg);\nchan.listen();"},
                ]
            },
        )
        clients = {RepoTier.SNAR: FixtureClient(RepoTier.SNAR, str(fixture))}
        q = ContextQuery(pattern="openChannel")
        session = new_session(q)
        recs, trace = run_with_escalation(index, clients, q, session)
        assert session.current_tier is RepoTier.SNAR
        assert trace.tier is RepoTier.SNAR
        assert len(recs) >= 1
        assert len(session.trace_history) == 2

    def test_stops_at_ossnr_when_nothing_matches(self):
        q = ContextQuery(pattern="nothing_anywhere")
        session = new_session(q)
        recs, trace = run_with_escalation(CorpusIndex(), None, q, session)
        assert recs == []
        assert session.current_tier is RepoTier.OSSNR
        assert not session.exhausted  # no explicit reject happened


class TestApplyFeedback:
    def test_reject_advances_one_tier(self):
        session = new_session(ContextQuery(pattern="x"))
        apply_feedback(session, "reject")
        assert session.current_tier is RepoTier.SNAR

    def test_reject_at_ossnr_exhausts(self):
        session = new_session(ContextQuery(pattern="x"))
        session.current_tier = RepoTier.OSSNR
        apply_feedback(session, "reject")
        assert session.exhausted
        assert session.current_tier is RepoTier.OSSNR

    def test_accept_closes_without_tier_change(self):
        for tier in RepoTier:
            session = new_session(ContextQuery(pattern="x"))
            session.current_tier = tier
            apply_feedback(session, "accept")
            assert session.closed
            assert session.current_tier is tier

    def test_reject_after_exhaustion_is_state_error(self):
        session = new_session(ContextQuery(pattern="x"))
        session.current_tier = RepoTier.OSSNR
        apply_feedback(session, "reject")
        with pytest.raises(SessionStateError):
            apply_feedback(session, "reject")

    def test_reject_on_closed_session_is_state_error(self):
        session = new_session(ContextQuery(pattern="x"))
        apply_feedback(session, "accept")
        with pytest.raises(SessionStateError):
            apply_feedback(session, "reject")

    def test_unknown_verdict_rejected(self):
        with pytest.raises(ValueError):
            apply_feedback(new_session(ContextQuery(pattern="x")), "maybe")


class TestSynthesizeSkeleton:
    def test_menu_context_skeleton(self):
        snippet = make_snippet(MENU_CONTEXT_SNIPPET, RepoTier.OLR, origin="menu")
        pattern = FrequentPattern((APPEND,), 1, frozenset({snippet.id}))
        skeleton = synthesize_skeleton(pattern, [snippet])
        assert skeleton == (
            "public class Context{\n"
            "    public void Menu(SocialMenuManager manager){\n"
            "        /* … */\n"
            "        manager.appendToGroup(GEFActionConstants.Group_VIEW,Action);}}"
        )
        assert brace_balanced(skeleton)

    def test_one_line_exemplar_verbatim(self):
        text = "m.call(a); extra.work(b);"
        snippet = make_snippet(text, RepoTier.OLR, origin="one")
        pattern = FrequentPattern(("m.call/1",), 1, frozenset({snippet.id}))
        assert synthesize_skeleton(pattern, [snippet]) == text

    def test_minimal_exemplar_chosen(self):
        small = make_snippet("x.go();\n", RepoTier.OLR, origin="small")
        big = make_snippet("x.go();\nx.stop();\nx.reset();\n", RepoTier.OLR, origin="big")
        pattern = FrequentPattern(("x.go/0",), 2, frozenset({small.id, big.id}))
        assert synthesize_skeleton(pattern, [big, small]) == synthesize_skeleton(
            pattern, [small]
        )

    def test_empty_exemplars_rejected(self):
        pattern = FrequentPattern(("x/0",), 0, frozenset())
        with pytest.raises(ValueError):
            synthesize_skeleton(pattern, [])

    def test_symbols_appear_in_order(self):
        text = (
            "void wire() {\n"
            "    a.first(x);\n"
            "    helper.noise();\n"
            "    b.second(y, z);\n"
            "}\n"
        )
        snippet = make_snippet(text, RepoTier.OLR, origin="w")
        pattern = FrequentPattern(("a.first/1", "b.second/2"), 1, frozenset({snippet.id}))
        skeleton = synthesize_skeleton(pattern, [snippet])
        assert skeleton_contains_pattern(skeleton, pattern.symbols)
        assert "helper.noise" not in skeleton
        assert brace_balanced(skeleton)


class TestBaselineCount:
    def test_trio(self):
        assert baseline_count(trio_index(), "appendToGroup") == 3

    def test_absent(self):
        assert baseline_count(trio_index(), "zzz_absent") == 0

    def test_partial_corpus(self):
        index = CorpusIndex()
        for i in range(20):
            text = f"probe{i}(); // SQL helper\n" if i < 5 else f"probe{i}();\n"
            index.add(make_snippet(text, RepoTier.OLR, origin=str(i)))
        assert baseline_count(index, "SQL") == 5

    def test_empty_pattern_rejected(self):
        with pytest.raises(ValueError):
            baseline_count(trio_index(), "")


class TestEvaluate:
    def test_bundled_queries_reduce(self):
        index = synthetic_index()
        rows = evaluate(index, None, [ContextQuery(pattern=p) for p in EVAL_QUERY_STRINGS])
        assert len(rows) == 5
        for row, pattern in zip(rows, EVAL_QUERY_STRINGS):
            assert row.query == pattern
            assert row.snap_count <= row.baseline_count

    def test_empty_corpus_single_query(self):
        rows = evaluate(CorpusIndex(), None, [ContextQuery(pattern="anything")])
        assert len(rows) == 1
        assert (rows[0].baseline_count, rows[0].snap_count) == (0, 0)

    def test_duplicate_query_duplicate_rows(self):
        index = trio_index()
        q = ContextQuery(pattern="appendToGroup")
        rows = evaluate(index, None, [q, q])
        assert rows[0] == rows[1]

    def test_requires_at_least_one_query(self):
        with pytest.raises(ValueError):
            evaluate(trio_index(), None, [])

    def test_reduction_on_random_corpora(self):
        rng = random.Random(43)
        for _ in range(10):
            index = build_corpus(rng, rng.randint(0, 30))
            queries = [random_context_query(rng) for _ in range(3)]
            for row in evaluate(index, None, queries):
                assert row.snap_count <= row.baseline_count


class TestEvalRendering:
    def test_table_layout(self):
        rows = evaluate(trio_index(), None, [ContextQuery(pattern="appendToGroup")])
        table = render_eval_table(rows)
        lines = table.splitlines()
        assert lines[0].startswith("Serial | Query")
        assert "| Baseline | SNAP" in lines[0]
        assert lines[1].startswith("01     | appendToGroup")

    def test_csv_layout_quotes_commas(self):
        rows = evaluate(
            synthetic_index(), None, [ContextQuery(pattern="GEFActionConstants.GROUP UNDO,action")]
        )
        out = render_eval_csv(rows)
        lines = out.splitlines()
        assert lines[0] == "serial,query,baseline,snap"
        assert lines[1].startswith('01,"GEFActionConstants.GROUP UNDO,action"')


class TestSessionPayload:
    def test_shape(self):
        recs, trace, session = fresh_run(trio_index(), min_support=3)
        payload = session_payload(session, recs, trace)
        assert payload["session_id"] == session.id
        assert payload["tier"] == "OLR"
        assert payload["status"] == "active"
        rec = payload["recommendations"][0]
        assert set(rec) == {"id", "symbols", "support", "score", "skeleton", "exemplar_ids"}
        assert rec["id"] == "rec-1"
        assert set(payload["trace"]) == {
            "raw",
            "deduped",
            "filtered",
            "sequences",
            "patterns",
            "recommended",
            "tier",
            "warnings",
        }
        json.dumps(payload)  # wire-serializable

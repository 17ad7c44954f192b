"""Reject-driven escalation across the three repository tiers.

The offline tier is searched first. Each reject activates the next tier, so
a query the local corpus cannot answer gets another chance against the
fixture-backed remote repositories. Rejecting at the last tier exhausts the
session.
"""

import json
import tempfile
from pathlib import Path

from snap import (
    ContextQuery,
    CorpusIndex,
    FixtureClient,
    RepoTier,
    SessionStateError,
    apply_feedback,
    make_snippet,
    new_session,
    run_pipeline,
)

index = CorpusIndex()
index.add(make_snippet("local.unrelated();", RepoTier.OLR, origin="local"))

with tempfile.TemporaryDirectory() as tmp:
    snar_path = Path(tmp) / "snar.json"
    snar_path.write_text(
        json.dumps(
            {
                "openChannel": [
                    {"raw_text": "chan.openChannel(cfg);\nchan.bind(addr);"},
                    {"raw_text": "chan.openChannel(cfg);\nchan.listen();"},
                ]
            }
        )
    )
    clients = {RepoTier.SNAR: FixtureClient(RepoTier.SNAR, str(snar_path))}

    query = ContextQuery(pattern="openChannel")
    session = new_session(query)

    recommendations, trace = run_pipeline(index, clients, query, session)
    print(f"tier {trace.tier.name}: raw {trace.raw}, recommended {trace.recommended}")

    print("reject -> next tier activates")
    apply_feedback(session, "reject")
    recommendations, trace = run_pipeline(index, clients, query, session)
    print(f"tier {trace.tier.name}: raw {trace.raw}, recommended {trace.recommended}")
    for rec in recommendations:
        print(f"  {' '.join(rec.pattern.symbols)}  support {rec.pattern.support}")

    print("reject -> last tier, reject again -> exhausted")
    apply_feedback(session, "reject")
    run_pipeline(index, clients, query, session)
    apply_feedback(session, "reject")
    print(f"session status: {session.status}")

    try:
        apply_feedback(session, "reject")
    except SessionStateError as exc:
        print(f"further reject raises: {exc}")

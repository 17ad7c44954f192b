"""The full pipeline: search -> dedupe -> context filter -> mine -> skeleton.

Three variants of the same group-wiring call live in the offline tier; a
query for `appendToGroup` mines their shared call symbol and returns one
editable skeleton whose elided statements appear as hole lines.
"""

from snap import ContextQuery, new_session, run_pipeline
from snap.fixtures import trio_index, trio_snippets

index = trio_index()
print("offline corpus:")
for snippet in trio_snippets():
    first_call = snippet.raw_text.splitlines()[2].strip()
    print(f"  {snippet.id}  {first_call}")
print()

query = ContextQuery(pattern="appendToGroup")
session = new_session(query)
recommendations, trace = run_pipeline(index, None, query, session, min_support=3)

print(
    f"trace: raw {trace.raw} -> deduped {trace.deduped} -> filtered {trace.filtered}"
    f" -> patterns {trace.patterns} -> recommended {trace.recommended}"
)
print()

for rec in recommendations:
    print(f"pattern {' '.join(rec.pattern.symbols)}  support {rec.pattern.support}"
          f"  score {rec.score:.2f}")
    print(f"exemplars: {', '.join(rec.exemplar_ids)}")
    print("skeleton (ready for hand editing):")
    for line in rec.skeleton_text.splitlines():
        print(f"  | {line}")

"""Effectiveness methodology: naive substring counts vs recommended snippets.

The baseline column counts snippets containing the query verbatim (what a
plain search engine would return). The SNAP column counts the distinct
snippets actually recommended after dedup, context filtering, and mining.
The comparison runs on the bundled 200-snippet synthetic corpus, so the
absolute numbers are reproducible.
"""

from snap import ContextQuery, evaluate, render_eval_csv, render_eval_table
from snap.fixtures import EVAL_QUERY_STRINGS, synthetic_index

index = synthetic_index()
print(f"synthetic corpus: {len(index)} snippets\n")

queries = [ContextQuery(pattern=q) for q in EVAL_QUERY_STRINGS]
rows = evaluate(index, None, queries)

print(render_eval_table(rows))
print()
print("csv variant:")
print(render_eval_csv(rows), end="")

assert all(r.snap_count <= r.baseline_count for r in rows)
print("\nevery query satisfies snap <= baseline")

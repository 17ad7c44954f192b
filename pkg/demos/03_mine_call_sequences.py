"""Frequent sequential patterns over call sequences with PrefixSpan.

A pattern is any ordered (gaps allowed) list of call symbols; its support is
the number of snippets embedding it. PrefixSpan grows patterns by one symbol
and recurses on the projected database: the suffixes after that symbol's
first occurrence.
"""

from snap import SequenceDB, brute_force_patterns, prefixspan, project

db = SequenceDB.from_items(
    [
        ("s1", ("open", "configure", "send", "close")),
        ("s2", ("open", "send", "close")),
        ("s3", ("open", "configure", "log")),
        ("s4", ("boot", "send", "close")),
    ]
)

print("sequence database:")
for sid, seq in db:
    print(f"  {sid}: {' '.join(seq)}")
print()

print("projection on 'open' (suffixes after its first occurrence):")
for sid, seq in project(db, "open"):
    print(f"  {sid}: {' '.join(seq) if seq else '(empty)'}")
print()

patterns = prefixspan(db, min_support=2)
print("patterns with support >= 2, ranked by (support, length, symbols):")
for p in patterns:
    print(f"  support {p.support}  {' '.join(p.symbols):30s}  ids={sorted(p.support_ids)}")
print()

oracle = brute_force_patterns(db, min_support=2, max_len=4)
assert {(p.symbols, p.support) for p in patterns} == {(p.symbols, p.support) for p in oracle}
print("brute-force enumeration agrees with PrefixSpan, support sets included")

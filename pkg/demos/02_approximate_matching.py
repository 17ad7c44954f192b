"""Approximate occurrence search: the bit-parallel scorer and its DP oracle.

Both routes report, for each text position, the minimal edit distance of the
pattern against some window ending there. The bit-parallel route does one
batch of word operations per text character; the plain table is the oracle.
"""

import random
import time

from snap import bpm_search, dp_occurrence_search, edit_distance

pattern = "GROUP_VIEW"
text = "manager.appendToGroup(GEFActionConstants.GROUP VIEW,action);"

print(f"pattern: {pattern!r}")
print(f"text:    {text!r}")
print(f"global edit distance GROUP_VIEW vs GROUP VIEW: "
      f"{edit_distance('GROUP_VIEW', 'GROUP VIEW')}")
print()

for k in (0, 1, 2):
    hits = bpm_search(pattern, text, k)
    print(f"k={k}: {[(h.end_pos, h.distance) for h in hits]}")
print()

# The two routes agree exactly, hit for hit.
rng = random.Random(0)
checked = 0
for _ in range(2000):
    p = "".join(rng.choice("abcd") for _ in range(rng.randint(1, 32)))
    t = "".join(rng.choice("abcd") for _ in range(rng.randint(0, 128)))
    k = rng.randint(0, 3)
    assert list(bpm_search(p, t, k)) == list(dp_occurrence_search(p, t, k))
    checked += 1
print(f"bit-parallel route == DP oracle on {checked} random cases")

# Throughput comparison on one long scan.
p = "needle_pattern"
t = ("haystack " * 5000) + "needle pattern" + (" haystack" * 5000)
start = time.perf_counter()
bpm_hits = bpm_search(p, t, 2)
bpm_s = time.perf_counter() - start
start = time.perf_counter()
dp_hits = dp_occurrence_search(p, t, 2)
dp_s = time.perf_counter() - start
assert list(bpm_hits) == list(dp_hits)
print(f"one {len(t)}-char scan: bit-parallel {bpm_s * 1000:.1f}ms, DP table {dp_s * 1000:.1f}ms")

# Patterns wider than the machine word transparently use the DP route.
wide = bpm_search("a" * 70, "a" * 90, 1)
print(f"70-char pattern: fallback={wide.fallback}, hits={len(wide)}")

"""Generators and checkers shared across the suite."""

from __future__ import annotations

import random

from snap.corpus import CorpusIndex, RepoTier, make_snippet
from snap.filtering import ContextQuery
from snap.miner import is_subsequence
from snap.tokenizer import call_sequence, iter_code_chars

CALL_POOL = (
    "feed.open(url);",
    "feed.read(buffer);",
    "feed.close();",
    "parser.parse(doc);",
    "log.write(msg);",
    "cache.put(key, value);",
    "cache.get(key);",
    "ui.render(view);",
)

QUERY_PATTERNS = (
    "feed.open",
    "parser.parse(doc)",
    "cache",
    "render(view)",
    "close();",
    "log.write",
)


def snippet_text(rng: random.Random, tag: str) -> str:
    lines = [f"public class Gen{tag} {{", "    void run() {"]
    for _ in range(rng.randint(1, 5)):
        lines.append("        " + rng.choice(CALL_POOL))
    lines += ["    }", "}"]
    return "\n".join(lines) + "\n"


def build_corpus(rng: random.Random, size: int, tier: RepoTier = RepoTier.OLR) -> CorpusIndex:
    index = CorpusIndex()
    for i in range(size):
        snippet = make_snippet(snippet_text(rng, str(i)), tier, origin=f"gen:{i}")
        if snippet.id not in index:
            index.add(snippet)
    return index


def random_context_query(rng: random.Random) -> ContextQuery:
    kwargs = {
        "pattern": rng.choice(QUERY_PATTERNS),
        "k_pattern": rng.randint(0, 2),
        "k_context": rng.randint(0, 2),
        "window": rng.randint(40, 160),
    }
    if rng.random() < 0.3:
        kwargs["pre"] = rng.choice(("void run", "class Gen", "{"))
    if rng.random() < 0.3:
        kwargs["post"] = rng.choice(("}", ");", "    }"))
    return ContextQuery(**kwargs)


def brace_balanced(text: str) -> bool:
    """Braces outside strings and comments close in order and end level."""
    depth = 0
    for _, ch in iter_code_chars(text):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                return False
    return depth == 0


def skeleton_contains_pattern(skeleton: str, symbols) -> bool:
    """The skeleton's own lexed call sequence embeds the pattern in order."""
    return is_subsequence(symbols, call_sequence(skeleton))

"""Bundled deterministic corpora used by the demos and the test suite."""

from __future__ import annotations

import random

from .corpus import CorpusIndex, RepoTier, Snippet, make_snippet

# A menu-wiring fragment in the shape this tool targets: a context class that
# registers actions and appends one to a toolbar group.
MENU_CONTEXT_SNIPPET = """\
public class Context{
    public void Menu(SocialMenuManager manager){
        GEFActionConstants.addStandardActionGroups(manager);

        IAction action;
        action = actionRegistry.getAction(ShowMethodSignatureAction.TEXT);

        if(action.isEnabled())

        manager.appendToGroup(GEFActionConstants.Group_VIEW,Action);}}"""

_TRIO_VARIANTS = (
    ("rest", "GROUP_REST"),
    ("undo", "GROUP_UNDO"),
    ("view", "GROUP_VIEW"),
)

# Query strings exercised by the bundled effectiveness demo; all five occur
# verbatim in synthetic_corpus snippets.
EVAL_QUERY_STRINGS = (
    "GEFActionConstants.GROUP UNDO,action",
    "GEFActionConstants.GROUP VIEW,action",
    "HTTP Response.setContent",
    "HTTP Web Request.getResponse",
    "SQL Connection open",
)


def trio_snippets() -> list:
    """Three group-wiring variants that differ only in the group constant
    (and their wrapper), sharing exactly one call symbol."""
    snippets = []
    for name, group in _TRIO_VARIANTS:
        text = (
            "public class Context{\n"
            f"    public void {name}Menu(SocialMenuManager manager){{\n"
            f"        manager.appendToGroup(GEFActionConstants.{group},action);}}}}\n"
        )
        snippets.append(make_snippet(text, RepoTier.OLR, origin=f"trio:{name}"))
    return snippets


def trio_index() -> CorpusIndex:
    index = CorpusIndex()
    for snippet in trio_snippets():
        index.add(snippet)
    return index


_THEMES = (
    {
        "name": "UndoMenu",
        "marker_line": "        manager.appendToGroup(GEFActionConstants.GROUP UNDO,action);",
        "plain_line": "        manager.appendToGroup(GEFActionConstants.GROUP_UNDO, action);",
        "pool": (
            "        GEFActionConstants.addStandardActionGroups(manager);",
            "        action = actionRegistry.getAction(UndoAction.ID);",
            "        manager.add(action);",
            "        toolbar.refresh();",
        ),
    },
    {
        "name": "ViewMenu",
        "marker_line": "        manager.appendToGroup(GEFActionConstants.GROUP VIEW,action);",
        "plain_line": "        manager.appendToGroup(GEFActionConstants.GROUP_VIEW, action);",
        "pool": (
            "        GEFActionConstants.addStandardActionGroups(manager);",
            "        action = actionRegistry.getAction(ViewAction.ID);",
            "        panel.show(action);",
            "        toolbar.refresh();",
        ),
    },
    {
        "name": "FeedResponse",
        "marker_line": "        /* HTTP Response.setContent */",
        "plain_line": "        // plain response write",
        "pool": (
            "        response.setStatus(200);",
            "        response.setContent(body);",
            "        response.addHeader(name, value);",
            "        stream.flush();",
        ),
    },
    {
        "name": "FeedRequest",
        "marker_line": "        /* HTTP Web Request.getResponse */",
        "plain_line": "        // plain request round trip",
        "pool": (
            "        request.setTimeout(limit);",
            "        reply = request.getResponse();",
            "        parser.parse(reply);",
            "        cache.store(reply);",
        ),
    },
    {
        "name": "ProfileStore",
        "marker_line": "        /* SQL Connection open */",
        "plain_line": "        // pooled connection reuse",
        "pool": (
            "        connection.open();",
            "        statement = connection.prepare(query);",
            "        statement.bind(index, value);",
            "        connection.close();",
        ),
    },
)

_FILLER_CALLS = (
    "        logger.info(message);",
    "        widgets.add(widget);",
    "        settings.put(key, value);",
    "        session.touch();",
    "        timeline.render(posts);",
    "        notifier.send(event);",
)


def _wrap_class(name: str, body_lines: list) -> str:
    body = "\n".join(body_lines)
    return (
        f"public class {name}{{\n"
        f"    public void run(AppContext ctx){{\n"
        f"{body}\n"
        "    }\n"
        "}\n"
    )


def synthetic_corpus(seed: int = 7, per_theme: int = 28, filler: int = 60) -> list:
    """A reproducible local corpus (~200 snippets) spanning five API themes
    plus unrelated filler; most theme snippets embed the theme's query string
    verbatim, the rest carry a near-variant. Every fifth theme snippet is a
    comment-only copy of its predecessor, so per-query dedup has real work."""
    rng = random.Random(seed)
    snippets = []
    for theme in _THEMES:
        previous = None
        for i in range(per_theme):
            if i % 5 == 4 and previous is not None:
                text = previous + "// shared verbatim across example feeds\n"
            else:
                lines = list(rng.sample(theme["pool"], rng.randint(2, 3)))
                head = theme["marker_line"] if i % 4 != 3 else theme["plain_line"]
                lines.insert(rng.randrange(len(lines) + 1), head)
                if theme["marker_line"].lstrip().startswith("/*"):
                    # comment markers need a real call next to them
                    lines.append(theme["pool"][1])
                text = _wrap_class(f"{theme['name']}{i:02d}", lines)
                previous = text
            snippets.append(
                make_snippet(text, RepoTier.OLR, origin=f"synthetic:{theme['name']}{i:02d}")
            )
    for i in range(filler):
        lines = rng.sample(_FILLER_CALLS, rng.randint(2, 4))
        text = _wrap_class(f"Filler{i:02d}", lines)
        snippets.append(make_snippet(text, RepoTier.OLR, origin=f"synthetic:Filler{i:02d}"))
    return snippets


def synthetic_index(seed: int = 7) -> CorpusIndex:
    index = CorpusIndex()
    for snippet in synthetic_corpus(seed=seed):
        index.add(snippet)
    return index

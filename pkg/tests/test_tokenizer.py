import random

from snap.fixtures import MENU_CONTEXT_SNIPPET
from snap.tokenizer import (
    ApiCallToken,
    call_sequence,
    canonical,
    lex_snippet,
    lex_snippet_with_warnings,
    strip_comments,
)


class TestLexSnippet:
    def test_single_dotted_call(self):
        tokens = lex_snippet("manager.appendToGroup(GEFActionConstants.GROUP_VIEW, action);")
        assert len(tokens) == 1
        tok = tokens[0]
        assert tok.receiver == "manager"
        assert tok.method == "appendToGroup"
        assert tok.arity == 2
        assert tok.arg_texts == ("GEFActionConstants.GROUP_VIEW", "action")

    def test_empty_text(self):
        assert lex_snippet("") == []

    def test_menu_context_class_body(self):
        # declaration `Menu(...)` is excluded by the bare-identifier rule,
        # `if(` by the keyword rule; four real call sites remain
        assert call_sequence(MENU_CONTEXT_SNIPPET) == (
            "GEFActionConstants.addStandardActionGroups/1",
            "actionRegistry.getAction/1",
            "action.isEnabled/0",
            "manager.appendToGroup/2",
        )

    def test_declarations_and_constructors_excluded(self):
        text = "void Menu(SocialMenuManager manager){ new Foo(x); String s = make(); }"
        assert call_sequence(text) == ("make/0",)

    def test_bare_call_at_start_is_kept(self):
        assert call_sequence("open();") == ("open/0",)

    def test_nested_calls_ordered_by_own_offsets(self):
        tokens = lex_snippet("a(b(c), d.e())")
        assert [t.method for t in tokens] == ["a", "b", "e"]
        offsets = [t.offset for t in tokens]
        assert offsets == sorted(offsets)

    def test_chained_calls(self):
        assert call_sequence("foo().bar()") == ("foo/0", "bar/0")

    def test_arity_counts_top_level_arguments_only(self):
        tokens = lex_snippet('f(g(a, b), "x,y", h[i, j]);')
        f = next(t for t in tokens if t.method == "f")
        assert f.arity == 3
        assert f.arg_texts[1] == '"x,y"'

    def test_zero_arity_with_comment_inside(self):
        assert lex_snippet("go(/* nothing */)")[0].arity == 0

    def test_strings_and_comments_are_opaque(self):
        text = 'x.f(1); // y.g(2)\n/* z.h(3) */ "w.i(4)" done.j();'
        assert call_sequence(text) == ("x.f/1", "done.j/0")

    def test_unbalanced_parentheses_recoverable(self):
        tokens, warnings = lex_snippet_with_warnings("outer(inner(x)")
        assert [t.method for t in tokens] == ["inner"]
        assert any("unclosed call" in w for w in warnings)

    def test_unterminated_string_warns(self):
        tokens, warnings = lex_snippet_with_warnings('say("oops);')
        assert any("unterminated string" in w for w in warnings)
        assert tokens == []  # the close paren is swallowed by the open string

    def test_determinism(self):
        text = MENU_CONTEXT_SNIPPET
        assert lex_snippet(text) == lex_snippet(text)

    def test_offsets_strictly_increase(self):
        rng = random.Random(5)
        pool = ("a.b(x);", "c(d(e));", "log.out(m, n);", "// c.note(1)\n", "go();")
        for _ in range(50):
            text = "".join(rng.choice(pool) for _ in range(rng.randint(0, 8)))
            offsets = [t.offset for t in lex_snippet(text)]
            assert all(a < b for a, b in zip(offsets, offsets[1:]))

    def test_call_text_in_comment_changes_nothing(self):
        base = "a.b(x);\nc.d(y);\n"
        spiked = "a.b(x);\n/* sneaky.call(1, 2) */\nc.d(y);\n"
        assert call_sequence(base) == call_sequence(spiked)
        spiked_line = 'a.b(x);\n// also.sneaky(3)\nc.d(y);\n'
        assert call_sequence(base) == call_sequence(spiked_line)
        spiked_string = 'a.b(x);\nString s = "inside.string(4)";\nc.d(y);\n'
        assert call_sequence(base) == call_sequence(spiked_string)

    def test_concatenation_stability(self):
        # fragments end in ';' or '}' so the boundary cannot change the
        # bare-call classification of what follows
        rng = random.Random(6)
        pool = ("a.b(x);", "open();", "if (x.ok()) { y.go(); }", "cache.put(k, v);")
        for _ in range(40):
            a = " ".join(rng.choice(pool) for _ in range(rng.randint(0, 3)))
            b = " ".join(rng.choice(pool) for _ in range(rng.randint(0, 3)))
            merged = call_sequence(a + "\n" + b)
            assert merged == call_sequence(a) + call_sequence(b)


class TestCanonical:
    def test_receiver_tail_with_arity(self):
        tok = ApiCallToken(method="appendToGroup", arity=2, offset=0, receiver="manager")
        assert canonical(tok) == "manager.appendToGroup/2"

    def test_no_receiver(self):
        assert canonical(ApiCallToken(method="open", arity=0, offset=0)) == "open/0"

    def test_multi_segment_receiver_keeps_tail(self):
        tok = ApiCallToken(method="c", arity=1, offset=0, receiver="a.b")
        assert canonical(tok) == "b.c/1"

    def test_fixture_call(self):
        tok = ApiCallToken(
            method="addStandardActionGroups", arity=1, offset=0, receiver="GEFActionConstants"
        )
        assert canonical(tok) == "GEFActionConstants.addStandardActionGroups/1"

    def test_distinct_triples_distinct_symbols(self):
        seen = set()
        for receiver, method, arity in (
            (None, "f", 0),
            (None, "f", 1),
            ("a", "f", 1),
            ("b", "f", 1),
        ):
            tok = ApiCallToken(method=method, arity=arity, offset=0, receiver=receiver)
            symbol = canonical(tok)
            assert symbol not in seen
            seen.add(symbol)


class TestStripComments:
    def test_line_and_block_comments_removed(self):
        assert strip_comments("a /* x */ b // y\nc") == "a  b \nc"

    def test_strings_survive(self):
        assert strip_comments('s = "// not a comment";') == 's = "// not a comment";'

"""Lexing snippets into API-call tokens.

The lexer has no grammar: it works on fragments, skips strings and comments,
and normalizes each call site to `receiver-tail.method/arity` so that
argument variants collapse onto one mining symbol.
"""

from snap import call_sequence, canonical, lex_snippet
from snap.fixtures import MENU_CONTEXT_SNIPPET

print("input snippet:")
print(MENU_CONTEXT_SNIPPET)
print()

tokens = lex_snippet(MENU_CONTEXT_SNIPPET)
print("recognized call sites (declarations and keywords are excluded):")
for tok in tokens:
    print(f"  offset {tok.offset:3d}  {canonical(tok):45s}  args={list(tok.arg_texts)}")
print()

# The three argument variants below become the SAME symbol: mining must not
# fragment on argument identity.
variants = [
    "manager.appendToGroup(GEFActionConstants.GROUP_REST,action);",
    "manager.appendToGroup(GEFActionConstants.GROUP_UNDO,action);",
    "manager.appendToGroup(GEFActionConstants.GROUP_VIEW,action);",
]
print("argument variants collapse to one symbol:")
for text in variants:
    print(f"  {text}  ->  {call_sequence(text)}")
print()

print("call-shaped text inside comments or strings is invisible:")
spiked = 'm.real(1); // m.fake(2)\n/* m.fake(3) */ s = "m.fake(4)";'
print(f"  {spiked!r}")
print(f"  -> {call_sequence(spiked)}")

"""Lex raw snippet text into an ordered sequence of normalized API-call tokens.

The lexer is offset based and grammar free: it recognizes call sites of the
shape `identifier(.identifier)* (` on arbitrary fragments, skipping string
literals and // and /* */ comments. It never aborts; malformed input yields
the recoverable prefix of tokens plus warnings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Shadow classes assigned to every character before token scanning.
_CODE, _STRING, _COMMENT = 0, 1, 2

# Enough to lex Java-like fragments; excludes declarations (`void Menu(`),
# constructor calls (`new Foo(`) and control keywords used call-like (`if(`).
DEFAULT_KEYWORDS = frozenset(
    {"public", "private", "static", "void", "new", "return", "if", "while", "for", "class"}
)

_IDENT_START = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$")
_IDENT_CHARS = _IDENT_START | frozenset("0123456789")


@dataclass(frozen=True)
class ApiCallToken:
    """One recognized call site.

    ``offset`` is the index of the opening parenthesis; ``start``/``end`` span
    the whole site from the first receiver character through the closing
    parenthesis (used for skeleton synthesis; `end` is exclusive).
    """

    method: str
    arity: int
    offset: int
    receiver: str | None = None
    arg_texts: tuple = ()
    start: int = 0
    end: int = 0


# A snippet's mining alphabet: the canonical symbols of its calls, in order.
ApiSequence = tuple


def canonical(token: ApiCallToken) -> str:
    """Total, deterministic symbol: last receiver segment + method + arity."""
    if token.receiver:
        return f"{token.receiver.rsplit('.', 1)[-1]}.{token.method}/{token.arity}"
    return f"{token.method}/{token.arity}"


def lex_snippet(text: str, keywords: frozenset = DEFAULT_KEYWORDS) -> list:
    """Tokens of every recognized call site, ordered by opening-paren offset."""
    return lex_snippet_with_warnings(text, keywords)[0]


def call_sequence(text: str, keywords: frozenset = DEFAULT_KEYWORDS) -> ApiSequence:
    """The snippet's canonical call symbols, in source order."""
    return tuple(canonical(t) for t in lex_snippet(text, keywords))


def strip_comments(text: str) -> str:
    """Text with // and /* */ comments removed; string literals kept."""
    cls, _ = _classify(text)
    return "".join(c for c, k in zip(text, cls) if k != _COMMENT)


def iter_code_chars(text: str):
    """(offset, char) pairs for characters outside strings and comments."""
    cls, _ = _classify(text)
    for i, ch in enumerate(text):
        if cls[i] == _CODE:
            yield i, ch


def lex_snippet_with_warnings(
    text: str, keywords: frozenset = DEFAULT_KEYWORDS
) -> tuple:
    """(tokens, warnings): like `lex_snippet` but reporting recoverable issues."""
    cls, warnings = _classify(text)
    tokens = []
    for pos, ch in enumerate(text):
        if ch != "(" or cls[pos] != _CODE:
            continue
        head = _scan_chain(text, cls, pos)
        if head is None:
            continue
        segments, chain_start = head
        method = segments[-1]
        receiver = ".".join(segments[:-1]) if len(segments) > 1 else None
        if receiver is None:
            if method in keywords:
                continue
            prev = _prev_token_char(text, cls, chain_start)
            if prev >= 0 and cls[prev] == _CODE and text[prev] in _IDENT_CHARS:
                run_start = _ident_run_start(text, cls, prev)
                if text[run_start] in _IDENT_START:
                    continue  # declaration-like: preceded by identifier/keyword
        parsed = _scan_args(text, cls, pos)
        if parsed is None:
            warnings.append(f"unclosed call {method!r} at offset {pos}")
            continue
        arg_texts, close = parsed
        tokens.append(
            ApiCallToken(
                method=method,
                arity=len(arg_texts),
                offset=pos,
                receiver=receiver,
                arg_texts=tuple(arg_texts),
                start=chain_start,
                end=close + 1,
            )
        )
    return tokens, warnings


def _classify(text: str):
    """Shadow class per character plus recoverable warnings."""
    n = len(text)
    cls = bytearray(n)
    warnings = []
    i = 0
    while i < n:
        c = text[i]
        if c == "/" and i + 1 < n and text[i + 1] == "/":
            j = text.find("\n", i)
            j = n if j < 0 else j
            cls[i:j] = b"\x02" * (j - i)
            i = j
        elif c == "/" and i + 1 < n and text[i + 1] == "*":
            j = text.find("*/", i + 2)
            if j < 0:
                warnings.append(f"unterminated block comment at offset {i}")
                j = n
            else:
                j += 2
            cls[i:j] = b"\x02" * (j - i)
            i = j
        elif c in "\"'":
            j = i + 1
            while j < n and text[j] not in (c, "\n"):
                j += 2 if text[j] == "\\" else 1
            if j >= n or text[j] == "\n":
                warnings.append(f"unterminated string literal at offset {i}")
                j = min(j, n)
            else:
                j += 1
            cls[i:j] = b"\x01" * (j - i)
            i = max(j, i + 1)
        else:
            i += 1
    return cls, warnings


def _prev_token_char(text: str, cls: bytearray, pos: int) -> int:
    """Index of the last char of the preceding token (comments and whitespace
    are not tokens), or -1."""
    p = pos - 1
    while p >= 0 and (cls[p] == _COMMENT or (cls[p] == _CODE and text[p].isspace())):
        p -= 1
    return p


def _ident_run_start(text: str, cls: bytearray, pos: int) -> int:
    p = pos
    while p > 0 and cls[p - 1] == _CODE and text[p - 1] in _IDENT_CHARS:
        p -= 1
    return p


def _scan_chain(text: str, cls: bytearray, paren: int):
    """Dotted identifier chain ending just before the paren, or None.

    Returns (segments, start_offset); whitespace and comments may separate
    chain parts from each other and from the parenthesis.
    """
    p = _prev_token_char(text, cls, paren)
    if p < 0 or cls[p] != _CODE or text[p] not in _IDENT_CHARS:
        return None
    segments = []
    while True:
        start = _ident_run_start(text, cls, p)
        name = text[start : p + 1]
        if name[0] not in _IDENT_START:
            return None if not segments else (segments, chain_start)  # number, not a name
        segments.insert(0, name)
        chain_start = start
        p = _prev_token_char(text, cls, start)
        if p < 0 or cls[p] != _CODE or text[p] != ".":
            return segments, chain_start
        p = _prev_token_char(text, cls, p)
        if p < 0 or cls[p] != _CODE or text[p] not in _IDENT_CHARS:
            # dangling dot (e.g. `foo().bar(`): keep the chain collected so far
            return segments, chain_start


def _scan_args(text: str, cls: bytearray, paren: int):
    """Top-level argument texts and the closing paren offset, or None if the
    call never closes."""
    n = len(text)
    depth = 0
    args = []
    seg_start = paren + 1
    j = paren
    while j < n:
        if cls[j] != _CODE:
            j += 1
            continue
        c = text[j]
        if c in "([{":
            depth += 1
        elif c in ")]}":
            depth -= 1
            if depth == 0:
                if c != ")":
                    return None  # mismatched bracket closes the call head
                args.append(text[seg_start:j])
                if len(args) == 1 and _is_blank(text, cls, paren + 1, j):
                    args = []
                return [a.strip() for a in args], j
            if depth < 0:
                return None
        elif c == "," and depth == 1:
            args.append(text[seg_start:j])
            seg_start = j + 1
        j += 1
    return None


def _is_blank(text: str, cls: bytearray, lo: int, hi: int) -> bool:
    return all(cls[p] != _CODE or text[p].isspace() for p in range(lo, hi))

"""Tokenizer for query files.

Tokens are delimited by whitespace and the punctuation ``( ) [ ] ,``.
``;`` starts a comment running to end of line.  Everything else forms an
atom, classified as a keyword, a numeric literal, an angle-bracket version
literal or an identifier.  Node-output references are double-quoted
strings (no escapes).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .syntax import Span

KEYWORDS = frozenset(
    {
        "vnnlib-version",
        "declare-network",
        "declare-input",
        "declare-hidden",
        "declare-output",
        "equal-to",
        "isomorphic-to",
        "assert",
        "and",
        "or",
        "<",
        "<=",
        ">",
        ">=",
        "==",
        "!=",
        "+",
        "-",
        "*",
    }
)

NUMBER_RE = re.compile(r"-?[0-9]+(\.[0-9]+)?")
VERSION_RE = re.compile(r"<[0-9]+\.[0-9]+>")
# Interior hyphens are allowed in names (e.g. `f-copy`); keywords are
# reserved and claim their spelling first.
IDENT_RE = re.compile(r"[A-Za-z][-_A-Za-z0-9]*")

_DELIMS = frozenset("()[],;\"") | frozenset(" \t\r\n\f\v")
_PUNCT = {"(": "LPAREN", ")": "RPAREN", "[": "LBRACKET", "]": "RBRACKET", ",": "COMMA"}


class TokenKind(enum.Enum):
    LPAREN = "("
    RPAREN = ")"
    LBRACKET = "["
    RBRACKET = "]"
    COMMA = ","
    KEYWORD = "keyword"
    IDENT = "identifier"
    NUMBER = "number"
    VERSION = "version"
    STRING = "string"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: Span

    def describe(self) -> str:
        if self.kind is TokenKind.EOF:
            return "end of input"
        if self.kind is TokenKind.KEYWORD or self.text == self.kind.value:
            return f"`{self.text}`"
        return f"{self.kind.value} `{self.text}`"


def line_col(source: str, offset: int) -> tuple[int, int]:
    """1-based line and column of a character offset."""
    line = source.count("\n", 0, offset) + 1
    bol = source.rfind("\n", 0, offset) + 1
    return line, offset - bol + 1


class SourceError(Exception):
    """Base for lexing/parsing failures; carries a position in the source."""

    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(message)

    def render(self, source: str) -> str:
        line, col = line_col(source, min(self.position, len(source)))
        return f"{line}:{col}: {self.message}"


class LexError(SourceError):
    def __init__(self, position: int, char: str):
        self.char = char
        super().__init__(position, f"unexpected character {char!r}")


def _classify_atom(text: str, start: int) -> Token:
    span = Span(start, start + len(text))
    if text in KEYWORDS:
        return Token(TokenKind.KEYWORD, text, span)
    if NUMBER_RE.fullmatch(text):
        return Token(TokenKind.NUMBER, text, span)
    if VERSION_RE.fullmatch(text):
        return Token(TokenKind.VERSION, text, span)
    if IDENT_RE.fullmatch(text):
        return Token(TokenKind.IDENT, text, span)
    # Report the first character that no token pattern can extend over.
    longest = 0
    for pattern in (NUMBER_RE, VERSION_RE, IDENT_RE):
        m = pattern.match(text)
        if m:
            longest = max(longest, m.end())
    for kw in KEYWORDS:
        if text.startswith(kw):
            longest = max(longest, len(kw))
    raise LexError(start + longest, text[longest])


def lex(source: str) -> list[Token]:
    """Tokenize `source`, ending with an EOF token."""
    tokens: list[Token] = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch in " \t\r\n\f\v":
            i += 1
            continue
        if ch == ";":
            nl = source.find("\n", i)
            i = n if nl < 0 else nl + 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(TokenKind[_PUNCT[ch]], ch, Span(i, i + 1)))
            i += 1
            continue
        if ch == '"':
            end = i + 1
            while end < n and source[end] not in '"\n':
                end += 1
            if end >= n or source[end] != '"':
                raise LexError(i, '"')
            tokens.append(Token(TokenKind.STRING, source[i + 1 : end], Span(i, end + 1)))
            i = end + 1
            continue
        start = i
        while i < n and source[i] not in _DELIMS:
            i += 1
        tokens.append(_classify_atom(source[start:i], start))
    tokens.append(Token(TokenKind.EOF, "", Span(n, n)))
    return tokens

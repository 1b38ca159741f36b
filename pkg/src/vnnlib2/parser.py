"""Recursive-descent parser producing the AST in `syntax`.

The first error aborts parsing (no recovery mode).  Arity violations on
the n-ary forms raise ArityError, a ParseError subclass, so callers that
only care about "syntactically bad" can catch the base class.
"""

from __future__ import annotations

import re

from .lexer import SourceError, Token, TokenKind, lex
from .syntax import (
    And,
    Assertion,
    Cmp,
    CmpOp,
    Const,
    Equiv,
    EquivKind,
    HiddenDecl,
    IoDecl,
    NaryAdd,
    NaryMul,
    NarySub,
    Neg,
    NetworkDecl,
    Or,
    Query,
    Span,
    Var,
)

_BARE_VERSION_RE = re.compile(r"[0-9]+\.[0-9]+")
_CMP_OPS = {op.value: op for op in CmpOp}


class ParseError(SourceError):
    def __init__(self, position: int, expected: tuple[str, ...], found: Token):
        self.expected = expected
        self.found = found
        super().__init__(
            position, f"expected {' or '.join(expected)}, found {found.describe()}"
        )


class ArityError(ParseError):
    def __init__(self, position: int, form: str, minimum: int, got: int):
        self.position = position
        self.message = f"`{form}` takes at least {minimum} operand(s), found {got}"
        Exception.__init__(self, self.message)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def expect(self, kind: TokenKind, expected: str) -> Token:
        tok = self.peek()
        if tok.kind is not kind:
            raise ParseError(tok.span.start, (expected,), tok)
        return self.advance()

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind is not TokenKind.KEYWORD or tok.text != word:
            raise ParseError(tok.span.start, (f"`{word}`",), tok)
        return self.advance()

    def at_form(self, *keywords: str) -> bool:
        """True when the next tokens open a form headed by one of `keywords`."""
        head = self.peek(1)
        return (
            self.peek().kind is TokenKind.LPAREN
            and head.kind is TokenKind.KEYWORD
            and head.text in keywords
        )

    # -- query ----------------------------------------------------------

    def query(self) -> Query:
        start = self.peek().span.start
        version = self.version()
        networks = [self.network()]
        while self.at_form("declare-network"):
            networks.append(self.network())
        asserts = []
        while self.at_form("assert"):
            asserts.append(self.assertion())
        end_tok = self.peek()
        if end_tok.kind is not TokenKind.EOF:
            if self.at_form("declare-network"):
                raise ParseError(
                    end_tok.span.start,
                    ("an assertion or end of input (network declarations "
                     "must precede all assertions)",),
                    end_tok,
                )
            raise ParseError(end_tok.span.start, ("an assertion or end of input",), end_tok)
        return Query(
            version=version,
            networks=tuple(networks),
            asserts=tuple(asserts),
            span=Span(start, end_tok.span.end),
        )

    def version(self) -> tuple[int, int]:
        self.expect(TokenKind.LPAREN, "`(`")
        self.expect_keyword("vnnlib-version")
        tok = self.peek()
        if tok.kind is TokenKind.VERSION:
            text = tok.text[1:-1]
        elif tok.kind is TokenKind.NUMBER and _BARE_VERSION_RE.fullmatch(tok.text):
            text = tok.text
        else:
            raise ParseError(tok.span.start, ("a version literal like `<2.0>`",), tok)
        self.advance()
        self.expect(TokenKind.RPAREN, "`)`")
        major, minor = text.split(".")
        return int(major), int(minor)

    # -- declarations ---------------------------------------------------

    def network(self) -> NetworkDecl:
        start = self.expect(TokenKind.LPAREN, "`(`").span.start
        self.expect_keyword("declare-network")
        name = self.expect(TokenKind.IDENT, "a network name").text
        equiv = None
        if self.at_form("equal-to", "isomorphic-to"):
            equiv = self.equiv()
        inputs = [self.io_decl("declare-input")]
        while self.at_form("declare-input"):
            inputs.append(self.io_decl("declare-input"))
        hidden = []
        while self.at_form("declare-hidden"):
            hidden.append(self.hidden_decl())
        outputs = [self.io_decl("declare-output")]
        while self.at_form("declare-output"):
            outputs.append(self.io_decl("declare-output"))
        end = self.expect(TokenKind.RPAREN, "`)`").span.end
        return NetworkDecl(
            name=name,
            equiv=equiv,
            inputs=tuple(inputs),
            hidden=tuple(hidden),
            outputs=tuple(outputs),
            span=Span(start, end),
        )

    def equiv(self) -> Equiv:
        start = self.advance().span.start  # `(`
        kind_tok = self.advance()
        kind = EquivKind(kind_tok.text)
        target = self.expect(TokenKind.IDENT, "a network name").text
        end = self.expect(TokenKind.RPAREN, "`)`").span.end
        return Equiv(kind=kind, target=target, span=Span(start, end))

    def io_decl(self, form: str) -> IoDecl:
        start = self.peek().span.start
        if not self.at_form(form):
            raise ParseError(start, (f"`({form} ...)`",), self.peek())
        self.advance()
        self.advance()
        name = self.expect(TokenKind.IDENT, "a variable name").text
        element_type = self.expect(TokenKind.IDENT, "an element type").text
        shape = self.shape()
        end = self.expect(TokenKind.RPAREN, "`)`").span.end
        return IoDecl(name, element_type, shape, Span(start, end))

    def hidden_decl(self) -> HiddenDecl:
        start = self.advance().span.start  # `(`
        self.advance()  # declare-hidden
        name = self.expect(TokenKind.IDENT, "a variable name").text
        element_type = self.expect(TokenKind.IDENT, "an element type").text
        shape = self.shape()
        ref_tok = self.expect(TokenKind.STRING, "a quoted node-output reference")
        if not ref_tok.text:
            raise ParseError(
                ref_tok.span.start, ("a non-empty node-output reference",), ref_tok
            )
        end = self.expect(TokenKind.RPAREN, "`)`").span.end
        return HiddenDecl(name, element_type, shape, ref_tok.text, Span(start, end))

    def shape(self) -> tuple[int, ...]:
        self.expect(TokenKind.LBRACKET, "`[`")
        dims = self.natural_list()
        self.expect(TokenKind.RBRACKET, "`]`")
        return dims

    def natural_list(self) -> tuple[int, ...]:
        if self.peek().kind is TokenKind.RBRACKET:
            return ()
        values = [self.natural()]
        while self.peek().kind is TokenKind.COMMA:
            self.advance()
            values.append(self.natural())
        return tuple(values)

    def natural(self) -> int:
        tok = self.peek()
        if tok.kind is not TokenKind.NUMBER or not tok.text.isdigit():
            raise ParseError(tok.span.start, ("a natural number",), tok)
        self.advance()
        return int(tok.text)

    # -- assertions -----------------------------------------------------

    def assertion(self) -> Assertion:
        start = self.advance().span.start  # `(`
        self.advance()  # assert
        expr = self.bool_expr()
        end = self.expect(TokenKind.RPAREN, "`)`").span.end
        return Assertion(expr=expr, span=Span(start, end))

    def bool_expr(self):
        open_tok = self.expect(TokenKind.LPAREN, "a boolean expression")
        head = self.peek()
        if head.kind is not TokenKind.KEYWORD:
            raise ParseError(
                head.span.start, ("`and`", "`or`", "a comparison operator"), head
            )
        if head.text in ("and", "or"):
            self.advance()
            items = []
            while self.peek().kind is not TokenKind.RPAREN:
                items.append(self.bool_expr())
            end = self.advance().span.end  # `)`
            if len(items) < 2:
                raise ArityError(open_tok.span.start, head.text, 2, len(items))
            node = And if head.text == "and" else Or
            return node(items=tuple(items), span=Span(open_tok.span.start, end))
        if head.text in _CMP_OPS:
            self.advance()
            lhs = self.arith_expr()
            rhs = self.arith_expr()
            end = self.expect(TokenKind.RPAREN, "`)`").span.end
            return Cmp(
                op=_CMP_OPS[head.text],
                lhs=lhs,
                rhs=rhs,
                span=Span(open_tok.span.start, end),
            )
        raise ParseError(
            head.span.start, ("`and`", "`or`", "a comparison operator"), head
        )

    def arith_expr(self):
        tok = self.peek()
        if tok.kind is TokenKind.NUMBER:
            self.advance()
            return Const(text=tok.text, span=tok.span)
        if tok.kind is TokenKind.IDENT:
            self.advance()
            indices = None
            end = tok.span.end
            if self.peek().kind is TokenKind.LBRACKET:
                self.advance()
                indices = self.natural_list()
                end = self.expect(TokenKind.RBRACKET, "`]`").span.end
            return Var(name=tok.text, indices=indices, span=Span(tok.span.start, end))
        if tok.kind is TokenKind.LPAREN:
            open_tok = self.advance()
            head = self.peek()
            if head.kind is not TokenKind.KEYWORD or head.text not in ("+", "-", "*"):
                raise ParseError(head.span.start, ("`+`", "`-`", "`*`"), head)
            self.advance()
            items = []
            while self.peek().kind is not TokenKind.RPAREN:
                items.append(self.arith_expr())
            end = self.advance().span.end  # `)`
            span = Span(open_tok.span.start, end)
            if head.text == "-":
                if len(items) == 1:
                    return Neg(operand=items[0], span=span)
                if len(items) >= 2:
                    return NarySub(items=tuple(items), span=span)
                raise ArityError(open_tok.span.start, "-", 1, 0)
            if len(items) < 2:
                raise ArityError(open_tok.span.start, head.text, 2, len(items))
            node = NaryAdd if head.text == "+" else NaryMul
            return node(items=tuple(items), span=span)
        raise ParseError(
            tok.span.start,
            ("a numeric literal", "a variable", "`(`"),
            tok,
        )


def parse_query(source: str) -> Query:
    """Parse a complete query; raises LexError/ParseError on bad input."""
    return _Parser(lex(source)).query()

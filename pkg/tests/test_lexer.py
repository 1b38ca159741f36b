import pytest

from vnnlib2.lexer import LexError, TokenKind, lex, line_col


def kinds(source):
    return [t.kind for t in lex(source)][:-1]


def texts(source):
    return [t.text for t in lex(source)][:-1]


def test_simple_assertion_token_stream():
    tokens = lex("(assert (<= Y[0,1] 0.5))")
    assert len(tokens) - 1 == 13  # EOF excluded
    assert [t.text for t in tokens[-3:-1]] == [")", ")"]
    assert tokens[3].kind is TokenKind.KEYWORD and tokens[3].text == "<="
    assert tokens[4].kind is TokenKind.IDENT


def test_comment_only_input_is_empty():
    assert kinds("; comment\n") == []
    assert kinds("; no trailing newline") == []


def test_comments_are_discarded_between_tokens():
    assert texts("( ; midway\n )") == ["(", ")"]


def test_illegal_character_position():
    with pytest.raises(LexError) as err:
        lex("(assert (>= X[0,2] @))")
    assert err.value.char == "@"
    assert err.value.position == "(assert (>= X[0,2] @))".index("@")


def test_offending_character_inside_an_atom():
    with pytest.raises(LexError) as err:
        lex("(assert (>= X 2.0.3))")
    assert err.value.position == "(assert (>= X 2.0.3))".index(".3")


def test_version_literals():
    toks = lex("<2.0> 2.0")
    assert toks[0].kind is TokenKind.VERSION
    assert toks[1].kind is TokenKind.NUMBER


def test_numbers_and_operators():
    toks = lex("(- -0.5 3)")
    assert [t.kind for t in toks[:-1]] == [
        TokenKind.LPAREN,
        TokenKind.KEYWORD,
        TokenKind.NUMBER,
        TokenKind.NUMBER,
        TokenKind.RPAREN,
    ]
    assert toks[2].text == "-0.5"


def test_hyphenated_identifiers_and_reserved_words():
    toks = lex("f-copy equal-to")
    assert toks[0].kind is TokenKind.IDENT
    assert toks[1].kind is TokenKind.KEYWORD


def test_strings():
    toks = lex('"hidden" ""')
    assert toks[0].kind is TokenKind.STRING and toks[0].text == "hidden"
    assert toks[1].text == ""
    with pytest.raises(LexError):
        lex('"unterminated')
    with pytest.raises(LexError):
        lex('"no\nnewlines"')


def test_scientific_notation_and_leading_plus_are_rejected():
    with pytest.raises(LexError):
        lex("1e5")
    with pytest.raises(LexError):
        lex("+3")
    with pytest.raises(LexError):
        lex("1.")


def test_line_col():
    source = "ab\ncd"
    assert line_col(source, 0) == (1, 1)
    assert line_col(source, 3) == (2, 1)
    assert line_col(source, 4) == (2, 2)

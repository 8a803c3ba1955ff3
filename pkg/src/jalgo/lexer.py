"""Tokenizer for jAlgo source text."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CompileError, CompileFailure

KEYWORDS = frozenset((
    "function", "begin", "end", "if", "then", "else", "while", "do",
    "return", "and", "or", "not", "true", "false", "nil", "mod",
))

# Two-character symbols are tried before their one-character prefixes
# (maximal munch).
_TWO_CHAR = {"<=": "LE", ">=": "GE", "<>": "NE"}
_ONE_CHAR = {
    "=": "EQ", "<": "LT", ">": "GT",
    "+": "PLUS", "-": "MINUS", "*": "STAR", "/": "SLASH",
    "(": "LPAREN", ")": "RPAREN", ",": "COMMA",
}

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.column})"


def _is_ident_start(ch: str) -> bool:
    return "a" <= ch <= "z" or "A" <= ch <= "Z"


def _is_ident_part(ch: str) -> bool:
    return _is_ident_start(ch) or "0" <= ch <= "9" or ch == "_"


def tokenize(source: str) -> list[Token]:
    """Scan source text into a token list ending with an EOF token.

    Scanning continues past bad input so every lexical error is found;
    raises CompileFailure listing all of them.  `#` starts a comment that
    runs to end of line.  CRLF line breaks are normalized to LF before
    positions are counted; a tab occupies one column.
    """
    text = source.replace("\r\n", "\n")
    tokens: list[Token] = []
    errors: list[CompileError] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
        elif ch in " \t\r":
            i, col = i + 1, col + 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif _is_ident_start(ch):
            start = i
            while i < n and _is_ident_part(text[i]):
                i += 1
            word = text[start:i]
            kind = "KEYWORD" if word in KEYWORDS else "IDENT"
            tokens.append(Token(kind, word, line, col))
            col += i - start
        elif "0" <= ch <= "9":
            start = i
            while i < n and "0" <= text[i] <= "9":
                i += 1
            digits = text[start:i]
            if int(digits) > INT64_MAX:
                errors.append(CompileError(
                    "lexical", line, col,
                    "integer literal out of 64-bit range", "E-LEX-3"))
            tokens.append(Token("INT", digits, line, col))
            col += i - start
        elif ch == ":":
            if text[i:i + 2] == ":=":
                tokens.append(Token("ASSIGN", ":=", line, col))
                i, col = i + 2, col + 2
            else:
                errors.append(CompileError(
                    "lexical", line, col, "expected '=' after ':'", "E-LEX-2"))
                i, col = i + 1, col + 1
        elif text[i:i + 2] in _TWO_CHAR:
            pair = text[i:i + 2]
            tokens.append(Token(_TWO_CHAR[pair], pair, line, col))
            i, col = i + 2, col + 2
        elif ch in _ONE_CHAR:
            tokens.append(Token(_ONE_CHAR[ch], ch, line, col))
            i, col = i + 1, col + 1
        else:
            errors.append(CompileError(
                "lexical", line, col, f"unknown character {ch!r}", "E-LEX-1"))
            i, col = i + 1, col + 1
    tokens.append(Token("EOF", "", line, col))
    if errors:
        raise CompileFailure(errors)
    return tokens

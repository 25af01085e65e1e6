"""Tokenizer for BWW-ML source text."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..diagnostics import Diagnostic, Severity, SourceSpan
from ..errors import LexError

KEYWORDS = frozenset({
    "model", "property", "mutual", "binding", "nonbinding", "thing", "possesses",
    "parts", "states", "of", "schema", "class", "characteristic", "kind",
    "properties", "precedes", "history", "process",
})

PUNCTUATION = ("->", "{", "}", "(", ")", ";", ",", "=", "&", ":", "@", "<", ">")


class TokenKind(str, enum.Enum):
    KEYWORD = "keyword"
    IDENT = "identifier"
    NATURAL = "natural"
    PUNCT = "punctuation"
    EOF = "eof"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: SourceSpan = field(compare=False)

    @property
    def value(self) -> int:
        assert self.kind is TokenKind.NATURAL
        return int(self.lexeme)

    def __repr__(self):
        return f"{self.kind.value}({self.lexeme})"


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<nat>[0-9]+)
  | (?P<punct>->|[{}();,=&:@<>])
    """,
    re.VERBOSE,
)


def tokenize(source: str, filename: str = "<input>") -> list[Token]:
    """Split ``source`` into tokens, ending with a single EOF token.

    Raises :class:`LexError` at the first character no token can start with.
    """
    tokens: list[Token] = []
    pos = 0
    line, line_start = 1, 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            ch = source[pos]
            span = SourceSpan(filename, line, col, line, col)
            raise LexError(
                Diagnostic("L1", Severity.ERROR, f"unexpected character {ch!r}", span=span),
                ch,
            )
        kind = m.lastgroup
        text = m.group()
        end = m.end()
        if kind == "nl":
            line += 1
            line_start = end
        elif kind in ("ident", "nat", "punct"):
            span = SourceSpan(filename, line, col, line, col + len(text) - 1)
            if kind == "ident":
                tk = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENT
            elif kind == "nat":
                tk = TokenKind.NATURAL
            else:
                tk = TokenKind.PUNCT
            tokens.append(Token(tk, text, span))
        pos = end
    col = pos - line_start + 1
    tokens.append(Token(TokenKind.EOF, "", SourceSpan(filename, line, col, line, col)))
    return tokens


def detokenize(tokens: Iterable[Token]) -> str:
    """Render tokens back to source text, one space between tokens."""
    return " ".join(t.lexeme for t in tokens if t.kind is not TokenKind.EOF)


def same_tokens(a: Sequence[Token], b: Sequence[Token]) -> bool:
    return [(t.kind, t.lexeme) for t in a] == [(t.kind, t.lexeme) for t in b]

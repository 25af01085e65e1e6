"""Recursive-descent parser for BWW-ML.

Grammar (one model per file)::

    model      := "model" IDENT "{" decl* "}"
    property   := "property" IDENT ("=" IDENT ("&" IDENT)+)? ";"
    mutualProp := "mutual" "property" IDENT "(" identList ")" ("binding" | "nonbinding") ";"
    thing      := "thing" IDENT ("possesses" identList)? ("parts" identList)? ";"
    states     := "states" "of" IDENT ":" identList ";"
    schema     := "schema" IDENT "of" IDENT "(" identList ")" ";"
    klass      := "class" IDENT "characteristic" IDENT ("=" "{" identList? "}")? ";"
    kind       := "kind" IDENT "properties" identList ("=" "{" identList? "}")? ";"
    precedes   := "precedes" IDENT "->" IDENT ";"
    history    := "history" IDENT "{" (IDENT "@" NAT ";")+ "}"
    process    := "process" IDENT "of" IDENT "=" pair ("," pair)* ";"
    pair       := "<" IDENT "," IDENT ">"

A syntax error inside a declaration is reported and the parser skips to the
next ``;`` or ``}`` at the declaration's nesting level, so one run reports
every broken declaration.
"""
from __future__ import annotations

from typing import Optional, Sequence

from ..diagnostics import Diagnostic, Severity, SourceSpan
from ..errors import ParseError
from . import ast
from .lexer import Token, TokenKind

DECL_KEYWORDS = ("property", "mutual", "thing", "states", "schema", "class",
                 "kind", "precedes", "history", "process")


class _Fail(Exception):
    pass


def _describe(tok: Token) -> str:
    if tok.kind is TokenKind.EOF:
        return "end of input"
    if tok.kind is TokenKind.PUNCT:
        return f"'{tok.lexeme}'"
    return f"{tok.kind.value} '{tok.lexeme}'"


class Parser:
    def __init__(self, tokens: Sequence[Token]):
        if not tokens or tokens[-1].kind is not TokenKind.EOF:
            raise ValueError("token list must end with EOF")
        self.tokens = list(tokens)
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []
        self.first_expected: tuple[str, ...] = ()
        self.first_found: Optional[str] = None

    # -- token helpers --

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def check(self, lexeme: str) -> bool:
        tok = self.peek()
        return tok.kind in (TokenKind.PUNCT, TokenKind.KEYWORD) and tok.lexeme == lexeme

    def fail(self, *expected: str):
        tok = self.peek()
        if not self.diagnostics:
            self.first_expected = expected
            self.first_found = _describe(tok)
        want = " or ".join(expected)
        self.diagnostics.append(Diagnostic(
            "P1", Severity.ERROR, f"expected {want}, found {_describe(tok)}", span=tok.span))
        raise _Fail()

    def expect(self, lexeme: str) -> Token:
        if self.check(lexeme):
            return self.advance()
        self.fail(f"'{lexeme}'")

    def ident(self) -> ast.Name:
        tok = self.peek()
        if tok.kind is TokenKind.IDENT:
            self.advance()
            return ast.Name(tok.lexeme, tok.span)
        self.fail("identifier")

    def natural(self) -> int:
        tok = self.peek()
        if tok.kind is TokenKind.NATURAL:
            self.advance()
            return tok.value
        self.fail("natural number")

    def ident_list(self) -> tuple[ast.Name, ...]:
        names = [self.ident()]
        while self.check(","):
            self.advance()
            names.append(self.ident())
        return tuple(names)

    def _span_from(self, start: Token) -> SourceSpan:
        last = self.tokens[self.pos - 1] if self.pos else start
        return start.span.to(last.span)

    # -- grammar --

    def parse_model(self) -> ast.ModelDecl:
        start = self.peek()
        try:
            self.expect("model")
            name = self.ident()
            self.expect("{")
        except _Fail:
            raise self._error() from None
        decls = []
        while not self.check("}") and self.peek().kind is not TokenKind.EOF:
            decl_start = self.pos
            try:
                decls.append(self.parse_decl())
            except _Fail:
                self._synchronize(decl_start)
        try:
            self.expect("}")
            if self.peek().kind is not TokenKind.EOF:
                self.fail("end of input")
        except _Fail:
            pass
        if self.diagnostics:
            raise self._error()
        return ast.ModelDecl(name, tuple(decls), self._span_from(start))

    def _error(self) -> ParseError:
        return ParseError(self.diagnostics, self.first_expected, self.first_found)

    def _synchronize(self, decl_start: int):
        nest = 0
        for tok in self.tokens[decl_start:self.pos]:
            if tok.lexeme == "{" and tok.kind is TokenKind.PUNCT:
                nest += 1
            elif tok.lexeme == "}" and tok.kind is TokenKind.PUNCT:
                nest -= 1
        if self.pos == decl_start and not self.check(";") and not self.check("}"):
            # never stall on the token that failed
            self.advance()
        while self.peek().kind is not TokenKind.EOF:
            if self.check("{"):
                nest += 1
            elif self.check("}"):
                if nest <= 0:
                    return
                nest -= 1
                self.advance()
                if nest == 0:
                    return
                continue
            elif self.check(";") and nest <= 0:
                self.advance()
                return
            self.advance()

    def parse_decl(self) -> ast.Decl:
        tok = self.peek()
        if tok.kind is TokenKind.KEYWORD and tok.lexeme in DECL_KEYWORDS:
            return getattr(self, f"_decl_{tok.lexeme}")()
        self.fail("declaration keyword (" + ", ".join(DECL_KEYWORDS) + ")")

    def _decl_property(self):
        start = self.expect("property")
        name = self.ident()
        conjuncts: list[ast.Name] = []
        if self.check("="):
            self.advance()
            conjuncts.append(self.ident())
            self.expect("&")
            conjuncts.append(self.ident())
            while self.check("&"):
                self.advance()
                conjuncts.append(self.ident())
        self.expect(";")
        return ast.PropertyDecl(name, tuple(conjuncts), self._span_from(start))

    def _decl_mutual(self):
        start = self.expect("mutual")
        self.expect("property")
        name = self.ident()
        self.expect("(")
        relata = self.ident_list()
        self.expect(")")
        if self.check("binding"):
            binding = True
        elif self.check("nonbinding"):
            binding = False
        else:
            self.fail("'binding'", "'nonbinding'")
        self.advance()
        self.expect(";")
        return ast.MutualPropertyDecl(name, relata, binding, self._span_from(start))

    def _decl_thing(self):
        start = self.expect("thing")
        name = self.ident()
        possesses: tuple[ast.Name, ...] = ()
        parts: tuple[ast.Name, ...] = ()
        if self.check("possesses"):
            self.advance()
            possesses = self.ident_list()
        if self.check("parts"):
            self.advance()
            parts = self.ident_list()
        self.expect(";")
        return ast.ThingDecl(name, possesses, parts, self._span_from(start))

    def _decl_states(self):
        start = self.expect("states")
        self.expect("of")
        owner = self.ident()
        self.expect(":")
        states = self.ident_list()
        self.expect(";")
        return ast.StatesDecl(owner, states, self._span_from(start))

    def _decl_schema(self):
        start = self.expect("schema")
        name = self.ident()
        self.expect("of")
        describes = self.ident()
        self.expect("(")
        attrs = self.ident_list()
        self.expect(")")
        self.expect(";")
        return ast.SchemaDecl(name, describes, attrs, self._span_from(start))

    def _extension(self) -> Optional[tuple[ast.Name, ...]]:
        if not self.check("="):
            return None
        self.advance()
        self.expect("{")
        members: tuple[ast.Name, ...] = ()
        if not self.check("}"):
            members = self.ident_list()
        self.expect("}")
        return members

    def _decl_class(self):
        start = self.expect("class")
        name = self.ident()
        self.expect("characteristic")
        prop = self.ident()
        ext = self._extension()
        self.expect(";")
        return ast.ClassDecl(name, prop, ext, self._span_from(start))

    def _decl_kind(self):
        start = self.expect("kind")
        name = self.ident()
        self.expect("properties")
        props = self.ident_list()
        ext = self._extension()
        self.expect(";")
        return ast.KindDecl(name, props, ext, self._span_from(start))

    def _decl_precedes(self):
        start = self.expect("precedes")
        before = self.ident()
        self.expect("->")
        after = self.ident()
        self.expect(";")
        return ast.PrecedesDecl(before, after, self._span_from(start))

    def _decl_history(self):
        start = self.expect("history")
        subject = self.ident()
        self.expect("{")
        observations = []
        while True:
            obs_start = self.peek()
            state = self.ident()
            self.expect("@")
            t = self.natural()
            self.expect(";")
            observations.append(ast.ObservationNode(state, t, self._span_from(obs_start)))
            if self.check("}"):
                break
        self.expect("}")
        return ast.HistoryDecl(subject, tuple(observations), self._span_from(start))

    def _pair(self) -> ast.PairNode:
        start = self.expect("<")
        a = self.ident()
        self.expect(",")
        b = self.ident()
        self.expect(">")
        return ast.PairNode(a, b, self._span_from(start))

    def _decl_process(self):
        start = self.expect("process")
        name = self.ident()
        self.expect("of")
        subject = self.ident()
        self.expect("=")
        steps = [self._pair()]
        while self.check(","):
            self.advance()
            steps.append(self._pair())
        self.expect(";")
        return ast.ProcessDecl(name, subject, tuple(steps), self._span_from(start))


def parse(tokens: Sequence[Token]) -> ast.ModelDecl:
    """Parse a token list into a :class:`~bww.syntax.ast.ModelDecl`.

    Raises :class:`ParseError` carrying every syntax diagnostic found.
    """
    return Parser(tokens).parse_model()

"""Exception hierarchy.

Model-level errors are raised by construction and query operations.
Front-end errors carry the full list of diagnostics collected before
the phase gave up, so callers can report every problem in one run.
"""
from __future__ import annotations

from typing import Optional, Sequence

from .diagnostics import Diagnostic, SourceSpan


class BwwError(Exception):
    pass


class ModelError(BwwError):
    """Raised when a model cannot be built or a query references bad input."""

    span: Optional[SourceSpan] = None


class DuplicateName(ModelError):
    def __init__(self, namespace: str, name: str, span: Optional[SourceSpan] = None):
        super().__init__(f"duplicate {namespace} name {name!r}")
        self.namespace = namespace
        self.name = name
        self.span = span


class DanglingReference(ModelError):
    def __init__(self, name: str, what: str = "element", span: Optional[SourceSpan] = None):
        super().__init__(f"reference to undeclared {what} {name!r}")
        self.name = name
        self.span = span


class IllegalNullDeclaration(ModelError):
    def __init__(self, span: Optional[SourceSpan] = None):
        super().__init__("the thing 'null' is predefined and cannot be declared")
        self.span = span


class CyclicConjunction(ModelError):
    pass


class DegenerateConjunction(ModelError):
    pass


class InvalidEvent(ModelError):
    pass


class UnknownElement(ModelError):
    kind = "element"

    def __init__(self, name):
        super().__init__(f"unknown {self.kind} {name!r}")
        self.name = name


class UnknownProperty(UnknownElement):
    kind = "property"


class UnknownThing(UnknownElement):
    kind = "thing"


class UnknownState(UnknownElement):
    kind = "state"


class UnknownClass(UnknownElement):
    kind = "class"


class UnknownKind(UnknownElement):
    kind = "kind"


class UnknownProcess(UnknownElement):
    kind = "process"


class NullAsComponent(ModelError):
    def __init__(self):
        super().__init__("the null thing cannot be a component of an association")


class SelfContainment(ModelError):
    pass


class TimeCollision(ModelError):
    def __init__(self, t: int):
        super().__init__(f"an observation already exists at time {t}")
        self.time = t


class ForeignState(ModelError):
    pass


class EmptyProcess(ModelError):
    def __init__(self):
        super().__init__("a process needs at least one event")


class FrontendError(BwwError):
    """Base for lex, parse and resolve failures."""

    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        super().__init__(first.render() if first else "front-end failure")

    @property
    def span(self) -> Optional[SourceSpan]:
        return self.diagnostics[0].span if self.diagnostics else None


class LexError(FrontendError):
    def __init__(self, diagnostic: Diagnostic, char: str):
        super().__init__([diagnostic])
        self.char = char


class ParseError(FrontendError):
    def __init__(self, diagnostics, expected=(), found=None):
        super().__init__(diagnostics)
        self.expected = tuple(expected)
        self.found = found


class ResolveError(FrontendError):
    pass

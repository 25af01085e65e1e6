"""Syntax tree for BWW-ML.

Spans are excluded from equality so that trees compare structurally (the
printer round-trip relies on this).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..diagnostics import SourceSpan


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Name:
    text: str
    span: Optional[SourceSpan] = _span()

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class PropertyDecl:
    name: Name
    conjuncts: tuple[Name, ...] = ()
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class MutualPropertyDecl:
    name: Name
    relata: tuple[Name, ...]
    binding: bool
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class ThingDecl:
    name: Name
    possesses: tuple[Name, ...] = ()
    parts: tuple[Name, ...] = ()
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class StatesDecl:
    owner: Name
    states: tuple[Name, ...]
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SchemaDecl:
    name: Name
    describes: Name
    attributes: tuple[Name, ...]
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class ClassDecl:
    name: Name
    characteristic: Name
    extension: Optional[tuple[Name, ...]] = None
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class KindDecl:
    name: Name
    properties: tuple[Name, ...]
    extension: Optional[tuple[Name, ...]] = None
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class PrecedesDecl:
    before: Name
    after: Name
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class ObservationNode:
    state: Name
    time: int
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class HistoryDecl:
    subject: Name
    observations: tuple[ObservationNode, ...]
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class PairNode:
    source: Name
    target: Name
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class ProcessDecl:
    name: Name
    subject: Name
    steps: tuple[PairNode, ...]
    span: Optional[SourceSpan] = _span()


Decl = Union[
    PropertyDecl, MutualPropertyDecl, ThingDecl, StatesDecl, SchemaDecl,
    ClassDecl, KindDecl, PrecedesDecl, HistoryDecl, ProcessDecl,
]


@dataclass(frozen=True)
class ModelDecl:
    name: Name
    decls: tuple[Decl, ...] = ()
    span: Optional[SourceSpan] = _span()

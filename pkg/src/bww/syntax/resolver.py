"""Name resolution: binds every reference in an AST to a declaration."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..diagnostics import Diagnostic, Severity, SourceSpan, sort_diagnostics
from ..errors import ResolveError
from ..kernel import NULL
from . import ast


@dataclass(frozen=True)
class ResolvedAst:
    """Declarations grouped by category, every cross-reference checked.

    States named in histories and process steps are kept as written: a state
    that is not declared for the thing in question is a validation finding
    (V11, V8), not a resolution failure.
    """

    name: str
    properties: tuple[Union[ast.PropertyDecl, ast.MutualPropertyDecl], ...] = ()
    things: tuple[ast.ThingDecl, ...] = ()
    states: tuple[ast.StatesDecl, ...] = ()
    schemas: tuple[ast.SchemaDecl, ...] = ()
    classes: tuple[ast.ClassDecl, ...] = ()
    kinds: tuple[ast.KindDecl, ...] = ()
    precedes: tuple[ast.PrecedesDecl, ...] = ()
    histories: tuple[ast.HistoryDecl, ...] = ()
    processes: tuple[ast.ProcessDecl, ...] = ()
    span: Optional[SourceSpan] = field(default=None, compare=False)


class _Resolver:
    def __init__(self):
        self.diagnostics: list[Diagnostic] = []
        self.tables: dict[str, dict[str, ast.Name]] = {
            "property": {}, "thing": {}, "schema": {}, "class": {}, "kind": {},
            "process": {}, "history": {},
        }
        self.state_tables: dict[str, dict[str, ast.Name]] = {}

    def error(self, code, message, name: ast.Name):
        self.diagnostics.append(
            Diagnostic(code, Severity.ERROR, message, subject=name.text, span=name.span))

    def declare(self, namespace: str, name: ast.Name, table=None):
        table = self.tables[namespace] if table is None else table
        if name.text == NULL:
            self.error("R3", f"'null' is reserved for the predefined null thing "
                             f"and cannot name a {namespace}", name)
            return
        if name.text in table:
            first = table[name.text].span
            where = f" (first declared at {first})" if first else ""
            self.error("R2", f"duplicate {namespace} name '{name.text}'{where}", name)
            return
        table[name.text] = name

    def use(self, namespace: str, name: ast.Name, allow_null: bool = False):
        if namespace == "thing" and name.text == NULL:
            if not allow_null:
                self.error("R3", "the null thing cannot be used here", name)
            return
        if name.text not in self.tables[namespace]:
            self.error("R1", f"unknown {namespace} '{name.text}'", name)

    def run(self, tree: ast.ModelDecl) -> ResolvedAst:
        def get(*types):
            return [d for d in tree.decls if isinstance(d, types)]

        props = get(ast.PropertyDecl, ast.MutualPropertyDecl)
        things = get(ast.ThingDecl)
        # pass 1: declarations
        for d in props:
            self.declare("property", d.name)
        for d in things:
            self.declare("thing", d.name)
        for d in get(ast.SchemaDecl):
            self.declare("schema", d.name)
        for d in get(ast.ClassDecl):
            self.declare("class", d.name)
        for d in get(ast.KindDecl):
            self.declare("kind", d.name)
        for d in get(ast.ProcessDecl):
            self.declare("process", d.name)
        for d in get(ast.StatesDecl):
            table = self.state_tables.setdefault(d.owner.text, {})
            for s in d.states:
                self.declare(f"state of {d.owner.text}", s, table)

        # pass 2: references
        for d in props:
            if isinstance(d, ast.PropertyDecl):
                for c in d.conjuncts:
                    self.use("property", c)
            else:
                for r in d.relata:
                    self.use("thing", r)
        for d in things:
            for p in d.possesses:
                self.use("property", p)
            for t in d.parts:
                self.use("thing", t, allow_null=True)
        for d in get(ast.StatesDecl):
            self.use("thing", d.owner)
        for d in get(ast.SchemaDecl):
            self.use("thing", d.describes)
            for a in d.attributes:
                self.use("property", a)
        for d in get(ast.ClassDecl):
            self.use("property", d.characteristic)
            for t in d.extension or ():
                self.use("thing", t, allow_null=True)
        for d in get(ast.KindDecl):
            for p in d.properties:
                self.use("property", p)
            for t in d.extension or ():
                self.use("thing", t, allow_null=True)
        for d in get(ast.PrecedesDecl):
            self.use("property", d.before)
            self.use("property", d.after)
        for d in get(ast.HistoryDecl):
            self.use("thing", d.subject)
            if d.subject.text != NULL:
                self.declare("history", d.subject)
        for d in get(ast.ProcessDecl):
            self.use("thing", d.subject)

        if self.diagnostics:
            raise ResolveError(sort_diagnostics(self.diagnostics))
        return ResolvedAst(
            name=tree.name.text,
            properties=tuple(props),
            things=tuple(things),
            states=tuple(get(ast.StatesDecl)),
            schemas=tuple(get(ast.SchemaDecl)),
            classes=tuple(get(ast.ClassDecl)),
            kinds=tuple(get(ast.KindDecl)),
            precedes=tuple(get(ast.PrecedesDecl)),
            histories=tuple(get(ast.HistoryDecl)),
            processes=tuple(get(ast.ProcessDecl)),
            span=tree.span,
        )


def resolve(tree: ast.ModelDecl) -> ResolvedAst:
    """Check every name in ``tree``; raises :class:`ResolveError` with all
    unknown (R1), duplicate (R2) and reserved-name (R3) diagnostics."""
    return _Resolver().run(tree)

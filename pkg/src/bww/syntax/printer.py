"""Canonical BWW-ML printer; ``parse(tokenize(print_model(m))) == m``."""
from __future__ import annotations

from . import ast


def _names(names) -> str:
    return ", ".join(n.text for n in names)


def print_decl(d: ast.Decl) -> str:
    if isinstance(d, ast.PropertyDecl):
        if d.conjuncts:
            return f"property {d.name} = " + " & ".join(c.text for c in d.conjuncts) + ";"
        return f"property {d.name};"
    if isinstance(d, ast.MutualPropertyDecl):
        flag = "binding" if d.binding else "nonbinding"
        return f"mutual property {d.name}({_names(d.relata)}) {flag};"
    if isinstance(d, ast.ThingDecl):
        out = f"thing {d.name}"
        if d.possesses:
            out += f" possesses {_names(d.possesses)}"
        if d.parts:
            out += f" parts {_names(d.parts)}"
        return out + ";"
    if isinstance(d, ast.StatesDecl):
        return f"states of {d.owner}: {_names(d.states)};"
    if isinstance(d, ast.SchemaDecl):
        return f"schema {d.name} of {d.describes}({_names(d.attributes)});"
    if isinstance(d, ast.ClassDecl):
        out = f"class {d.name} characteristic {d.characteristic}"
        if d.extension is not None:
            out += " = {" + _names(d.extension) + "}"
        return out + ";"
    if isinstance(d, ast.KindDecl):
        out = f"kind {d.name} properties {_names(d.properties)}"
        if d.extension is not None:
            out += " = {" + _names(d.extension) + "}"
        return out + ";"
    if isinstance(d, ast.PrecedesDecl):
        return f"precedes {d.before} -> {d.after};"
    if isinstance(d, ast.HistoryDecl):
        body = " ".join(f"{o.state} @ {o.time};" for o in d.observations)
        return f"history {d.subject} {{ {body} }}"
    if isinstance(d, ast.ProcessDecl):
        steps = ", ".join(f"<{p.source}, {p.target}>" for p in d.steps)
        return f"process {d.name} of {d.subject} = {steps};"
    raise TypeError(f"not a declaration: {d!r}")


def print_model(m: ast.ModelDecl) -> str:
    lines = [f"model {m.name} {{"]
    lines.extend("  " + print_decl(d) for d in m.decls)
    lines.append("}")
    return "\n".join(lines) + "\n"

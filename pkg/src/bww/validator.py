"""Rule suite over a built model.

Every rule is a function ``model -> iterable of Diagnostic``; ``validate``
runs them all and merges the findings in a fixed order (source position,
then rule code), so the result does not depend on evaluation order.

=====  ========  ==========================================================
code   severity  finding
=====  ========  ==========================================================
V1     error     thing without properties, or property without a possessor
V2     error     history times not strictly increasing as written
W1     warning   repeated consecutive history observation was collapsed
V3     error     thing has a property but not one of its preconditions
V4     error     class declared extension differs from the computed one
V5     error     kind declared extension differs from the computed one
V6     error     schema attribute's property not possessed by its thing
V7     error     part-of cycle, self part, or null used as a part
V8     error     process step state not a declared state of the subject
V9     error     adjacent process steps do not compose
V10    error     mutual property relating fewer than two things
V11    error     history observes a state not declared for the thing
I2     info      precedes declarations contain a cycle
=====  ========  ==========================================================
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator

from . import semantics as sem
from .diagnostics import Diagnostic, Severity, sort_diagnostics
from .kernel import NULL, Model, PropertyForm, StateId

Rule = Callable[[Model], Iterable[Diagnostic]]

E, W, I = Severity.ERROR, Severity.WARNING, Severity.INFO


def _names(xs) -> str:
    return "{" + ", ".join(sorted(xs)) + "}"


def _cycles(nodes: Iterable[str], succ: dict[str, set[str]]) -> list[list[str]]:
    """Groups of two or more mutually reachable nodes, each sorted."""
    reach: dict[str, set[str]] = {}
    for n in nodes:
        seen: set[str] = set()
        todo = list(succ.get(n, ()))
        while todo:
            x = todo.pop()
            if x not in seen:
                seen.add(x)
                todo.extend(succ.get(x, ()))
        reach[n] = seen
    groups = set()
    for n in reach:
        group = frozenset([n] + [m for m in reach[n] if n in reach.get(m, ())])
        if len(group) > 1:
            groups.add(group)
    return sorted(sorted(g) for g in groups)


def rule_possession_cardinality(model: Model) -> Iterator[Diagnostic]:
    for t in model.non_null_things():
        if not t.possessed:
            yield Diagnostic("V1", E, f"thing {t.name} possesses no property", t.name, t.span)
    for name in sorted(model.properties):
        prop = model.properties[name]
        if not sem.possessors(model, prop):
            yield Diagnostic("V1", E, f"property {name} is possessed by no thing",
                             name, prop.span)


def rule_build_findings(model: Model) -> Iterator[Diagnostic]:
    yield from model.build_diagnostics


def rule_precedence_respected(model: Model) -> Iterator[Diagnostic]:
    required: dict[str, list[str]] = {}
    for a, b in sem.precedes_closure(model):
        if a != b:
            required.setdefault(b, []).append(a)
    for t in model.non_null_things():
        missing: dict[str, str] = {}
        for later in sorted(required):
            if not sem.possesses(model, t, later):
                continue
            for before in required[later]:
                if before not in missing and not sem.possesses(model, t, before):
                    missing[before] = later
        for before in sorted(missing):
            yield Diagnostic(
                "V3", E,
                f"thing {t.name} possesses {missing[before]} but not its "
                f"precondition {before}",
                t.name, t.span)


def _extension_mismatch(code, what, name, declared, computed, span):
    extra = declared - computed
    missing = computed - declared
    if not extra and not missing:
        return None
    parts = []
    if missing:
        parts.append(f"{_names(missing)} qualify but are not declared members")
    if extra:
        parts.append(f"{_names(extra)} are declared but do not qualify")
    return Diagnostic(code, E, f"{what} {name}: " + "; ".join(parts), name, span)


def rule_class_extension(model: Model) -> Iterator[Diagnostic]:
    for name in sorted(model.classes):
        c = model.classes[name]
        if c.declared_extension is None:
            continue
        d = _extension_mismatch("V4", "class", name, c.declared_extension,
                                sem.extension_of_class(model, c), c.span)
        if d:
            yield d


def rule_kind_extension(model: Model) -> Iterator[Diagnostic]:
    for name in sorted(model.kinds):
        k = model.kinds[name]
        if k.declared_extension is None:
            continue
        d = _extension_mismatch("V5", "kind", name, k.declared_extension,
                                sem.extension_of_kind(model, k), k.span)
        if d:
            yield d


def rule_schema_attributes(model: Model) -> Iterator[Diagnostic]:
    for name in sorted(model.schemas):
        s = model.schemas[name]
        for a in s.attributes:
            if not sem.possesses(model, s.describes, a.represents):
                yield Diagnostic(
                    "V6", E,
                    f"schema {name}: attribute {a.name} represents {a.represents}, "
                    f"which {s.describes} does not possess",
                    name, s.span)


def rule_part_of(model: Model) -> Iterator[Diagnostic]:
    succ: dict[str, set[str]] = {}
    for t in model.non_null_things():
        succ[t.name] = set(t.parts)
        if NULL in t.parts:
            yield Diagnostic("V7", E, f"thing {t.name} lists null as a part", t.name, t.span)
        if t.name in t.parts:
            yield Diagnostic("V7", E, f"thing {t.name} is listed as a part of itself",
                             t.name, t.span)
    for group in _cycles(sorted(succ), succ):
        first = model.things[group[0]]
        yield Diagnostic("V7", E, "part-of cycle among " + _names(group),
                         first.name, first.span)


def rule_process_states(model: Model) -> Iterator[Diagnostic]:
    for name in sorted(model.processes):
        p = model.processes[name]
        spans = p.step_spans or (None,) * len(p.steps)
        for step, span in zip(p.steps, spans):
            for s in (step.from_state, step.to_state):
                if StateId(p.subject, s) not in model.states:
                    yield Diagnostic(
                        "V8", E,
                        f"process {name}: state {s} in step {step} is not a state of {p.subject}",
                        name, span or p.span)


def rule_process_composable(model: Model) -> Iterator[Diagnostic]:
    for name in sorted(model.processes):
        p = model.processes[name]
        spans = p.step_spans or (None,) * len(p.steps)
        for i in sem.broken_junctions(p.steps):
            a, b = p.steps[i], p.steps[i + 1]
            yield Diagnostic(
                "V9", E,
                f"process {name}: step {b} does not continue from {a} "
                f"({a.to_state} != {b.from_state})",
                name, spans[i + 1] or p.span)


def rule_mutual_arity(model: Model) -> Iterator[Diagnostic]:
    for name in sorted(model.properties):
        p = model.properties[name]
        if p.form is PropertyForm.MUTUAL and len(p.relata) < 2:
            yield Diagnostic(
                "V10", E,
                f"mutual property {name} relates {len(p.relata)} thing(s); at least two needed",
                name, p.span)


def rule_observed_states(model: Model) -> Iterator[Diagnostic]:
    for subject in sorted(model.histories):
        h = model.histories[subject]
        spans = h.spans or (None,) * len(h.observations)
        for o, span in zip(h.observations, spans):
            if StateId(subject, o.state) not in model.states:
                yield Diagnostic(
                    "V11", E,
                    f"history of {subject} observes {o.state}@{o.time}, "
                    f"which is not a declared state of {subject}",
                    subject, span)


def rule_precedes_cycles(model: Model) -> Iterator[Diagnostic]:
    succ: dict[str, set[str]] = {}
    for a, b in model.precedes.base_pairs:
        if a != b:
            succ.setdefault(a, set()).add(b)
    for group in _cycles(sorted(succ), succ):
        spans = [sp for (a, b), sp in model.precedes.spans.items()
                 if a in group and b in group]
        yield Diagnostic("I2", I, "precedes cycle among " + _names(group)
                         + " (these properties are mutually necessary)",
                         group[0], min(spans) if spans else None)


RULES: dict[str, Rule] = {
    "V1": rule_possession_cardinality,
    "V2/W1": rule_build_findings,
    "V3": rule_precedence_respected,
    "V4": rule_class_extension,
    "V5": rule_kind_extension,
    "V6": rule_schema_attributes,
    "V7": rule_part_of,
    "V8": rule_process_states,
    "V9": rule_process_composable,
    "V10": rule_mutual_arity,
    "V11": rule_observed_states,
    "I2": rule_precedes_cycles,
}


def validate(model: Model, parallel: bool = False) -> list[Diagnostic]:
    """All findings for ``model``, deterministically ordered; ``[]`` iff conformant."""
    if parallel:
        with ThreadPoolExecutor() as pool:
            chunks = list(pool.map(lambda r: list(r(model)), RULES.values()))
    else:
        chunks = [list(r(model)) for r in RULES.values()]
    return sort_diagnostics(d for chunk in chunks for d in chunk)


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)

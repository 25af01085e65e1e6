"""Supplementary functions evaluated over a built :class:`~bww.kernel.Model`.

Names drop the ``?``/``!`` suffixes: predicates read as ``is_*`` or plain
verbs, correspondence functions (``fromState!``) are plain accessors.  All
functions are pure.  Things and properties may be passed by name or as
element objects (the latter lets callers query results of ``associate`` and
``conjoin`` that are not registered in the model).
"""
from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence, Union

from .errors import EmptyProcess
from .kernel import (
    ClassDef,
    Event,
    History,
    KindDef,
    Model,
    Property,
    Thing,
    TimePoint,
)

PropertyRef = Union[str, Property]
ThingRef = Union[str, Thing]


@dataclass(frozen=True)
class QueryResult:
    value: Any
    trace: tuple[str, ...] = field(default=(), compare=False)


# -- possession ------------------------------------------------------------


def possesses(model: Model, t: ThingRef, p: PropertyRef) -> bool:
    thing = model.thing(t)
    prop = model.property(p)
    if thing.is_null:
        return False
    if prop.name in thing.possessed:
        return True
    if prop.is_complex:
        return all(c in thing.possessed for c in prop.conjuncts)
    return False


def possessors(model: Model, p: PropertyRef) -> frozenset[str]:
    return frozenset(t.name for t in model.non_null_things() if possesses(model, t, p))


# -- precedence ------------------------------------------------------------


def _closure_bits(model: Model) -> tuple[list[str], list[int]]:
    """Warshall's algorithm on per-row bitsets, reflexive floor included."""
    names = sorted(model.properties)
    index = {n: i for i, n in enumerate(names)}
    rows = [1 << i for i in range(len(names))]
    for a, b in model.precedes.base_pairs:
        rows[index[a]] |= 1 << index[b]
    for k in range(len(names)):
        bit = 1 << k
        row_k = rows[k]
        for i in range(len(names)):
            if rows[i] & bit:
                rows[i] |= row_k
    return names, rows


def precedes_closure(model: Model) -> list[tuple[str, str]]:
    """Reflexive-transitive closure of the declared precedes pairs, sorted."""

    def compute():
        names, rows = _closure_bits(model)
        return tuple(
            (a, names[j])
            for a, row in zip(names, rows)
            for j in range(len(names))
            if row >> j & 1
        )

    return list(model.cached("precedes_closure", compute))


def _closure_set(model: Model) -> frozenset[tuple[str, str]]:
    return model.cached("precedes_closure_set", lambda: frozenset(precedes_closure(model)))


def precedes(model: Model, p1: PropertyRef, p2: PropertyRef) -> bool:
    a, b = model.property(p1), model.property(p2)
    if a.name == b.name:
        return True
    return (a.name, b.name) in _closure_set(model)


def explain_precedes(model: Model, p1: PropertyRef, p2: PropertyRef) -> QueryResult:
    """``precedes`` with a trace listing the base pairs of one shortest path."""
    a, b = model.property(p1).name, model.property(p2).name
    if a == b:
        return QueryResult(True, (f"{a} -> {a} (reflexive)",))
    succ: dict[str, list[str]] = {}
    for x, y in sorted(model.precedes.base_pairs):
        succ.setdefault(x, []).append(y)
    parent = {a: None}
    todo = deque([a])
    while todo:
        x = todo.popleft()
        if x == b:
            break
        for y in succ.get(x, ()):
            if y not in parent:
                parent[y] = x
                todo.append(y)
    if b not in parent:
        return QueryResult(False)
    path = []
    node = b
    while parent[node] is not None:
        path.append(f"{parent[node]} -> {node}")
        node = parent[node]
    return QueryResult(True, tuple(reversed(path)))


# -- states, histories, events ---------------------------------------------


def state_space_of(model: Model, t: ThingRef) -> frozenset[str]:
    thing = model.thing(t)
    return frozenset(s.name for s in model.states.values() if s.owner == thing.name)


def history_of(model: Model, t: ThingRef) -> History:
    return model.history(model.thing(t).name)


def state_at(history: History, at: TimePoint) -> Optional[str]:
    """State in force at ``at``: the latest observation at or before it."""
    i = bisect.bisect_right(history.times, at)
    return history.observations[i - 1].state if i else None


def is_in(model: Model, t: ThingRef, s: str, at: TimePoint) -> bool:
    thing = model.thing(t)
    model.check_state(thing.name, s)
    return state_at(model.history(thing.name), at) == s


def is_event(model: Model, t: ThingRef, s1: str, s2: str) -> bool:
    """True iff ``t`` changed from ``s1`` directly to ``s2`` at some point."""
    thing = model.thing(t)
    model.check_state(thing.name, s1)
    model.check_state(thing.name, s2)
    if s1 == s2:
        return False
    obs = model.history(thing.name).observations
    return any(a.state == s1 and b.state == s2 for a, b in zip(obs, obs[1:]))


def derive_events(model: Model, t: ThingRef) -> list[Event]:
    thing = model.thing(t)
    obs = model.history(thing.name).observations
    return [Event(thing.name, a.state, b.state) for a, b in zip(obs, obs[1:])]


def from_state(e: Event) -> str:
    return e.from_state


def to_state(e: Event) -> str:
    return e.to_state


def composable_event(e1: Event, e2: Event) -> bool:
    return e1.subject == e2.subject and to_state(e1) == from_state(e2)


def is_process(steps: Sequence[Event]) -> bool:
    if not steps:
        raise EmptyProcess()
    return all(composable_event(a, b) for a, b in zip(steps, steps[1:]))


def broken_junctions(steps: Sequence[Event]) -> list[int]:
    """Indices ``i`` where step ``i`` does not compose with step ``i + 1``."""
    return [i for i, (a, b) in enumerate(zip(steps, steps[1:])) if not composable_event(a, b)]


# -- composition -----------------------------------------------------------


def is_complex_property(model: Model, p: PropertyRef) -> bool:
    return model.property(p).is_complex


def is_composite(model: Model, t: ThingRef) -> bool:
    return bool(model.thing(t).parts)


def part_of(model: Model, whole: ThingRef, part: ThingRef, transitive: bool = False) -> bool:
    """Whether ``part`` is a component of ``whole``.

    Direct components only, unless ``transitive`` is set.
    """
    w = model.thing(whole)
    target = model.thing(part).name
    if not transitive:
        return target in w.parts
    seen: set[str] = set()
    todo = list(w.parts)
    while todo:
        x = todo.pop()
        if x == target:
            return True
        if x in seen:
            continue
        seen.add(x)
        if x in model.things:
            todo.extend(model.things[x].parts)
    return False


# -- collections -----------------------------------------------------------


def _class(model: Model, c: Union[str, ClassDef]) -> ClassDef:
    return c if isinstance(c, ClassDef) else model.class_def(c)


def _kind(model: Model, k: Union[str, KindDef]) -> KindDef:
    return k if isinstance(k, KindDef) else model.kind_def(k)


def extension_of_class(model: Model, c: Union[str, ClassDef]) -> frozenset[str]:
    return possessors(model, _class(model, c).characteristic)


def member_of_class(model: Model, c: Union[str, ClassDef], t: ThingRef) -> bool:
    cls = _class(model, c)
    return model.thing(t).name in extension_of_class(model, cls)


def _things(model: Model, candidate: Iterable[ThingRef]) -> frozenset[str]:
    return frozenset(model.thing(t).name for t in candidate)


def is_class(model: Model, candidate: Iterable[ThingRef], p: PropertyRef) -> bool:
    """Whether ``candidate`` is exactly the set of things possessing ``p``."""
    members = _things(model, candidate)
    return members == possessors(model, p)


def extension_of_props(model: Model, props: Iterable[PropertyRef]) -> frozenset[str]:
    props = [model.property(p) for p in props]
    if not props:
        raise ValueError("a kind needs at least one property")
    return frozenset(
        t.name for t in model.non_null_things() if all(possesses(model, t, p) for p in props)
    )


def extension_of_kind(model: Model, k: Union[str, KindDef]) -> frozenset[str]:
    return extension_of_props(model, sorted(_kind(model, k).properties))


def member_of_kind(model: Model, k: Union[str, KindDef], t: ThingRef) -> bool:
    kd = _kind(model, k)
    return model.thing(t).name in extension_of_kind(model, kd)


def is_kind(model: Model, candidate: Iterable[ThingRef], props: Iterable[PropertyRef]) -> bool:
    members = _things(model, candidate)
    return members == extension_of_props(model, props)


def characteristic_prop_c(model: Model, c: Union[str, ClassDef], p: PropertyRef) -> bool:
    return _class(model, c).characteristic == model.property(p).name


def characteristic_prop_k(model: Model, k: Union[str, KindDef], ps: Iterable[PropertyRef]) -> bool:
    names = frozenset(model.property(p).name for p in ps)
    return _kind(model, k).properties == names


__all__ = [
    "QueryResult", "possesses", "possessors", "precedes", "precedes_closure",
    "explain_precedes", "state_space_of", "history_of", "state_at", "is_in",
    "is_event", "derive_events", "from_state", "to_state", "composable_event",
    "is_process", "broken_junctions", "is_complex_property", "is_composite",
    "part_of", "extension_of_class", "member_of_class", "is_class",
    "extension_of_props", "extension_of_kind", "member_of_kind", "is_kind",
    "characteristic_prop_c", "characteristic_prop_k",
]

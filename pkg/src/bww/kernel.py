"""Domain types and the immutable model registry.

A :class:`Model` is produced once, by :class:`ModelBuilder` (directly or via
``build_model`` on a resolved AST), and never mutated afterwards.  Element
identifiers are their source names; names are unique per namespace, and
states are additionally scoped by the thing that owns them.
"""
from __future__ import annotations

import bisect
import enum
import threading
import types
import warnings
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence, Union

from .diagnostics import Diagnostic, Severity, SourceSpan
from .errors import (
    CyclicConjunction,
    DanglingReference,
    DegenerateConjunction,
    DuplicateName,
    EmptyProcess,
    ForeignState,
    IllegalNullDeclaration,
    InvalidEvent,
    ModelError,
    NullAsComponent,
    SelfContainment,
    TimeCollision,
    UnknownClass,
    UnknownKind,
    UnknownProcess,
    UnknownProperty,
    UnknownState,
    UnknownThing,
)

NULL = "null"

TimePoint = int


class CategoryTag(str, enum.Enum):
    INTRINSIC = "Intrinsic"
    REPRESENTATIONAL = "Representational"
    PRIMITIVE_RELATIONAL = "PrimitiveRelational"
    COMPOSITION = "Composition"
    COLLECTION = "Collection"


class PropertyForm(str, enum.Enum):
    INTRINSIC = "intrinsic"
    MUTUAL = "mutual"
    COMPLEX = "complex"


def _span_field():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Property:
    name: str
    form: PropertyForm = PropertyForm.INTRINSIC
    relata: tuple[str, ...] = ()
    binding: Optional[bool] = None
    conjuncts: tuple[str, ...] = ()
    span: Optional[SourceSpan] = _span_field()

    @property
    def category(self) -> CategoryTag:
        if self.form is PropertyForm.COMPLEX:
            return CategoryTag.COMPOSITION
        return CategoryTag.INTRINSIC

    @property
    def is_complex(self) -> bool:
        return self.form is PropertyForm.COMPLEX


@dataclass(frozen=True)
class Thing:
    name: str
    possessed: frozenset[str] = frozenset()
    parts: tuple[str, ...] = ()
    is_null: bool = False
    span: Optional[SourceSpan] = _span_field()

    @property
    def category(self) -> CategoryTag:
        # a thing built by association is the result of a composition
        return CategoryTag.COMPOSITION if self.parts else CategoryTag.INTRINSIC


class StateId(NamedTuple):
    owner: str
    name: str


@dataclass(frozen=True)
class State:
    owner: str
    name: str
    bindings: Optional[tuple[tuple[str, str], ...]] = None
    span: Optional[SourceSpan] = _span_field()

    @property
    def id(self) -> StateId:
        return StateId(self.owner, self.name)

    category = CategoryTag.INTRINSIC


@dataclass(frozen=True)
class StateVariable:
    name: str
    domain_thing: str
    codomain: str
    span: Optional[SourceSpan] = _span_field()

    category = CategoryTag.REPRESENTATIONAL


@dataclass(frozen=True)
class Attribute:
    name: str
    represents: str

    category = CategoryTag.REPRESENTATIONAL


@dataclass(frozen=True)
class Schema:
    name: str
    describes: str
    attributes: tuple[Attribute, ...]
    span: Optional[SourceSpan] = _span_field()

    category = CategoryTag.REPRESENTATIONAL


@dataclass(frozen=True)
class Event:
    """A change of one thing from one state to a different one.

    ``subject`` may be ``None`` for free-standing event literals that are
    not attached to a thing (e.g. in queries).
    """

    subject: Optional[str]
    from_state: str
    to_state: str

    def __post_init__(self):
        if self.from_state == self.to_state:
            raise InvalidEvent(
                f"an event needs two different states, got <{self.from_state},{self.to_state}>"
            )

    category = CategoryTag.PRIMITIVE_RELATIONAL

    def __str__(self):
        prefix = f"{self.subject}:" if self.subject else ""
        return f"{prefix}<{self.from_state},{self.to_state}>"


@dataclass(frozen=True)
class Process:
    name: str
    subject: str
    steps: tuple[Event, ...]
    span: Optional[SourceSpan] = _span_field()
    step_spans: tuple[Optional[SourceSpan], ...] = field(default=(), compare=False, repr=False)

    category = CategoryTag.COMPOSITION


class Observation(NamedTuple):
    state: str
    time: TimePoint


@dataclass(frozen=True)
class History:
    subject: str
    observations: tuple[Observation, ...] = ()
    spans: tuple[Optional[SourceSpan], ...] = field(default=(), compare=False, repr=False)

    category = CategoryTag.COLLECTION

    def __len__(self):
        return len(self.observations)

    @property
    def times(self) -> list[TimePoint]:
        return [o.time for o in self.observations]


@dataclass(frozen=True)
class PrecedesRelation:
    base_pairs: frozenset[tuple[str, str]] = frozenset()
    spans: Mapping[tuple[str, str], SourceSpan] = field(
        default_factory=dict, compare=False, repr=False)

    category = CategoryTag.PRIMITIVE_RELATIONAL


@dataclass(frozen=True)
class ClassDef:
    name: str
    characteristic: str
    declared_extension: Optional[frozenset[str]] = None
    span: Optional[SourceSpan] = _span_field()

    category = CategoryTag.COLLECTION


@dataclass(frozen=True)
class KindDef:
    name: str
    properties: frozenset[str]
    declared_extension: Optional[frozenset[str]] = None
    span: Optional[SourceSpan] = _span_field()

    category = CategoryTag.COLLECTION


def _frozen(d: dict) -> Mapping:
    return types.MappingProxyType(dict(d))


@dataclass(frozen=True)
class Model:
    """Closed-world registry of every element of one BWW model."""

    properties: Mapping[str, Property]
    things: Mapping[str, Thing]
    states: Mapping[StateId, State]
    state_variables: Mapping[tuple[str, str], StateVariable]
    schemas: Mapping[str, Schema]
    classes: Mapping[str, ClassDef]
    kinds: Mapping[str, KindDef]
    processes: Mapping[str, Process]
    histories: Mapping[str, History]
    precedes: PrecedesRelation
    name: Optional[str] = field(default=None, compare=False)
    build_diagnostics: tuple[Diagnostic, ...] = field(default=(), compare=False, repr=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, compare=False, repr=False)

    def cached(self, key, compute):
        """Single-assignment memo for derived data (closures and the like)."""
        try:
            return self._cache[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    @property
    def null(self) -> Thing:
        return self.things[NULL]

    def property(self, p: Union[str, Property]) -> Property:
        if isinstance(p, Property):
            if p.is_complex:
                for c in p.conjuncts:
                    self.property(c)
                return p
            p = p.name
        try:
            return self.properties[p]
        except KeyError:
            raise UnknownProperty(p) from None

    def thing(self, t: Union[str, Thing]) -> Thing:
        if isinstance(t, Thing):
            return t
        try:
            return self.things[t]
        except KeyError:
            raise UnknownThing(t) from None

    def class_def(self, c: str) -> ClassDef:
        try:
            return self.classes[c]
        except KeyError:
            raise UnknownClass(c) from None

    def kind_def(self, k: str) -> KindDef:
        try:
            return self.kinds[k]
        except KeyError:
            raise UnknownKind(k) from None

    def process(self, name: str) -> Process:
        try:
            return self.processes[name]
        except KeyError:
            raise UnknownProcess(name) from None

    def declared_states(self, thing: str) -> list[State]:
        self.thing(thing)
        return sorted((s for s in self.states.values() if s.owner == thing),
                      key=lambda s: s.name)

    def history(self, thing: str) -> History:
        t = self.thing(thing)
        return self.histories.get(t.name, History(t.name))

    def check_state(self, thing: str, state: str) -> StateId:
        """Known states are the declared ones plus any observed in the history."""
        sid = StateId(thing, state)
        if sid in self.states:
            return sid
        if any(o.state == state for o in self.history(thing).observations):
            return sid
        raise UnknownState(f"{thing}.{state}")

    def non_null_things(self) -> list[Thing]:
        return [t for n, t in sorted(self.things.items()) if not t.is_null]

    def extend(self, *things: Thing) -> "Model":
        """A new model with extra things added (e.g. results of ``associate``)."""
        new = dict(self.things)
        for t in things:
            if t.name in new:
                raise DuplicateName("thing", t.name)
            for p in t.possessed:
                self.property(p)
            new[t.name] = t
        for t in things:
            for part in t.parts:
                if part not in new:
                    raise DanglingReference(part, "thing")
        histories = dict(self.histories)
        for t in things:
            histories[t.name] = History(t.name)
        return replace(self, things=_frozen(new), histories=_frozen(histories),
                       _cache={}, _lock=threading.RLock())

    def category_of(self, element) -> CategoryTag:
        return element.category


# -- construction ----------------------------------------------------------


def _flatten(name: str, raw: Mapping[str, Sequence[str]], seen: tuple[str, ...]) -> set[str]:
    if name in seen:
        chain = " -> ".join(seen + (name,))
        raise CyclicConjunction(f"complex property defined in terms of itself: {chain}")
    if name not in raw:
        return {name}
    out: set[str] = set()
    for c in raw[name]:
        out |= _flatten(c, raw, seen + (name,))
    return out


class ModelBuilder:
    """Collects declarations and produces an immutable :class:`Model`.

    Duplicate names are rejected as they are added; dangling references are
    checked in :meth:`build`, so declarations may come in any order.
    """

    def __init__(self, name: Optional[str] = None):
        self.name = name
        self._props: dict[str, dict] = {}
        self._complex: dict[str, tuple[str, ...]] = {}
        self._things: dict[str, dict] = {}
        self._states: dict[StateId, State] = {}
        self._state_vars: dict[tuple[str, str], StateVariable] = {}
        self._schemas: dict[str, Schema] = {}
        self._classes: dict[str, ClassDef] = {}
        self._kinds: dict[str, KindDef] = {}
        self._precedes: dict[tuple[str, str], Optional[SourceSpan]] = {}
        self._observations: dict[str, list[tuple[str, int, Optional[SourceSpan]]]] = {}
        self._processes: dict[str, tuple[str, list, list, Optional[SourceSpan]]] = {}

    @staticmethod
    def _fresh(registry, key, namespace, span, display=None):
        if key in registry:
            raise DuplicateName(namespace, display or key, span)

    def property(self, name: str, *, span=None) -> "ModelBuilder":
        self._check_not_null(name, span)
        self._fresh(self._props, name, "property", span)
        self._props[name] = dict(form=PropertyForm.INTRINSIC, span=span)
        return self

    def complex_property(self, name: str, conjuncts: Sequence[str], *, span=None) -> "ModelBuilder":
        self._check_not_null(name, span)
        self._fresh(self._props, name, "property", span)
        self._props[name] = dict(form=PropertyForm.COMPLEX, span=span)
        self._complex[name] = tuple(conjuncts)
        return self

    def mutual_property(self, name: str, relata: Sequence[str], binding: bool, *, span=None) -> "ModelBuilder":
        self._check_not_null(name, span)
        self._fresh(self._props, name, "property", span)
        self._props[name] = dict(form=PropertyForm.MUTUAL, relata=tuple(relata),
                                 binding=bool(binding), span=span)
        return self

    def thing(self, name: str, possesses: Iterable[str] = (), parts: Iterable[str] = (),
              *, span=None) -> "ModelBuilder":
        self._check_not_null(name, span)
        self._fresh(self._things, name, "thing", span)
        self._things[name] = dict(possesses=tuple(possesses), parts=tuple(parts), span=span)
        return self

    def states(self, owner: str, names: Iterable[str], *, span=None, spans=None) -> "ModelBuilder":
        names = list(names)
        spans = list(spans) if spans is not None else [span] * len(names)
        for n, sp in zip(names, spans):
            sid = StateId(owner, n)
            self._fresh(self._states, sid, f"state of {owner}", sp, display=n)
            self._states[sid] = State(owner, n, span=sp)
        return self

    def state_variable(self, thing: str, name: str, codomain: str, *, span=None) -> "ModelBuilder":
        key = (thing, name)
        self._fresh(self._state_vars, key, f"state variable of {thing}", span, display=name)
        self._state_vars[key] = StateVariable(name, thing, codomain, span=span)
        return self

    def schema(self, name: str, describes: str, attributes: Sequence[str], *, span=None) -> "ModelBuilder":
        self._fresh(self._schemas, name, "schema", span)
        if not attributes:
            raise ModelError(f"schema {name!r} needs at least one attribute")
        attrs = tuple(Attribute(a, a) for a in attributes)
        self._schemas[name] = Schema(name, describes, attrs, span=span)
        return self

    def class_(self, name: str, characteristic: str, extension: Optional[Iterable[str]] = None,
               *, span=None) -> "ModelBuilder":
        self._fresh(self._classes, name, "class", span)
        ext = frozenset(extension) if extension is not None else None
        self._classes[name] = ClassDef(name, characteristic, ext, span=span)
        return self

    def kind(self, name: str, properties: Iterable[str], extension: Optional[Iterable[str]] = None,
             *, span=None) -> "ModelBuilder":
        self._fresh(self._kinds, name, "kind", span)
        props = frozenset(properties)
        if not props:
            raise ModelError(f"kind {name!r} needs at least one property")
        ext = frozenset(extension) if extension is not None else None
        self._kinds[name] = KindDef(name, props, ext, span=span)
        return self

    def precedes(self, before: str, after: str, *, span=None) -> "ModelBuilder":
        self._precedes.setdefault((before, after), span)
        return self

    def observe(self, thing: str, state: str, time: int, *, span=None) -> "ModelBuilder":
        if not isinstance(time, int) or time < 0:
            raise ModelError(f"time must be a non-negative integer, got {time!r}")
        self._observations.setdefault(thing, []).append((state, time, span))
        return self

    def history(self, thing: str, observations: Iterable[tuple[str, int]], *, span=None) -> "ModelBuilder":
        if thing in self._observations:
            raise DuplicateName("history", thing, span)
        self._observations[thing] = []
        for state, time in observations:
            self.observe(thing, state, time, span=span)
        return self

    def process(self, name: str, subject: str, steps: Sequence[tuple[str, str]], *,
                span=None, step_spans=None) -> "ModelBuilder":
        self._fresh(self._processes, name, "process", span)
        step_spans = list(step_spans) if step_spans is not None else [None] * len(steps)
        self._processes[name] = (subject, list(steps), step_spans, span)
        return self

    @staticmethod
    def _check_not_null(name, span):
        if name == NULL:
            raise IllegalNullDeclaration(span)

    # -- build --

    def build(self) -> Model:
        diags: list[Diagnostic] = []
        things_known = set(self._things) | {NULL}

        def need_thing(n, span, allow_null=True):
            if n not in things_known or (n == NULL and not allow_null):
                if n == NULL:
                    exc = ModelError("the null thing cannot be used here")
                    exc.span = span
                    raise exc
                raise DanglingReference(n, "thing", span)

        def need_prop(n, span):
            if n not in self._props:
                raise DanglingReference(n, "property", span)

        properties: dict[str, Property] = {}
        for name, spec in self._props.items():
            span = spec["span"]
            if spec["form"] is PropertyForm.COMPLEX:
                for c in self._complex[name]:
                    need_prop(c, span)
                try:
                    flat = _flatten(name, self._complex, ())
                except CyclicConjunction as exc:
                    exc.span = span
                    raise
                if len(flat) < 2:
                    exc = DegenerateConjunction(
                        f"complex property {name!r} reduces to a single property")
                    exc.span = span
                    raise exc
                properties[name] = Property(name, PropertyForm.COMPLEX,
                                            conjuncts=tuple(sorted(flat)), span=span)
            elif spec["form"] is PropertyForm.MUTUAL:
                for r in spec["relata"]:
                    need_thing(r, span)
                properties[name] = Property(name, PropertyForm.MUTUAL, relata=spec["relata"],
                                            binding=spec["binding"], span=span)
            else:
                properties[name] = Property(name, span=span)

        things: dict[str, Thing] = {NULL: Thing(NULL, is_null=True)}
        for name, spec in self._things.items():
            span = spec["span"]
            possessed: set[str] = set()
            for p in spec["possesses"]:
                need_prop(p, span)
                possessed.add(p)
                # possessing a conjunction means possessing every conjunct
                possessed.update(properties[p].conjuncts)
            parts: list[str] = []
            for part in spec["parts"]:
                need_thing(part, span)
                if part not in parts:
                    parts.append(part)
            things[name] = Thing(name, frozenset(possessed), tuple(parts), span=span)

        for sid, st in self._states.items():
            need_thing(sid.owner, st.span, allow_null=False)
        for (owner, _), sv in self._state_vars.items():
            need_thing(owner, sv.span, allow_null=False)
        for sc in self._schemas.values():
            need_thing(sc.describes, sc.span, allow_null=False)
            for a in sc.attributes:
                need_prop(a.represents, sc.span)
        for c in self._classes.values():
            need_prop(c.characteristic, c.span)
            for t in c.declared_extension or ():
                need_thing(t, c.span)
        for k in self._kinds.values():
            for p in k.properties:
                need_prop(p, k.span)
            for t in k.declared_extension or ():
                need_thing(t, k.span)
        for (a, b), span in self._precedes.items():
            need_prop(a, span)
            need_prop(b, span)

        histories: dict[str, History] = {}
        for name in things:
            if name != NULL:
                histories[name] = History(name)
        for name, raw in self._observations.items():
            span = raw[0][2] if raw else None
            need_thing(name, span, allow_null=False)
            histories[name] = _normalize_history(name, raw, diags)

        processes: dict[str, Process] = {}
        for name, (subject, steps, step_spans, span) in self._processes.items():
            need_thing(subject, span, allow_null=False)
            if not steps:
                raise EmptyProcess()
            events = []
            for (a, b), sp in zip(steps, step_spans):
                try:
                    events.append(Event(subject, a, b))
                except InvalidEvent as exc:
                    exc.span = sp or span
                    raise
            processes[name] = Process(name, subject, tuple(events), span=span,
                                      step_spans=tuple(step_spans))

        return Model(
            properties=_frozen(properties),
            things=_frozen(things),
            states=_frozen(self._states),
            state_variables=_frozen(self._state_vars),
            schemas=_frozen(self._schemas),
            classes=_frozen(self._classes),
            kinds=_frozen(self._kinds),
            processes=_frozen(processes),
            histories=_frozen(histories),
            precedes=PrecedesRelation(frozenset(self._precedes),
                                      {k: v for k, v in self._precedes.items() if v}),
            name=self.name,
            build_diagnostics=tuple(diags),
        )


def _normalize_history(subject, raw, diags: list[Diagnostic]) -> History:
    """Order observations by time, dropping time collisions (V2) and
    consecutive repeats of a state (W1)."""
    last = None
    for state, t, span in raw:
        if last is not None and t <= last:
            diags.append(Diagnostic(
                "V2", Severity.ERROR,
                f"history of {subject}: observation {state}@{t} does not come after time {last}",
                subject, span))
        last = t if last is None else max(last, t)

    by_time: dict[int, tuple[str, Optional[SourceSpan]]] = {}
    for state, t, span in raw:
        by_time.setdefault(t, (state, span))
    obs: list[Observation] = []
    spans: list[Optional[SourceSpan]] = []
    for t in sorted(by_time):
        state, span = by_time[t]
        if obs and obs[-1].state == state:
            diags.append(Diagnostic(
                "W1", Severity.WARNING,
                f"history of {subject}: {state}@{t} repeats the previous state "
                f"{state}@{obs[-1].time} and was collapsed",
                subject, span))
            continue
        obs.append(Observation(state, t))
        spans.append(span)
    return History(subject, tuple(obs), tuple(spans))


# -- operations ------------------------------------------------------------


class CollapsedObservation(UserWarning):
    """Issued when a recorded observation repeats an adjacent state."""


def _insert_observation(observations: Sequence[Observation], state: str, t: int):
    times = [o.time for o in observations]
    i = bisect.bisect_left(times, t)
    if i < len(times) and times[i] == t:
        raise TimeCollision(t)
    obs = list(observations)
    if i > 0 and obs[i - 1].state == state:
        return tuple(obs), True
    if i < len(obs) and obs[i].state == state:
        # the later repeat is subsumed by the earlier observation
        obs[i] = Observation(state, t)
        return tuple(obs), True
    obs.insert(i, Observation(state, t))
    return tuple(obs), False


def record_observation(history: History, state: Union[str, StateId], t: TimePoint) -> History:
    """Return ``history`` with ``state`` observed at time ``t``.

    Raises :class:`TimeCollision` if ``t`` is already observed and
    :class:`ForeignState` if ``state`` belongs to a different thing.  A
    repeat of an adjacent state is collapsed with a
    :class:`CollapsedObservation` warning.
    """
    if isinstance(state, StateId):
        if state.owner != history.subject:
            raise ForeignState(
                f"state {state.owner}.{state.name} is not a state of {history.subject}")
        state = state.name
    if not isinstance(t, int) or t < 0:
        raise ValueError(f"time must be a non-negative integer, got {t!r}")
    obs, collapsed = _insert_observation(history.observations, state, t)
    if collapsed:
        warnings.warn(CollapsedObservation(
            f"W1: {history.subject}: {state}@{t} repeats an adjacent observation"),
            stacklevel=2)
    return History(history.subject, obs)


def conjoin(props: Sequence[Union[str, Property]], model: Model) -> Property:
    """Canonical conjunction of ``props``: flattened, deduplicated, sorted.

    A conjunction that reduces to one property returns that property.  If the
    model declares a complex property with the same conjuncts, that
    declaration is returned; otherwise the result is anonymous and named by
    joining its conjuncts with ``&``.
    """
    if not props:
        raise ValueError("conjoin needs at least one property")
    flat: set[str] = set()
    for p in props:
        prop = model.property(p)
        if prop.is_complex:
            flat.update(prop.conjuncts)
        else:
            flat.add(prop.name)
    if len(flat) == 1:
        return model.property(next(iter(flat)))
    conjuncts = tuple(sorted(flat))
    for name in sorted(model.properties):
        declared = model.properties[name]
        if declared.is_complex and declared.conjuncts == conjuncts:
            return declared
    return Property("&".join(conjuncts), PropertyForm.COMPLEX, conjuncts=conjuncts)


def associate(name: str, components: Sequence[str], model: Model,
              possesses: Iterable[str] = ()) -> Thing:
    """Compose ``components`` into a new composite thing called ``name``."""
    if not components:
        raise ValueError("an association needs at least one component")
    parts: list[str] = []
    for c in components:
        if c == NULL:
            raise NullAsComponent()
        model.thing(c)
        if c not in parts:
            parts.append(c)
    if name in parts:
        raise SelfContainment(f"{name!r} cannot be a part of itself")
    if name == NULL:
        raise IllegalNullDeclaration()
    if name in model.things:
        raise DuplicateName("thing", name)
    possessed = frozenset(possesses)
    for p in possessed:
        model.property(p)
    return Thing(name, possessed, tuple(parts))


def build_model(resolved) -> Model:
    """Materialize a :class:`~bww.syntax.resolver.ResolvedAst` as a Model.

    The null thing is inserted, complex properties canonicalized, and history
    observations normalized (V2 and W1 findings are kept on the model as
    ``build_diagnostics`` for the validator to report).
    """
    b = ModelBuilder(resolved.name)
    for d in resolved.properties:
        if hasattr(d, "relata"):
            b.mutual_property(d.name.text, [r.text for r in d.relata], d.binding, span=d.span)
        elif d.conjuncts:
            b.complex_property(d.name.text, [c.text for c in d.conjuncts], span=d.span)
        else:
            b.property(d.name.text, span=d.span)
    for d in resolved.things:
        b.thing(d.name.text, [p.text for p in d.possesses], [t.text for t in d.parts],
                span=d.span)
    for d in resolved.states:
        b.states(d.owner.text, [s.text for s in d.states], spans=[s.span for s in d.states])
    for d in resolved.schemas:
        b.schema(d.name.text, d.describes.text, [a.text for a in d.attributes], span=d.span)
    for d in resolved.classes:
        ext = None if d.extension is None else [t.text for t in d.extension]
        b.class_(d.name.text, d.characteristic.text, ext, span=d.span)
    for d in resolved.kinds:
        ext = None if d.extension is None else [t.text for t in d.extension]
        b.kind(d.name.text, [p.text for p in d.properties], ext, span=d.span)
    for d in resolved.precedes:
        b.precedes(d.before.text, d.after.text, span=d.span)
    for d in resolved.histories:
        for o in d.observations:
            b.observe(d.subject.text, o.state.text, o.time, span=o.span)
    for d in resolved.processes:
        b.process(d.name.text, d.subject.text,
                  [(p.source.text, p.target.text) for p in d.steps],
                  span=d.span, step_spans=[p.span for p in d.steps])
    return b.build()

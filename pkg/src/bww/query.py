"""One-expression query language over a model.

An expression is ``FN(arg, ...)`` where ``FN`` is one of the supplementary
function names (with its ``?`` or ``!`` suffix) and each argument is::

    name            a thing, property, state, class, kind or process
    12              a time tick
    <s1, s2>        an event with no subject
    thing:<s1, s2>  an event of a thing
    {a, b, ...}     a set of things or properties

Examples::

    possesses?(book1, Title)
    isIn?(book1, issued, 7)
    process?(book1:<issued, claimed>, book1:<claimed, issued>)
    kind?({kid1}, {Underaged, WorksFor})
"""
from __future__ import annotations

import re
from typing import Any, Callable, Union

from . import semantics as sem
from .errors import BwwError, InvalidEvent
from .kernel import Event, Model


class QueryError(BwwError):
    """Malformed expression, unknown function or wrong argument types."""


_TOKEN = re.compile(r"\s*(?:(?P<fn>[A-Za-z_][A-Za-z0-9_]*[?!])|(?P<id>[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<nat>[0-9]+)|(?P<p>[(),<>{}:]))")


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise QueryError(f"unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos}")
        out.append((m.lastgroup, m.group(m.lastgroup)))
        pos = m.end()
    out.append(("end", ""))
    return out


class _Reader:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind, value=None):
        k, v = self.toks[self.i]
        if k != kind or (value is not None and v != value):
            want = value or kind
            raise QueryError(f"expected {want!r}, found {v or 'end of expression'!r}")
        self.i += 1
        return v

    def at(self, value):
        return self.peek()[0] == "p" and self.peek()[1] == value

    def expression(self):
        fn = self.take("fn")
        self.take("p", "(")
        args = []
        if not self.at(")"):
            args.append(self.arg())
            while self.at(","):
                self.take("p", ",")
                args.append(self.arg())
        self.take("p", ")")
        self.take("end")
        return fn, args

    def arg(self):
        kind, value = self.peek()
        if kind == "nat":
            self.i += 1
            return ("nat", int(value))
        if self.at("<"):
            return self.event(None)
        if self.at("{"):
            self.take("p", "{")
            names = []
            if not self.at("}"):
                names.append(self.take("id"))
                while self.at(","):
                    self.take("p", ",")
                    names.append(self.take("id"))
            self.take("p", "}")
            return ("set", tuple(names))
        name = self.take("id")
        if self.at(":"):
            self.take("p", ":")
            return self.event(name)
        return ("id", name)

    def event(self, subject):
        self.take("p", "<")
        a = self.take("id")
        self.take("p", ",")
        b = self.take("id")
        self.take("p", ">")
        return ("event", subject, a, b)


def parse_query(text: str):
    """Split a query into its function name and raw argument nodes."""
    return _Reader(text).expression()


def _want(arg, kind: str, fn: str, pos: int):
    if arg[0] != kind:
        raise QueryError(f"{fn}: argument {pos + 1} must be a {_KIND_NAMES[kind]}")
    return arg[1] if kind != "event" else arg


_KIND_NAMES = {"id": "name", "nat": "time tick", "set": "set {...}", "event": "event <s1, s2>"}


def _event(model: Model, arg, fn: str, pos: int) -> Event:
    _, subject, a, b = _want(arg, "event", fn, pos)
    if subject is not None:
        model.check_state(model.thing(subject).name, a)
        model.check_state(subject, b)
    try:
        return Event(subject, a, b)
    except InvalidEvent as exc:
        raise QueryError(str(exc)) from None


# name -> (arg kinds, evaluator); "events" means one or more event literals
_SIGNATURES: dict[str, tuple[tuple[str, ...], Callable[..., Any]]] = {
    "possesses?": (("id", "id"), sem.possesses),
    "isIn?": (("id", "id", "nat"), sem.is_in),
    "event?": (("id", "id", "id"), sem.is_event),
    "complexProperty?": (("id",), sem.is_complex_property),
    "composite?": (("id",), sem.is_composite),
    "partof?": (("id", "id"), sem.part_of),
    "memberof_c?": (("id", "id"), sem.member_of_class),
    "memberof_k?": (("id", "id"), sem.member_of_kind),
    "class?": (("set", "id"), sem.is_class),
    "kind?": (("set", "set"), sem.is_kind),
    "characteristicProp_c?": (("id", "id"), sem.characteristic_prop_c),
    "characteristicProp_k?": (("id", "set"), sem.characteristic_prop_k),
}

FUNCTIONS = tuple(sorted(set(_SIGNATURES) | {
    "precedes?", "composableEvent?", "process?", "fromState!", "toState!"}))


def evaluate(model: Model, text: str) -> sem.QueryResult:
    """Evaluate one query expression.

    Raises :class:`QueryError` for malformed expressions and the model's
    ``Unknown*`` errors for names that are not declared.
    """
    fn, args = parse_query(text)
    if fn == "precedes?":
        _arity(fn, args, 2)
        return sem.explain_precedes(model, _want(args[0], "id", fn, 0), _want(args[1], "id", fn, 1))
    if fn in ("fromState!", "toState!"):
        _arity(fn, args, 1)
        e = _event(model, args[0], fn, 0)
        return sem.QueryResult(sem.from_state(e) if fn == "fromState!" else sem.to_state(e))
    if fn == "composableEvent?":
        _arity(fn, args, 2)
        return sem.QueryResult(sem.composable_event(
            _event(model, args[0], fn, 0), _event(model, args[1], fn, 1)))
    if fn == "process?":
        if not args:
            raise QueryError("process?: needs a process name or at least one event")
        if len(args) == 1 and args[0][0] == "id":
            steps = model.process(args[0][1]).steps
        else:
            steps = [_event(model, a, fn, i) for i, a in enumerate(args)]
        return sem.QueryResult(sem.is_process(steps))
    if fn not in _SIGNATURES:
        raise QueryError(f"unknown function {fn!r}; known: {', '.join(FUNCTIONS)}")
    kinds, impl = _SIGNATURES[fn]
    _arity(fn, args, len(kinds))
    values = [_want(a, k, fn, i) for i, (a, k) in enumerate(zip(args, kinds))]
    return sem.QueryResult(impl(model, *values))


def _arity(fn, args, n):
    if len(args) != n:
        raise QueryError(f"{fn} takes {n} argument(s), got {len(args)}")


def format_value(value: Union[bool, str, Any]) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (set, frozenset)):
        return "{" + ", ".join(sorted(value)) + "}"
    return str(value)

"""JSON export of a built model, and the matching reader.

Arrays are sorted by name and object keys come in a fixed order, so equal
models export to identical documents.  ``model_from_json`` rebuilds a model
that compares equal to the exported one.
"""
from __future__ import annotations

import json
from typing import Any, Optional

from . import semantics as sem
from .diagnostics import Diagnostic
from .kernel import Model, ModelBuilder, PropertyForm
from .validator import validate


def _sorted(xs):
    return sorted(xs)


def model_to_json(model: Model, diagnostics: Optional[list[Diagnostic]] = None) -> dict[str, Any]:
    if diagnostics is None:
        diagnostics = validate(model)
    things = []
    for name in sorted(model.things):
        t = model.things[name]
        h = model.histories.get(name)
        things.append({
            "name": name,
            "isNull": t.is_null,
            "possesses": _sorted(t.possessed),
            "parts": list(t.parts),
            "states": [] if t.is_null else _sorted(sem.state_space_of(model, t)),
            "history": [{"state": o.state, "time": o.time} for o in (h.observations if h else ())],
            "category": t.category.value,
        })
    properties = []
    for name in sorted(model.properties):
        p = model.properties[name]
        properties.append({
            "name": name,
            "form": p.form.value,
            "conjuncts": list(p.conjuncts),
            "relata": list(p.relata),
            "binding": p.binding,
            "category": p.category.value,
        })
    schemas = [
        {
            "name": s.name,
            "describes": s.describes,
            "attributes": [{"name": a.name, "represents": a.represents} for a in s.attributes],
            "category": s.category.value,
        }
        for _, s in sorted(model.schemas.items())
    ]
    classes = [
        {
            "name": c.name,
            "characteristic": c.characteristic,
            "extension": _sorted(sem.extension_of_class(model, c)),
            "declaredExtension": None if c.declared_extension is None else _sorted(c.declared_extension),
            "category": c.category.value,
        }
        for _, c in sorted(model.classes.items())
    ]
    kinds = [
        {
            "name": k.name,
            "properties": _sorted(k.properties),
            "extension": _sorted(sem.extension_of_kind(model, k)),
            "declaredExtension": None if k.declared_extension is None else _sorted(k.declared_extension),
            "category": k.category.value,
        }
        for _, k in sorted(model.kinds.items())
    ]
    processes = [
        {
            "name": p.name,
            "subject": p.subject,
            "steps": [{"from": e.from_state, "to": e.to_state} for e in p.steps],
            "category": p.category.value,
        }
        for _, p in sorted(model.processes.items())
    ]
    state_variables = [
        {"name": v.name, "thing": v.domain_thing, "codomain": v.codomain}
        for _, v in sorted(model.state_variables.items())
    ]
    return {
        "model": model.name,
        "things": things,
        "properties": properties,
        "schemas": schemas,
        "classes": classes,
        "kinds": kinds,
        "precedes": {
            "base": [list(p) for p in sorted(model.precedes.base_pairs)],
            "closure": [list(p) for p in sem.precedes_closure(model)],
        },
        "processes": processes,
        "stateVariables": state_variables,
        "diagnostics": [d.to_json() for d in diagnostics],
    }


def dumps(model: Model, **kwargs) -> str:
    return json.dumps(model_to_json(model, **kwargs), indent=2) + "\n"


def model_from_json(doc: dict[str, Any]) -> Model:
    """Rebuild a model from an exported document (derived fields are ignored)."""
    b = ModelBuilder(doc.get("model"))
    for p in doc["properties"]:
        form = PropertyForm(p["form"])
        if form is PropertyForm.COMPLEX:
            b.complex_property(p["name"], p["conjuncts"])
        elif form is PropertyForm.MUTUAL:
            b.mutual_property(p["name"], p["relata"], p["binding"])
        else:
            b.property(p["name"])
    for t in doc["things"]:
        if t["isNull"]:
            continue
        b.thing(t["name"], t["possesses"], t["parts"])
        if t["states"]:
            b.states(t["name"], t["states"])
        if t["history"]:
            b.history(t["name"], [(o["state"], o["time"]) for o in t["history"]])
    for s in doc["schemas"]:
        b.schema(s["name"], s["describes"], [a["represents"] for a in s["attributes"]])
    for c in doc["classes"]:
        b.class_(c["name"], c["characteristic"], c["declaredExtension"])
    for k in doc["kinds"]:
        b.kind(k["name"], k["properties"], k["declaredExtension"])
    for a, c in doc["precedes"]["base"]:
        b.precedes(a, c)
    for p in doc["processes"]:
        b.process(p["name"], p["subject"], [(s["from"], s["to"]) for s in p["steps"]])
    for v in doc.get("stateVariables", ()):
        b.state_variable(v["thing"], v["name"], v["codomain"])
    return b.build()


def loads(text: str) -> Model:
    return model_from_json(json.loads(text))

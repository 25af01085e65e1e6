"""Summarize a model file: things, states, schemas, derived events, findings.

    python3 scripts/model_report.py [models/four_things.bww]
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from bww.semantics import derive_events, state_space_of  # noqa: E402
from bww.syntax import load_file  # noqa: E402
from bww.validator import validate  # noqa: E402

DEFAULT = Path(__file__).resolve().parent.parent / "models" / "four_things.bww"


def report(path: Path) -> None:
    model = load_file(path)
    print(f"model {model.name}: {len(model.non_null_things())} things, "
          f"{len(model.properties)} properties, {len(model.schemas)} schemas")
    for t in model.non_null_things():
        print(f"\n{t.name}")
        print("  properties:", ", ".join(sorted(t.possessed)))
        print("  states:    ", ", ".join(sorted(state_space_of(model, t))))
        for s in sorted(model.schemas.values(), key=lambda s: s.name):
            if s.describes == t.name:
                print(f"  schema {s.name}({', '.join(a.represents for a in s.attributes)})")
        events = derive_events(model, t)
        if events:
            print("  events:    ", " ".join(str(e) for e in events))
    diags = validate(model)
    print(f"\n{len(diags)} diagnostic(s)")
    for d in diags:
        print(" ", d.render(color=False))


if __name__ == "__main__":
    report(Path(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT)

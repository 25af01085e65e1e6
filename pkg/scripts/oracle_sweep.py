"""Randomized sweeps comparing library results with brute-force oracles.

    python3 scripts/oracle_sweep.py --histories 5000 --closures 1000 --seed 1

Prints case counts, disagreements and timings for the event and closure
sweeps.  Exits 1 if any disagreement is found.
"""
import argparse
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from bww.kernel import ModelBuilder  # noqa: E402
from bww.semantics import is_event, is_in, precedes_closure  # noqa: E402
from tests import oracles  # noqa: E402


@dataclass
class SweepConfig:
    histories: int = 1000
    max_length: int = 8
    max_tick: int = 20
    max_states: int = 5
    closures: int = 200
    max_properties: int = 10
    seed: int = 0


def event_sweep(cfg: SweepConfig, rng: random.Random) -> tuple[int, int]:
    ticks = range(cfg.max_tick + 2)
    checks = bad = 0
    for _ in range(cfg.histories):
        states = [f"s{i}" for i in range(rng.randint(1, cfg.max_states))]
        times = sorted(rng.sample(range(cfg.max_tick + 1), rng.randint(0, cfg.max_length)))
        b = ModelBuilder().property("P").thing("x", ["P"]).states("x", states)
        if times:
            b.history("x", [(rng.choice(states), t) for t in times])
        model = b.build()
        table = {(s, t): is_in(model, "x", s, t) for s in states for t in ticks}
        for s1 in states:
            for s2 in states:
                checks += 1
                want = oracles.event_formula(lambda s, t: table[s, t], states, ticks, s1, s2)
                bad += is_event(model, "x", s1, s2) != want
    return checks, bad


def closure_sweep(cfg: SweepConfig, rng: random.Random) -> tuple[int, int]:
    bad = 0
    for _ in range(cfg.closures):
        names = [f"P{i}" for i in range(rng.randint(1, cfg.max_properties))]
        pairs = {(rng.choice(names), rng.choice(names)) for _ in range(rng.randint(0, 2 * len(names)))}
        b = ModelBuilder()
        for n in names:
            b.property(n)
        for a, c in sorted(pairs):
            b.precedes(a, c)
        bad += set(precedes_closure(b.build())) != oracles.naive_closure(names, pairs)
    return cfg.closures, bad


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = SweepConfig()
    for name, value in vars(defaults).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=value)
    cfg = SweepConfig(**vars(ap.parse_args(argv)))
    rng = random.Random(cfg.seed)
    failed = False
    for label, sweep in (("event", event_sweep), ("closure", closure_sweep)):
        start = time.perf_counter()
        cases, bad = sweep(cfg, rng)
        print(f"{label:8} cases={cases:7d} disagreements={bad} time={time.perf_counter() - start:.2f}s")
        failed |= bad > 0
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

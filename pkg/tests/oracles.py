"""Brute-force reference implementations used only by the tests.

Each oracle evaluates a definition directly (quantifiers as loops, closure as
a fixed point) and deliberately shares no code with the library paths it is
compared against.
"""
from itertools import product


def event_formula(is_in, states, ticks, s1, s2):
    """The quantified change definition, evaluated over a finite time range.

    s1 != s2, and for some t1 < t2 the thing is in s1 at t1 and in s2 at t2,
    with no t3 strictly between them at which it is in a third state.
    """
    if s1 == s2:
        return False
    for t1, t2 in product(ticks, ticks):
        if not (t1 < t2 and is_in(s1, t1) and is_in(s2, t2)):
            continue
        intervening = any(
            t1 < t3 < t2 and is_in(s, t3) and s != s1 and s != s2
            for s in states
            for t3 in ticks
        )
        if not intervening:
            return True
    return False


def naive_closure(nodes, pairs):
    """Reflexive-transitive closure by repeated composition until stable."""
    rel = set(pairs) | {(n, n) for n in nodes}
    while True:
        extra = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
        if not extra:
            return rel
        rel |= extra


def possession_filter(possessed, props):
    """Things whose raw possession table contains every property in ``props``."""
    return {t for t, have in possessed.items() if all(p in have for p in props)}


def flatten(term, complex_defs):
    """Atoms of a nested conjunction term (names or lists of terms)."""
    if isinstance(term, (list, tuple)):
        out = set()
        for x in term:
            out |= flatten(x, complex_defs)
        return out
    if term in complex_defs:
        return flatten(list(complex_defs[term]), complex_defs)
    return {term}

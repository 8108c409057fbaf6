"""Process-wide diagnostic counters.

These count conditions that are handled (they never fail a match or a step)
but that usually indicate a property/event mismatch worth surfacing:
a numeric constraint applied to a non-numeric value, or a negated event-type
reference reached while its arguments are still unbound.
"""

from collections import Counter

counters: Counter = Counter()

CONSTRAINT_ON_NON_NUMERIC = "constraint_on_non_numeric"
UNBOUND_NEGATION_ARGS = "unbound_negation_args"


def bump(name: str) -> None:
    counters[name] += 1


def snapshot() -> dict:
    return dict(counters)


def reset() -> None:
    counters.clear()

"""Events, event-type patterns, and the structural matching relation.

An event is a JSON-like tree (root must be a map).  An event type is a named,
parameterized pattern over such trees.  Matching is recursive containment:
a map pattern lists only the keys it requires, extra event keys are ignored;
list patterns are exact-length and element-wise; leaves are literals,
variables (unification), numeric comparisons, or the wildcard ``_``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from chatmon import diagnostics

# A Value is a plain Python JSON tree: str | int | float | bool | dict | list.
Value = Union[str, int, float, bool, dict, list]
Scalar = Union[str, int, float, bool]

WILDCARD = "_"


class MalformedEvent(ValueError):
    """Event payload rejected at ingestion (non-map root, NaN, bad keys)."""


class ArityMismatch(ValueError):
    """Event-type instantiated with the wrong number of arguments."""


@dataclass(frozen=True)
class Lit:
    """A literal scalar the event value must equal."""

    value: Scalar


@dataclass(frozen=True)
class Var:
    """A unification variable; ``_`` matches anything and never binds."""

    name: str

    def is_wildcard(self) -> bool:
        return self.name == WILDCARD


@dataclass(frozen=True)
class Cmp:
    """A numeric comparison ``<op> bound`` the event value must satisfy."""

    op: str  # one of < <= > >= = !=
    bound: float

    _OPS = {
        "<": lambda a, b: a < b,
        "<=": lambda a, b: a <= b,
        ">": lambda a, b: a > b,
        ">=": lambda a, b: a >= b,
        "=": lambda a, b: a == b,
        "!=": lambda a, b: a != b,
    }

    def holds(self, value: float) -> bool:
        return self._OPS[self.op](value, self.bound)


# A Pattern mirrors the Value tree: interior nodes are dicts (required keys
# only) or lists (exact length), leaves are Lit / Var / Cmp.
Pattern = Union[Lit, Var, Cmp, dict, list]

# Variable bindings: name -> scalar.  Never mutated by match(); extended
# copies are returned instead.
Bindings = dict


@dataclass(frozen=True)
class EventTypeDecl:
    """A named event-type: ``name(params) matches pattern``."""

    name: str
    params: tuple
    pattern: object  # Pattern

    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class Event:
    """One observation fed to the monitor; the payload root is a map."""

    payload: dict

    def __post_init__(self):
        validate_payload(self.payload)


def validate_payload(payload: Value) -> None:
    """Reject payloads the matching semantics cannot handle."""
    if not isinstance(payload, dict):
        raise MalformedEvent("event root must be a map")
    _validate_value(payload)


def _validate_value(value: Value) -> None:
    if isinstance(value, dict):
        for key, sub in value.items():
            if not isinstance(key, str) or not key:
                raise MalformedEvent(f"map keys must be nonempty strings, got {key!r}")
            _validate_value(sub)
    elif isinstance(value, list):
        for sub in value:
            _validate_value(sub)
    elif isinstance(value, float) and math.isnan(value):
        raise MalformedEvent("NaN is not a permitted event value")
    elif not isinstance(value, (str, int, float, bool)):
        raise MalformedEvent(f"unsupported value type {type(value).__name__}")


def is_scalar(value) -> bool:
    return isinstance(value, (str, int, float, bool))


def _is_number(value) -> bool:
    # bool is an int subclass in Python but not a number for matching.
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _scalar_eq(a: Scalar, b: Scalar) -> bool:
    if isinstance(a, bool) or isinstance(b, bool):
        return isinstance(a, bool) and isinstance(b, bool) and a == b
    if _is_number(a) and _is_number(b):
        return a == b
    return type(a) is type(b) and a == b


def match(pattern, value, bindings: Bindings) -> Optional[Bindings]:
    """Match an event value against a pattern under existing bindings.

    Returns the (possibly extended) bindings on success and None on failure.
    Pure: the input bindings are never mutated.
    """
    if isinstance(pattern, dict):
        if not isinstance(value, dict):
            return None
        for key, sub in pattern.items():
            if key not in value:
                return None
            bindings = match(sub, value[key], bindings)
            if bindings is None:
                return None
        return bindings
    if isinstance(pattern, list):
        if not isinstance(value, list) or len(value) != len(pattern):
            return None
        for sub_pattern, sub_value in zip(pattern, value):
            bindings = match(sub_pattern, sub_value, bindings)
            if bindings is None:
                return None
        return bindings
    if isinstance(pattern, Lit):
        return bindings if is_scalar(value) and _scalar_eq(pattern.value, value) else None
    if isinstance(pattern, Var):
        if pattern.is_wildcard():
            return bindings
        if pattern.name in bindings:
            bound = bindings[pattern.name]
            return bindings if is_scalar(value) and _scalar_eq(bound, value) else None
        if not is_scalar(value):
            return None  # variables bind scalars only
        extended = dict(bindings)
        extended[pattern.name] = value
        return extended
    if isinstance(pattern, Cmp):
        if not _is_number(value):
            diagnostics.bump(diagnostics.CONSTRAINT_ON_NON_NUMERIC)
            return None
        return bindings if pattern.holds(value) else None
    raise TypeError(f"not a pattern node: {pattern!r}")


def instantiate(decl: EventTypeDecl, args) -> Pattern:
    """Substitute arguments (scalars or Vars) for the declaration's params."""
    if len(args) != len(decl.params):
        raise ArityMismatch(
            f"{decl.name} expects {len(decl.params)} argument(s), got {len(args)}"
        )
    substitution = {}
    for param, arg in zip(decl.params, args):
        substitution[param] = arg if isinstance(arg, (Lit, Var)) else Lit(arg)
    return _substitute(decl.pattern, substitution)


def _substitute(pattern, substitution: dict):
    if isinstance(pattern, dict):
        return {key: _substitute(sub, substitution) for key, sub in pattern.items()}
    if isinstance(pattern, list):
        return [_substitute(sub, substitution) for sub in pattern]
    if isinstance(pattern, Var) and pattern.name in substitution:
        return substitution[pattern.name]
    return pattern


def pattern_vars(pattern) -> set:
    """All variable names occurring in a pattern (wildcard excluded)."""
    names: set = set()
    _collect_vars(pattern, names)
    return names


def _collect_vars(pattern, out: set) -> None:
    if isinstance(pattern, dict):
        for sub in pattern.values():
            _collect_vars(sub, out)
    elif isinstance(pattern, list):
        for sub in pattern:
            _collect_vars(sub, out)
    elif isinstance(pattern, Var) and not pattern.is_wildcard():
        out.add(pattern.name)

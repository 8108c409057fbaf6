"""Incremental monitoring engine.

The engine tracks a set of *alternatives* -- pairs of a residual term and the
variable bindings accumulated so far.  Consuming an event replaces every
alternative by its derivatives; an empty set means the trace can no longer be
extended to a trace of the property (verdict false) and is absorbing.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from chatmon import diagnostics
from chatmon.events import Event, Lit, Var, instantiate, match, _scalar_eq
from chatmon.trace import terms as T


class MonitorOverload(RuntimeError):
    """The alternative set exceeded the per-session cap."""


class VerdictValue(str, Enum):
    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    value: VerdictValue
    currently_accepting: bool
    explanation: str = ""

    def is_false(self) -> bool:
        return self.value is VerdictValue.FALSE


@dataclass(frozen=True)
class Alternative:
    """One nondeterministic branch: residual term plus bindings."""

    term: object
    bindings: tuple = ()  # sorted (name, scalar) pairs

    @staticmethod
    def make(term, bindings: dict) -> "Alternative":
        return Alternative(term, tuple(sorted(bindings.items())))

    def bindings_dict(self) -> dict:
        return dict(self.bindings)


@dataclass(frozen=True)
class MonitorState:
    spec: T.Spec = field(compare=False)
    alternatives: tuple = ()
    events_seen: int = 0
    fresh: int = 0


DEFAULT_ALTERNATIVE_CAP = 10_000


def initial_state(spec: T.Spec) -> MonitorState:
    return MonitorState(spec, (Alternative(spec.main_term()),), 0, 0)


# -- nullability -------------------------------------------------------------


def nullable(term, spec: T.Spec, _visiting: frozenset = frozenset()) -> bool:
    """Whether the empty trace belongs to the term's denotation."""
    if isinstance(term, T.Epsilon) or isinstance(term, T.Star):
        return True
    if isinstance(term, (T.Fail, T.ETRef)):
        return False
    if isinstance(term, (T.Seq, T.Shuffle, T.And)):
        return nullable(term.left, spec, _visiting) and nullable(term.right, spec, _visiting)
    if isinstance(term, T.Or):
        return nullable(term.left, spec, _visiting) or nullable(term.right, spec, _visiting)
    if isinstance(term, T.Let):
        return nullable(term.body, spec, _visiting)
    if isinstance(term, T.EqRef):
        if term.name in _visiting:
            return False
        return nullable(spec.equations[term.name], spec, _visiting | {term.name})
    raise TypeError(f"not a term: {term!r}")


# -- simplification ------------------------------------------------------------


def simplify(term, spec: T.Spec):
    """Normalize a term, removing Epsilon/Fail units. Denotation-preserving."""
    if isinstance(term, T.Seq):
        return _root(T.Seq(simplify(term.left, spec), simplify(term.right, spec)), spec)
    if isinstance(term, T.Shuffle):
        return _root(T.Shuffle(simplify(term.left, spec), simplify(term.right, spec)), spec)
    if isinstance(term, T.And):
        return _root(T.And(simplify(term.left, spec), simplify(term.right, spec)), spec)
    if isinstance(term, T.Or):
        return _root(T.Or(simplify(term.left, spec), simplify(term.right, spec)), spec)
    if isinstance(term, T.Let):
        return _root(T.Let(term.vars, simplify(term.body, spec)), spec)
    if isinstance(term, T.Star):
        return _root(T.Star(simplify(term.body, spec)), spec)
    return term


def _root(term, spec: T.Spec):
    while True:
        new = _root_once(term, spec)
        if new is term:
            return term
        term = new


def _root_once(term, spec: T.Spec):
    if isinstance(term, T.Seq):
        if isinstance(term.left, T.Fail) or isinstance(term.right, T.Fail):
            return T.FAIL
        if isinstance(term.left, T.Epsilon):
            return term.right
        if isinstance(term.right, T.Epsilon):
            return term.left
    elif isinstance(term, T.Shuffle):
        if isinstance(term.left, T.Fail) or isinstance(term.right, T.Fail):
            return T.FAIL
        if isinstance(term.left, T.Epsilon):
            return term.right
        if isinstance(term.right, T.Epsilon):
            return term.left
    elif isinstance(term, T.And):
        if isinstance(term.left, T.Fail) or isinstance(term.right, T.Fail):
            return T.FAIL
        if isinstance(term.left, T.Epsilon):
            return T.EPSILON if nullable(term.right, spec) else T.FAIL
        if isinstance(term.right, T.Epsilon):
            return T.EPSILON if nullable(term.left, spec) else T.FAIL
    elif isinstance(term, T.Or):
        if isinstance(term.left, T.Fail):
            return term.right
        if isinstance(term.right, T.Fail):
            return term.left
        if term.left == term.right:
            return term.left
    elif isinstance(term, T.Star):
        if isinstance(term.body, (T.Fail, T.Epsilon)):
            return T.EPSILON
    elif isinstance(term, T.Let):
        used = T.free_var_names(term.body) & set(term.vars)
        if not used:
            return term.body
        if len(used) < len(term.vars):
            return T.Let(tuple(v for v in term.vars if v in used), term.body)
    return term


# -- derivation ----------------------------------------------------------------


def derive(alt: Alternative, event: Event, spec: T.Spec, fresh: int = 0):
    """All alternatives reachable from ``alt`` by consuming ``event``.

    Returns ``(alternatives, fresh)`` where ``fresh`` is the advanced counter
    used to rename Let-bound variables (each pass through a binder gets fresh
    instances, so recursive unfoldings never collide).  Residual terms are
    simplified; dead branches are dropped; bindings are restricted to the
    variables the residual can still read.
    """
    results, fresh = _derive(alt.term, alt.bindings_dict(), event, spec, fresh)
    out = []
    for term, bindings in results:
        term = simplify(term, spec)
        if isinstance(term, T.Fail):
            continue
        live = T.term_var_names(term)
        bindings = {k: v for k, v in bindings.items() if k in live}
        out.append(Alternative.make(term, bindings))
    return out, fresh


def _derive(term, bindings: dict, event: Event, spec: T.Spec, fresh: int):
    if isinstance(term, T.ETRef):
        return _derive_etref(term, bindings, event, spec), fresh
    if isinstance(term, T.Seq):
        left, fresh = _derive(term.left, bindings, event, spec, fresh)
        results = [(T.Seq(l, term.right), b) for l, b in left]
        if nullable(term.left, spec):
            right, fresh = _derive(term.right, bindings, event, spec, fresh)
            results.extend(right)
        return results, fresh
    if isinstance(term, T.Shuffle):
        left, fresh = _derive(term.left, bindings, event, spec, fresh)
        results = [(T.Shuffle(l, term.right), b) for l, b in left]
        right, fresh = _derive(term.right, bindings, event, spec, fresh)
        results.extend((T.Shuffle(term.left, r), b) for r, b in right)
        return results, fresh
    if isinstance(term, T.And):
        left, fresh = _derive(term.left, bindings, event, spec, fresh)
        right, fresh = _derive(term.right, bindings, event, spec, fresh)
        results = []
        for l, bl in left:
            for r, br in right:
                merged = _unify(bl, br)
                if merged is not None:
                    results.append((T.And(l, r), merged))
        return results, fresh
    if isinstance(term, T.Or):
        left, fresh = _derive(term.left, bindings, event, spec, fresh)
        right, fresh = _derive(term.right, bindings, event, spec, fresh)
        return left + right, fresh
    if isinstance(term, T.Let):
        mapping = {}
        for name in term.vars:
            fresh += 1
            mapping[name] = f"{name}@{fresh}"
        return _derive(T.rename_vars(term.body, mapping), bindings, event, spec, fresh)
    if isinstance(term, T.Star):
        inner, fresh = _derive(term.body, bindings, event, spec, fresh)
        return [(T.Seq(t, term), b) for t, b in inner], fresh
    if isinstance(term, T.EqRef):
        return _derive(spec.equations[term.name], bindings, event, spec, fresh)
    if isinstance(term, (T.Epsilon, T.Fail)):
        return [], fresh
    raise TypeError(f"not a term: {term!r}")


def _derive_etref(term: T.ETRef, bindings: dict, event: Event, spec: T.Spec):
    decl = spec.decl(term.name)
    args = []
    unresolved = []
    for arg in term.args:
        if isinstance(arg, Var) and not arg.is_wildcard() and arg.name in bindings:
            args.append(Lit(bindings[arg.name]))
        else:
            if isinstance(arg, Var) and not arg.is_wildcard():
                unresolved.append(arg.name)
            args.append(arg)
    if term.negated:
        if unresolved:
            diagnostics.bump(diagnostics.UNBOUND_NEGATION_ARGS)
            return []
        matched = match(instantiate(decl, args), event.payload, bindings)
        return [] if matched is not None else [(T.EPSILON, bindings)]
    matched = match(instantiate(decl, args), event.payload, bindings)
    return [(T.EPSILON, matched)] if matched is not None else []


def _unify(a: dict, b: dict):
    if len(b) < len(a):
        a, b = b, a
    merged = dict(b)
    for key, value in a.items():
        if key in merged:
            if not _scalar_eq(value, merged[key]):
                return None
        else:
            merged[key] = value
    return merged


# -- stepping ------------------------------------------------------------------


def step(
    state: MonitorState,
    event: Event,
    cap: int = DEFAULT_ALTERNATIVE_CAP,
) -> tuple:
    """Consume one event; returns ``(new_state, verdict)``.

    A violated state (no alternatives) is absorbing.  A satisfied state
    (every alternative is Epsilon) means no event may follow; if one arrives
    anyway it derives to the empty set and the verdict flips to false.
    """
    count = state.events_seen + 1
    if not state.alternatives:
        return (
            replace(state, events_seen=count),
            Verdict(VerdictValue.FALSE, False, "property already violated"),
        )

    collected: dict = {}
    fresh = state.fresh
    for alt in state.alternatives:
        derived, fresh = derive(alt, event, state.spec, fresh)
        for new_alt in derived:
            collected.setdefault(new_alt, None)
        if len(collected) > cap:
            raise MonitorOverload(
                f"alternative set exceeded the cap of {cap} at event {count}"
            )
    alternatives = tuple(collected)
    new_state = replace(
        state, alternatives=alternatives, events_seen=count, fresh=fresh
    )
    return new_state, _verdict_of(new_state)


def _verdict_of(state: MonitorState) -> Verdict:
    if not state.alternatives:
        return Verdict(
            VerdictValue.FALSE,
            False,
            f"event {state.events_seen} admits no continuation of the property",
        )
    if all(isinstance(a.term, T.Epsilon) for a in state.alternatives):
        return Verdict(VerdictValue.TRUE, True, "trace completed the property")
    accepting = any(nullable(a.term, state.spec) for a in state.alternatives)
    return Verdict(VerdictValue.INCONCLUSIVE, accepting)


def verdict_of(state: MonitorState) -> Verdict:
    """Verdict of a state that has not necessarily consumed any event."""
    return _verdict_of(state)

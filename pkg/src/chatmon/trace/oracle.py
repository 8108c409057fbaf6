"""Brute-force trace membership, used only by the test suite.

Implements the denotational semantics directly: sequence tries every split
point, shuffle tries every interleaving, iteration and equations unfold up to
a depth budget.  Exponential; never used by the engine.

Variable bindings are threaded left operand first through shuffle and
intersection, matching the engine's event-order unification for the shipped
corpus.  Terms where only the right operand binds a variable that the left
operand reads are outside this oracle's scope.
"""

from __future__ import annotations

from chatmon import diagnostics
from chatmon.events import Event, Lit, Var, instantiate, match
from chatmon.trace import terms as T


class DepthExceeded(RuntimeError):
    """The unfolding budget ran out before membership was decided."""


class _Fresh:
    def __init__(self):
        self.n = 0

    def next(self, base: str) -> str:
        self.n += 1
        return f"{base}~{self.n}"


def oracle_member(trace, term, spec: T.Spec, depth: int) -> bool:
    """Whether ``trace`` is in the denotation of ``term`` (``depth`` unfoldings)."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    trace = tuple(trace)
    return bool(_member(trace, term, {}, spec, depth, _Fresh()))


def _dedup(bindings_list):
    seen = set()
    out = []
    for b in bindings_list:
        key = frozenset(b.items())
        if key not in seen:
            seen.add(key)
            out.append(b)
    return out


def _member(trace: tuple, term, b: dict, spec: T.Spec, depth: int, fresh: _Fresh):
    """All binding extensions under which ``trace`` is denoted by ``term``."""
    if isinstance(term, T.Epsilon):
        return [b] if not trace else []
    if isinstance(term, T.Fail):
        return []
    if isinstance(term, T.ETRef):
        if len(trace) != 1:
            return []
        return _match_etref(term, trace[0], b, spec)
    if isinstance(term, T.Seq):
        out = []
        for i in range(len(trace) + 1):
            for b1 in _member(trace[:i], term.left, b, spec, depth, fresh):
                out.extend(_member(trace[i:], term.right, b1, spec, depth, fresh))
        return _dedup(out)
    if isinstance(term, T.Shuffle):
        out = []
        n = len(trace)
        for mask in range(1 << n):
            left = tuple(trace[i] for i in range(n) if mask & (1 << i))
            right = tuple(trace[i] for i in range(n) if not mask & (1 << i))
            for b1 in _member(left, term.left, b, spec, depth, fresh):
                out.extend(_member(right, term.right, b1, spec, depth, fresh))
        return _dedup(out)
    if isinstance(term, T.And):
        out = []
        for b1 in _member(trace, term.left, b, spec, depth, fresh):
            out.extend(_member(trace, term.right, b1, spec, depth, fresh))
        return _dedup(out)
    if isinstance(term, T.Or):
        return _dedup(
            _member(trace, term.left, b, spec, depth, fresh)
            + _member(trace, term.right, b, spec, depth, fresh)
        )
    if isinstance(term, T.Let):
        mapping = {name: fresh.next(name) for name in term.vars}
        return _member(trace, T.rename_vars(term.body, mapping), b, spec, depth, fresh)
    if isinstance(term, T.Star):
        if not trace:
            return [b]
        if depth <= 0:
            raise DepthExceeded("iteration budget exhausted")
        out = []
        for i in range(1, len(trace) + 1):
            for b1 in _member(trace[:i], term.body, b, spec, depth, fresh):
                out.extend(_member(trace[i:], term, b1, spec, depth - 1, fresh))
        return _dedup(out)
    if isinstance(term, T.EqRef):
        if depth <= 0:
            raise DepthExceeded("equation unfolding budget exhausted")
        return _member(trace, spec.equations[term.name], b, spec, depth - 1, fresh)
    raise TypeError(f"not a term: {term!r}")


def _match_etref(term: T.ETRef, event: Event, b: dict, spec: T.Spec):
    decl = spec.decl(term.name)
    args = []
    unresolved = False
    for arg in term.args:
        if isinstance(arg, Var) and not arg.is_wildcard() and arg.name in b:
            args.append(Lit(b[arg.name]))
        else:
            if isinstance(arg, Var) and not arg.is_wildcard():
                unresolved = True
            args.append(arg)
    if term.negated:
        if unresolved:
            diagnostics.bump(diagnostics.UNBOUND_NEGATION_ARGS)
            return []
        matched = match(instantiate(decl, args), event.payload, b)
        return [b] if matched is None else []
    matched = match(instantiate(decl, args), event.payload, b)
    return [matched] if matched is not None else []

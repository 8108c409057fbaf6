"""The term algebra for trace-expression properties.

A term denotes a set of event traces.  Event-type references consume one
matching event; ``Seq`` concatenates, ``Shuffle`` interleaves, ``And``/``Or``
intersect/union, ``Let`` opens a variable scope, ``Star`` iterates, and
``EqRef`` names a (guarded) recursive equation.  ``Epsilon`` and ``Fail`` are
internal normal forms produced by the engine, not surface syntax.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from chatmon.events import EventTypeDecl, Lit, Var


@dataclass(frozen=True)
class ETRef:
    name: str
    args: tuple = ()  # of Lit | Var
    negated: bool = False


@dataclass(frozen=True)
class Seq:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Shuffle:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class And:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Or:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Let:
    vars: tuple  # of str
    body: "Term"


@dataclass(frozen=True)
class Star:
    body: "Term"


@dataclass(frozen=True)
class EqRef:
    name: str


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Fail:
    pass


EPSILON = Epsilon()
FAIL = Fail()

Term = Union[ETRef, Seq, Shuffle, And, Or, Let, Star, EqRef, Epsilon, Fail]

_BINARY = (Seq, Shuffle, And, Or)


@dataclass
class Spec:
    """A complete property: event-type declarations, equations, entry point."""

    event_types: dict = field(default_factory=dict)  # name -> EventTypeDecl
    equations: dict = field(default_factory=dict)  # name -> Term
    main: str = ""

    def main_term(self) -> Term:
        return EqRef(self.main)

    def decl(self, name: str) -> EventTypeDecl:
        return self.event_types[name]


def children(term: Term) -> tuple:
    if isinstance(term, _BINARY):
        return (term.left, term.right)
    if isinstance(term, (Let, Star)):
        return (term.body,)
    return ()


def term_var_names(term: Term) -> set:
    """Variable names used as event-type arguments anywhere in the term."""
    names: set = set()
    _collect(term, names)
    return names


def _collect(term: Term, out: set) -> None:
    if isinstance(term, ETRef):
        out.update(a.name for a in term.args if isinstance(a, Var) and not a.is_wildcard())
        return
    if isinstance(term, Let):
        _collect(term.body, out)
        return
    for child in children(term):
        _collect(child, out)


def free_var_names(term: Term) -> set:
    """Variable names not bound by an enclosing Let within the term."""
    if isinstance(term, ETRef):
        return {a.name for a in term.args if isinstance(a, Var) and not a.is_wildcard()}
    if isinstance(term, Let):
        return free_var_names(term.body) - set(term.vars)
    names: set = set()
    for child in children(term):
        names |= free_var_names(child)
    return names


def rename_vars(term: Term, mapping: dict) -> Term:
    """Alpha-rename variable occurrences; inner Lets shadow as usual."""
    if not mapping:
        return term
    if isinstance(term, ETRef):
        args = tuple(
            Var(mapping[a.name])
            if isinstance(a, Var) and a.name in mapping and not a.is_wildcard()
            else a
            for a in term.args
        )
        return ETRef(term.name, args, term.negated) if args != term.args else term
    if isinstance(term, Let):
        inner = {k: v for k, v in mapping.items() if k not in term.vars}
        body = rename_vars(term.body, inner)
        return Let(term.vars, body) if body is not term.body else term
    if isinstance(term, Seq):
        return Seq(rename_vars(term.left, mapping), rename_vars(term.right, mapping))
    if isinstance(term, Shuffle):
        return Shuffle(rename_vars(term.left, mapping), rename_vars(term.right, mapping))
    if isinstance(term, And):
        return And(rename_vars(term.left, mapping), rename_vars(term.right, mapping))
    if isinstance(term, Or):
        return Or(rename_vars(term.left, mapping), rename_vars(term.right, mapping))
    if isinstance(term, Star):
        return Star(rename_vars(term.body, mapping))
    return term

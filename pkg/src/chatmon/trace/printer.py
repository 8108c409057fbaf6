"""Canonical pretty-printer for specs, terms, and patterns.

``parse(print_spec(spec))`` reproduces the spec structurally; the printed
form is the normalized layout (one declaration per line, minimal parentheses).
"""

from __future__ import annotations

import json

from chatmon.events import Cmp, EventTypeDecl, Lit, Var
from chatmon.trace import terms as T

_IDENT_OK = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")

# Binding strength, loosest to tightest.
_LEVEL_OR = 0
_LEVEL_AND = 1
_LEVEL_SHUFFLE = 2
_LEVEL_SEQ = 3
_LEVEL_STAR = 4
_LEVEL_ATOM = 5


def _scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return json.dumps(value)
    return repr(value)


def print_pattern(pattern) -> str:
    if isinstance(pattern, dict):
        parts = []
        for key, sub in pattern.items():
            printable = key if key and all(c in _IDENT_OK for c in key) and not key[0].isdigit() else json.dumps(key)
            parts.append(f"{printable}: {print_pattern(sub)}")
        return "{" + ", ".join(parts) + "}"
    if isinstance(pattern, list):
        return "[" + ", ".join(print_pattern(sub) for sub in pattern) + "]"
    if isinstance(pattern, Lit):
        return _scalar(pattern.value)
    if isinstance(pattern, Var):
        return pattern.name
    if isinstance(pattern, Cmp):
        return f"{pattern.op} {repr(pattern.bound)}"
    raise TypeError(f"not a pattern node: {pattern!r}")


def _arg(arg) -> str:
    if isinstance(arg, Lit):
        return _scalar(arg.value)
    return arg.name


def _level(term) -> int:
    if isinstance(term, T.Or):
        return _LEVEL_OR
    if isinstance(term, T.And):
        return _LEVEL_AND
    if isinstance(term, T.Shuffle):
        return _LEVEL_SHUFFLE
    if isinstance(term, T.Seq):
        return _LEVEL_SEQ
    if isinstance(term, T.Star):
        return _LEVEL_STAR
    return _LEVEL_ATOM


def print_term(term) -> str:
    return _print(term, 0)


def _child(term, minimum: int) -> str:
    text = _print(term, minimum)
    if _level(term) < minimum:
        return f"({text})"
    return text


def _print(term, _minimum: int) -> str:
    if isinstance(term, T.Or):
        return f"{_child(term.left, _LEVEL_OR)} \\/ {_child(term.right, _LEVEL_OR + 1)}"
    if isinstance(term, T.And):
        return f"{_child(term.left, _LEVEL_AND)} /\\ {_child(term.right, _LEVEL_AND + 1)}"
    if isinstance(term, T.Shuffle):
        return f"{_child(term.left, _LEVEL_SHUFFLE)} | {_child(term.right, _LEVEL_SHUFFLE + 1)}"
    if isinstance(term, T.Seq):
        return f"{_child(term.left, _LEVEL_SEQ)} {_child(term.right, _LEVEL_SEQ + 1)}"
    if isinstance(term, T.Star):
        return f"{_child(term.body, _LEVEL_STAR)}*"
    if isinstance(term, T.Let):
        return f"let {', '.join(term.vars)} {{ {_print(term.body, 0)} }}"
    if isinstance(term, T.ETRef):
        bang = "!" if term.negated else ""
        if term.args:
            return f"{bang}{term.name}({', '.join(_arg(a) for a in term.args)})"
        return f"{bang}{term.name}"
    if isinstance(term, T.EqRef):
        return term.name
    if isinstance(term, T.Epsilon):
        raise ValueError("Epsilon has no surface syntax")
    if isinstance(term, T.Fail):
        raise ValueError("Fail has no surface syntax")
    raise TypeError(f"not a term: {term!r}")


def print_decl(decl: EventTypeDecl) -> str:
    params = f"({', '.join(decl.params)})" if decl.params else ""
    return f"type {decl.name}{params} matches {print_pattern(decl.pattern)};"


def print_spec(spec: T.Spec) -> str:
    lines = [f"main {spec.main};"]
    for decl in spec.event_types.values():
        lines.append(print_decl(decl))
    for name, body in spec.equations.items():
        lines.append(f"{name} = {print_term(body)};")
    return "\n".join(lines) + "\n"

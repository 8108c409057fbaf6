"""Parser for property files (``.prop``).

The surface syntax is line-oriented ASCII::

    main AddObject;
    type add_object(x, y) matches {intent: {name: "add_object"},
                                   slots: {horizontal: x, vertical: y}};
    AddObject = (let x, y { ... }) \\/ !add_with_coords AddObject;

Declarations (in any order):

* ``type NAME(params) matches PATTERN;`` -- an event-type declaration.
  ``(params)`` may be omitted when empty.
* ``NAME = TERM;`` -- an equation.  Equations take no parameters.
* ``main NAME;`` -- entry equation.  May be omitted when there is exactly
  one equation.

Terms, loosest to tightest: ``\\/`` (union), ``/\\`` (intersection), ``|``
(shuffle), juxtaposition (sequence), postfix ``*`` (iteration).  Atoms are
``(TERM)``, ``let x, y { TERM }``, and ``[!]name(args)`` where a name
resolves to an event type (argument list allowed) or an equation (bare).
``!`` negates an event-type reference.

Patterns are JSON-like maps/lists whose leaves are scalars, variables,
the wildcard ``_``, or numeric comparisons such as ``>= 0.6``.
``//`` starts a line comment.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from chatmon.events import Cmp, EventTypeDecl, Lit, Var, pattern_vars
from chatmon.trace import terms as T
from chatmon.trace.engine import nullable

KEYWORDS = {"type", "matches", "main", "let", "true", "false"}
_PUNCT2 = ("/\\", "\\/", "<=", ">=", "!=")
_PUNCT1 = "(){}[],;:=*!|<>"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class SpecError(ValueError):
    """Structurally invalid specification (resolution, arity, guardedness)."""


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT NUMBER STRING PUNCT EOF
    text: str
    value: object
    line: int
    col: int


def _tokenize(text: str):
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r":
            i, col = i + 1, col + 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            tokens.append(Token("IDENT", word, word, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and (text[j].isdigit() or text[j] in ".eE" or (text[j] in "+-" and text[j - 1] in "eE")):
                j += 1
            raw = text[i:j]
            try:
                value = int(raw)
            except ValueError:
                try:
                    value = float(raw)
                except ValueError:
                    raise ParseError(f"bad number {raw!r}", start_line, start_col) from None
            tokens.append(Token("NUMBER", raw, value, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] != '"':
                j += 2 if text[j] == "\\" else 1
            if j >= n:
                raise ParseError("unterminated string", start_line, start_col)
            raw = text[i : j + 1]
            try:
                value = json.loads(raw)
            except json.JSONDecodeError:
                raise ParseError(f"bad string literal {raw}", start_line, start_col) from None
            tokens.append(Token("STRING", raw, value, start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        two = text[i : i + 2]
        if two in _PUNCT2:
            tokens.append(Token("PUNCT", two, two, start_line, start_col))
            i, col = i + 2, col + 2
            continue
        if ch in _PUNCT1:
            tokens.append(Token("PUNCT", ch, ch, start_line, start_col))
            i, col = i + 1, col + 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", None, line, col))
    return tokens


@dataclass(frozen=True)
class _Ref:
    """Unresolved name use inside a term; fixed up after all decls are read."""

    name: str
    args: tuple
    has_args: bool
    negated: bool
    line: int
    col: int


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            self.error(f"expected {text!r}, got {tok.text or 'end of input'!r}", tok)
        return tok

    def at(self, text: str) -> bool:
        return self.peek().text == text

    def ident(self, what: str = "name") -> Token:
        tok = self.next()
        if tok.kind != "IDENT" or tok.text in KEYWORDS:
            self.error(f"expected {what}, got {tok.text or 'end of input'!r}", tok)
        return tok

    # -- declarations -----------------------------------------------------

    def parse_spec(self) -> T.Spec:
        event_types: dict = {}
        equations: dict = {}
        mains: list = []
        while self.peek().kind != "EOF":
            tok = self.peek()
            if tok.text == "type":
                decl, pos = self.parse_event_type()
                if decl.name in event_types or decl.name in equations:
                    self.error(f"duplicate name {decl.name!r}", pos)
                event_types[decl.name] = decl
            elif tok.text == "main":
                self.next()
                name = self.ident("equation name")
                self.expect(";")
                mains.append((name.text, name))
            else:
                name = self.ident("declaration")
                self.expect("=")
                body = self.parse_term()
                self.expect(";")
                if name.text in equations or name.text in event_types:
                    self.error(f"duplicate name {name.text!r}", name)
                equations[name.text] = body
        if len(mains) > 1:
            self.error("more than one main declaration", mains[1][1])
        if mains:
            main = mains[0][0]
        elif len(equations) == 1:
            main = next(iter(equations))
        else:
            raise SpecError("no main declaration and more than one equation")
        spec = T.Spec(event_types=event_types, equations=equations, main=main)
        _resolve(spec)
        _check_guarded(spec)
        return spec

    def parse_event_type(self):
        start = self.expect("type")
        name = self.ident("event-type name")
        params: list = []
        if self.at("("):
            self.next()
            if not self.at(")"):
                while True:
                    p = self.ident("parameter")
                    if p.text in params:
                        self.error(f"duplicate parameter {p.text!r}", p)
                    params.append(p.text)
                    if self.at(","):
                        self.next()
                        continue
                    break
            self.expect(")")
        self.expect("matches")
        pattern = self.parse_pattern()
        self.expect(";")
        missing = set(params) - pattern_vars(pattern)
        if missing:
            self.error(
                f"parameter(s) {', '.join(sorted(missing))} never used in the pattern of {name.text!r}",
                name,
            )
        return EventTypeDecl(name.text, tuple(params), pattern), start

    # -- terms ------------------------------------------------------------

    def parse_term(self):
        term = self.parse_and()
        while self.at("\\/"):
            self.next()
            term = T.Or(term, self.parse_and())
        return term

    def parse_and(self):
        term = self.parse_shuffle()
        while self.at("/\\"):
            self.next()
            term = T.And(term, self.parse_shuffle())
        return term

    def parse_shuffle(self):
        term = self.parse_seq()
        while self.at("|"):
            self.next()
            term = T.Shuffle(term, self.parse_seq())
        return term

    def _at_atom_start(self) -> bool:
        tok = self.peek()
        return tok.text in ("(", "let", "!") or (
            tok.kind == "IDENT" and tok.text not in KEYWORDS
        )

    def parse_seq(self):
        term = self.parse_star()
        while self._at_atom_start():
            term = T.Seq(term, self.parse_star())
        return term

    def parse_star(self):
        term = self.parse_atom()
        while self.at("*"):
            self.next()
            term = T.Star(term)
        return term

    def parse_atom(self):
        tok = self.peek()
        if tok.text == "(":
            self.next()
            term = self.parse_term()
            self.expect(")")
            return term
        if tok.text == "let":
            self.next()
            names: list = []
            while True:
                v = self.ident("variable")
                if v.text in names:
                    self.error(f"duplicate let variable {v.text!r}", v)
                names.append(v.text)
                if self.at(","):
                    self.next()
                    continue
                break
            self.expect("{")
            body = self.parse_term()
            self.expect("}")
            return T.Let(tuple(names), body)
        negated = False
        if tok.text == "!":
            self.next()
            negated = True
        name = self.ident("event type or equation")
        args: list = []
        has_args = False
        # An argument list must touch its name: "add_object(x, y)".  A spaced
        # "(" starts the next sequence element instead.
        opener = self.peek()
        if (
            opener.text == "("
            and opener.line == name.line
            and opener.col == name.col + len(name.text)
        ):
            has_args = True
            self.next()
            if not self.at(")"):
                while True:
                    args.append(self.parse_arg())
                    if self.at(","):
                        self.next()
                        continue
                    break
            self.expect(")")
        return _Ref(name.text, tuple(args), has_args, negated, name.line, name.col)

    def parse_arg(self):
        tok = self.next()
        if tok.kind == "IDENT":
            if tok.text == "true":
                return Lit(True)
            if tok.text == "false":
                return Lit(False)
            if tok.text in KEYWORDS:
                self.error(f"expected argument, got keyword {tok.text!r}", tok)
            return Var(tok.text)
        if tok.kind in ("NUMBER", "STRING"):
            return Lit(tok.value)
        self.error(f"expected argument, got {tok.text!r}", tok)

    # -- patterns ----------------------------------------------------------

    def parse_pattern(self):
        tok = self.peek()
        if tok.text == "{":
            self.next()
            result: dict = {}
            if not self.at("}"):
                while True:
                    key = self.next()
                    if key.kind == "IDENT" and key.text not in ("true", "false"):
                        key_name = key.text
                    elif key.kind == "STRING":
                        key_name = key.value
                    else:
                        self.error(f"expected map key, got {key.text!r}", key)
                    if not key_name:
                        self.error("map keys must be nonempty", key)
                    if key_name in result:
                        self.error(f"duplicate map key {key_name!r}", key)
                    self.expect(":")
                    result[key_name] = self.parse_pattern()
                    if self.at(","):
                        self.next()
                        continue
                    break
            self.expect("}")
            return result
        if tok.text == "[":
            self.next()
            items: list = []
            if not self.at("]"):
                while True:
                    items.append(self.parse_pattern())
                    if self.at(","):
                        self.next()
                        continue
                    break
            self.expect("]")
            return items
        if tok.text in ("<", "<=", ">", ">=", "=", "!="):
            op = self.next().text
            num = self.next()
            if num.kind != "NUMBER":
                self.error(f"comparison bound must be a number, got {num.text!r}", num)
            return Cmp(op, num.value)
        if tok.kind == "NUMBER" or tok.kind == "STRING":
            return Lit(self.next().value)
        if tok.kind == "IDENT":
            self.next()
            if tok.text == "true":
                return Lit(True)
            if tok.text == "false":
                return Lit(False)
            if tok.text in KEYWORDS:
                self.error(f"expected pattern, got keyword {tok.text!r}", tok)
            return Var(tok.text)
        self.error(f"expected pattern, got {tok.text or 'end of input'!r}", tok)


# -- name resolution and well-formedness -----------------------------------


def _resolve(spec: T.Spec) -> None:
    spec.equations = {
        name: _resolve_term(body, spec, name) for name, body in spec.equations.items()
    }
    if spec.main not in spec.equations:
        raise SpecError(f"main equation {spec.main!r} is not declared")


def _resolve_term(term, spec: T.Spec, equation: str):
    if isinstance(term, _Ref):
        if term.name in spec.event_types:
            decl = spec.event_types[term.name]
            if len(term.args) != decl.arity():
                raise SpecError(
                    f"{term.line}:{term.col}: {term.name!r} expects {decl.arity()} "
                    f"argument(s), got {len(term.args)}"
                )
            return T.ETRef(term.name, term.args, term.negated)
        if term.name in spec.equations:
            if term.negated:
                raise SpecError(
                    f"{term.line}:{term.col}: cannot negate equation {term.name!r}"
                )
            if term.has_args:
                raise SpecError(
                    f"{term.line}:{term.col}: equation {term.name!r} takes no arguments"
                )
            return T.EqRef(term.name)
        raise SpecError(f"{term.line}:{term.col}: unresolved name {term.name!r}")
    if isinstance(term, T.Seq):
        return T.Seq(_resolve_term(term.left, spec, equation), _resolve_term(term.right, spec, equation))
    if isinstance(term, T.Shuffle):
        return T.Shuffle(_resolve_term(term.left, spec, equation), _resolve_term(term.right, spec, equation))
    if isinstance(term, T.And):
        return T.And(_resolve_term(term.left, spec, equation), _resolve_term(term.right, spec, equation))
    if isinstance(term, T.Or):
        return T.Or(_resolve_term(term.left, spec, equation), _resolve_term(term.right, spec, equation))
    if isinstance(term, T.Let):
        return T.Let(term.vars, _resolve_term(term.body, spec, equation))
    if isinstance(term, T.Star):
        return T.Star(_resolve_term(term.body, spec, equation))
    return term


def _head_refs(term, spec: T.Spec) -> set:
    """Equations reachable at the head of ``term`` before any event is consumed."""
    if isinstance(term, T.EqRef):
        return {term.name}
    if isinstance(term, T.Seq):
        heads = _head_refs(term.left, spec)
        if nullable(term.left, spec):
            heads |= _head_refs(term.right, spec)
        return heads
    if isinstance(term, (T.Shuffle, T.And, T.Or)):
        return _head_refs(term.left, spec) | _head_refs(term.right, spec)
    if isinstance(term, (T.Let, T.Star)):
        return _head_refs(term.body, spec)
    return set()


def _check_guarded(spec: T.Spec) -> None:
    edges = {name: _head_refs(body, spec) for name, body in spec.equations.items()}
    for start in spec.equations:
        seen: set = set()
        stack = list(edges[start])
        while stack:
            name = stack.pop()
            if name == start:
                raise SpecError(
                    f"equation {start!r} is not guarded: it can re-enter itself "
                    "without consuming an event"
                )
            if name in seen:
                continue
            seen.add(name)
            stack.extend(edges[name])


def parse(text: str) -> T.Spec:
    """Parse property text into a validated Spec."""
    return _Parser(text).parse_spec()


def parse_file(path) -> T.Spec:
    with open(path, "r", encoding="utf-8") as handle:
        return parse(handle.read())

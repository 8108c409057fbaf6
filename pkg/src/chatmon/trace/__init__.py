"""The trace-expression property language and its incremental engine."""

from chatmon.trace.terms import (
    ETRef,
    Seq,
    Shuffle,
    And,
    Or,
    Let,
    Star,
    EqRef,
    Epsilon,
    Fail,
    EPSILON,
    FAIL,
    Spec,
)
from chatmon.trace.parser import parse, parse_file, ParseError, SpecError
from chatmon.trace.printer import print_spec, print_term, print_pattern
from chatmon.trace.engine import (
    Alternative,
    MonitorState,
    Verdict,
    VerdictValue,
    MonitorOverload,
    nullable,
    simplify,
    derive,
    step,
    initial_state,
)
from chatmon.trace.oracle import oracle_member, DepthExceeded

__all__ = [
    "ETRef",
    "Seq",
    "Shuffle",
    "And",
    "Or",
    "Let",
    "Star",
    "EqRef",
    "Epsilon",
    "Fail",
    "EPSILON",
    "FAIL",
    "Spec",
    "parse",
    "parse_file",
    "ParseError",
    "SpecError",
    "print_spec",
    "print_term",
    "print_pattern",
    "Alternative",
    "MonitorState",
    "Verdict",
    "VerdictValue",
    "MonitorOverload",
    "nullable",
    "simplify",
    "derive",
    "step",
    "initial_state",
    "oracle_member",
    "DepthExceeded",
]

"""Runtime verification for intent-based chatbots.

The package is organized around four pieces:

* :mod:`chatmon.events` -- observation events and structural pattern matching.
* :mod:`chatmon.trace`  -- the trace-expression property language: parser,
  canonical printer, incremental derivative engine, and a brute-force
  membership oracle used by the test suite.
* :mod:`chatmon.service` -- the monitor as a session-oriented network service.
* :mod:`chatmon.chatbot` -- a deterministic intent-based chatbot for a factory
  floor scenario, instrumented so every intent and action is checked by the
  monitor before it takes effect.
* :mod:`chatmon.harness` -- the operator CLI: serve, chat, batch replay with
  timing, and overhead reports.
"""

from chatmon.events import Event, EventTypeDecl, Lit, Var, Cmp, match, instantiate
from chatmon.trace import parse, parse_file, print_spec, Spec, MonitorState, Verdict, step

__version__ = "0.1.0"

__all__ = [
    "Event",
    "EventTypeDecl",
    "Lit",
    "Var",
    "Cmp",
    "match",
    "instantiate",
    "parse",
    "parse_file",
    "print_spec",
    "Spec",
    "MonitorState",
    "Verdict",
    "step",
    "__version__",
]

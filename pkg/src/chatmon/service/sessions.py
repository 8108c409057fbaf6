"""Monitor sessions: one property instance per session, events in, verdicts out.

Events within a session are serialized behind a per-session lock; distinct
sessions share nothing but the immutable spec table.  At the ``dummy`` level
the protocol shape is identical but every verdict is ``true`` and no stepping
happens, which isolates transport cost in overhead benchmarks.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from chatmon.events import Event, MalformedEvent
from chatmon.trace import Spec
from chatmon.trace.engine import (
    DEFAULT_ALTERNATIVE_CAP,
    MonitorOverload,
    MonitorState,
    Verdict,
    initial_state,
    step,
    verdict_of,
)

LEVEL_REAL = "real"
LEVEL_DUMMY = "dummy"
LEVEL_NONE = "none"


class UnknownSpec(KeyError):
    pass


class UnknownSession(KeyError):
    pass


class SessionErrored(RuntimeError):
    """The session previously hit the alternative cap and is unusable."""


def verdict_payload(verdict: Verdict) -> dict:
    return {
        "verdict": verdict.value.value,
        "currently_accepting": verdict.currently_accepting,
        "explanation": verdict.explanation,
    }


_DUMMY_PAYLOAD = {"verdict": "true", "currently_accepting": True, "explanation": ""}


@dataclass
class Session:
    id: str
    spec_name: str
    state: MonitorState
    created_at: float
    last_verdict: dict
    event_log: list = field(default_factory=list)  # of {"event":..., "verdict":...}
    generation: int = 0
    error: str = ""
    lock: threading.Lock = field(default_factory=threading.Lock)

    def events_seen(self) -> int:
        return len(self.event_log)


class SessionManager:
    def __init__(
        self,
        specs: dict,
        level: str = LEVEL_REAL,
        alternative_cap: int = DEFAULT_ALTERNATIVE_CAP,
        log_dir=None,
    ):
        if level not in (LEVEL_REAL, LEVEL_DUMMY):
            raise ValueError(f"service level must be real or dummy, got {level!r}")
        self.specs = dict(specs)
        self.level = level
        self.alternative_cap = alternative_cap
        self.log_dir = Path(log_dir) if log_dir else None
        self._sessions: dict = {}
        self._registry_lock = threading.Lock()
        if self.log_dir:
            self.log_dir.mkdir(parents=True, exist_ok=True)

    # -- lifecycle ---------------------------------------------------------

    def create_session(self, spec_name: str) -> Session:
        if spec_name not in self.specs:
            raise UnknownSpec(spec_name)
        state = initial_state(self.specs[spec_name])
        session = Session(
            id=uuid.uuid4().hex,
            spec_name=spec_name,
            state=state,
            created_at=time.time(),
            last_verdict=self._initial_payload(spec_name, state),
        )
        with self._registry_lock:
            self._sessions[session.id] = session
        return session

    def _initial_payload(self, spec_name: str, state: MonitorState) -> dict:
        if self.level == LEVEL_DUMMY:
            return dict(_DUMMY_PAYLOAD)
        return verdict_payload(verdict_of(state))

    def session(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise UnknownSession(session_id) from None

    def session_ids(self) -> list:
        return list(self._sessions)

    # -- operations ----------------------------------------------------------

    def send_event(self, session_id: str, payload) -> dict:
        session = self.session(session_id)
        with session.lock:
            if session.error:
                raise SessionErrored(session.error)
            event = Event(payload)  # raises MalformedEvent on bad payloads
            if self.level == LEVEL_DUMMY:
                verdict = dict(_DUMMY_PAYLOAD)
            else:
                try:
                    session.state, raw = step(
                        session.state, event, cap=self.alternative_cap
                    )
                except MonitorOverload as exc:
                    session.error = str(exc)
                    raise
                verdict = verdict_payload(raw)
                if raw.explanation:
                    verdict["explanation"] = (
                        f"property '{session.spec_name}': {raw.explanation}"
                    )
            session.last_verdict = verdict
            entry = {"event": payload, "verdict": verdict}
            session.event_log.append(entry)
            self._append_log_file(session, entry)
            return verdict

    def reset(self, session_id: str) -> dict:
        session = self.session(session_id)
        with session.lock:
            session.state = initial_state(self.specs[session.spec_name])
            session.event_log.clear()
            session.error = ""
            session.generation += 1
            session.last_verdict = self._initial_payload(session.spec_name, session.state)
            return session.last_verdict

    def log(self, session_id: str) -> dict:
        session = self.session(session_id)
        with session.lock:
            return {
                "generation": session.generation,
                "entries": list(session.event_log),
            }

    def _append_log_file(self, session: Session, entry: dict) -> None:
        if not self.log_dir:
            return
        path = self.log_dir / f"{session.id}.jsonl"
        with open(path, "a", encoding="utf-8") as handle:
            handle.write(json.dumps(entry, separators=(",", ":")) + "\n")


__all__ = [
    "Session",
    "SessionManager",
    "UnknownSpec",
    "UnknownSession",
    "SessionErrored",
    "MalformedEvent",
    "verdict_payload",
    "LEVEL_REAL",
    "LEVEL_DUMMY",
    "LEVEL_NONE",
]

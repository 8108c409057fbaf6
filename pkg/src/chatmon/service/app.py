"""HTTP/WebSocket binding of the monitor service.

REST endpoints carry one event in, one verdict out; the websocket stream
replays a session's logged (event, verdict) pairs and then follows live
appends, re-starting from scratch when the session is reset.
"""

from __future__ import annotations

import asyncio
from pathlib import Path
from typing import Any

from fastapi import Body, FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse

from chatmon.events import MalformedEvent
from chatmon.trace import MonitorOverload, parse_file
from chatmon.service.sessions import (
    SessionErrored,
    SessionManager,
    UnknownSession,
    UnknownSpec,
)

_STREAM_POLL_SECONDS = 0.05


def load_spec_dir(spec_dir) -> dict:
    """Load every ``.prop`` file in a directory, keyed by file stem."""
    directory = Path(spec_dir)
    specs = {}
    for path in sorted(directory.glob("*.prop")):
        specs[path.stem] = parse_file(path)
    if not specs:
        raise FileNotFoundError(f"no .prop files in {directory}")
    return specs


def create_monitor_app(manager: SessionManager) -> FastAPI:
    app = FastAPI(title="chatmon monitor", docs_url=None, redoc_url=None)
    app.state.manager = manager

    def _error(status: int, code: str, detail: str = "") -> JSONResponse:
        return JSONResponse({"error": code, "detail": detail}, status_code=status)

    @app.get("/health")
    def health():
        return {"status": "ok", "level": manager.level, "specs": sorted(manager.specs)}

    @app.get("/specs")
    def specs():
        return {"specs": sorted(manager.specs)}

    @app.post("/sessions", status_code=201)
    def create_session(body: dict):
        name = body.get("spec", "")
        try:
            session = manager.create_session(name)
        except UnknownSpec:
            return _error(404, "unknown_spec", name)
        return {"session_id": session.id, "verdict": session.last_verdict}

    @app.post("/sessions/{session_id}/events")
    def send_event(session_id: str, body: Any = Body(...)):
        try:
            return manager.send_event(session_id, body)
        except UnknownSession:
            return _error(404, "unknown_session", session_id)
        except MalformedEvent as exc:
            return _error(400, "malformed_event", str(exc))
        except MonitorOverload as exc:
            return _error(503, "monitor_overload", str(exc))
        except SessionErrored as exc:
            return _error(503, "session_errored", str(exc))

    @app.post("/sessions/{session_id}/reset")
    def reset(session_id: str):
        try:
            verdict = manager.reset(session_id)
        except UnknownSession:
            return _error(404, "unknown_session", session_id)
        return {"ok": True, "verdict": verdict}

    @app.get("/sessions/{session_id}/log")
    def get_log(session_id: str):
        try:
            return manager.log(session_id)
        except UnknownSession:
            return _error(404, "unknown_session", session_id)

    @app.websocket("/sessions/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str):
        await websocket.accept()
        try:
            manager.session(session_id)
        except UnknownSession:
            await websocket.send_json({"type": "error", "error": "unknown_session"})
            await websocket.close()
            return
        generation = -1
        cursor = 0
        try:
            while True:
                snapshot = manager.log(session_id)
                if snapshot["generation"] != generation:
                    generation = snapshot["generation"]
                    cursor = 0
                    await websocket.send_json(
                        {"type": "reset", "generation": generation}
                    )
                entries = snapshot["entries"]
                while cursor < len(entries):
                    entry = entries[cursor]
                    await websocket.send_json(
                        {
                            "type": "entry",
                            "index": cursor,
                            "event": entry["event"],
                            "verdict": entry["verdict"],
                        }
                    )
                    cursor += 1
                await asyncio.sleep(_STREAM_POLL_SECONDS)
        except WebSocketDisconnect:
            return

    return app

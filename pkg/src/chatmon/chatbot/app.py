"""HTTP binding of the chatbot: conversations in, replies plus verdicts out."""

from __future__ import annotations

import threading
import uuid
from pathlib import Path

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from chatmon.chatbot.engine import Conversation
from chatmon.chatbot.scenario import Scenario


def create_chatbot_app(
    scenario: Scenario,
    gateway_factory,
    monitor_level: str = "none",
    ui_dir=None,
) -> FastAPI:
    """``gateway_factory()`` must build a fresh monitor gateway per conversation."""
    app = FastAPI(title="chatmon chatbot", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    conversations: dict = {}
    registry_lock = threading.Lock()

    def _error(status: int, code: str, detail: str = "") -> JSONResponse:
        return JSONResponse({"error": code, "detail": detail}, status_code=status)

    def _get(conversation_id: str):
        entry = conversations.get(conversation_id)
        if entry is None:
            raise KeyError(conversation_id)
        return entry

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "monitor_level": monitor_level,
            "properties": scenario.property_names(),
        }

    @app.post("/conversations", status_code=201)
    def create_conversation():
        conversation = Conversation(scenario, gateway_factory())
        conversation_id = uuid.uuid4().hex
        with registry_lock:
            conversations[conversation_id] = (conversation, threading.Lock())
        return {
            "conversation_id": conversation_id,
            "monitor_level": monitor_level,
            "monitor_url": getattr(conversation.gateway, "base_url", ""),
            "monitor_sessions": conversation.gateway.session_ids(),
            "floor": conversation.state.snapshot(),
        }

    @app.post("/conversations/{conversation_id}/messages")
    def send_message(conversation_id: str, body: dict):
        text = body.get("text")
        if not isinstance(text, str) or not text.strip():
            return _error(400, "empty_message", "body must carry a nonempty 'text'")
        try:
            conversation, lock = _get(conversation_id)
        except KeyError:
            return _error(404, "unknown_conversation", conversation_id)
        with lock:
            result = conversation.handle(text)
        return {
            "reply": result.reply,
            "intent": result.intent,
            "confidence": result.confidence,
            "verdicts": result.verdicts,
            "message_verdict": result.message_verdict(),
            "blocked": result.blocked,
            "floor": result.floor,
        }

    @app.get("/conversations/{conversation_id}/floor")
    def floor(conversation_id: str):
        try:
            conversation, lock = _get(conversation_id)
        except KeyError:
            return _error(404, "unknown_conversation", conversation_id)
        with lock:
            return conversation.state.snapshot()

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app

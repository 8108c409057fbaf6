"""Deterministic intent-based chatbot for the factory floor scenario."""

from chatmon.chatbot.nlu import IntentDef, NluResult, Template, classify, tokenize
from chatmon.chatbot.floor import FactoryState
from chatmon.chatbot.scenario import Scenario, default_scenario, load_scenario
from chatmon.chatbot.engine import (
    BotAction,
    Conversation,
    MessageResult,
    MonitorUnavailable,
    InProcessGateway,
    HttpGateway,
    NullGateway,
    decide,
    replay_conversation,
)
from chatmon.chatbot.app import create_chatbot_app

__all__ = [
    "IntentDef",
    "NluResult",
    "Template",
    "classify",
    "tokenize",
    "FactoryState",
    "Scenario",
    "default_scenario",
    "load_scenario",
    "BotAction",
    "Conversation",
    "MessageResult",
    "MonitorUnavailable",
    "InProcessGateway",
    "HttpGateway",
    "NullGateway",
    "decide",
    "replay_conversation",
    "create_chatbot_app",
]

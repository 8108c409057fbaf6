"""The decision maker and the monitor-facing decision wrapper.

Message flow: the classified intent is sent to every property session first;
a false verdict blocks the message before any decision is made.  Otherwise
the decision maker computes the bot's action(s) purely, each action event is
sent to the monitor, and only when no verdict is false does the actuator
mutate the floor.  Either way an unsafe action is never performed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import requests

from chatmon.chatbot.floor import FactoryState, ZONES
from chatmon.chatbot.nlu import FALLBACK_INTENT, NluResult, classify
from chatmon.chatbot.scenario import Scenario
from chatmon.service.sessions import SessionErrored, SessionManager
from chatmon.trace.engine import MonitorOverload

ACTION_ADD = "utter_add_object"
ACTION_ADD_RELATIVE = "utter_add_relative"
ACTION_REMOVE = "utter_remove_object"
ACTION_ERROR = "utter_error_message"
ACTION_LISTEN = "listen"

# (dx, dy) per direction; the origin is top-left, front is the bottom half.
OFFSETS = {"left": (-1, 0), "right": (1, 0), "behind": (0, -1), "front": (0, 1)}


class MonitorUnavailable(RuntimeError):
    pass


@dataclass(frozen=True)
class BotAction:
    name: str
    reply: str
    event_slots: tuple = ()  # (key, value) pairs carried on the monitor event
    mutation: tuple = ()  # ("place", type, name, x, y) | ("remove", name)


def refusal(reason: str) -> BotAction:
    return BotAction(ACTION_ERROR, f"Sorry, I can't do that: {reason}")


def intent_event(nlu: NluResult) -> dict:
    payload = {
        "kind": "user_intent",
        "sender": "user",
        "receiver": "bot",
        "intent": {"name": nlu.intent},
        "nlu": {"confidence": nlu.confidence},
    }
    if nlu.slots:
        payload["slots"] = dict(nlu.slots)
    return payload


def action_event(action: BotAction) -> dict:
    payload = {
        "kind": "bot_action",
        "sender": "bot",
        "receiver": "user",
        "last_action": action.name,
    }
    if action.event_slots:
        payload["slots"] = dict(action.event_slots)
    return payload


# -- decision maker ------------------------------------------------------------


def decide(nlu: NluResult, state: FactoryState, scenario: Scenario) -> list:
    """Pure: computes the action(s) for an intent without touching the floor."""
    if nlu.intent == "add_object":
        return _decide_add(nlu, state)
    if nlu.intent == "add_relative":
        return _decide_add_relative(nlu, state)
    if nlu.intent == "remove_object":
        return _decide_remove(nlu, state)
    if nlu.intent == "relocate_object" and scenario.relocate:
        return _decide_relocate(nlu, state)
    if nlu.intent == FALLBACK_INTENT:
        return [BotAction(ACTION_ERROR, "Sorry, I didn't understand that.")]
    return [refusal(f"the intent '{nlu.intent}' is not supported here")]


def _target_for_add(nlu: NluResult, state: FactoryState):
    """Returns ((x, y), None) or (None, refusal reason)."""
    slots = nlu.slots
    if "horizontal" in slots and "vertical" in slots:
        x, y = slots["horizontal"], slots["vertical"]
        if not state.in_bounds(x, y):
            return None, f"({x}, {y}) is outside the {state.width}x{state.height} floor"
        if not state.is_free(x, y):
            return None, f"position ({x}, {y}) is already occupied by {state.grid[(x, y)]}"
        return (x, y), None
    zone = slots.get("relative_position")
    if zone in ZONES:
        cell = state.first_free(state.zone_cells(zone))
        if cell is None:
            return None, f"no free cell in the {zone.replace('_', ' ')} area"
        return cell, None
    cell = state.first_free(state.all_cells())
    if cell is None:
        return None, "the floor is full"
    return cell, None


def _place_action(
    state: FactoryState,
    object_type: str,
    x: int,
    y: int,
    action_name: str,
    reply: str,
    extra_slots: tuple = (),
    name: str = "",
    exclude: str = "",
) -> BotAction:
    name = name or state.peek_name(object_type)
    slots = (
        ("object", name),
        ("horizontal", x),
        ("vertical", y),
        ("clearance", state.clearance(x, y, exclude=exclude)),
    ) + extra_slots
    return BotAction(
        action_name,
        reply.format(name=name, x=x, y=y),
        event_slots=slots,
        mutation=("place", object_type, name, x, y),
    )


def _decide_add(nlu: NluResult, state: FactoryState) -> list:
    object_type = nlu.slots.get("object_type")
    if not object_type:
        return [refusal("I need to know what kind of object to add")]
    target, reason = _target_for_add(nlu, state)
    if target is None:
        return [refusal(reason)]
    x, y = target
    return [
        _place_action(
            state, object_type, x, y, ACTION_ADD, "Added {name} at ({x}, {y})."
        )
    ]


def _decide_add_relative(nlu: NluResult, state: FactoryState) -> list:
    object_type = nlu.slots.get("object_type")
    reference = nlu.slots.get("reference_object")
    direction = nlu.slots.get("relative_position")
    if not object_type or not reference or direction not in OFFSETS:
        return [refusal("I need an object, a direction, and a reference object")]
    info = state.objects.get(reference)
    if info is None:
        return [refusal(f"there is no object named {reference}")]
    dx, dy = OFFSETS[direction]
    x, y = info["x"] + dx, info["y"] + dy
    if not state.in_bounds(x, y):
        return [refusal(f"({x}, {y}) is outside the floor")]
    if not state.is_free(x, y):
        return [refusal(f"position ({x}, {y}) is already occupied by {state.grid[(x, y)]}")]
    reply = f"Added {{name}} at ({{x}}, {{y}}), {direction} of {reference}."
    return [
        _place_action(
            state,
            object_type,
            x,
            y,
            ACTION_ADD_RELATIVE,
            reply,
            extra_slots=(("reference", reference),),
        )
    ]


def _decide_remove(nlu: NluResult, state: FactoryState) -> list:
    name = nlu.slots.get("object")
    if not name:
        return [refusal("I need to know which object to remove")]
    info = state.objects.get(name)
    if info is None:
        return [refusal(f"there is no object named {name}")]
    return [
        BotAction(
            ACTION_REMOVE,
            f"Removed {name}.",
            event_slots=(
                ("removed", name),
                ("horizontal", info["x"]),
                ("vertical", info["y"]),
            ),
            mutation=("remove", name),
        )
    ]


def _decide_relocate(nlu: NluResult, state: FactoryState) -> list:
    name = nlu.slots.get("object")
    if not name or name not in state.objects:
        return [refusal(f"there is no object named {name or '?'}")]
    if "horizontal" not in nlu.slots or "vertical" not in nlu.slots:
        return [refusal("I need target coordinates to move an object")]
    x, y = nlu.slots["horizontal"], nlu.slots["vertical"]
    if not state.in_bounds(x, y):
        return [refusal(f"({x}, {y}) is outside the floor")]
    if not state.is_free(x, y):
        return [refusal(f"position ({x}, {y}) is already occupied by {state.grid[(x, y)]}")]
    info = state.objects[name]
    # Remove+add in one decision; the new placement gets a fresh name, and the
    # creation event goes out first so a blocked placement never leaves the
    # monitor believing the old object was removed.
    new_name = state.peek_name(info["type"])
    place = _place_action(
        state,
        info["type"],
        x,
        y,
        ACTION_ADD,
        f"Moved {name} to ({{x}}, {{y}}); it is now {{name}}.",
        exclude=name,
    )
    remove = BotAction(
        ACTION_REMOVE,
        "",
        event_slots=(
            ("removed", name),
            ("horizontal", info["x"]),
            ("vertical", info["y"]),
        ),
        mutation=("remove", name),
    )
    return [place, remove]


# -- monitor gateways -----------------------------------------------------------


class NullGateway:
    """Monitoring level "none": no monitor endpoint is contacted at all."""

    def open(self, property_names) -> None:
        pass

    def send(self, payload: dict) -> list:
        return []

    def session_ids(self) -> dict:
        return {}

    def reset(self) -> None:
        pass


class InProcessGateway:
    """Directly drives a SessionManager; used by tests and offline replay."""

    def __init__(self, manager: SessionManager):
        self.manager = manager
        self.sessions: dict = {}

    def open(self, property_names) -> None:
        self.sessions = {
            name: self.manager.create_session(name).id for name in property_names
        }

    def send(self, payload: dict) -> list:
        results = []
        for name, session_id in self.sessions.items():
            try:
                results.append((name, self.manager.send_event(session_id, payload)))
            except (MonitorOverload, SessionErrored) as exc:
                raise MonitorUnavailable(str(exc)) from exc
        return results

    def session_ids(self) -> dict:
        return dict(self.sessions)

    def reset(self) -> None:
        for session_id in self.sessions.values():
            self.manager.reset(session_id)


class HttpGateway:
    """Talks to a running monitor service over its REST binding."""

    def __init__(self, base_url: str, timeout: float = 5.0):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.http = requests.Session()
        self.sessions: dict = {}

    def open(self, property_names) -> None:
        self.sessions = {}
        for name in property_names:
            response = self._post("/sessions", {"spec": name})
            self.sessions[name] = response["session_id"]

    def send(self, payload: dict) -> list:
        results = []
        for name, session_id in self.sessions.items():
            results.append(
                (name, self._post(f"/sessions/{session_id}/events", payload))
            )
        return results

    def session_ids(self) -> dict:
        return dict(self.sessions)

    def reset(self) -> None:
        for session_id in self.sessions.values():
            self._post(f"/sessions/{session_id}/reset", {})

    def _post(self, path: str, body: dict) -> dict:
        try:
            response = self.http.post(
                f"{self.base_url}{path}", json=body, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise MonitorUnavailable(f"monitor unreachable: {exc}") from exc
        if response.status_code >= 400:
            raise MonitorUnavailable(
                f"monitor error {response.status_code}: {response.text[:200]}"
            )
        return response.json()


# -- conversations ---------------------------------------------------------------


@dataclass
class MessageResult:
    text: str
    intent: str
    confidence: float
    reply: str
    verdicts: list  # {"property", "stage", "verdict", "currently_accepting", "explanation"}
    floor: dict
    blocked: bool
    elapsed_ms: float = 0.0

    def message_verdict(self) -> str:
        values = [v["verdict"] for v in self.verdicts]
        if not values:
            return "none"
        if "false" in values:
            return "false"
        if all(v == "true" for v in values):
            return "true"
        return "inconclusive"


class Conversation:
    """One isolated unit of state plus monitor sessions, strictly sequential."""

    def __init__(self, scenario: Scenario, gateway=None):
        self.scenario = scenario
        self.gateway = gateway if gateway is not None else NullGateway()
        self.state = FactoryState(
            width=scenario.grid_width,
            height=scenario.grid_height,
            counter_base=dict(scenario.counter_base),
        )
        self.gateway.open(scenario.property_names())
        self.transcript: list = []

    def handle(self, text: str) -> MessageResult:
        started = time.perf_counter()
        nlu = classify(text, self.scenario.intents)
        verdicts: list = []

        blocked_reply = self._send_checked(intent_event(nlu), "intent", verdicts)
        if blocked_reply is not None:
            return self._finish(text, nlu, blocked_reply, verdicts, True, started)

        actions = decide(nlu, self.state, self.scenario)
        for action in actions:
            blocked_reply = self._send_checked(action_event(action), "action", verdicts)
            if blocked_reply is not None:
                return self._finish(text, nlu, blocked_reply, verdicts, True, started)

        for action in actions:
            self._actuate(action)
        self.state.check_invariants()
        reply = " ".join(a.reply for a in actions if a.reply)
        blocked = all(a.name == ACTION_ERROR for a in actions)
        return self._finish(text, nlu, reply, verdicts, blocked, started)

    def _send_checked(self, payload: dict, stage: str, verdicts: list):
        """Sends one event to every property session; returns an error reply
        if the message must be blocked, else None."""
        try:
            results = self.gateway.send(payload)
        except MonitorUnavailable as exc:
            if self.scenario.fail_open:
                verdicts.append(
                    {
                        "property": "(monitor)",
                        "stage": stage,
                        "verdict": "unavailable",
                        "currently_accepting": False,
                        "explanation": str(exc),
                    }
                )
                return None
            return f"Action blocked: the safety monitor is unavailable ({exc})."
        for name, verdict in results:
            verdicts.append(
                {
                    "property": name,
                    "stage": stage,
                    "verdict": verdict["verdict"],
                    "currently_accepting": verdict["currently_accepting"],
                    "explanation": verdict.get("explanation", ""),
                }
            )
        for name, verdict in results:
            if verdict["verdict"] == "false":
                explanation = verdict.get("explanation") or f"property '{name}' violated"
                return f"Action blocked by the safety monitor: {explanation}"
        return None

    def _actuate(self, action: BotAction) -> None:
        if not action.mutation:
            return
        kind = action.mutation[0]
        if kind == "place":
            _, object_type, name, x, y = action.mutation
            placed = self.state.place(object_type, x, y)
            assert placed == name, f"placed {placed}, decided {name}"
        elif kind == "remove":
            self.state.remove(action.mutation[1])

    def _finish(self, text, nlu, reply, verdicts, blocked, started) -> MessageResult:
        result = MessageResult(
            text=text,
            intent=nlu.intent,
            confidence=nlu.confidence,
            reply=reply,
            verdicts=verdicts,
            floor=self.state.snapshot(),
            blocked=blocked,
            elapsed_ms=(time.perf_counter() - started) * 1000.0,
        )
        self.transcript.append(result)
        return result


def replay_conversation(lines, conversation: Conversation) -> list:
    """Feed utterances through the conversation; returns the transcript."""
    results = []
    for line in lines:
        text = line.strip()
        if not text:
            continue
        results.append(conversation.handle(text))
    return results

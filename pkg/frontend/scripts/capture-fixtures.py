#!/usr/bin/env python3
"""Captures real service payloads for the UI tests.

Starts the full stack (real monitoring), replays the occupancy-violation
conversation, and records every payload the UI would see: conversation
creation, message responses, floor snapshots, and the monitor session logs
that feed the verdict timeline.  Output is committed at
test/fixtures/occupancy_violation.json so the UI tests exercise the exact
wire format of the services.
"""

import json
from pathlib import Path

import requests

from chatmon.chatbot.scenario import default_scenario
from chatmon.harness.serving import start_stack

MESSAGES = [
    "Add a robot in position (3, 5)",
    "Add a robot in position (2, 1)",
    "Add a robot in position (3, 5)",
]

OUT = Path(__file__).parent.parent / "test" / "fixtures" / "occupancy_violation.json"


def main() -> None:
    stack = start_stack(default_scenario(), "real")
    try:
        http = requests.Session()
        conversation = http.post(f"{stack.chatbot_url}/conversations", timeout=10).json()
        conversation_id = conversation["conversation_id"]
        exchanges = []
        for text in MESSAGES:
            response = http.post(
                f"{stack.chatbot_url}/conversations/{conversation_id}/messages",
                json={"text": text},
                timeout=30,
            ).json()
            floor = http.get(
                f"{stack.chatbot_url}/conversations/{conversation_id}/floor", timeout=10
            ).json()
            exchanges.append({"text": text, "response": response, "floor_after": floor})
        session_logs = {
            prop: http.get(
                f"{stack.monitor_url}/sessions/{session_id}/log", timeout=10
            ).json()
            for prop, session_id in conversation["monitor_sessions"].items()
        }
    finally:
        stack.stop()
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(
        json.dumps(
            {
                "conversation": conversation,
                "exchanges": exchanges,
                "session_logs": session_logs,
            },
            indent=2,
        )
    )
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()

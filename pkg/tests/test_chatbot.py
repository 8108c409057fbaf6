import json
from pathlib import Path


from chatmon.chatbot import (
    Conversation,
    InProcessGateway,
    NullGateway,
    decide,
    replay_conversation,
)
from chatmon.chatbot.engine import (
    ACTION_ADD,
    ACTION_ADD_RELATIVE,
    ACTION_ERROR,
    ACTION_REMOVE,
    MonitorUnavailable,
)
from chatmon.chatbot.floor import FactoryState
from chatmon.chatbot.nlu import NluResult
from chatmon.chatbot.scenario import default_scenario
from chatmon.service.sessions import SessionManager

FIXTURE = Path(__file__).parent / "fixtures" / "demo_floor_simulation.json"
DEMO_LINES = [
    "Add a table",
    "Add a box right of table1",
    "Add a robot in front on the left",
    "Add a robot in front on the right",
    "Remove box0",
    "Remove robot1",
    "Add a table behind on the left",
    "Add a robot behind on the right",
    "Remove table1",
    "Remove table2",
    "Remove robot2",
    "Remove robot3",
]


def real_conversation(factory_specs, scenario):
    manager = SessionManager(factory_specs, level="real")
    return Conversation(scenario, InProcessGateway(manager))


class TestDecide:
    def test_explicit_coordinates(self, plain_scenario):
        state = FactoryState()
        nlu = NluResult("add_object", 1.0, {"object_type": "table", "horizontal": 3, "vertical": 5})
        (action,) = decide(nlu, state, plain_scenario)
        assert action.name == ACTION_ADD
        assert dict(action.event_slots)["horizontal"] == 3
        assert action.mutation == ("place", "table", "table0", 3, 5)

    def test_relative_offsets(self, plain_scenario):
        state = FactoryState()
        state.place("robot", 4, 4)  # robot0
        for direction, expected in [
            ("left", (3, 4)), ("right", (5, 4)), ("behind", (4, 3)), ("front", (4, 5)),
        ]:
            nlu = NluResult(
                "add_relative", 1.0,
                {"object_type": "box", "relative_position": direction, "reference_object": "robot0"},
            )
            (action,) = decide(nlu, state, plain_scenario)
            assert action.name == ACTION_ADD_RELATIVE
            slots = dict(action.event_slots)
            assert (slots["horizontal"], slots["vertical"]) == expected, direction

    def test_unknown_reference_is_refused(self, plain_scenario):
        nlu = NluResult(
            "add_relative", 1.0,
            {"object_type": "box", "relative_position": "left", "reference_object": "ghost"},
        )
        (action,) = decide(nlu, FactoryState(), plain_scenario)
        assert action.name == ACTION_ERROR
        assert "ghost" in action.reply

    def test_remove_absent_object_is_refused(self, plain_scenario):
        nlu = NluResult("remove_object", 1.0, {"object": "box9"})
        (action,) = decide(nlu, FactoryState(), plain_scenario)
        assert action.name == ACTION_ERROR

    def test_out_of_grid_is_refused(self, plain_scenario):
        nlu = NluResult("add_object", 1.0, {"object_type": "box", "horizontal": 99, "vertical": 0})
        (action,) = decide(nlu, FactoryState(), plain_scenario)
        assert action.name == ACTION_ERROR
        assert "outside" in action.reply

    def test_occupied_target_is_refused(self, plain_scenario):
        state = FactoryState()
        state.place("table", 3, 5)
        nlu = NluResult("add_object", 1.0, {"object_type": "box", "horizontal": 3, "vertical": 5})
        (action,) = decide(nlu, state, plain_scenario)
        assert action.name == ACTION_ERROR
        assert "occupied" in action.reply

    def test_decide_is_pure(self, plain_scenario):
        state = FactoryState()
        nlu = NluResult("add_object", 1.0, {"object_type": "table"})
        decide(nlu, state, plain_scenario)
        assert not state.objects and not state.grid and not state.counters

    def test_relocate_produces_create_then_remove(self):
        scenario = default_scenario(relocate=True)
        state = FactoryState()
        state.place("box", 0, 0)  # box0
        nlu = NluResult("relocate_object", 1.0, {"object": "box0", "horizontal": 4, "vertical": 4})
        place, remove = decide(nlu, state, scenario)
        assert place.name == ACTION_ADD and place.mutation[0] == "place"
        assert dict(place.event_slots)["object"] == "box1"
        assert remove.name == ACTION_REMOVE
        assert dict(remove.event_slots)["removed"] == "box0"


class TestConversation:
    def test_happy_path_mutates_floor(self, factory_specs, plain_scenario):
        conversation = real_conversation(factory_specs, plain_scenario)
        result = conversation.handle("Add a table at 3 5")
        assert result.reply == "Added table0 at (3, 5)."
        assert result.message_verdict() == "inconclusive"
        assert result.floor["objects"] == [{"id": "table0", "type": "table", "x": 3, "y": 5}]

    def test_monitor_blocks_repeat_add(self, factory_specs, plain_scenario):
        conversation = real_conversation(factory_specs, plain_scenario)
        replies = [
            conversation.handle("Add a robot in position (3, 5)"),
            conversation.handle("Add a robot in position (2, 1)"),
            conversation.handle("Add a robot in position (3, 5)"),
        ]
        assert [r.message_verdict() for r in replies] == [
            "inconclusive", "inconclusive", "false",
        ]
        assert replies[2].blocked
        assert "blocked by the safety monitor" in replies[2].reply
        assert len(replies[2].floor["objects"]) == 2
        # the violating message got no action event: its verdicts stop at the intent stage
        assert all(v["stage"] == "intent" for v in replies[2].verdicts)

    def test_low_confidence_blocked_before_any_action(self, factory_specs, plain_scenario):
        conversation = real_conversation(factory_specs, plain_scenario)
        result = conversation.handle("add a table x1 x2 x3")
        assert result.confidence < 0.6
        assert result.message_verdict() == "false"
        assert result.floor["objects"] == []
        assert all(v["stage"] == "intent" for v in result.verdicts)
        failing = [v for v in result.verdicts if v["verdict"] == "false"]
        assert failing and failing[0]["property"] == "confidence"

    def test_none_level_skips_monitoring(self, plain_scenario):
        conversation = Conversation(plain_scenario, NullGateway())
        result = conversation.handle("Add a table")
        assert result.verdicts == []
        assert result.message_verdict() == "none"
        assert result.floor["objects"]

    def test_dummy_level_is_transparent(self, factory_specs, plain_scenario):
        lines = DEMO_LINES + ["Add a box at 0 9", "Remove box1"]
        none_conv = Conversation(plain_scenario, NullGateway())
        dummy_conv = Conversation(
            plain_scenario,
            InProcessGateway(SessionManager(factory_specs, level="dummy")),
        )
        none_replies = [none_conv.handle(l).reply for l in lines]
        dummy_replies = [dummy_conv.handle(l).reply for l in lines]
        assert none_replies == dummy_replies

    def test_monitor_unavailable_fails_closed(self, plain_scenario):
        class BrokenGateway(NullGateway):
            def send(self, payload):
                raise MonitorUnavailable("connection refused")

        conversation = Conversation(plain_scenario, BrokenGateway())
        result = conversation.handle("Add a table")
        assert result.blocked
        assert "monitor is unavailable" in result.reply
        assert result.floor["objects"] == []

    def test_monitor_unavailable_fail_open(self, factory_specs):
        scenario = default_scenario(fail_open=True)

        class BrokenGateway(NullGateway):
            def send(self, payload):
                raise MonitorUnavailable("connection refused")

        conversation = Conversation(scenario, BrokenGateway())
        result = conversation.handle("Add a table")
        assert not result.blocked
        assert result.floor["objects"]
        assert result.verdicts[0]["verdict"] == "unavailable"

    def test_violation_does_not_unblock_later(self, factory_specs, plain_scenario):
        conversation = real_conversation(factory_specs, plain_scenario)
        conversation.handle("Add a robot in position (3, 5)")
        conversation.handle("Add a robot in position (3, 5)")  # violates
        result = conversation.handle("Add a robot in position (2, 2)")
        assert result.message_verdict() == "false"  # sessions are absorbing
        assert len(result.floor["objects"]) == 1

    def test_relocation_with_monitor(self, factory_specs):
        scenario = default_scenario(relocate=True)
        conversation = real_conversation(factory_specs, scenario)
        conversation.handle("Add a box at 0 0")
        result = conversation.handle("Move box0 to position 4 4")
        assert result.message_verdict() != "false"
        assert result.floor["objects"] == [{"id": "box1", "type": "box", "x": 4, "y": 4}]
        follow = conversation.handle("Add a table right of box1")
        assert follow.message_verdict() != "false"
        stale = conversation.handle("Add a table left of box0")
        assert stale.message_verdict() == "false"  # old name is gone


class TestReplay:
    def test_demo_conversation_matches_hand_simulation(self, factory_specs, demo_scenario):
        conversation = real_conversation(factory_specs, demo_scenario)
        fixture = json.loads(FIXTURE.read_text())
        results = []
        for line, expected in zip(DEMO_LINES, fixture["after_message"]):
            result = conversation.handle(line)
            results.append(result)
            got = sorted((o["id"], o["type"], o["x"], o["y"]) for o in result.floor["objects"])
            want = sorted(map(tuple, expected))
            assert got == want, f"after {line!r}"
        assert all(r.message_verdict() != "false" for r in results)
        assert conversation.state.snapshot()["objects"] == fixture["final"]

    def test_empty_replay(self, plain_scenario):
        conversation = Conversation(plain_scenario, NullGateway())
        assert replay_conversation([], conversation) == []
        assert replay_conversation(["", "   "], conversation) == []

    def test_double_add_replay(self, factory_specs, plain_scenario):
        conversation = real_conversation(factory_specs, plain_scenario)
        transcript = replay_conversation(
            ["Add a box at 3 5", "Add a box at 3 5"], conversation
        )
        assert transcript[1].message_verdict() == "false"
        assert "blocked" in transcript[1].reply

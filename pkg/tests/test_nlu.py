import pytest

from chatmon.chatbot.nlu import FALLBACK_INTENT, classify, tokenize
from chatmon.chatbot.scenario import default_intents

INTENTS = default_intents()


class TestTokenize:
    def test_punctuation_and_case(self):
        assert tokenize("Add a robot in position (3, 5)") == [
            "add", "a", "robot", "in", "position", "3", "5",
        ]

    def test_empty(self):
        assert tokenize("") == []
        assert tokenize("  ,,, ") == []


class TestClassify:
    def test_plain_add(self):
        result = classify("Add a table", INTENTS)
        assert result.intent == "add_object"
        assert result.slots == {"object_type": "table"}
        assert result.confidence == 1.0

    def test_add_with_coordinates(self):
        result = classify("Add a robot in position (3, 5)", INTENTS)
        assert result.intent == "add_object"
        assert result.slots == {"object_type": "robot", "horizontal": 3, "vertical": 5}
        assert result.confidence == 1.0

    def test_relative_add(self):
        result = classify("Add a box right of table1", INTENTS)
        assert result.intent == "add_relative"
        assert result.slots == {
            "object_type": "box",
            "relative_position": "right",
            "reference_object": "table1",
        }
        assert result.confidence == 1.0

    def test_relative_add_spelled_out(self):
        result = classify("Add a robot on the left of robot3", INTENTS)
        assert result.intent == "add_relative"
        assert result.slots["relative_position"] == "left"
        assert result.slots["reference_object"] == "robot3"

    def test_zone_phrases(self):
        result = classify("Add a robot in front on the left", INTENTS)
        assert result.intent == "add_object"
        assert result.slots == {"object_type": "robot", "relative_position": "front_left"}
        assert result.confidence == 1.0
        result = classify("Add a table behind on the right", INTENTS)
        assert result.slots["relative_position"] == "behind_right"

    def test_remove(self):
        result = classify("Remove box0", INTENTS)
        assert result.intent == "remove_object"
        assert result.slots == {"object": "box0"}
        assert result.confidence == 1.0

    def test_empty_utterance_falls_back(self):
        result = classify("", INTENTS)
        assert result.intent == FALLBACK_INTENT
        assert result.confidence == 0.0

    def test_gibberish_falls_back(self):
        result = classify("frobnicate the quux", INTENTS)
        assert result.intent == FALLBACK_INTENT
        assert result.confidence == 0.0

    def test_partial_match_lowers_confidence(self):
        result = classify("add a table x1 x2 x3", INTENTS)
        assert result.intent == "add_object"
        assert result.confidence == pytest.approx(3 / 6)

    def test_determinism(self):
        a = classify("Add a box right of table1", INTENTS)
        b = classify("Add a box right of table1", INTENTS)
        assert (a.intent, a.confidence, a.slots) == (b.intent, b.confidence, b.slots)

    def test_coordinates_must_be_numeric(self):
        result = classify("add a robot in position here there", INTENTS)
        # the coordinate template cannot align; the plain-add prefix still does
        assert result.intent == "add_object"
        assert result.confidence < 1.0
        assert "horizontal" not in result.slots

    def test_the_twelve_demo_messages_classify_confidently(self):
        lines = [
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
        for line in lines:
            result = classify(line, INTENTS)
            assert result.intent != FALLBACK_INTENT, line
            assert result.confidence > 0.6, line

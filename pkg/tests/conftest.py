import pytest

from chatmon.chatbot.scenario import default_scenario, packaged_property
from chatmon.events import Event
from chatmon.service.app import load_spec_dir
from chatmon.service.sessions import SessionManager


@pytest.fixture(scope="session")
def factory_dir():
    return packaged_property("factory")


@pytest.fixture(scope="session")
def factory_specs(factory_dir):
    return load_spec_dir(factory_dir)


@pytest.fixture(scope="session")
def add_object_spec(factory_specs):
    return factory_specs["add_object"]


@pytest.fixture(scope="session")
def relative_add_spec(factory_specs):
    return factory_specs["relative_add"]


@pytest.fixture(scope="session")
def confidence_spec(factory_specs):
    return factory_specs["confidence"]


@pytest.fixture
def manager(factory_specs):
    return SessionManager(factory_specs, level="real")


@pytest.fixture
def demo_scenario():
    return default_scenario(counter_base={"table": 1, "robot": 1, "box": 0})


@pytest.fixture
def plain_scenario():
    return default_scenario()


def user_intent(intent, slots=None, confidence=1.0):
    payload = {
        "kind": "user_intent",
        "sender": "user",
        "receiver": "bot",
        "intent": {"name": intent},
        "nlu": {"confidence": confidence},
    }
    if slots:
        payload["slots"] = slots
    return payload


def bot_action(last_action, slots=None):
    payload = {
        "kind": "bot_action",
        "sender": "bot",
        "receiver": "user",
        "last_action": last_action,
    }
    if slots:
        payload["slots"] = slots
    return payload


def user_add(x, y, confidence=1.0):
    return user_intent(
        "add_object", {"object_type": "robot", "horizontal": x, "vertical": y}, confidence
    )


def added_confirmation(name="robot0", x=3, y=5):
    return bot_action(
        "utter_add_object",
        {"object": name, "horizontal": x, "vertical": y, "clearance": 20},
    )


def as_event(payload) -> Event:
    return Event(payload)

"""Scenario configuration: intents, grid, active properties, counter bases.

A scenario can be built in code (:func:`default_scenario`) or loaded from a
flat key=value file.  Config keys::

    grid.width=10
    grid.height=10
    counter_base.table=1
    property=factory/add_object.prop        # repeatable; package-relative or absolute
    fail_open=false
    relocate=false
    intent.add_object.template=add a {object_type}
    intent.add_object.template=add a {object_type} in front on the left => relative_position=front_left
    intent.add_object.entities=object_type,horizontal,vertical,relative_position

Template lines may end with ``=> slot=value, slot=value`` for slots implied
by the phrasing.  When a config declares any intents they replace the
built-in set entirely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from chatmon.chatbot.nlu import IntentDef, Template
from chatmon.service.config import (
    config_get,
    config_get_all,
    config_get_bool,
    config_get_int,
    load_config,
)


@dataclass
class Scenario:
    grid_width: int = 10
    grid_height: int = 10
    counter_base: dict = field(default_factory=dict)
    intents: tuple = ()
    property_paths: tuple = ()  # resolved filesystem paths to .prop files
    fail_open: bool = False
    relocate: bool = False

    def property_names(self) -> list:
        return [Path(p).stem for p in self.property_paths]


def default_intents(relocate: bool = False) -> tuple:
    intents = [
        IntentDef(
            "add_object",
            templates=(
                Template("add a {object_type} in position {horizontal} {vertical}"),
                Template("add a {object_type} at {horizontal} {vertical}"),
                Template("add a {object_type} in front on the left",
                         (("relative_position", "front_left"),)),
                Template("add a {object_type} in front on the right",
                         (("relative_position", "front_right"),)),
                Template("add a {object_type} behind on the left",
                         (("relative_position", "behind_left"),)),
                Template("add a {object_type} behind on the right",
                         (("relative_position", "behind_right"),)),
                Template("add a {object_type}"),
            ),
            entities=("object_type", "horizontal", "vertical", "relative_position"),
        ),
        IntentDef(
            "add_relative",
            templates=(
                Template("add a {object_type} {relative_position} of {reference_object}"),
                Template("add a {object_type} on the {relative_position} of {reference_object}"),
                Template("add a {object_type} in front of {reference_object}",
                         (("relative_position", "front"),)),
                Template("add a {object_type} behind {reference_object}",
                         (("relative_position", "behind"),)),
            ),
            entities=("object_type", "relative_position", "reference_object"),
        ),
        IntentDef(
            "remove_object",
            templates=(
                Template("remove the {object}"),
                Template("remove {object}"),
            ),
            entities=("object",),
        ),
    ]
    if relocate:
        intents.append(
            IntentDef(
                "relocate_object",
                templates=(
                    Template("move {object} to position {horizontal} {vertical}"),
                    Template("move {object} to {horizontal} {vertical}"),
                ),
                entities=("object", "horizontal", "vertical"),
            )
        )
    return tuple(intents)


def packaged_property(relative: str) -> str:
    """Filesystem path of a property file shipped inside the package."""
    root = resources.files("chatmon") / "properties"
    return str(root / relative)


def resolve_property_path(value: str) -> str:
    path = Path(value)
    if path.exists():
        return str(path)
    packaged = packaged_property(value)
    if Path(packaged).exists():
        return packaged
    raise FileNotFoundError(f"property file not found: {value}")


DEFAULT_PROPERTIES = (
    "factory/add_object.prop",
    "factory/relative_add.prop",
    "factory/confidence.prop",
)


def default_scenario(
    properties=DEFAULT_PROPERTIES,
    counter_base=None,
    grid=(10, 10),
    relocate: bool = False,
    fail_open: bool = False,
) -> Scenario:
    return Scenario(
        grid_width=grid[0],
        grid_height=grid[1],
        counter_base=dict(counter_base or {}),
        intents=default_intents(relocate),
        property_paths=tuple(resolve_property_path(p) for p in properties),
        fail_open=fail_open,
        relocate=relocate,
    )


def _parse_template(line: str) -> Template:
    text, _, implied_part = line.partition("=>")
    implied = []
    if implied_part.strip():
        for piece in implied_part.split(","):
            slot, _, value = piece.partition("=")
            if not value:
                raise ValueError(f"bad implied slot in template: {line!r}")
            implied.append((slot.strip(), value.strip()))
    return Template(text.strip(), tuple(implied))


def load_scenario(path) -> Scenario:
    config = load_config(path)
    intents = []
    intent_names = []
    for key in config:
        if key.startswith("intent.") and key.endswith(".template"):
            name = key[len("intent."):-len(".template")]
            if name not in intent_names:
                intent_names.append(name)
    for name in intent_names:
        templates = tuple(
            _parse_template(line)
            for line in config_get_all(config, f"intent.{name}.template")
        )
        entities = tuple(
            e.strip()
            for e in config_get(config, f"intent.{name}.entities", "").split(",")
            if e.strip()
        )
        intents.append(IntentDef(name, templates, entities))
    relocate = config_get_bool(config, "relocate", False)
    counter_base = {}
    for key, values in config.items():
        if key.startswith("counter_base."):
            counter_base[key[len("counter_base."):]] = int(values[-1])
    return Scenario(
        grid_width=config_get_int(config, "grid.width", 10),
        grid_height=config_get_int(config, "grid.height", 10),
        counter_base=counter_base,
        intents=tuple(intents) if intents else default_intents(relocate),
        property_paths=tuple(
            resolve_property_path(p) for p in config_get_all(config, "property")
        ),
        fail_open=config_get_bool(config, "fail_open", False),
        relocate=relocate,
    )

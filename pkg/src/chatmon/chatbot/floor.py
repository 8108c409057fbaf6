"""The simulated factory floor: a W x H grid of named objects.

Coordinates are (x, y) with the origin at the top-left; x grows rightwards,
y grows downwards ("front" is the bottom half, "behind" the top half).
Object ids are ``<type><index>`` with independent per-type counters whose
starting index is configurable per scenario.
"""

from __future__ import annotations

from dataclasses import dataclass, field

ZONES = ("front_left", "front_right", "behind_left", "behind_right")


@dataclass
class FactoryState:
    width: int = 10
    height: int = 10
    counter_base: dict = field(default_factory=dict)  # type -> first index
    grid: dict = field(default_factory=dict)  # (x, y) -> object id
    objects: dict = field(default_factory=dict)  # id -> {"type": t, "x": x, "y": y}
    counters: dict = field(default_factory=dict)  # type -> next index

    # -- queries ------------------------------------------------------------

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def is_free(self, x: int, y: int) -> bool:
        return (x, y) not in self.grid

    def peek_name(self, object_type: str) -> str:
        index = self.counters.get(object_type, self.counter_base.get(object_type, 0))
        return f"{object_type}{index}"

    def clearance(self, x: int, y: int, exclude: str = "") -> int:
        """Chebyshev distance from (x, y) to the nearest existing object."""
        distances = [
            max(abs(x - info["x"]), abs(y - info["y"]))
            for name, info in self.objects.items()
            if name != exclude
        ]
        return min(distances) if distances else self.width + self.height

    def zone_cells(self, zone: str):
        """Cells of a quadrant in row-major order."""
        half_w = self.width // 2
        half_h = self.height // 2
        xs = range(0, half_w) if zone.endswith("left") else range(half_w, self.width)
        ys = range(half_h, self.height) if zone.startswith("front") else range(0, half_h)
        for y in ys:
            for x in xs:
                yield (x, y)

    def all_cells(self):
        for y in range(self.height):
            for x in range(self.width):
                yield (x, y)

    def first_free(self, cells):
        for x, y in cells:
            if self.is_free(x, y):
                return (x, y)
        return None

    # -- mutations -----------------------------------------------------------

    def place(self, object_type: str, x: int, y: int) -> str:
        if not self.in_bounds(x, y):
            raise ValueError(f"({x}, {y}) is outside the {self.width}x{self.height} floor")
        if not self.is_free(x, y):
            raise ValueError(f"({x}, {y}) is already occupied by {self.grid[(x, y)]}")
        name = self.peek_name(object_type)
        self.counters[object_type] = (
            self.counters.get(object_type, self.counter_base.get(object_type, 0)) + 1
        )
        self.grid[(x, y)] = name
        self.objects[name] = {"type": object_type, "x": x, "y": y}
        return name

    def remove(self, name: str) -> tuple:
        info = self.objects.pop(name)
        del self.grid[(info["x"], info["y"])]
        return (info["x"], info["y"])

    # -- views ---------------------------------------------------------------

    def snapshot(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "objects": [
                {"id": name, "type": info["type"], "x": info["x"], "y": info["y"]}
                for name, info in sorted(self.objects.items())
            ],
        }

    def render(self) -> str:
        """Terminal representation: one 3-char cell per position."""
        rows = []
        for y in range(self.height):
            cells = []
            for x in range(self.width):
                name = self.grid.get((x, y))
                cells.append(_short(name) if name else " . ")
            rows.append("".join(cells))
        legend = ", ".join(
            f"{_short(name).strip()}={name}" for name in sorted(self.objects)
        )
        return "\n".join(rows) + ("\n" + legend if legend else "")

    def check_invariants(self) -> None:
        """Grid and object table must agree bijectively; counters must cover ids."""
        for (x, y), name in self.grid.items():
            info = self.objects.get(name)
            assert info is not None, f"grid cell ({x},{y}) points at unknown {name}"
            assert (info["x"], info["y"]) == (x, y), f"{name} position mismatch"
        assert len(self.grid) == len(self.objects), "grid/object count mismatch"
        for name, info in self.objects.items():
            object_type = info["type"]
            index = int(name[len(object_type):])
            next_index = self.counters.get(
                object_type, self.counter_base.get(object_type, 0)
            )
            assert index < next_index, f"{name} ahead of its counter"


def _short(name: str) -> str:
    head = name[0].upper()
    digits = "".join(ch for ch in name if ch.isdigit()) or "?"
    return f"{head}{digits[-1]} " if len(digits) == 1 else f"{head}{digits[-2:]}"


def render_snapshot(floor: dict) -> str:
    """Terminal representation of a serialized floor payload."""
    state = FactoryState(width=floor["width"], height=floor["height"])
    for obj in floor["objects"]:
        state.grid[(obj["x"], obj["y"])] = obj["id"]
        state.objects[obj["id"]] = {"type": obj["type"], "x": obj["x"], "y": obj["y"]}
    return state.render()

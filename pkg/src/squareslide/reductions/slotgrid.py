"""Slot-grid scaffolding shared by the hardness compilers.

Gadgets are designed on a coarse grid of slots; one slot is a
side-by-side block of unit cells, so a construction built for side 1
scales to any side by multiplying coordinates.  Squares always sit on
slot corners, which keeps corridor widths exactly one square.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..model import Move

Slot = tuple[int, int]

STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def scale_cells(slots: set[Slot], side: int) -> set[tuple[int, int]]:
    """Unit cells covered by the given slots."""
    return {
        (sx * side + dx, sy * side + dy)
        for sx, sy in slots
        for dx in range(side)
        for dy in range(side)
    }


def compress_slot_path(path: list[Slot]) -> list[Slot]:
    """Drop interior waypoints of straight runs."""
    if len(path) <= 2:
        return list(path)
    out = [path[0]]
    for i in range(1, len(path) - 1):
        ax, ay = out[-1]
        bx, by = path[i]
        cx, cy = path[i + 1]
        if (bx - ax, by - ay) == (cx - bx, cy - by):
            continue
        out.append(path[i])
    out.append(path[-1])
    return out


def wall_slots(domain_slots: set[Slot], margin: int = 1) -> set[Slot]:
    """Complement slots filling the domain's bounding box plus a margin.

    Used to rebuild a bounded construction inside the open plane: a
    square parked on every wall slot seals each boundary edge.
    """
    xs = [s[0] for s in domain_slots]
    ys = [s[1] for s in domain_slots]
    out = set()
    for x in range(min(xs) - margin, max(xs) + margin + 1):
        for y in range(min(ys) - margin, max(ys) + margin + 1):
            if (x, y) not in domain_slots:
                out.add((x, y))
    return out


@dataclass
class SlotWorld:
    """Tracks square slots while an encoder replays its construction.

    ``universe`` is the set of slots moves may traverse; walls and any
    slots outside it are simply never entered, which also keeps path
    searches finite for unbounded instances.
    """

    universe: set[Slot]
    side: int = 1
    positions: dict[object, Slot] = field(default_factory=dict)

    def add(self, key: object, slot: Slot) -> None:
        if key in self.positions:
            raise ValueError(f"duplicate square key {key!r}")
        self.positions[key] = slot

    def occupied(self) -> set[Slot]:
        return set(self.positions.values())

    def find_path(self, key: object, goal: Slot) -> list[Slot] | None:
        """Shortest slot path for ``key`` to ``goal`` through free slots."""
        start = self.positions[key]
        if start == goal:
            return [start]
        blocked = {s for k, s in self.positions.items() if k != key}
        if goal in blocked or goal not in self.universe:
            return None
        parents: dict[Slot, Slot] = {start: start}
        queue = deque([start])
        while queue:
            current = queue.popleft()
            if current == goal:
                path = [current]
                while path[-1] != start:
                    path.append(parents[path[-1]])
                return path[::-1]
            cx, cy = current
            for dx, dy in STEPS:
                nxt = (cx + dx, cy + dy)
                if nxt in parents or nxt not in self.universe or nxt in blocked:
                    continue
                parents[nxt] = current
                queue.append(nxt)
        return None

    def move(self, key: object, goal: Slot, label: object | None = None) -> Move:
        """Record and return the move taking ``key`` to ``goal``.

        Raises if no collision-free route exists; encoders rely on this
        to catch construction mistakes early.
        """
        path = self.find_path(key, goal)
        if path is None:
            raise ValueError(f"square {key!r} cannot reach slot {goal}")
        return self.forced_move(key, goal, path, label)

    def forced_move(
        self,
        key: object,
        goal: Slot,
        path: list[Slot],
        label: object | None = None,
    ) -> Move:
        """Record a move along an explicit slot path without checking it."""
        self.positions[key] = goal
        waypoints = [
            (x * self.side, y * self.side) for x, y in compress_slot_path(path)
        ]
        return Move(label if label is not None else key, waypoints)

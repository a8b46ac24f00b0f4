"""Grid path search over free anchor sets.

All searches use a fixed neighbor order (right, up, left, down) so that
solver output is deterministic and golden tests stay stable.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .model import Anchor, Waypoint

NEIGHBOR_ORDER = ((1, 0), (0, 1), (-1, 0), (0, -1))


def neighbors(anchor: Anchor):
    x, y = anchor
    for dx, dy in NEIGHBOR_ORDER:
        yield (x + dx, y + dy)


def reachable_anchors(free: set[Anchor], start: Anchor) -> set[Anchor]:
    """All anchors connected to start by unit steps inside free."""
    if start not in free:
        return set()
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for nxt in neighbors(current):
            if nxt in free and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def shortest_path(
    free: set[Anchor], start: Anchor, goal: Anchor
) -> list[Anchor] | None:
    """Shortest unit-step path from start to goal, both inclusive.

    Ties are broken by the fixed neighbor order.  Returns None when goal
    is unreachable.
    """
    if start not in free or goal not in free:
        return None
    if start == goal:
        return [start]
    parents: dict[Anchor, Anchor] = {start: start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for nxt in neighbors(current):
            if nxt not in free or nxt in parents:
                continue
            parents[nxt] = current
            if nxt == goal:
                path = [goal]
                while path[-1] != start:
                    path.append(parents[path[-1]])
                path.reverse()
                return path
            queue.append(nxt)
    return None


def compress_to_waypoints(cells: list[Anchor]) -> tuple[Waypoint, ...]:
    """Drop interior collinear points and convert to rational waypoints."""
    if not cells:
        return ()
    kept = [cells[0]]
    for i in range(1, len(cells) - 1):
        ax, ay = kept[-1]
        bx, by = cells[i]
        cx, cy = cells[i + 1]
        if (bx - ax) * (cy - by) != (by - ay) * (cx - bx):
            kept.append(cells[i])
    if len(cells) > 1:
        kept.append(cells[-1])
    return tuple((Fraction(x), Fraction(y)) for x, y in kept)

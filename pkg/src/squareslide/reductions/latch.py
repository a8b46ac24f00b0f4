"""Airlock latch: a door square that meters crossings.

Geometry (unit coordinates, square side ``s``, queue length ``m``):

  * gate column   x in [0, s),    y in [0, 2s+1)
  * riser column  x in [s, 2s),   y in [0, 2s+1)
  * entry lane    x in [-m*s, 0), y in [0, s)
  * dispersal     x in [0, s),    y in [2s+1, 2s+1 + (m-2)*s)

The door shuttles inside the gate column between high (0, s+1) and low
(0, 0).  High blocks the top of the column, so nothing can leave the
riser; low blocks the bottom, so nothing can come in from the queue.
A crosser enters along the entry lane while the door is high, waits in
the riser, and after the door drops it slides over the gate top and up
into the dispersal column (topmost free slot first).  The riser stages
at most two squares, so each door drop releases at most a pair and the
next pair needs a raise first.

The instance is labeled and leaves no slack: the door must finish low,
the last two crossers finish on the riser slots themselves, and the
dispersal column has exactly one slot per remaining crosser.  Any
attempt to park the door out of the way lands it on somebody's target,
and the displaced owner's only re-entry runs through the cell the door
must cross to get home.  With a door budget of B the gate then passes
f(B) = B + (B odd) crossers and no more; the "no more" half is checked
by the exhaustive solver in the tests rather than assumed.
"""

from __future__ import annotations

from ..model import Domain, Instance, Move, Schedule, SquareSpec


def latch_throughput(door_budget: int) -> int:
    """Crossers an airlock passes when the door may move B times."""
    if door_budget < 1:
        return 0
    return door_budget + (door_budget % 2)


def latch_cells(side: int, crossers: int) -> set[tuple[int, int]]:
    s = side
    cells: set[tuple[int, int]] = set()
    for x in range(0, 2 * s):
        for y in range(0, 2 * s + 1):
            cells.add((x, y))
    for x in range(-crossers * s, 0):
        for y in range(0, s):
            cells.add((x, y))
    for x in range(0, s):
        for y in range(2 * s + 1, 2 * s + 1 + (crossers - 2) * s):
            cells.add((x, y))
    return cells


def _dispersal_y(side: int, exiters: int, index: int) -> int:
    """Dispersal slot for the index-th exiter (1-based, first is topmost)."""
    return 2 * side + 1 + (exiters - index) * side


def build_latch_instance(
    side: int, door_budget: int, crossers: int | None = None
) -> Instance:
    """Standalone latch: a packed queue against the metered gate.

    ``crossers`` defaults to the exact throughput for the door budget.
    Crosser i starts at (-i*side, 0); the first m-2 target the dispersal
    slots (earlier crossers higher up) and the last two target the riser
    top and bottom.
    """
    if side < 2:
        raise ValueError("wrong scenario: the latch needs side >= 2")
    if door_budget < 1:
        raise ValueError("door budget must be at least 1")
    m = latch_throughput(door_budget) if crossers is None else crossers
    if m < 2:
        raise ValueError("the latch needs at least two crossers")
    s = side
    exiters = m - 2

    start = [SquareSpec((0, s + 1), s, label="door")]
    target = [SquareSpec((0, 0), s, label="door")]
    for i in range(1, m + 1):
        start.append(SquareSpec((-i * s, 0), s, label=f"c{i}"))
    for i in range(1, exiters + 1):
        target.append(
            SquareSpec((0, _dispersal_y(s, exiters, i)), s, label=f"c{i}")
        )
    target.append(SquareSpec((s, s + 1), s, label=f"c{m - 1}"))
    target.append(SquareSpec((s, 0), s, label=f"c{m}"))

    return Instance(
        domain=Domain.bounded(latch_cells(s, m)),
        start=tuple(start),
        target=tuple(target),
        labeled=True,
        move_budget=max(door_budget, 2),
        side=s,
        meta={
            "template": "latch",
            "side": s,
            "door_budget": door_budget,
            "crossers": m,
        },
    )


def latch_choreography(
    side: int, crossers: int
) -> list[tuple[str, list[tuple[int, int]]]]:
    """The scripted crossing protocol, as (label, anchor path) steps.

    Crossers pass in batches of two: the first of a batch parks at the
    riser top, the second at the riser bottom, the door drops, both
    climb out into the dispersal column, and the door rises again for
    the next batch.  The last two crossers instead stay in the riser
    and the door's final drop parks it on its own low target.
    """
    s = side
    riser_top = (s, s + 1)
    riser_bottom = (s, 0)
    gate_top = (0, s + 1)
    exiters = crossers - 2
    steps: list[tuple[str, list[tuple[int, int]]]] = []

    def stage(a: int, b: int | None) -> None:
        steps.append((f"c{a}", [(-a * s, 0), riser_bottom, riser_top]))
        if b is not None:
            steps.append((f"c{b}", [(-b * s, 0), riser_bottom]))

    i = 1
    while i <= exiters:
        b = i + 1 if i + 1 <= exiters else None
        stage(i, b)
        steps.append(("door", [gate_top, (0, 0)]))
        steps.append(
            (f"c{i}", [riser_top, gate_top, (0, _dispersal_y(s, exiters, i))])
        )
        if b is not None:
            steps.append(
                (
                    f"c{b}",
                    [
                        riser_bottom,
                        riser_top,
                        gate_top,
                        (0, _dispersal_y(s, exiters, b)),
                    ],
                )
            )
        i += 2 if b is not None else 1
        steps.append(("door", [(0, 0), gate_top]))
    stage(crossers - 1, crossers)
    steps.append(("door", [gate_top, (0, 0)]))
    return steps


def latch_witness_schedule(inst: Instance) -> Schedule:
    """Scripted schedule for a standalone latch instance."""
    if inst.meta.get("template") != "latch":
        raise ValueError("instance was not produced by the latch builder")
    steps = latch_choreography(inst.meta["side"], inst.meta["crossers"])
    return Schedule(tuple(Move(label, tuple(path)) for label, path in steps))

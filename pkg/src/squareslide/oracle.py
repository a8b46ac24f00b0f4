"""Exhaustive reference solver.

Breadth-first search over whole-schedule states at integer anchor
resolution.  Deliberately independent from the polynomial solvers so it
can arbitrate their answers on small instances; `refine_instance` gives
a half-integer spot check by scaling an instance up.
"""

from __future__ import annotations

import heapq
from collections import Counter, deque
from dataclasses import dataclass

from .model import Anchor, Domain, Instance, Move, Schedule, SquareSpec, free_anchor_set
from .pathfind import NEIGHBOR_ORDER, compress_to_waypoints, shortest_path

DEFAULT_NODE_LIMIT = 1_000_000


@dataclass(frozen=True)
class BruteResult:
    status: str
    schedule: Schedule | None
    nodes_expanded: int


def default_window(inst: Instance, margin: int | None = None) -> tuple[int, int, int, int]:
    """Search window for unbounded instances: padded anchor bounding box."""
    anchors = [sq.anchor for sq in inst.start] + [sq.anchor for sq in inst.target]
    xs = [a[0] for a in anchors]
    ys = [a[1] for a in anchors]
    pad = inst.side + 1 if margin is None else margin
    return (
        min(xs) - pad,
        min(ys) - pad,
        max(xs) + inst.side + pad,
        max(ys) + inst.side + pad,
    )


def _blocked_anchors(others: tuple[Anchor, ...], skip: int, side: int) -> set[Anchor]:
    blocked: set[Anchor] = set()
    span = range(-side + 1, side)
    for index, (bx, by) in enumerate(others):
        if index == skip:
            continue
        for dx in span:
            for dy in span:
                blocked.add((bx + dx, by + dy))
    return blocked


def _reachable(
    valid, blocked: set[Anchor], start: Anchor
) -> list[Anchor]:
    seen = {start}
    queue = deque([start])
    found = []
    while queue:
        x, y = queue.popleft()
        for dx, dy in NEIGHBOR_ORDER:
            nxt = (x + dx, y + dy)
            if nxt in seen or nxt in blocked or not valid(nxt):
                continue
            seen.add(nxt)
            found.append(nxt)
            queue.append(nxt)
    return sorted(found)


def single_move_destinations(
    inst: Instance,
    anchors: tuple[Anchor, ...],
    mover: int,
    window: tuple[int, int, int, int] | None = None,
) -> list[Anchor]:
    """Anchors one continuous move can reach, given current positions."""
    valid = _valid_anchor_test(inst, window)
    blocked = _blocked_anchors(anchors, mover, inst.side)
    return _reachable(valid, blocked, anchors[mover])


def _valid_anchor_test(inst: Instance, window: tuple[int, int, int, int] | None):
    side = inst.side
    if inst.domain.is_bounded:
        allowed = free_anchor_set(inst.domain, (), side)
        return allowed.__contains__
    if window is None:
        window = default_window(inst)
    xmin, ymin, xmax, ymax = window

    def inside(anchor: Anchor) -> bool:
        return xmin <= anchor[0] <= xmax - side and ymin <= anchor[1] <= ymax - side

    return inside


def brute_solve(
    inst: Instance,
    node_limit: int = DEFAULT_NODE_LIMIT,
    window: tuple[int, int, int, int] | None = None,
    budget_overrides: dict[int, int] | None = None,
    dominance: bool = True,
) -> BruteResult:
    """Breadth-first search for any legal schedule reaching the target.

    States are (anchor, move count) assignments; unlabeled squares with
    equal remaining budgets are interchangeable and get canonicalized.
    `budget_overrides` replaces the instance budget for chosen squares,
    which keeps gadget-local searches small.

    With ``dominance`` enabled, a state is dropped when a previously
    seen state has the same square positions and pointwise at least as
    much remaining budget; everything reachable from the dropped state
    is reachable from the keeper, so verdicts are unaffected.
    """
    n = len(inst.start)
    side = inst.side
    budgets = tuple(
        (budget_overrides or {}).get(i, inst.move_budget) for i in range(n)
    )
    valid = _valid_anchor_test(inst, window)
    start_anchors = tuple(sq.anchor for sq in inst.start)

    if inst.labeled:
        target_by_label = {sq.label: sq.anchor for sq in inst.target}
        goals = tuple(target_by_label[sq.label] for sq in inst.start)

        def at_goal(anchors: tuple[Anchor, ...]) -> bool:
            return anchors == goals

        def canonical(anchors, counts):
            return (anchors, counts)

    else:
        goal_multiset = tuple(sorted(sq.anchor for sq in inst.target))

        def at_goal(anchors: tuple[Anchor, ...]) -> bool:
            return tuple(sorted(anchors)) == goal_multiset

        def canonical(anchors, counts):
            return tuple(sorted(zip(anchors, counts, budgets)))

    if inst.labeled:

        def position_key(anchors, counts):
            return anchors, tuple(b - c for b, c in zip(budgets, counts))

    else:

        def position_key(anchors, counts):
            pairs = sorted(zip(anchors, counts, budgets))
            return (
                tuple((a, b) for a, _, b in pairs),
                tuple(b - c for _, c, b in pairs),
            )

    frontier_best: dict[object, list[tuple[int, ...]]] = {}

    def dominated(anchors, counts) -> bool:
        pos, rem = position_key(anchors, counts)
        kept = frontier_best.get(pos)
        if kept is not None:
            for old in kept:
                if all(o >= r for o, r in zip(old, rem)):
                    return True
            kept[:] = [
                old
                for old in kept
                if not all(r >= o for r, o in zip(rem, old))
            ]
            kept.append(rem)
        else:
            frontier_best[pos] = [rem]
        return False

    start_counts = (0,) * n
    start_state = (start_anchors, start_counts)
    parents: dict[object, tuple[object, int, Anchor] | None] = {
        canonical(*start_state): None
    }
    if dominance:
        dominated(start_anchors, start_counts)

    def rebuild(state) -> Schedule:
        steps: list[tuple[int, Anchor]] = []
        key = canonical(*state)
        while parents[key] is not None:
            prev_state, mover, dest = parents[key]
            steps.append((mover, dest))
            key = canonical(*prev_state)
        steps.reverse()
        anchors = list(start_anchors)
        moves = []
        for mover, dest in steps:
            blocked = _blocked_anchors(tuple(anchors), mover, side)
            free = {anchors[mover], dest}
            frontier = deque(free)
            while frontier:
                x, y = frontier.popleft()
                for dx, dy in NEIGHBOR_ORDER:
                    nxt = (x + dx, y + dy)
                    if nxt not in free and nxt not in blocked and valid(nxt):
                        free.add(nxt)
                        frontier.append(nxt)
            cells = shortest_path(free, anchors[mover], dest)
            assert cells is not None, "recorded move must stay reachable"
            moves.append(Move(mover, compress_to_waypoints(cells)))
            anchors[mover] = dest
        return Schedule(tuple(moves))

    if at_goal(start_anchors):
        return BruteResult("solved", Schedule(()), 0)

    queue = deque([start_state])
    expanded = 0
    while queue:
        if expanded >= node_limit:
            return BruteResult("resource_exhausted", None, expanded)
        anchors, counts = queue.popleft()
        expanded += 1
        for mover in range(n):
            if counts[mover] >= budgets[mover]:
                continue
            blocked = _blocked_anchors(anchors, mover, side)
            for dest in _reachable(valid, blocked, anchors[mover]):
                next_anchors = anchors[:mover] + (dest,) + anchors[mover + 1 :]
                next_counts = (
                    counts[:mover] + (counts[mover] + 1,) + counts[mover + 1 :]
                )
                key = canonical(next_anchors, next_counts)
                if key in parents:
                    continue
                if dominance and dominated(next_anchors, next_counts):
                    continue
                parents[key] = ((anchors, counts), mover, dest)
                if at_goal(next_anchors):
                    return BruteResult(
                        "solved", rebuild((next_anchors, next_counts)), expanded
                    )
                queue.append((next_anchors, next_counts))
    return BruteResult("infeasible", None, expanded)


def refine_instance(inst: Instance, factor: int = 2) -> Instance:
    """Scale an instance so integer search gains sub-cell resolution."""
    if factor < 2:
        raise ValueError("refinement factor must be at least 2")

    def scale_square(sq: SquareSpec) -> SquareSpec:
        return SquareSpec(
            (sq.anchor[0] * factor, sq.anchor[1] * factor), sq.side * factor, sq.label
        )

    if inst.domain.is_bounded:
        cells = {
            (x * factor + dx, y * factor + dy)
            for x, y in inst.domain.cells
            for dx in range(factor)
            for dy in range(factor)
        }
        domain = Domain.bounded(cells)
    else:
        domain = Domain.unbounded()
    return Instance(
        domain=domain,
        start=tuple(scale_square(sq) for sq in inst.start),
        target=tuple(scale_square(sq) for sq in inst.target),
        labeled=inst.labeled,
        move_budget=inst.move_budget,
        side=inst.side * factor,
        meta=dict(inst.meta),
    )

"""Single-move labeled hardness compiler for monotone planar formulas.

Each variable is a two-row hallway segment holding five bottom (true)
and five top (false) squares over the same six columns of slack; a
side commits by sliding its whole row six slots right, rightmost
square first.  The hallway segment stays passable exactly when one
side has fully committed and the other has not stirred: any mix leaves
a doubly-occupied column or an unbuffered row flip, and the blockage
is permanent because single-move squares never vacate targets.

Clause gadgets are tridents hanging off the hallway: three one-wide
legs drop from arm columns (the even start columns of their variables,
vacated only by that side's own squares) to a shared bar whose
junction square blocks all through-travel once parked.  Clause squares
begin in a height-one corridor east of the hallway, so every one of
them must park before the checker can cross to its target at the
corridor's far end.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..model import Domain, Instance, Schedule, SquareSpec
from .cnf import (
    MonotoneCnf,
    cnf_from_json,
    cnf_to_json,
    clause_ranks,
    occurrence_slots,
    validate_cnf,
)
from .slotgrid import Slot, SlotWorld, scale_cells, wall_slots
from .witness import Assignment

VAR_WIDTH = 14
COMMIT_SHIFT = 6
ROW_SQUARES = 5
CHECKER = "checker"


@dataclass
class SatLayout:
    """Slot-level geometry of a compiled formula."""

    cnf: MonotoneCnf
    slots: set[Slot] = field(default_factory=set)
    starts: dict[str, Slot] = field(default_factory=dict)
    targets: dict[str, Slot] = field(default_factory=dict)
    junctions: dict[int, Slot] = field(default_factory=dict)
    corridor_x: int = 0

    @property
    def num_clauses(self) -> int:
        return len(self.cnf.clauses)


def variable_label(variable: int, positive: bool, index: int) -> str:
    return f"v{variable}{'t' if positive else 'f'}{index}"


def clause_label(clause_index: int) -> str:
    return f"clause{clause_index}"


def _bar_row(positive: bool, rank: int) -> int:
    return -2 - 2 * rank if positive else 3 + 2 * rank


def build_sat_layout(cnf: MonotoneCnf) -> SatLayout:
    problems = validate_cnf(cnf)
    if problems:
        raise ValueError("malformed embedding: " + "; ".join(problems))
    layout = SatLayout(cnf)
    n = cnf.num_variables
    m = len(cnf.clauses)

    for x in range(-2, VAR_WIDTH * n):
        layout.slots.add((x, 0))
        layout.slots.add((x, 1))
    layout.corridor_x = VAR_WIDTH * n
    for j in range(m + 1):
        layout.slots.add((layout.corridor_x + j, 0))

    pos = cnf.position_of()
    for v in range(n):
        x0 = VAR_WIDTH * pos[v]
        for j in range(ROW_SQUARES):
            for positive, row in ((True, 0), (False, 1)):
                label = variable_label(v, positive, j)
                layout.starts[label] = (x0 + j, row)
                layout.targets[label] = (x0 + COMMIT_SHIFT + j, row)

    layout.starts[CHECKER] = (-2, 0)
    layout.targets[CHECKER] = (layout.corridor_x + m, 0)

    ranks = clause_ranks(cnf)
    slots_by_leg = occurrence_slots(cnf)
    tridents: list[set[Slot]] = []
    for ci, clause in enumerate(cnf.clauses):
        bar = _bar_row(clause.positive, ranks[ci])
        cols = []
        trident: set[Slot] = set()
        for li, v in enumerate(clause.variables):
            col = VAR_WIDTH * pos[v] + 2 * slots_by_leg[(ci, li)]
            cols.append(col)
            leg_rows = (
                range(bar, 0) if clause.positive else range(2, bar + 1)
            )
            for y in leg_rows:
                trident.add((col, y))
        for x in range(min(cols), max(cols) + 1):
            trident.add((x, bar))
        tridents.append(trident)
        junction = (sorted(cols)[1], bar)
        layout.junctions[ci] = junction
        label = clause_label(ci)
        layout.starts[label] = (layout.corridor_x + ci, 0)
        layout.targets[label] = junction

    for a in range(len(tridents)):
        for b in range(a + 1, len(tridents)):
            for x, y in tridents[a]:
                near = {(x, y), (x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)}
                if near & tridents[b]:
                    raise ValueError(
                        f"malformed embedding: clause gadgets {a} and {b} "
                        "collide"
                    )
    for trident in tridents:
        layout.slots |= trident
    return layout


def compile_sat_monotone_labeled(
    cnf: MonotoneCnf, side: int = 1, bounded: bool = True
) -> Instance:
    """Build the labeled single-move instance for a monotone formula.

    The formula is satisfiable exactly when the instance is solvable;
    ``bounded=False`` swaps the cell domain for a ring of labeled wall
    squares already parked on their targets.
    """
    if side < 1:
        raise ValueError("side must be a positive integer")
    layout = build_sat_layout(cnf)

    squares_start = []
    squares_target = []
    for label in sorted(layout.starts):
        sx, sy = layout.starts[label]
        tx, ty = layout.targets[label]
        squares_start.append(
            SquareSpec((sx * side, sy * side), side, label)
        )
        squares_target.append(
            SquareSpec((tx * side, ty * side), side, label)
        )

    meta = {
        "reduction": "sat_monotone",
        "formula": cnf_to_json(cnf),
        "side": side,
        "bounded": bounded,
        "checker": CHECKER,
    }

    if bounded:
        domain = Domain.bounded(scale_cells(layout.slots, side))
    else:
        domain = Domain.unbounded()
        walls = sorted(wall_slots(layout.slots))
        meta["wall_labels"] = []
        for i, (wx, wy) in enumerate(walls):
            label = f"wall{i}"
            spec = SquareSpec((wx * side, wy * side), side, label)
            squares_start.append(spec)
            squares_target.append(spec)
            meta["wall_labels"].append(label)

    return Instance(
        domain=domain,
        start=tuple(squares_start),
        target=tuple(squares_target),
        labeled=True,
        move_budget=1,
        side=side,
        meta=meta,
    )


def _sat_world(inst: Instance, layout: SatLayout) -> SlotWorld:
    world = SlotWorld(set(layout.slots), inst.side)
    for square in inst.start:
        sx, sy = square.anchor
        world.add(square.label, (sx // inst.side, sy // inst.side))
    return world


def _nominal_clause_path(layout: SatLayout, ci: int) -> list[Slot]:
    """Straight-line route ignoring occupancy, for flagged schedules."""
    start = layout.starts[clause_label(ci)]
    col, bar = layout.junctions[ci]
    path = [start]
    x = start[0]
    while x > col:
        x -= 1
        path.append((x, 0))
    y = 0
    step = 1 if bar > 0 else -1
    while y != bar:
        y += step
        path.append((col, y))
    return path


def schedule_from_assignment(inst: Instance, witness: Assignment) -> Schedule:
    """Replay the canonical solving order for a truth assignment.

    Chosen polarity rows commit first, clause squares leave the
    corridor west-most first, the checker crosses, and the leftover
    rows commit afterwards.  A witness that fails some clause still
    yields a schedule: the stuck clause square is sent down its first
    leg regardless, the schedule is annotated in ``meta``, and
    verification then rejects it.
    """
    meta = inst.meta or {}
    if meta.get("reduction") != "sat_monotone":
        raise ValueError("instance was not produced by this compiler")
    cnf = cnf_from_json(meta["formula"])
    if len(witness.values) != cnf.num_variables:
        raise ValueError("assignment length does not match variable count")
    layout = build_sat_layout(cnf)
    world = _sat_world(inst, layout)
    pos = cnf.position_of()
    moves = []
    flags: list[str] = []

    def commit(variable: int, positive: bool) -> None:
        for j in reversed(range(ROW_SQUARES)):
            label = variable_label(variable, positive, j)
            moves.append(world.move(label, layout.targets[label]))

    for p in range(cnf.num_variables):
        variable = cnf.variable_order[p]
        commit(variable, witness.values[variable])

    for ci, clause in enumerate(cnf.clauses):
        label = clause_label(ci)
        satisfied = any(
            witness.values[v] == clause.positive for v in clause.variables
        )
        goal = layout.junctions[ci]
        path = world.find_path(label, goal) if satisfied else None
        if path is None:
            flags.append(f"clause {ci} has no open leg under this witness")
            path = _nominal_clause_path(layout, ci)
        moves.append(world.forced_move(label, goal, path))

    checker_goal = layout.targets[CHECKER]
    path = world.find_path(CHECKER, checker_goal)
    if path is None:
        flags.append("checker is walled in under this witness")
        path = [layout.starts[CHECKER]] + [
            (x, 0)
            for x in range(
                layout.starts[CHECKER][0] + 1, checker_goal[0] + 1
            )
        ]
    moves.append(world.forced_move(CHECKER, checker_goal, path))

    for p in range(cnf.num_variables):
        variable = cnf.variable_order[p]
        commit(variable, not witness.values[variable])

    schedule_meta = {"witness_flagged": flags} if flags else {}
    return Schedule(tuple(moves), schedule_meta)


def decode_assignment(inst: Instance, schedule: Schedule) -> Assignment:
    """Read the assignment back off a valid schedule.

    The committed polarity of each variable is whichever side moved
    any square before the checker's move; a schedule that mixes sides
    before the checker (or never moves it) is undecodable.
    """
    meta = inst.meta or {}
    if meta.get("reduction") != "sat_monotone":
        raise ValueError("instance was not produced by this compiler")
    cnf = cnf_from_json(meta["formula"])
    checker_index = next(
        (i for i, mv in enumerate(schedule.moves) if mv.square == CHECKER),
        None,
    )
    if checker_index is None:
        raise ValueError("undecodable: the checker never moves")
    early = {mv.square for mv in schedule.moves[:checker_index]}
    values = []
    for v in range(cnf.num_variables):
        true_moved = any(
            variable_label(v, True, j) in early for j in range(ROW_SQUARES)
        )
        false_moved = any(
            variable_label(v, False, j) in early for j in range(ROW_SQUARES)
        )
        if true_moved == false_moved:
            raise ValueError(
                f"undecodable: variable {v} has no single committed side "
                "before the checker"
            )
        values.append(true_moved)
    return Assignment(tuple(values))

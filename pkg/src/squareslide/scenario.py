"""Scenario classification and the solver dispatcher.

Each combination of labeling, domain boundedness, square side and move
budget falls into a known complexity cell; feasible polynomial cells are
solved directly and hard cells fall back to the exhaustive oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import flow, oracle
from .model import Instance, Move, Schedule
from .verifier import attainment

NP_HARD = "np_hard"
POLY = "poly"
TRIVIAL = "trivial"


@dataclass(frozen=True)
class ScenarioClass:
    labeled: bool
    bounded: bool
    side: int
    budget: int
    complexity: str
    theorem: str | None
    solver: str | None


def classify_scenario(
    labeled: bool, bounded: bool, side: int, budget: int
) -> ScenarioClass:
    """Complexity cell for the given problem family."""
    if side < 1:
        raise ValueError("side must be positive")
    if budget < 1:
        raise ValueError("move budget must be positive")

    def cell(complexity, theorem, solver=None):
        return ScenarioClass(labeled, bounded, side, budget, complexity, theorem, solver)

    if labeled and bounded:
        if side == 1:
            if budget == 1:
                return cell(NP_HARD, "Thm 1")
            if budget == 2:
                return cell(NP_HARD, "Thm 7")
            return cell(NP_HARD, "Thm 8")
        if budget == 1:
            return cell(NP_HARD, "Thm 1")
        if budget == 2:
            return cell(NP_HARD, "Thm 5")
        return cell(NP_HARD, "Thm 6")
    if labeled:
        if budget == 1:
            return cell(NP_HARD, "Thm 1")
        return cell(TRIVIAL, None, "rearrange")
    if bounded:
        if side == 1:
            return cell(POLY, "Thm 3", "flow")
        if budget == 1:
            return cell(NP_HARD, "Thm 4")
        if budget == 2:
            return cell(NP_HARD, "Thm 5")
        return cell(NP_HARD, "Thm 6")
    if side == 1:
        if budget == 1:
            return cell(POLY, "Thm 3", "flow")
        return cell(TRIVIAL, None, "rearrange")
    if budget == 1:
        return cell(NP_HARD, "Thm 4")
    return cell(TRIVIAL, None, "rearrange")


def solve_unbounded_trivial(inst: Instance) -> Schedule:
    """Two moves per square on an unbounded domain with budget >= 2.

    Every square climbs above the working area, parks in its own slot on
    a parking row sitting side + 2 + budget rows above the bounding box
    at pitch side + 1, and later descends onto its target.  Parking runs
    in decreasing start height and retrieval in increasing target
    height, which keeps every straight-line sweep collision free.
    """
    if inst.domain.is_bounded:
        raise ValueError("wrong scenario: rearrange solver needs an unbounded domain")
    if inst.move_budget < 2:
        raise ValueError("wrong scenario: rearrange solver needs move budget at least 2")
    if attainment(inst.start, inst.target, inst.labeled) is None:
        return Schedule(())

    side = inst.side
    anchors = [sq.anchor for sq in inst.start] + [sq.anchor for sq in inst.target]
    xmax = max(a[0] for a in anchors)
    ymax = max(a[1] for a in anchors)
    park_row = (ymax + side) + side + 2 + inst.move_budget
    approach_row = park_row + side + 1

    targets = sorted(
        range(len(inst.target)),
        key=lambda i: (inst.target[i].anchor[1], inst.target[i].anchor[0]),
    )
    if inst.labeled:
        by_label = {inst.start[i].label: i for i in range(len(inst.start))}
        retrieval = [(by_label[inst.target[t].label], t) for t in targets]
    else:
        park_first = sorted(
            range(len(inst.start)),
            key=lambda i: (-inst.start[i].anchor[1], -inst.start[i].anchor[0]),
        )
        retrieval = list(zip(park_first, targets))
    slot_of = {}
    for rank, (square, _) in enumerate(retrieval):
        slot_of[square] = xmax + side + 1 + rank * (side + 1)

    def climb(square: int) -> Move:
        x0, y0 = inst.start[square].anchor
        slot = slot_of[square]
        path = [(x0, y0), (x0, approach_row), (slot, approach_row), (slot, park_row)]
        return Move(square, tuple((Fraction(x), Fraction(y)) for x, y in path))

    def descend(square: int, target_index: int) -> Move:
        slot = slot_of[square]
        tx, ty = inst.target[target_index].anchor
        path = [(slot, park_row), (slot, approach_row), (tx, approach_row), (tx, ty)]
        return Move(square, tuple((Fraction(x), Fraction(y)) for x, y in path))

    park_order = sorted(
        range(len(inst.start)),
        key=lambda i: (-inst.start[i].anchor[1], -inst.start[i].anchor[0]),
    )
    moves = [climb(square) for square in park_order]
    moves.extend(descend(square, t) for square, t in retrieval)
    return Schedule(tuple(moves))


@dataclass(frozen=True)
class SolveOutcome:
    status: str
    schedule: Schedule | None
    method: str
    classification: ScenarioClass
    detail: str | None = None


def solve_instance(
    inst: Instance, node_limit: int = oracle.DEFAULT_NODE_LIMIT
) -> SolveOutcome:
    """Dispatch to the strongest solver the scenario cell admits."""
    cls = classify_scenario(
        inst.labeled, inst.domain.is_bounded, inst.side, inst.move_budget
    )
    if cls.solver == "flow":
        result = flow.solve_unlabeled_unit(inst)
        if result.status == "solved":
            return SolveOutcome("solved", result.schedule, "flow", cls)
        detail = "unbalanced components: " + "; ".join(
            str(sorted(component)) for component in result.unbalanced_components
        )
        return SolveOutcome("infeasible", None, "flow", cls, detail)
    if cls.solver == "rearrange":
        return SolveOutcome("solved", solve_unbounded_trivial(inst), "rearrange", cls)
    result = oracle.brute_solve(inst, node_limit=node_limit)
    detail = f"nodes expanded: {result.nodes_expanded}"
    return SolveOutcome(result.status, result.schedule, "oracle", cls, detail)

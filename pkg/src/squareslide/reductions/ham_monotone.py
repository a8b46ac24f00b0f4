"""Hamiltonian path to unlabeled monotone reconfiguration.

The compiled instance is a network of corridors ("edges") populated by
squares that already sit on their targets, joined by vertex gadgets
whose two off-target squares straddle slot boundaries.  One vacant
target at the source vertex acts as a hole.  Pushing the hole along a
corridor shifts every corridor square one slot; steering it through a
vertex gadget is the only way to park that gadget's straddlers, and the
parking choreography consumes the visit, so a schedule that fills every
target traces a Hamiltonian path of the digraph.

Squares are ``side x side`` with ``side >= 2``: the straddlers sit one
unit off the slot lattice and the leftover sliver is what lets them
slide exactly when the neighbouring slot has been vacated.  At side 1
the sliver vanishes and the gadgets jam, so compilation refuses it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..model import Domain, Instance, Move, Schedule, SquareSpec
from .digraph import (
    DigraphEdge,
    EmbeddedDigraph,
    digraph_from_json,
    digraph_to_json,
    expand_route,
    is_ham_path,
    validate_digraph,
)
from .slotgrid import Slot, scale_cells, wall_slots
from .witness import HamPath

N, S, E, W = (0, 1), (0, -1), (1, 0), (-1, 0)

REDUCTION_TAG = "ham_monotone"


@dataclass(frozen=True)
class _Template:
    """One vertex gadget in canonical orientation, in slot coordinates.

    Straddlers are given as (base slot, unit nudge): the square's anchor
    is the base slot's anchor displaced one unit along the nudge.
    Dance waypoints are slot anchors; straddlers always park
    slot-aligned.
    """

    name: str
    center: Slot
    slots: tuple[Slot, ...]
    straddlers: tuple[tuple[Slot, Slot], ...]
    targets: tuple[Slot, ...]
    ports: dict[str, tuple[Slot, Slot]]
    dances: dict[str, tuple[tuple[int, tuple[Slot, ...]], ...]]
    exit_targets: dict[str, Slot]


_P0 = ((0, 0), E)
_P1 = ((2, 0), W)

TEMPLATES: dict[str, _Template] = {
    "start": _Template(
        name="start",
        center=(0, 0),
        slots=((0, 0),),
        straddlers=(),
        targets=((0, 0),),
        ports={"out": ((1, 0), E)},
        dances={},
        exit_targets={"out": (0, 0)},
    ),
    "pass_straight": _Template(
        name="pass_straight",
        center=(1, 0),
        slots=((0, 0), (1, 0), (2, 0)),
        straddlers=(_P0, _P1),
        targets=((0, 0), (2, 0)),
        ports={"in": ((-1, 0), W), "out": ((3, 0), E)},
        dances={"in": ((0, ((-1, 0),)), (1, ((0, 0),)))},
        exit_targets={"out": (2, 0)},
    ),
    "pass_corner": _Template(
        name="pass_corner",
        center=(1, 0),
        slots=((0, 0), (1, 0), (2, 0), (1, -1)),
        straddlers=(_P0, _P1),
        targets=((1, -1), (1, 0)),
        ports={"in": ((-1, 0), W), "out": ((1, 1), N)},
        dances={"in": ((0, ((-1, 0),)), (1, ((1, 0), (1, -1))))},
        exit_targets={"out": (1, 0)},
    ),
    "merge": _Template(
        name="merge",
        center=(1, 0),
        slots=((0, 0), (1, 0), (2, 0), (1, -1)),
        straddlers=(_P0, _P1),
        targets=((1, -1), (1, 0)),
        ports={"in_w": ((-1, 0), W), "in_e": ((3, 0), E), "out": ((1, 1), N)},
        dances={
            "in_w": ((0, ((-1, 0),)), (1, ((1, 0), (1, -1)))),
            "in_e": ((1, ((3, 0),)), (0, ((1, 0), (1, -1)))),
        },
        exit_targets={"out": (1, 0)},
    ),
    "split": _Template(
        name="split",
        center=(1, 0),
        slots=((0, 0), (1, 0), (2, 0)),
        straddlers=(_P0, _P1),
        targets=((0, 0), (2, 0)),
        ports={"in": ((-1, 0), W), "out_e": ((3, 0), E), "out_n": ((0, 1), N)},
        dances={
            "out_e": ((0, ((-1, 0),)), (1, ((0, 0),))),
            "out_n": ((0, ((-1, 0),)), (1, ((2, 0),))),
        },
        exit_targets={"out_e": (2, 0), "out_n": (0, 0)},
    ),
    "end": _Template(
        name="end",
        center=(1, 0),
        slots=((0, 0), (1, 0), (2, 0)),
        straddlers=(_P0, _P1),
        targets=((0, 0),),
        ports={"in": ((-1, 0), W)},
        dances={"in": ((0, ((-1, 0),)), (1, ((0, 0),)))},
        exit_targets={},
    ),
}

Xf = tuple[int, bool]
ALL_XF: tuple[Xf, ...] = tuple((k, m) for m in (False, True) for k in range(4))


def _xf_dir(t: Xf, d: Slot) -> Slot:
    k, mirror = t
    dx, dy = d
    if mirror:
        dx = -dx
    for _ in range(k):
        dx, dy = -dy, dx
    return (dx, dy)


def _xf_slot(t: Xf, s: Slot) -> Slot:
    k, mirror = t
    x, y = s
    if mirror:
        x = -x - 1
    for _ in range(k):
        x, y = -y - 1, x
    return (x, y)


@dataclass(frozen=True)
class _Placed:
    """A template dropped into the plane: transform plus translation."""

    template: _Template
    xf: Xf
    shift: Slot

    def slot(self, s: Slot) -> Slot:
        x, y = _xf_slot(self.xf, s)
        return (x + self.shift[0], y + self.shift[1])

    def slots(self) -> list[Slot]:
        return [self.slot(s) for s in self.template.slots]

    def port_slot(self, role: str) -> Slot:
        return self.slot(self.template.ports[role][0])

    def port_dir(self, role: str) -> Slot:
        return _xf_dir(self.xf, self.template.ports[role][1])

    def straddler_anchor(self, i: int, side: int) -> Slot:
        base, nudge = self.template.straddlers[i]
        bx, by = self.slot(base)
        nx, ny = _xf_dir(self.xf, nudge)
        return (bx * side + nx, by * side + ny)

    def target_anchors(self, side: int) -> list[Slot]:
        return [(x * side, y * side) for x, y in map(self.slot, self.template.targets)]

    def dance_moves(self, role: str, side: int) -> list[tuple[int, list[Slot]]]:
        out = []
        for piece, waypoints in self.template.dances[role]:
            path = [(x * side, y * side) for x, y in map(self.slot, waypoints)]
            out.append((piece, path))
        return out

    def exit_target_anchor(self, role: str, side: int) -> Slot:
        x, y = self.slot(self.template.exit_targets[role])
        return (x * side, y * side)


def _place(template: _Template, xf: Xf, center_at: Slot) -> _Placed:
    cx, cy = _xf_slot(xf, template.center)
    return _Placed(template, xf, (center_at[0] - cx, center_at[1] - cy))


def _orient_to_ports(
    kind_names: tuple[str, ...],
    center: Slot,
    wanted: dict[str, Slot],
    symmetric_roles: tuple[tuple[str, str], ...] = (),
) -> tuple[_Placed, dict[str, str]] | None:
    """Find a placement whose port slots hit the wanted slots.

    ``wanted`` maps port roles to required slots.  ``symmetric_roles``
    lists role pairs that may be swapped (the two merge entries, the two
    split exits).  Returns the placement plus the role renaming used.
    """
    swaps: list[dict[str, str]] = [{}]
    for a, b in symmetric_roles:
        if a in wanted and b in wanted:
            swaps.append({a: b, b: a})
    for name in kind_names:
        template = TEMPLATES[name]
        for xf in ALL_XF:
            placed = _place(template, xf, center)
            for swap in swaps:
                ok = True
                for role, slot in wanted.items():
                    port_role = swap.get(role, role)
                    if port_role not in template.ports:
                        ok = False
                        break
                    if placed.port_slot(port_role) != slot:
                        ok = False
                        break
                if ok:
                    return placed, {role: swap.get(role, role) for role in wanted}
    return None


def _orient_to_dirs(
    name: str, center: Slot, wanted_dirs: dict[str, Slot]
) -> _Placed:
    """Placement whose port directions match; used by the generator."""
    template = TEMPLATES[name]
    for xf in ALL_XF:
        placed = _place(template, xf, center)
        if all(placed.port_dir(r) == d for r, d in wanted_dirs.items()):
            return placed
    raise ValueError(f"no orientation of {name} realizes {wanted_dirs}")


def _vertex_kind(indeg: int, outdeg: int) -> tuple[str, ...]:
    if (indeg, outdeg) == (0, 1):
        return ("start",)
    if (indeg, outdeg) == (1, 0):
        return ("end",)
    if (indeg, outdeg) == (1, 1):
        return ("pass_straight", "pass_corner")
    if (indeg, outdeg) == (2, 1):
        return ("merge",)
    if (indeg, outdeg) == (1, 2):
        return ("split",)
    raise ValueError(f"no gadget for degree pattern in={indeg} out={outdeg}")


def _solve_layout(g: EmbeddedDigraph) -> tuple[list[_Placed], dict[tuple[int, int], str], dict[tuple[int, int], str]]:
    """Orient every vertex gadget against its incident routes.

    Returns placements per vertex plus, per edge (tail, head), the tail
    port role the edge leaves by and the head port role it enters by.
    """
    placements: list[_Placed] = []
    out_role: dict[tuple[int, int], str] = {}
    in_role: dict[tuple[int, int], str] = {}
    for v in range(g.num_vertices):
        ins = g.in_edges(v)
        outs = g.out_edges(v)
        kinds = _vertex_kind(len(ins), len(outs))
        wanted: dict[str, Slot] = {}
        if kinds == ("merge",):
            wanted["in_w"] = ins[0].route[-1]
            wanted["in_e"] = ins[1].route[-1]
            wanted["out"] = outs[0].route[0]
            sym = (("in_w", "in_e"),)
        elif kinds == ("split",):
            wanted["in"] = ins[0].route[-1]
            wanted["out_e"] = outs[0].route[0]
            wanted["out_n"] = outs[1].route[0]
            sym = (("out_e", "out_n"),)
        else:
            if ins:
                wanted["in"] = ins[0].route[-1]
            if outs:
                wanted["out"] = outs[0].route[0]
            sym = ()
        solved = _orient_to_ports(kinds, g.positions[v], wanted, sym)
        if solved is None:
            raise ValueError(
                f"malformed embedding: vertex {v}: no gadget orientation "
                "matches its routes"
            )
        placed, renaming = solved
        placements.append(placed)
        if kinds == ("merge",):
            in_role[(ins[0].tail, v)] = renaming["in_w"]
            in_role[(ins[1].tail, v)] = renaming["in_e"]
            out_role[(v, outs[0].head)] = "out"
        elif kinds == ("split",):
            in_role[(ins[0].tail, v)] = "in"
            out_role[(v, outs[0].head)] = renaming["out_e"]
            out_role[(v, outs[1].head)] = renaming["out_n"]
        else:
            if ins:
                in_role[(ins[0].tail, v)] = "in"
            if outs:
                out_role[(v, outs[0].head)] = "out"
    return placements, out_role, in_role


def compile_ham_unlabeled_monotone(
    g: EmbeddedDigraph, side: int = 2, bounded: bool = True
) -> Instance:
    """Compile a routed digraph into an unlabeled one-move instance.

    The instance is feasible exactly when the digraph has a directed
    Hamiltonian path from its source to its sink.  ``side`` must be at
    least 2; the straddler mechanism is degenerate for unit squares.
    """
    if side < 2:
        raise ValueError(
            "wrong scenario: conveyor gadgets need side >= 2 "
            "(unit squares leave no sliver for the straddlers)"
        )
    problems = validate_digraph(g)
    if problems:
        raise ValueError(f"malformed embedding: {problems[0]}")

    placements, out_role, in_role = _solve_layout(g)

    slot_owner: dict[Slot, str] = {}
    for v, placed in enumerate(placements):
        for s in placed.slots():
            if s in slot_owner:
                raise ValueError(
                    f"malformed embedding: slot {s} shared by vertex {v} "
                    f"and {slot_owner[s]}"
                )
            slot_owner[s] = f"vertex {v}"
    for i, e in enumerate(g.edges):
        for s in expand_route(e.route):
            if s in slot_owner:
                raise ValueError(
                    f"malformed embedding: slot {s} shared by edge {i} "
                    f"and {slot_owner[s]}"
                )
            slot_owner[s] = f"edge {i}"

    start: list[SquareSpec] = []
    target: list[SquareSpec] = []
    vertex_squares: dict[str, list[int]] = {}
    edge_squares: dict[str, list[int]] = {}

    for v, placed in enumerate(placements):
        idxs = []
        for i in range(len(placed.template.straddlers)):
            idxs.append(len(start))
            start.append(SquareSpec(placed.straddler_anchor(i, side), side))
        vertex_squares[str(v)] = idxs
        for anchor in placed.target_anchors(side):
            target.append(SquareSpec(anchor, side))

    for i, e in enumerate(g.edges):
        idxs = []
        for sx, sy in expand_route(e.route):
            anchor = (sx * side, sy * side)
            idxs.append(len(start))
            start.append(SquareSpec(anchor, side))
            target.append(SquareSpec(anchor, side))
        edge_squares[str(i)] = idxs

    meta = {
        "reduction": REDUCTION_TAG,
        "digraph": digraph_to_json(g),
        "side": side,
        "bounded": bounded,
        "vertex_squares": vertex_squares,
        "edge_squares": edge_squares,
    }

    if bounded:
        domain = Domain.bounded(scale_cells(slot_owner, side))
    else:
        domain = Domain.unbounded()
        wall_idx = []
        for sx, sy in sorted(wall_slots(set(slot_owner))):
            anchor = (sx * side, sy * side)
            wall_idx.append(len(start))
            start.append(SquareSpec(anchor, side))
            target.append(SquareSpec(anchor, side))
        meta["wall_indices"] = wall_idx

    return Instance(
        domain=domain,
        start=tuple(start),
        target=tuple(target),
        labeled=False,
        move_budget=1,
        side=side,
        meta=meta,
    )


def _meta_digraph(inst: Instance) -> EmbeddedDigraph:
    if inst.meta.get("reduction") != REDUCTION_TAG:
        raise ValueError("instance was not produced by the path compiler")
    return digraph_from_json(inst.meta["digraph"])


def schedule_from_ham_path(inst: Instance, witness: HamPath) -> Schedule:
    """Turn a Hamiltonian path into the conveyor schedule.

    A witness that visits every vertex but uses a missing arc yields a
    flagged schedule (``meta["witness_flagged"]``) that replays the
    traversal anyway and necessarily fails verification; a witness that
    is not even a vertex permutation is rejected outright.
    """
    g = _meta_digraph(inst)
    side = inst.meta["side"]
    order = tuple(witness.vertices)
    if sorted(order) != list(range(g.num_vertices)):
        raise ValueError(
            "witness does not list every vertex exactly once"
        )
    placements, out_role, in_role = _solve_layout(g)
    edge_by_arc = {(e.tail, e.head): i for i, e in enumerate(g.edges)}
    edge_squares = {int(k): v for k, v in inst.meta["edge_squares"].items()}
    vertex_squares = {int(k): v for k, v in inst.meta["vertex_squares"].items()}

    moves: list[Move] = []
    flagged: list[str] = []

    def emit(square_index: int, here: Slot, waypoints: list[Slot]) -> None:
        moves.append(Move(square_index, tuple([here] + waypoints)))

    anchors = {i: sq.anchor for i, sq in enumerate(inst.start)}

    def run_dance(v: int, key: str) -> None:
        placed = placements[v]
        for piece, path in placed.dance_moves(key, side):
            idx = vertex_squares[v][piece]
            emit(idx, anchors[idx], path)
            anchors[idx] = path[-1]

    def dance_key(v: int, step: int) -> str | None:
        """Which choreography vertex v runs at this step of the path.

        Splits park their second straddler opposite the exit, so their
        dance is chosen by the outgoing arc; every other gadget is
        driven by the incoming one.
        """
        placed = placements[v]
        if placed.template.name == "start":
            return None
        if placed.template.name == "split":
            if step + 1 < len(order):
                arc = (v, order[step + 1])
                if arc in edge_by_arc:
                    return out_role[arc]
            flagged.append(f"witness leaves split {v} with no usable arc")
            return next(iter(placed.template.dances))
        if step > 0:
            arc = (order[step - 1], v)
            if arc in edge_by_arc:
                return in_role[arc]
        flagged.append(f"witness enters {v} with no usable arc")
        return next(iter(placed.template.dances))

    for step, v in enumerate(order):
        if step > 0 and (order[step - 1], v) not in edge_by_arc:
            flagged.append(f"witness uses missing arc {order[step - 1]}->{v}")
        key = dance_key(v, step)
        if key is not None:
            run_dance(v, key)
        if step + 1 < len(order):
            arc = (v, order[step + 1])
            if arc not in edge_by_arc:
                continue
            ei = edge_by_arc[arc]
            slots = expand_route(g.edges[ei].route)
            idxs = edge_squares[ei]
            exit_anchor = placements[v].exit_target_anchor(out_role[arc], side)
            emit(idxs[0], anchors[idxs[0]], [exit_anchor])
            anchors[idxs[0]] = exit_anchor
            for j in range(1, len(slots)):
                dest = (slots[j - 1][0] * side, slots[j - 1][1] * side)
                emit(idxs[j], anchors[idxs[j]], [dest])
                anchors[idxs[j]] = dest

    meta = {"witness_flagged": flagged} if flagged else {}
    return Schedule(tuple(moves), meta)


def decode_ham_path(inst: Instance, schedule: Schedule) -> HamPath:
    """Read the visit order back out of a conveyor schedule."""
    g = _meta_digraph(inst)
    vertex_squares = {int(k): v for k, v in inst.meta["vertex_squares"].items()}
    first_move: dict[int, int] = {}
    owner = {
        idx: v for v, idxs in vertex_squares.items() for idx in idxs
    }
    for t, move in enumerate(schedule.moves):
        if not isinstance(move.square, int):
            raise ValueError("undecodable: unlabeled schedule must index squares")
        v = owner.get(move.square)
        if v is not None and v not in first_move:
            first_move[v] = t
    sources = [
        v for v in range(g.num_vertices) if not g.in_edges(v)
    ]
    activated = sorted(first_move, key=first_move.get)
    order = tuple(sources + activated)
    if not is_ham_path(g, order):
        raise ValueError(
            "undecodable: gadget activation order is not a Hamiltonian path"
        )
    return HamPath(order)


PITCH = 7


def random_embedded_digraph(
    rng: random.Random, num_vertices: int
) -> tuple[EmbeddedDigraph, HamPath]:
    """A routed toy digraph with a known Hamiltonian path.

    Lays the path out as a monotone staircase of pass gadgets; with a
    coin flip (and enough vertices) the straight layout also gains a
    skippable split/merge chord above the chain.
    """
    n = num_vertices
    if n < 2:
        raise ValueError("need at least two vertices")
    if n > 6:
        raise ValueError("toy generator handles at most six vertices")

    chord = n >= 4 and rng.random() < 0.5
    turns: list[bool] = [False] * n
    if not chord:
        for i in range(1, n - 1):
            turns[i] = rng.random() < 0.35

    positions: list[Slot] = [(0, 0)]
    headings: list[Slot] = []
    heading = E
    for i in range(n - 1):
        if turns[i]:
            heading = N if heading == E else E
        headings.append(heading)
        px, py = positions[-1]
        positions.append((px + PITCH * heading[0], py + PITCH * heading[1]))

    def opposite(d: Slot) -> Slot:
        return (-d[0], -d[1])

    placements: list[_Placed] = []
    for v in range(n):
        if v == 0:
            placements.append(
                _orient_to_dirs("start", positions[0], {"out": headings[0]})
            )
        elif chord and v == 1:
            placements.append(
                _orient_to_dirs(
                    "split", positions[v], {"in": W, "out_e": E, "out_n": N}
                )
            )
        elif chord and v == n - 2:
            placements.append(
                _orient_to_dirs(
                    "merge", positions[v], {"in_w": W, "in_e": E, "out": N}
                )
            )
        elif chord and v == n - 1:
            # The end gadget sits above the merge and is entered from below.
            merge_out = _orient_to_dirs(
                "merge", positions[n - 2], {"in_w": W, "in_e": E, "out": N}
            ).port_slot("out")
            positions[v] = (merge_out[0], merge_out[1] + 3)
            placements.append(_orient_to_dirs("end", positions[v], {"in": S}))
        elif v == n - 1:
            placements.append(
                _orient_to_dirs("end", positions[v], {"in": opposite(headings[v - 1])})
            )
        else:
            din = opposite(headings[v - 1])
            dout = headings[v]
            name = (
                "pass_straight"
                if (din[0] + dout[0], din[1] + dout[1]) == (0, 0)
                else "pass_corner"
            )
            placements.append(
                _orient_to_dirs(name, positions[v], {"in": din, "out": dout})
            )

    def straight(a: Slot, b: Slot) -> tuple[Slot, ...]:
        if a[0] != b[0] and a[1] != b[1]:
            raise ValueError(f"ports {a} and {b} are not collinear")
        return (a, b)

    edges: list[DigraphEdge] = []
    for v in range(n - 1):
        tail_role = "out_e" if chord and v == 1 else "out"
        head_role = "in_w" if chord and v + 1 == n - 2 else "in"
        edges.append(
            DigraphEdge(
                v,
                v + 1,
                straight(
                    placements[v].port_slot(tail_role),
                    placements[v + 1].port_slot(head_role),
                ),
            )
        )

    if chord:
        p0 = placements[1].port_slot("out_n")
        p3 = placements[n - 2].port_slot("in_e")
        top = 7
        x_desc = p3[0] + 2
        route = (p0, (p0[0], top), (x_desc, top), (x_desc, p3[1]), p3)
        edges.append(DigraphEdge(1, n - 2, route))

    g = EmbeddedDigraph(
        num_vertices=n,
        positions=tuple(positions),
        edges=tuple(edges),
    )
    return g, HamPath(tuple(range(n)))

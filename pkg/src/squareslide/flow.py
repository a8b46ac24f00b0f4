"""Monotone solver for unlabeled unit squares via network flow.

Feasible instances are solved with at most one move per square: a max
flow from start cells to target cells is computed on the grid graph,
cycles are cancelled, and moves are peeled off sink by sink, always
walking the remaining flow backwards to the nearest occupied cell.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .model import Anchor, Instance, Move, Schedule
from .pathfind import NEIGHBOR_ORDER, compress_to_waypoints

SOURCE = "source"
SINK = "sink"


@dataclass(frozen=True)
class GridGraph:
    """Unit-cell graph: vertices plus connected component labels."""

    vertices: frozenset[Anchor]
    component: dict[Anchor, int]
    component_count: int


def build_grid_graph(inst: Instance) -> GridGraph:
    """Grid graph the flow runs on.

    Bounded instances use the domain cells.  Unbounded instances use the
    bounding box of all start and target anchors, which is sufficient:
    any monotone solution can be confined to it.
    """
    if inst.side != 1 or inst.labeled:
        raise ValueError("flow solver handles unlabeled unit squares only")
    if inst.domain.is_bounded:
        cells = set(inst.domain.cells)
    else:
        anchors = [sq.anchor for sq in inst.start] + [sq.anchor for sq in inst.target]
        xs = [a[0] for a in anchors]
        ys = [a[1] for a in anchors]
        cells = {
            (x, y)
            for x in range(min(xs), max(xs) + 1)
            for y in range(min(ys), max(ys) + 1)
        }
    component: dict[Anchor, int] = {}
    count = 0
    for cell in sorted(cells):
        if cell in component:
            continue
        queue = deque([cell])
        component[cell] = count
        while queue:
            cx, cy = queue.popleft()
            for dx, dy in NEIGHBOR_ORDER:
                nxt = (cx + dx, cy + dy)
                if nxt in cells and nxt not in component:
                    component[nxt] = count
                    queue.append(nxt)
        count += 1
    return GridGraph(frozenset(cells), component, count)


def component_feasible(
    graph: GridGraph, starts: list[Anchor], targets: list[Anchor]
) -> list[int]:
    """Component ids whose start and target counts disagree."""
    balance = [0] * graph.component_count
    for anchor in starts:
        balance[graph.component[anchor]] += 1
    for anchor in targets:
        balance[graph.component[anchor]] -= 1
    return [cid for cid, value in enumerate(balance) if value != 0]


class FlowNetwork:
    """Integral max flow with deterministic arc ordering (Edmonds-Karp)."""

    def __init__(self) -> None:
        self.adj: dict[object, list[int]] = {}
        self.arc_to: list[object] = []
        self.arc_cap: list[int] = []
        self.arc_flow: list[int] = []

    def _ensure(self, node) -> None:
        if node not in self.adj:
            self.adj[node] = []

    def add_arc(self, u, v, cap: int) -> None:
        self._ensure(u)
        self._ensure(v)
        self.adj[u].append(len(self.arc_to))
        self.arc_to.append(v)
        self.arc_cap.append(cap)
        self.arc_flow.append(0)
        self.adj[v].append(len(self.arc_to))
        self.arc_to.append(u)
        self.arc_cap.append(0)
        self.arc_flow.append(0)

    def max_flow(self, source, sink) -> int:
        total = 0
        while True:
            parent_arc: dict[object, int] = {source: -1}
            queue = deque([source])
            while queue and sink not in parent_arc:
                node = queue.popleft()
                for idx in self.adj[node]:
                    to = self.arc_to[idx]
                    if to in parent_arc or self.arc_cap[idx] - self.arc_flow[idx] <= 0:
                        continue
                    parent_arc[to] = idx
                    if to == sink:
                        break
                    queue.append(to)
            if sink not in parent_arc:
                return total
            bottleneck = None
            node = sink
            while node != source:
                idx = parent_arc[node]
                slack = self.arc_cap[idx] - self.arc_flow[idx]
                bottleneck = slack if bottleneck is None else min(bottleneck, slack)
                node = self.arc_to[idx ^ 1]
            node = sink
            while node != source:
                idx = parent_arc[node]
                self.arc_flow[idx] += bottleneck
                self.arc_flow[idx ^ 1] -= bottleneck
                node = self.arc_to[idx ^ 1]
            total += bottleneck


def max_flow(
    graph: GridGraph, starts: list[Anchor], targets: list[Anchor]
) -> tuple[int, dict[tuple[Anchor, Anchor], int]]:
    """Max flow value and positive cell-to-cell flows."""
    network = FlowNetwork()
    n = len(starts)
    for anchor in sorted(starts):
        network.add_arc(SOURCE, anchor, 1)
    for cell in sorted(graph.vertices):
        x, y = cell
        for dx, dy in NEIGHBOR_ORDER:
            other = (x + dx, y + dy)
            if other in graph.vertices:
                network.add_arc(cell, other, n)
    for anchor in sorted(targets):
        network.add_arc(anchor, SINK, 1)
    value = network.max_flow(SOURCE, SINK)
    flows: dict[tuple[Anchor, Anchor], int] = {}
    for u in network.adj:
        if u in (SOURCE, SINK):
            continue
        for idx in network.adj[u]:
            v = network.arc_to[idx]
            if v in (SOURCE, SINK) or idx % 2 == 1:
                continue
            if network.arc_flow[idx] > 0:
                flows[(u, v)] = network.arc_flow[idx]
    return value, flows


def cancel_cycles(
    flows: dict[tuple[Anchor, Anchor], int],
) -> dict[tuple[Anchor, Anchor], int]:
    """Remove circulation so the remaining flow forms a DAG.

    Opposite unit flows on the same grid edge are a two-cycle and get
    cancelled here as well.
    """
    result = dict(flows)

    def find_cycle() -> list[Anchor] | None:
        out: dict[Anchor, list[Anchor]] = {}
        for (u, v), value in result.items():
            if value > 0:
                out.setdefault(u, []).append(v)
        state: dict[Anchor, int] = {}
        for root in sorted(out):
            if root in state:
                continue
            stack: list[tuple[Anchor, int]] = [(root, 0)]
            trail = [root]
            state[root] = 1
            while stack:
                node, branch = stack[-1]
                succs = out.get(node, [])
                if branch >= len(succs):
                    stack.pop()
                    trail.pop()
                    state[node] = 2
                    continue
                stack[-1] = (node, branch + 1)
                nxt = succs[branch]
                if state.get(nxt) == 1:
                    return trail[trail.index(nxt):] + [nxt]
                if nxt not in state:
                    state[nxt] = 1
                    stack.append((nxt, 0))
                    trail.append(nxt)
        return None

    while True:
        cycle = find_cycle()
        if cycle is None:
            return {arc: value for arc, value in result.items() if value > 0}
        arcs = list(zip(cycle, cycle[1:]))
        amount = min(result[arc] for arc in arcs)
        for arc in arcs:
            result[arc] -= amount


def extract_schedule(
    graph: GridGraph,
    flows: dict[tuple[Anchor, Anchor], int],
    starts: list[Anchor],
    targets: list[Anchor],
) -> Schedule:
    """Peel one move per target off the acyclic flow.

    Targets are served in (row, column) order among those with no
    remaining outgoing flow; each is matched to the nearest occupied
    cell found by walking the flow backwards, which keeps the swept
    path clear and every square at a single move.
    """
    remaining = {arc: value for arc, value in flows.items() if value > 0}
    occupancy: dict[Anchor, int] = {}
    for index, anchor in enumerate(starts):
        occupancy[anchor] = index
    pending = sorted(targets, key=lambda a: (a[1], a[0]))
    moves: list[Move] = []

    def out_flow(cell: Anchor) -> int:
        x, y = cell
        total = 0
        for dx, dy in NEIGHBOR_ORDER:
            total += remaining.get(((x, y), (x + dx, y + dy)), 0)
        return total

    def in_arc(cell: Anchor) -> tuple[Anchor, Anchor] | None:
        x, y = cell
        for dx, dy in NEIGHBOR_ORDER:
            arc = ((x + dx, y + dy), (x, y))
            if remaining.get(arc, 0) > 0:
                return arc
        return None

    while pending:
        chosen = None
        for t in pending:
            if out_flow(t) == 0:
                chosen = t
                break
        assert chosen is not None, "acyclic flow must expose a terminal sink"
        pending.remove(chosen)
        if chosen in occupancy:
            assert in_arc(chosen) is None, "parked target should be isolated"
            continue
        path = [chosen]
        while path[-1] not in occupancy:
            arc = in_arc(path[-1])
            assert arc is not None, "flow into an unoccupied cell is missing"
            path.append(arc[0])
        path.reverse()
        for u, v in zip(path, path[1:]):
            remaining[(u, v)] -= 1
        mover = occupancy.pop(path[0])
        occupancy[chosen] = mover
        moves.append(Move(mover, compress_to_waypoints(path)))
        assert in_arc(chosen) is None and out_flow(chosen) == 0
    return Schedule(tuple(moves))


@dataclass(frozen=True)
class FlowSolveResult:
    status: str
    schedule: Schedule | None
    unbalanced_components: tuple[frozenset[Anchor], ...]


def solve_unlabeled_unit(inst: Instance) -> FlowSolveResult:
    """Solve an unlabeled unit-square instance in at most one move each."""
    graph = build_grid_graph(inst)
    starts = [sq.anchor for sq in inst.start]
    targets = [sq.anchor for sq in inst.target]
    bad = component_feasible(graph, starts, targets)
    if bad:
        components = tuple(
            frozenset(c for c, cid in graph.component.items() if cid == b)
            for b in bad
        )
        return FlowSolveResult("infeasible", None, components)
    value, flows = max_flow(graph, starts, targets)
    assert value == len(starts), "balanced components admit a perfect flow"
    schedule = extract_schedule(graph, cancel_cycles(flows), starts, targets)
    return FlowSolveResult("solved", schedule, ())

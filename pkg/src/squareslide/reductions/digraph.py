"""Plane-embedded digraphs used by the path-hardness compilers.

Vertices carry grid positions and edges carry explicit axis-aligned
polyline routes between gadget ports.  Degrees are capped at three
with exactly one degree-one source and one degree-one sink, so every
internal vertex is a merge (two in, one out), a split (one in, two
out) or a pass-through.
"""

from __future__ import annotations

from dataclasses import dataclass

Slot = tuple[int, int]


@dataclass(frozen=True)
class DigraphEdge:
    tail: int
    head: int
    route: tuple[Slot, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "route", tuple((int(x), int(y)) for x, y in self.route)
        )


@dataclass(frozen=True)
class EmbeddedDigraph:
    """Vertex center positions plus routed edges, all in slot units."""

    num_vertices: int
    positions: tuple[Slot, ...]
    edges: tuple[DigraphEdge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "positions",
            tuple((int(x), int(y)) for x, y in self.positions),
        )
        object.__setattr__(self, "edges", tuple(self.edges))

    def out_edges(self, v: int) -> list[DigraphEdge]:
        return [e for e in self.edges if e.tail == v]

    def in_edges(self, v: int) -> list[DigraphEdge]:
        return [e for e in self.edges if e.head == v]


def expand_route(route: tuple[Slot, ...]) -> list[Slot]:
    """Corner points to the full slot list, endpoints included."""
    if not route:
        return []
    slots = [route[0]]
    for (ax, ay), (bx, by) in zip(route, route[1:]):
        if ax != bx and ay != by:
            raise ValueError(f"route bends diagonally at {(ax, ay)}-{(bx, by)}")
        dx = (bx > ax) - (bx < ax)
        dy = (by > ay) - (by < ay)
        x, y = ax, ay
        while (x, y) != (bx, by):
            x, y = x + dx, y + dy
            slots.append((x, y))
    return slots


def validate_digraph(g: EmbeddedDigraph) -> list[str]:
    """Structural problems with degrees, endpoints and routes."""
    problems: list[str] = []
    n = g.num_vertices
    if n < 2:
        problems.append("vertices: need at least a source and a sink")
        return problems
    if len(g.positions) != n:
        problems.append("positions: one center per vertex required")
        return problems
    indeg = [0] * n
    outdeg = [0] * n
    for i, e in enumerate(g.edges):
        if not (0 <= e.tail < n and 0 <= e.head < n):
            problems.append(f"edge {i}: endpoint out of range")
            continue
        if e.tail == e.head:
            problems.append(f"edge {i}: self-loop")
        indeg[e.head] += 1
        outdeg[e.tail] += 1
        if len(e.route) < 2:
            problems.append(f"edge {i}: route needs at least two slots")
        else:
            try:
                expand_route(e.route)
            except ValueError as exc:
                problems.append(f"edge {i}: {exc}")
    if problems:
        return problems

    sources = [v for v in range(n) if indeg[v] == 0]
    sinks = [v for v in range(n) if outdeg[v] == 0]
    if len(sources) != 1 or outdeg[sources[0]] != 1:
        problems.append("endpoints: need exactly one source of out-degree 1")
    if len(sinks) != 1 or indeg[sinks[0]] != 1:
        problems.append("endpoints: need exactly one sink of in-degree 1")
    for v in range(n):
        if v in sources or v in sinks:
            continue
        if (indeg[v], outdeg[v]) not in ((1, 1), (2, 1), (1, 2)):
            problems.append(
                f"vertex {v}: degree pattern in={indeg[v]} out={outdeg[v]} "
                "is not pass, merge or split"
            )

    used: dict[Slot, str] = {}
    for i, e in enumerate(g.edges):
        for s in expand_route(e.route):
            if s in used:
                problems.append(
                    f"edge {i}: slot {s} already used by {used[s]}"
                )
            used[s] = f"edge {i}"
    return problems


def is_ham_path(g: EmbeddedDigraph, vertices: tuple[int, ...]) -> bool:
    """Does the vertex sequence form a directed Hamiltonian path?"""
    if sorted(vertices) != list(range(g.num_vertices)):
        return False
    arcs = {(e.tail, e.head) for e in g.edges}
    return all(pair in arcs for pair in zip(vertices, vertices[1:]))


def digraph_to_json(g: EmbeddedDigraph) -> dict:
    return {
        "num_vertices": g.num_vertices,
        "positions": [[x, y] for x, y in g.positions],
        "edges": [
            {
                "tail": e.tail,
                "head": e.head,
                "route": [[x, y] for x, y in e.route],
            }
            for e in g.edges
        ],
    }


def digraph_from_json(obj: dict) -> EmbeddedDigraph:
    try:
        return EmbeddedDigraph(
            num_vertices=int(obj["num_vertices"]),
            positions=tuple((int(x), int(y)) for x, y in obj["positions"]),
            edges=tuple(
                DigraphEdge(
                    tail=int(e["tail"]),
                    head=int(e["head"]),
                    route=tuple((int(x), int(y)) for x, y in e["route"]),
                )
                for e in obj["edges"]
            ),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad digraph payload: {exc}") from exc

"""Core geometric model: squares, domains, instances, moves, schedules.

Everything here is an immutable value with exact integer or rational
coordinates.  Collision and containment predicates never touch floating
point, so every downstream check is bit-exact and order-independent.

Conventions:
  * A square is identified by its bottom-left anchor on the integer
    lattice and its side length.
  * A bounded domain is a finite set of unit cells (the interior of a
    rectilinear polygon, holes allowed).
  * Squares may touch along edges or corners; "overlap" always means
    positive-area intersection of open interiors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Anchor = tuple[int, int]
Cell = tuple[int, int]
Waypoint = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class SquareSpec:
    """An axis-aligned square: anchor is the bottom-left corner."""

    anchor: Anchor
    side: int = 1
    label: str | None = None

    def __post_init__(self) -> None:
        if self.side < 1:
            raise ValueError(f"side must be >= 1, got {self.side}")

    def cells(self) -> frozenset[Cell]:
        """Unit cells covered by this square."""
        ax, ay = self.anchor
        return frozenset(
            (ax + dx, ay + dy) for dx in range(self.side) for dy in range(self.side)
        )

    def moved_to(self, anchor: Anchor) -> "SquareSpec":
        return SquareSpec(anchor=anchor, side=self.side, label=self.label)


Configuration = tuple[SquareSpec, ...]


@dataclass(frozen=True)
class Domain:
    """Either the free plane or a finite set of unit cells.

    ``cells`` is None for the unbounded plane.
    """

    cells: frozenset[Cell] | None

    @staticmethod
    def unbounded() -> "Domain":
        return Domain(cells=None)

    @staticmethod
    def bounded(cells) -> "Domain":
        cells = frozenset(cells)
        if not cells:
            raise ValueError("bounded domain must contain at least one cell")
        return Domain(cells=cells)

    @staticmethod
    def rectangle(x0: int, y0: int, width: int, height: int) -> "Domain":
        """Bounded axis-aligned box of width x height cells at (x0, y0)."""
        return Domain.bounded(
            (x0 + dx, y0 + dy) for dx in range(width) for dy in range(height)
        )

    @property
    def is_bounded(self) -> bool:
        return self.cells is not None

    def contains_square(self, square: SquareSpec) -> bool:
        if self.cells is None:
            return True
        return square.cells() <= self.cells

    def contains_anchor(self, anchor: Anchor, side: int) -> bool:
        if self.cells is None:
            return True
        ax, ay = anchor
        return all(
            (ax + dx, ay + dy) in self.cells
            for dx in range(side)
            for dy in range(side)
        )

    def bounding_box(self) -> tuple[int, int, int, int]:
        """(xmin, ymin, xmax, ymax) over cells; xmax/ymax are exclusive."""
        if self.cells is None:
            raise ValueError("unbounded domain has no bounding box")
        xs = [c[0] for c in self.cells]
        ys = [c[1] for c in self.cells]
        return min(xs), min(ys), max(xs) + 1, max(ys) + 1


def squares_overlap(a: SquareSpec, b: SquareSpec) -> bool:
    """True iff the open interiors of the two squares intersect."""
    ax, ay = a.anchor
    bx, by = b.anchor
    return (
        ax < bx + b.side
        and bx < ax + a.side
        and ay < by + b.side
        and by < ay + a.side
    )


def config_self_consistent(config: Configuration) -> list[tuple[int, int]]:
    """Indices of square pairs whose interiors overlap (empty = consistent)."""
    bad = []
    for i in range(len(config)):
        for j in range(i + 1, len(config)):
            if squares_overlap(config[i], config[j]):
                bad.append((i, j))
    return bad


@dataclass(frozen=True)
class Instance:
    """One reconfiguration problem.

    ``move_budget`` is the per-square cap k; ``side`` is the shared side
    length of every square.  ``meta`` carries optional compiler metadata
    (gadget regions, witness anchors) and is ignored by geometry.
    """

    domain: Domain
    start: Configuration
    target: Configuration
    labeled: bool
    move_budget: int
    side: int
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", tuple(self.start))
        object.__setattr__(self, "target", tuple(self.target))


@dataclass(frozen=True)
class Move:
    """One continuous translation of a single square.

    ``square`` is a label (labeled instances) or an index into the start
    configuration (unlabeled).  The path is a polyline of rational
    waypoints in anchor space; its first waypoint must equal the mover's
    anchor at the time the move executes.
    """

    square: int | str
    path: tuple[Waypoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "path",
            tuple((Fraction(x), Fraction(y)) for x, y in self.path),
        )


@dataclass(frozen=True)
class Schedule:
    """An ordered sequence of moves.

    ``meta`` carries advisory annotations (for example a witness encoder
    noting that the witness it was given cannot work); it never takes
    part in equality and is not serialized.
    """

    moves: tuple[Move, ...]
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "moves", tuple(self.moves))

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)


def free_anchor_set(
    domain: Domain,
    obstacles: Configuration,
    side: int,
    window: tuple[int, int, int, int] | None = None,
) -> set[Anchor]:
    """Every integer anchor where a side x side square fits.

    The square must lie inside the domain and must not overlap any
    obstacle's interior.  For an unbounded domain a ``window``
    (xmin, ymin, xmax, ymax; exclusive upper bounds, in anchor space)
    must be supplied to make the set finite.
    """
    if side < 1:
        raise ValueError("side must be >= 1")
    if domain.cells is None:
        if window is None:
            raise ValueError("window required for unbounded domain")
        xmin, ymin, xmax, ymax = window
        candidates = [
            (x, y) for x in range(xmin, xmax) for y in range(ymin, ymax)
        ]
    else:
        xmin, ymin, xmax, ymax = domain.bounding_box()
        candidates = [
            (x, y)
            for x in range(xmin, xmax - side + 1)
            for y in range(ymin, ymax - side + 1)
            if domain.contains_anchor((x, y), side)
        ]
    result = set()
    for anchor in candidates:
        probe = SquareSpec(anchor=anchor, side=side)
        if all(not squares_overlap(probe, obs) for obs in obstacles):
            result.add(anchor)
    return result


def validate_instance(inst: Instance) -> list[str]:
    """All invariant violations, each as a human-readable string."""
    problems = []
    if len(inst.start) != len(inst.target):
        problems.append(
            f"cardinality: |start|={len(inst.start)} != |target|={len(inst.target)}"
        )
    if inst.move_budget < 1:
        problems.append(f"budget: move_budget must be >= 1, got {inst.move_budget}")
    if inst.side < 1:
        problems.append(f"side: must be >= 1, got {inst.side}")
    for name, config in (("start", inst.start), ("target", inst.target)):
        for i, sq in enumerate(config):
            if sq.side != inst.side:
                problems.append(
                    f"side mismatch: {name}[{i}] has side {sq.side}, instance side {inst.side}"
                )
            if not inst.domain.contains_square(sq):
                problems.append(f"domain: {name}[{i}] at {sq.anchor} not inside domain")
        for i, j in config_self_consistent(config):
            problems.append(f"overlap: {name}[{i}] and {name}[{j}] overlap")
        if inst.labeled:
            labels = [sq.label for sq in config]
            if any(lab is None for lab in labels):
                problems.append(f"label missing: {name} has unlabeled squares")
            elif len(set(labels)) != len(labels):
                problems.append(f"label uniqueness: {name} has duplicate labels")
    if inst.labeled:
        start_labels = {sq.label for sq in inst.start if sq.label is not None}
        target_labels = {sq.label for sq in inst.target if sq.label is not None}
        if start_labels != target_labels:
            problems.append("label sets: start and target label sets differ")
    return problems

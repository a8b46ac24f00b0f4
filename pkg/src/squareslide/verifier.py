"""Exact schedule verification.

A translating square collides with a static square exactly when its
anchor, viewed as a point moving along the path, enters an open
axis-aligned rectangle (the Minkowski inflation of the static square).
Containment in a bounded domain is the same predicate against every
complement cell the sweep could reach.  All arithmetic is rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .model import (
    Anchor,
    Configuration,
    Domain,
    Instance,
    Schedule,
    SquareSpec,
    Waypoint,
    validate_instance,
)

OVERLAP = "overlap"
BOUNDARY = "boundary"
BUDGET_EXCEEDED = "budget_exceeded"
TARGET_MISMATCH = "target_mismatch"
MALFORMED_MOVE = "malformed_move"


@dataclass(frozen=True)
class MoveViolation:
    kind: str
    detail: str


@dataclass(frozen=True)
class Violation:
    move_index: int | None
    kind: str
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    verdict: str
    violations: tuple[Violation, ...]
    move_counts: dict = field(default_factory=dict, compare=False)

    @property
    def valid(self) -> bool:
        return self.verdict == "valid"


def segment_enters_open_rect(
    p: Waypoint,
    q: Waypoint,
    rect: tuple[Fraction, Fraction, Fraction, Fraction],
) -> bool:
    """Does the closed segment p-q contain a point strictly inside rect?

    rect is (x0, y0, x1, y1) with x0 < x1 and y0 < y1; the rectangle is
    open, so touching its boundary does not count.
    """
    x0, y0, x1, y1 = rect
    lo, lo_open = Fraction(0), False
    hi, hi_open = Fraction(1), False
    for pos, delta, a0, a1 in (
        (p[0], q[0] - p[0], x0, x1),
        (p[1], q[1] - p[1], y0, y1),
    ):
        if delta == 0:
            if not (a0 < pos < a1):
                return False
            continue
        t1 = (a0 - pos) / delta
        t2 = (a1 - pos) / delta
        if t1 > t2:
            t1, t2 = t2, t1
        if t1 > lo:
            lo, lo_open = t1, True
        elif t1 == lo:
            lo_open = True
        if t2 < hi:
            hi, hi_open = t2, True
        elif t2 == hi:
            hi_open = True
    if lo < hi:
        return True
    return lo == hi and not lo_open and not hi_open


def forbidden_rect(
    static: SquareSpec, mover_side: int
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Anchor-space open rectangle of mover anchors overlapping static."""
    bx, by = static.anchor
    return (
        Fraction(bx - mover_side),
        Fraction(by - mover_side),
        Fraction(bx + static.side),
        Fraction(by + static.side),
    )


def _segment_leaves_domain(
    p: Waypoint, q: Waypoint, side: int, domain: Domain
) -> Anchor | None:
    """First complement cell whose interior the swept square enters."""
    if domain.cells is None:
        return None
    xlo = math.floor(min(p[0], q[0]))
    xhi = math.ceil(max(p[0], q[0]) + side)
    ylo = math.floor(min(p[1], q[1]))
    yhi = math.ceil(max(p[1], q[1]) + side)
    for cx in range(xlo, xhi):
        for cy in range(ylo, yhi):
            if (cx, cy) in domain.cells:
                continue
            rect = (
                Fraction(cx - side),
                Fraction(cy - side),
                Fraction(cx + 1),
                Fraction(cy + 1),
            )
            if segment_enters_open_rect(p, q, rect):
                return (cx, cy)
    return None


def check_move(
    static_squares: Configuration,
    domain: Domain,
    mover: SquareSpec,
    path: tuple[Waypoint, ...],
) -> MoveViolation | None:
    """First violation of one move, or None if the move is legal.

    The path must start at the mover's anchor, contain at least two
    waypoints, and have positive total length (a move must displace,
    though it may return to its start).
    """
    if len(path) < 2:
        return MoveViolation(MALFORMED_MOVE, "path needs at least two waypoints")
    ax, ay = mover.anchor
    if path[0] != (Fraction(ax), Fraction(ay)):
        return MoveViolation(
            MALFORMED_MOVE,
            f"path starts at {path[0]}, square anchored at {mover.anchor}",
        )
    if all(w == path[0] for w in path):
        return MoveViolation(MALFORMED_MOVE, "zero-length move")
    rects = [(forbidden_rect(s, mover.side), s) for s in static_squares]
    for seg_index in range(len(path) - 1):
        p, q = path[seg_index], path[seg_index + 1]
        if p == q:
            continue
        for rect, static in rects:
            if segment_enters_open_rect(p, q, rect):
                return MoveViolation(
                    OVERLAP,
                    f"segment {seg_index} ({p}->{q}) sweeps through square "
                    f"at {static.anchor}",
                )
        cell = _segment_leaves_domain(p, q, mover.side, domain)
        if cell is not None:
            return MoveViolation(
                BOUNDARY,
                f"segment {seg_index} ({p}->{q}) leaves the domain at cell {cell}",
            )
    return None


def attainment(
    final: Configuration, target: Configuration, labeled: bool
) -> str | None:
    """None if final realizes target, else a mismatch description."""
    if len(final) != len(target):
        raise ValueError(
            f"cardinality mismatch: {len(final)} squares vs {len(target)} targets"
        )
    if labeled:
        got = {sq.label: sq.anchor for sq in final}
        want = {sq.label: sq.anchor for sq in target}
        wrong = sorted(
            str(lab) for lab in want if got.get(lab) != want[lab]
        )
        if wrong:
            return "mislabeled squares: " + ", ".join(wrong)
        return None
    got_anchors = sorted(sq.anchor for sq in final)
    want_anchors = sorted(sq.anchor for sq in target)
    if got_anchors != want_anchors:
        missing = sorted(set(want_anchors) - set(got_anchors))
        return f"unfilled target anchors: {missing}"
    return None


def _resolve_mover(
    square_id: int | str, labels: dict, count: int
) -> int | None:
    if isinstance(square_id, bool):
        return None
    if isinstance(square_id, int):
        return square_id if 0 <= square_id < count else None
    return labels.get(square_id)


def verify_schedule(inst: Instance, sched: Schedule) -> VerificationReport:
    """Replay a schedule and report every violation class it triggers.

    Geometry (overlap, boundary, malformed moves) is reported for the
    first failing move only; move endpoints are still applied afterward
    so that budget accounting and target attainment are always checked.
    """
    problems = validate_instance(inst)
    if problems:
        raise ValueError("instance invalid: " + "; ".join(problems))
    labels = {
        sq.label: i for i, sq in enumerate(inst.start) if sq.label is not None
    }
    anchors: list[Anchor] = [sq.anchor for sq in inst.start]
    counts = [0] * len(inst.start)
    violations: list[Violation] = []
    geometry_ok = True
    budget_flagged = [False] * len(inst.start)

    for index, move in enumerate(sched.moves):
        mover_index = _resolve_mover(move.square, labels, len(inst.start))
        if mover_index is None:
            if geometry_ok:
                violations.append(
                    Violation(index, MALFORMED_MOVE, f"unknown square {move.square!r}")
                )
                geometry_ok = False
            continue
        counts[mover_index] += 1
        if counts[mover_index] > inst.move_budget and not budget_flagged[mover_index]:
            budget_flagged[mover_index] = True
            violations.append(
                Violation(
                    index,
                    BUDGET_EXCEEDED,
                    f"square {move.square!r} move {counts[mover_index]} exceeds "
                    f"budget {inst.move_budget}",
                )
            )
        if geometry_ok:
            mover = SquareSpec(
                anchor=anchors[mover_index],
                side=inst.side,
                label=inst.start[mover_index].label,
            )
            statics = tuple(
                SquareSpec(anchor=anchors[i], side=inst.side)
                for i in range(len(anchors))
                if i != mover_index
            )
            bad = check_move(statics, inst.domain, mover, move.path)
            if bad is not None:
                violations.append(Violation(index, bad.kind, bad.detail))
                geometry_ok = False
        if move.path:
            fx, fy = move.path[-1]
            if fx.denominator == 1 and fy.denominator == 1:
                anchors[mover_index] = (int(fx), int(fy))
            elif geometry_ok:
                violations.append(
                    Violation(
                        index,
                        MALFORMED_MOVE,
                        f"move must end on an integer anchor, got ({fx}, {fy})",
                    )
                )
                geometry_ok = False

    final = tuple(
        SquareSpec(anchor=anchors[i], side=inst.side, label=inst.start[i].label)
        for i in range(len(inst.start))
    )
    mismatch = attainment(final, inst.target, inst.labeled)
    if mismatch is not None:
        violations.append(Violation(None, TARGET_MISMATCH, mismatch))

    move_counts = {
        (inst.start[i].label if inst.labeled else i): counts[i]
        for i in range(len(inst.start))
    }
    verdict = "valid" if not violations else "invalid"
    return VerificationReport(
        verdict=verdict, violations=tuple(violations), move_counts=move_counts
    )

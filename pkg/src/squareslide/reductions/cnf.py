"""Monotone planar CNF formulas with a rectilinear embedding.

A monotone formula has clauses that are all-positive or all-negative.
The embedding is a left-to-right variable order; positive clauses are
drawn above the variable line and negative clauses below, as nested
non-crossing brackets.  Nesting depths are derived from clause spans
and validated rather than stored, so the structure cannot go stale.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

MAX_OCCURRENCES_PER_POLARITY = 3


@dataclass(frozen=True)
class MonotoneClause:
    """Three literals of one polarity; variables may repeat."""

    variables: tuple[int, int, int]
    positive: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(self.variables) != 3:
            raise ValueError("a clause carries exactly three literals")


@dataclass(frozen=True)
class MonotoneCnf:
    """A monotone 3-CNF with its variable order on the line.

    ``variable_order[p]`` is the variable drawn at position ``p``.  The
    per-clause side is implied by polarity (positive above, negative
    below); nesting orders are derived from spans by
    :func:`clause_ranks`.
    """

    num_variables: int
    clauses: tuple[MonotoneClause, ...]
    variable_order: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(self.clauses))
        order = tuple(self.variable_order) or tuple(range(self.num_variables))
        object.__setattr__(self, "variable_order", order)

    def position_of(self) -> dict[int, int]:
        return {v: p for p, v in enumerate(self.variable_order)}


def clause_span(cnf: MonotoneCnf, clause: MonotoneClause) -> tuple[int, int]:
    """Leftmost and rightmost variable position touched by the clause."""
    pos = cnf.position_of()
    places = [pos[v] for v in clause.variables]
    return min(places), max(places)


def validate_cnf(cnf: MonotoneCnf) -> list[str]:
    """All structural and embedding violations, as readable strings."""
    problems: list[str] = []
    n = cnf.num_variables
    if n < 1:
        problems.append("variables: need at least one variable")
        return problems
    if sorted(cnf.variable_order) != list(range(n)):
        problems.append(
            f"order: variable_order must be a permutation of 0..{n - 1}"
        )
        return problems

    occurrences: dict[tuple[int, bool], int] = {}
    for index, clause in enumerate(cnf.clauses):
        for v in clause.variables:
            if not (0 <= v < n):
                problems.append(f"clause {index}: variable {v} out of range")
            else:
                key = (v, clause.positive)
                occurrences[key] = occurrences.get(key, 0) + 1
    for (v, positive), count in sorted(occurrences.items()):
        if count > MAX_OCCURRENCES_PER_POLARITY:
            side = "positive" if positive else "negative"
            problems.append(
                f"occurrences: variable {v} appears {count} times in "
                f"{side} clauses (limit {MAX_OCCURRENCES_PER_POLARITY})"
            )
    if problems:
        return problems

    for positive in (True, False):
        side = "positive" if positive else "negative"
        members = [
            (clause_span(cnf, c), i)
            for i, c in enumerate(cnf.clauses)
            if c.positive == positive
        ]
        for (span_a, a) in members:
            for (span_b, b) in members:
                if a >= b:
                    continue
                lo = max(span_a[0], span_b[0])
                hi = min(span_a[1], span_b[1])
                if lo > hi:
                    continue
                nested = (
                    (span_a[0] >= span_b[0] and span_a[1] <= span_b[1])
                    or (span_b[0] >= span_a[0] and span_b[1] <= span_a[1])
                )
                if not nested:
                    problems.append(
                        f"embedding: {side} clauses {a} and {b} have "
                        f"crossing spans {span_a} and {span_b}"
                    )
        pos = cnf.position_of()
        for (span_in, inner) in members:
            for (span_out, outer) in members:
                if not _nested_under(cnf, span_in, inner, span_out, outer):
                    continue
                for v in cnf.clauses[outer].variables:
                    if span_in[0] < pos[v] < span_in[1]:
                        problems.append(
                            f"embedding: {side} clause {outer} connects to a "
                            f"variable strictly inside nested clause "
                            f"{inner}'s span"
                        )
    return sorted(set(problems))


def _nested_under(
    cnf: MonotoneCnf,
    span_in: tuple[int, int],
    inner: int,
    span_out: tuple[int, int],
    outer: int,
) -> bool:
    """Is clause ``inner`` drawn strictly inside clause ``outer``?

    Equal spans are still drawn one inside the other; the lower index
    goes inside so the choice is deterministic.
    """
    if inner == outer:
        return False
    if cnf.clauses[inner].positive != cnf.clauses[outer].positive:
        return False
    if span_in == span_out:
        return inner < outer
    return span_out[0] <= span_in[0] and span_in[1] <= span_out[1]


def clause_ranks(cnf: MonotoneCnf) -> list[int]:
    """Nesting height per clause: 0 for innermost brackets.

    A clause's bar must run beyond every bracket nested inside it, so
    the rank is the longest chain of strictly contained same-side
    spans.
    """
    spans = [clause_span(cnf, c) for c in cnf.clauses]
    ranks = [0] * len(cnf.clauses)
    order = sorted(
        range(len(cnf.clauses)),
        key=lambda i: (spans[i][1] - spans[i][0], i),
    )
    for i in order:
        inside = [
            ranks[j]
            for j in range(len(cnf.clauses))
            if _nested_under(cnf, spans[j], j, spans[i], i)
        ]
        ranks[i] = 1 + max(inside) if inside else 0
    return ranks


def occurrence_slots(cnf: MonotoneCnf) -> dict[tuple[int, int], int]:
    """Arm slot (0, 1 or 2) for every (clause, literal index) leg.

    At each variable and side, legs whose bars extend left take the
    smaller slots, an interior leg sits in the middle, and legs whose
    bars extend right take the larger slots; within a direction group,
    slots increase from outer bracket to inner on the right and from
    inner to outer on the left.  This keeps every bar row clear of
    deeper legs that pass through it.
    """
    pos = cnf.position_of()
    spans = [clause_span(cnf, c) for c in cnf.clauses]
    ranks = clause_ranks(cnf)
    legs_at: dict[tuple[int, bool], list[tuple[int, int]]] = {}
    for ci, clause in enumerate(cnf.clauses):
        for li, v in enumerate(clause.variables):
            legs_at.setdefault((pos[v], clause.positive), []).append((ci, li))

    slots: dict[tuple[int, int], int] = {}
    for (p, _positive), legs in legs_at.items():

        def group(entry: tuple[int, int]) -> tuple[int, int]:
            ci, _li = entry
            lo, hi = spans[ci]
            if lo == hi or p == hi and p != lo:
                direction = 0  # bar extends left (or single-variable span)
            elif p == lo:
                direction = 2  # bar extends right
            else:
                direction = 1  # interior leg
            if direction == 0:
                return (0, ranks[ci])  # inner bracket takes the leftmost slot
            if direction == 2:
                return (2, -ranks[ci])  # outer bracket takes the smaller slot
            return (1, 0)

        ordered = sorted(legs, key=lambda entry: (group(entry), entry))
        for slot, entry in enumerate(ordered):
            slots[entry] = slot
    return slots


def cnf_to_json(cnf: MonotoneCnf) -> dict:
    return {
        "num_variables": cnf.num_variables,
        "variable_order": list(cnf.variable_order),
        "clauses": [
            {"variables": list(c.variables), "positive": c.positive}
            for c in cnf.clauses
        ],
    }


def cnf_from_json(payload: dict) -> MonotoneCnf:
    if not isinstance(payload, dict):
        raise ValueError("formula payload must be an object")
    try:
        clauses = tuple(
            MonotoneClause(tuple(entry["variables"]), bool(entry["positive"]))
            for entry in payload["clauses"]
        )
        return MonotoneCnf(
            int(payload["num_variables"]),
            clauses,
            tuple(payload.get("variable_order") or ()),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed formula payload: {exc}") from exc


def random_monotone_cnf(
    rng: random.Random,
    num_variables: int,
    num_clauses: int,
    assignment: tuple[bool, ...] | None = None,
    max_attempts: int = 4000,
) -> MonotoneCnf:
    """Seeded planar monotone formula, optionally satisfied by ``assignment``.

    Clauses are rejection-sampled against the embedding validator, so
    every output validates; with an assignment given, each clause is
    also forced to contain at least one satisfied literal.
    """
    if num_variables < 1:
        raise ValueError("need at least one variable")
    for _restart in range(max(1, max_attempts // 100)):
        clauses: list[MonotoneClause] = []
        misses = 0
        while len(clauses) < num_clauses and misses < 100:
            positive = rng.random() < 0.5
            chosen = sorted(
                rng.choice(range(num_variables)) for _ in range(3)
            )
            clause = MonotoneClause(tuple(chosen), positive)
            if assignment is not None:
                satisfied = any(assignment[v] == positive for v in chosen)
                if not satisfied:
                    clause = MonotoneClause(tuple(chosen), not positive)
            candidate = MonotoneCnf(num_variables, (*clauses, clause))
            if validate_cnf(candidate):
                misses += 1
            else:
                clauses.append(clause)
        if len(clauses) == num_clauses:
            return MonotoneCnf(num_variables, tuple(clauses))
    raise ValueError(
        f"could not sample {num_clauses} embeddable clauses over "
        f"{num_variables} variables"
    )

"""JSON round-tripping for instances, schedules and reports.

Rational path coordinates serialize as plain ints when integral and as
[numerator, denominator] pairs otherwise, so files stay exact.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .model import Domain, Instance, Move, Schedule, SquareSpec
from .verifier import VerificationReport, Violation

FORMAT_VERSION = 1


def _coord_to_json(value: Fraction):
    if value.denominator == 1:
        return int(value)
    return [value.numerator, value.denominator]


def _coord_from_json(value) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("coordinate must be a number or [num, den] pair")
    if isinstance(value, int):
        return Fraction(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        return Fraction(value[0], value[1])
    raise ValueError(f"bad coordinate: {value!r}")


def _anchor_from_json(value) -> tuple[int, int]:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        raise ValueError(f"anchor must be a pair of integers, got {value!r}")
    return (value[0], value[1])


def _square_to_json(sq: SquareSpec) -> dict:
    data = {"anchor": [sq.anchor[0], sq.anchor[1]]}
    if sq.label is not None:
        data["label"] = sq.label
    return data


def _square_from_json(data, side: int) -> SquareSpec:
    if not isinstance(data, dict) or "anchor" not in data:
        raise ValueError(f"square entry needs an anchor: {data!r}")
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise ValueError(f"label must be a string: {label!r}")
    return SquareSpec(_anchor_from_json(data["anchor"]), side, label)


def instance_to_json(inst: Instance) -> dict:
    data = {
        "version": FORMAT_VERSION,
        "domain": (
            sorted([x, y] for x, y in inst.domain.cells)
            if inst.domain.is_bounded
            else "unbounded"
        ),
        "side": inst.side,
        "labeled": inst.labeled,
        "budget": inst.move_budget,
        "start": [_square_to_json(sq) for sq in inst.start],
        "target": [_square_to_json(sq) for sq in inst.target],
    }
    if inst.meta:
        data["meta"] = inst.meta
    return data


def instance_from_json(data) -> Instance:
    if not isinstance(data, dict):
        raise ValueError("instance document must be an object")
    version = data.get("version")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported instance version: {version!r}")
    for key in ("domain", "side", "labeled", "budget", "start", "target"):
        if key not in data:
            raise ValueError(f"instance is missing {key!r}")
    side = data["side"]
    if not isinstance(side, int) or isinstance(side, bool) or side < 1:
        raise ValueError(f"side must be a positive integer: {side!r}")
    budget = data["budget"]
    if not isinstance(budget, int) or isinstance(budget, bool) or budget < 1:
        raise ValueError(f"budget must be a positive integer: {budget!r}")
    labeled = data["labeled"]
    if not isinstance(labeled, bool):
        raise ValueError(f"labeled must be a boolean: {labeled!r}")
    raw_domain = data["domain"]
    if raw_domain == "unbounded":
        domain = Domain.unbounded()
    elif isinstance(raw_domain, list):
        domain = Domain.bounded(_anchor_from_json(cell) for cell in raw_domain)
    else:
        raise ValueError(f"domain must be 'unbounded' or a cell list: {raw_domain!r}")
    meta = data.get("meta", {})
    if not isinstance(meta, dict):
        raise ValueError("meta must be an object")
    return Instance(
        domain=domain,
        start=tuple(_square_from_json(sq, side) for sq in data["start"]),
        target=tuple(_square_from_json(sq, side) for sq in data["target"]),
        labeled=labeled,
        move_budget=budget,
        side=side,
        meta=meta,
    )


def schedule_to_json(sched: Schedule) -> dict:
    return {
        "version": FORMAT_VERSION,
        "moves": [
            {
                "square": move.square,
                "path": [
                    [_coord_to_json(x), _coord_to_json(y)] for x, y in move.path
                ],
            }
            for move in sched.moves
        ],
    }


def schedule_from_json(data) -> Schedule:
    if not isinstance(data, dict):
        raise ValueError("schedule document must be an object")
    version = data.get("version")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported schedule version: {version!r}")
    raw_moves = data.get("moves")
    if not isinstance(raw_moves, list):
        raise ValueError("schedule needs a move list")
    moves = []
    for entry in raw_moves:
        if not isinstance(entry, dict) or "square" not in entry or "path" not in entry:
            raise ValueError(f"bad move entry: {entry!r}")
        square = entry["square"]
        if isinstance(square, bool) or not isinstance(square, (int, str)):
            raise ValueError(f"square id must be an index or label: {square!r}")
        raw_path = entry["path"]
        if not isinstance(raw_path, list):
            raise ValueError("move path must be a list of waypoints")
        path = []
        for waypoint in raw_path:
            if not isinstance(waypoint, list) or len(waypoint) != 2:
                raise ValueError(f"bad waypoint: {waypoint!r}")
            path.append((_coord_from_json(waypoint[0]), _coord_from_json(waypoint[1])))
        moves.append(Move(square, tuple(path)))
    return Schedule(tuple(moves))


def report_to_json(report: VerificationReport) -> dict:
    return {
        "version": FORMAT_VERSION,
        "verdict": report.verdict,
        "violations": [
            {
                "move_index": violation.move_index,
                "kind": violation.kind,
                "detail": violation.detail,
            }
            for violation in report.violations
        ],
        "move_counts": [
            {"square": key, "count": value}
            for key, value in sorted(report.move_counts.items(), key=lambda kv: str(kv[0]))
        ],
    }


def report_from_json(data) -> VerificationReport:
    if not isinstance(data, dict):
        raise ValueError("report document must be an object")
    version = data.get("version")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported report version: {version!r}")
    verdict = data.get("verdict")
    if verdict not in ("valid", "invalid"):
        raise ValueError(f"verdict must be 'valid' or 'invalid': {verdict!r}")
    raw_violations = data.get("violations")
    if not isinstance(raw_violations, list):
        raise ValueError("report needs a violation list")
    violations = []
    for entry in raw_violations:
        if not isinstance(entry, dict):
            raise ValueError(f"bad violation entry: {entry!r}")
        move_index = entry.get("move_index")
        if move_index is not None and (
            isinstance(move_index, bool) or not isinstance(move_index, int)
        ):
            raise ValueError(f"bad move index: {move_index!r}")
        kind = entry.get("kind")
        detail = entry.get("detail")
        if not isinstance(kind, str) or not isinstance(detail, str):
            raise ValueError(f"violation needs kind and detail strings: {entry!r}")
        violations.append(Violation(move_index, kind, detail))
    raw_counts = data.get("move_counts", [])
    if not isinstance(raw_counts, list):
        raise ValueError("move_counts must be a list")
    move_counts = {}
    for entry in raw_counts:
        if (
            not isinstance(entry, dict)
            or "square" not in entry
            or "count" not in entry
        ):
            raise ValueError(f"bad move count entry: {entry!r}")
        square = entry["square"]
        if isinstance(square, bool) or not isinstance(square, (int, str)):
            raise ValueError(f"square id must be an index or label: {square!r}")
        count = entry["count"]
        if isinstance(count, bool) or not isinstance(count, int) or count < 0:
            raise ValueError(f"count must be a non-negative integer: {count!r}")
        move_counts[square] = count
    return VerificationReport(
        verdict=verdict, violations=tuple(violations), move_counts=move_counts
    )


def dump(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def load(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError("top-level JSON value must be an object")
    return data

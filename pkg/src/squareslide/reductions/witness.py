"""Witness payloads carried into and out of the hardness compilers."""

from __future__ import annotations

from dataclasses import dataclass

from .cnf import MonotoneCnf


@dataclass(frozen=True)
class Assignment:
    """One truth value per variable."""

    values: tuple[bool, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(bool(v) for v in self.values))


@dataclass(frozen=True)
class HamPath:
    """A vertex sequence visiting every vertex exactly once."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))


Witness = Assignment | HamPath


def satisfies(cnf: MonotoneCnf, witness: Assignment) -> bool:
    if len(witness.values) != cnf.num_variables:
        raise ValueError("assignment length does not match variable count")
    return all(
        any(witness.values[v] == clause.positive for v in clause.variables)
        for clause in cnf.clauses
    )


def witness_to_json(witness: Witness) -> dict:
    if isinstance(witness, Assignment):
        return {"kind": "assignment", "values": [bool(v) for v in witness.values]}
    if isinstance(witness, HamPath):
        return {"kind": "ham_path", "vertices": [int(v) for v in witness.vertices]}
    raise TypeError(f"not a witness: {witness!r}")


def witness_from_json(payload: dict) -> Witness:
    if not isinstance(payload, dict):
        raise ValueError("witness payload must be an object")
    kind = payload.get("kind")
    if kind == "assignment":
        values = payload.get("values")
        if not isinstance(values, list) or not all(
            isinstance(v, bool) for v in values
        ):
            raise ValueError("assignment witness needs a list of booleans")
        return Assignment(tuple(values))
    if kind == "ham_path":
        vertices = payload.get("vertices")
        if not isinstance(vertices, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in vertices
        ):
            raise ValueError("ham_path witness needs a list of integers")
        return HamPath(tuple(vertices))
    raise ValueError(f"unknown witness kind: {kind!r}")

"""Toolkit for reconfiguring sliding axis-aligned squares.

Exact-arithmetic schedule verification, a monotone flow solver for
unlabeled unit squares, an exhaustive oracle, scenario classification,
and compilers from SAT and Hamiltonian path instances to square
reconfiguration puzzles.
"""

from .model import (
    Configuration,
    Domain,
    Instance,
    Move,
    Schedule,
    SquareSpec,
    config_self_consistent,
    free_anchor_set,
    squares_overlap,
    validate_instance,
)
from .verifier import VerificationReport, attainment, check_move, verify_schedule

__all__ = [
    "Configuration",
    "Domain",
    "Instance",
    "Move",
    "Schedule",
    "SquareSpec",
    "VerificationReport",
    "attainment",
    "check_move",
    "config_self_consistent",
    "free_anchor_set",
    "squares_overlap",
    "validate_instance",
    "verify_schedule",
]

__version__ = "0.1.0"

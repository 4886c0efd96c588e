"""Combinatorial calculus for finger/Whitney systems and the loop invariant I."""

from .invariant import InvariantResult, compute_I, concatenate, hat_I, parity_hypotheses, slide_to_EA
from .moves import MoveRecord, apply_move, apply_script, k_switch, parse_script
from .system import FWSystem, classify_position, cycle_decomposition, ia_ordering, key_example, pad_eyes, parse, serialize, standard_system, swap_roles, validate

__version__ = "0.1.0"

__all__ = [
    "FWSystem",
    "InvariantResult",
    "MoveRecord",
    "apply_move",
    "apply_script",
    "classify_position",
    "compute_I",
    "concatenate",
    "cycle_decomposition",
    "hat_I",
    "ia_ordering",
    "k_switch",
    "key_example",
    "pad_eyes",
    "parity_hypotheses",
    "parse",
    "parse_script",
    "serialize",
    "slide_to_EA",
    "standard_system",
    "swap_roles",
    "validate",
]

"""Python bindings for the Xi Gua Qi engine."""

import json

from . import _xigua
from ._xigua import (
    Board,
    GameState,
    Move,
    RecordParseError,
    RuleViolation,
    ValidationError,
    apply_move,
    blocked_groups,
    custom_board,
    dataset,
    degrees_of_freedom,
    evaluate,
    initial_state,
    legal_moves,
    search,
    self_play,
    transition_matrix,
    verify_records,
    xigua_board,
)

__all__ = [
    "Board",
    "GameState",
    "Move",
    "RecordParseError",
    "RuleViolation",
    "ValidationError",
    "apply_move",
    "blocked_groups",
    "custom_board",
    "dataset",
    "degrees_of_freedom",
    "evaluate",
    "initial_state",
    "legal_moves",
    "metrics",
    "nonclosure_report",
    "ring_report",
    "search",
    "self_play",
    "transition_matrix",
    "verify_records",
    "xigua_board",
]


def ring_report(dim=5, samples=1000, seed=1, modulus=3):
    return json.loads(_xigua.ring_report(dim, samples, seed, modulus))


def nonclosure_report(dim):
    return json.loads(_xigua.nonclosure_report(dim))


def metrics(labels, scores, threshold=0.5):
    return json.loads(_xigua.metrics(list(labels), list(scores), threshold))

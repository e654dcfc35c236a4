"""Probabilistic logic program inference (semi-naive and magic-sets evaluation)."""

from ._core import (
    Answer,
    Error,
    Program,
    SolveReport,
    enumerate_prob,
    generate_smokers,
    magic_transform,
    parse_program,
    solve,
)

__all__ = [
    "Answer",
    "Error",
    "Program",
    "SolveReport",
    "enumerate_prob",
    "generate_smokers",
    "magic_transform",
    "parse_program",
    "solve",
]

"""Dead-code elimination: peephole rewrites applied until nothing changes."""

from __future__ import annotations

from .helpers import CONSTANTS, TELEPORTS
from .interpreter import bracket_jumps
from .program import Program

__all__ = ("prune",)

_CANCELLING = frozenset({"+-", "-+", "><", "<>"})


def _rewrite_once(text: str) -> str | None:
    jumps = None
    for idx in range(len(text) - 1):
        pair = text[idx : idx + 2]
        first, second = pair
        if pair in _CANCELLING:
            return text[:idx] + text[idx + 2 :]
        # a write or teleport overwritten before anything observes it
        if (first in TELEPORTS and second in TELEPORTS) or (first in CONSTANTS and second in CONSTANTS):
            return text[:idx] + text[idx + 1 :]
        if pair == "][":
            if jumps is None:
                jumps = bracket_jumps(text)
            # execution only gets past a matched ] on a zero cell, so the loop that follows never runs
            if jumps[idx] is not None:
                return text[: idx + 1] + text[jumps[idx + 1] :]
    return None


def prune(program: Program) -> Program:
    """Returns a functionally equivalent program that is no longer than ``program``."""
    text = program.text
    while (rewritten := _rewrite_once(text)) is not None:
        text = rewritten
    if text == program.text:
        return program
    return Program(text)

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import lru_cache

from .exceptions import BudgetExhausted
from .helpers import CELL_MODULUS, LanguageConfig, TELEPORTS
from .program import Program

__all__ = ("AgentMemory", "TapeInterpreter", "agent_step", "bracket_jumps")


@dataclass
class AgentMemory:
    """Tape, pointer and resume position; persists across passes within an episode."""

    tape: bytearray
    pointer: int = 0
    resume_index: int = 0
    pass_op_count: int = 0

    @classmethod
    def initial(cls, tape_len: int) -> "AgentMemory":
        return cls(tape=bytearray(tape_len))

    def copy(self) -> "AgentMemory":
        return AgentMemory(bytearray(self.tape), self.pointer, self.resume_index, self.pass_op_count)


@lru_cache(maxsize=4096)
def bracket_jumps(text: str) -> tuple[int | None, ...]:
    """
    Jump targets for every bracket in ``text``.

    For ``[`` the target is the index after its matching ``]`` (or ``len(text)`` when unmatched, so a zero cell
    jumps past the end). For ``]`` it is the index after its matching ``[`` (or None when unmatched: a no-op).
    Every other position maps to None.
    """
    jumps: list[int | None] = [None] * len(text)
    stack: list[int] = []
    for idx, tok in enumerate(text):
        if tok == "[":
            stack.append(idx)
        elif tok == "]" and stack:
            opening = stack.pop()
            jumps[opening] = idx + 1
            jumps[idx] = opening + 1
    for opening in stack:
        jumps[opening] = len(text)
    return tuple(jumps)


@dataclass
class TapeInterpreter:
    """Runs programs one pass at a time; each pass writes the observation and yields one action cell."""

    config: LanguageConfig = field(default_factory=LanguageConfig)

    def new_memory(self) -> AgentMemory:
        return AgentMemory.initial(self.config.tape_len)

    def step(self, program: Program, memory: AgentMemory, observation: Sequence[int]) -> int:
        """
        Executes one pass of ``program`` against ``memory`` and returns the value of the action cell.

        The pass starts at ``memory.resume_index``. A ``!`` ends the pass and saves the position after it;
        falling off the end of the program ends the pass and rewinds to the start.

        :raises BudgetExhausted: if the pass runs ``pass_op_budget`` operations without yielding.
        """
        cfg = self.config
        if len(observation) != cfg.obs_cell_count:
            raise ValueError(f"expected {cfg.obs_cell_count} observation cells, got {len(observation)}")

        tape = memory.tape
        for idx, value in enumerate(observation):
            tape[idx] = int(value) % CELL_MODULUS

        code = program.text
        jumps = bracket_jumps(code)
        size = len(code)
        tape_len = cfg.tape_len
        budget = cfg.pass_op_budget
        ptr = memory.pointer
        ip = memory.resume_index
        ops = 0

        while ip < size:
            if ops >= budget:
                memory.pointer = ptr
                memory.resume_index = ip
                memory.pass_op_count = ops
                raise BudgetExhausted(ops, ip)
            ops += 1
            tok = code[ip]
            if tok == ">":
                ptr = (ptr + 1) % tape_len
            elif tok == "<":
                ptr = (ptr - 1) % tape_len
            elif tok == "+":
                tape[ptr] = (tape[ptr] + 1) % CELL_MODULUS
            elif tok == "-":
                tape[ptr] = (tape[ptr] - 1) % CELL_MODULUS
            elif tok == "[":
                if tape[ptr] == 0:
                    ip = jumps[ip]
                    continue
            elif tok == "]":
                target = jumps[ip]
                if target is not None and tape[ptr] != 0:
                    ip = target
                    continue
            elif tok == "!":
                memory.pointer = ptr
                memory.resume_index = ip + 1
                memory.pass_op_count = ops
                return tape[cfg.action_cell]
            elif tok in TELEPORTS:
                ptr = TELEPORTS.index(tok) % tape_len
            else:
                tape[ptr] = int(tok)
            ip += 1

        memory.pointer = ptr
        memory.resume_index = 0
        memory.pass_op_count = ops
        return tape[cfg.action_cell]


def agent_step(
    program: Program, memory: AgentMemory, observation: Sequence[int], config: LanguageConfig
) -> tuple[AgentMemory, int]:
    """Memorize the observation and run until the program yields; returns the memory and the action cell value."""
    action = TapeInterpreter(config).step(program, memory, observation)
    return memory, action

from __future__ import annotations

import abc
from dataclasses import dataclass

import numpy as np

from tapelang import Program

from neurogen.codebase import Codebase


@dataclass(frozen=True)
class Proposal:
    program: Program
    operator: str | None = None
    # bandit arm credited with the reward; differs from ``operator`` when the drawn operator fell back to prune
    arm: int | None = None


class Developer(abc.ABC):
    """A program distribution conditioned on the codebase, plus a procedure that learns from rewards."""

    kind: str = "developer"

    def __init__(self, developer_id: str):
        self.id = developer_id

    @abc.abstractmethod
    def propose(self, codebase: Codebase, rng: np.random.Generator) -> Proposal | None:
        """Write a program, or return None when this developer cannot act on ``codebase``."""

    def update(self, proposal: Proposal, reward: float, codebase: Codebase) -> None:
        """Learn from the reward earned by ``proposal``. Defaults to doing nothing."""

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.id!r})"


class DummyDeveloper(Developer):
    """Re-submits existing programs, drawn by quality, so their estimates tighten."""

    kind = "dummy"

    def __init__(self, developer_id: str = "dummy"):
        super().__init__(developer_id)

    def propose(self, codebase: Codebase, rng: np.random.Generator) -> Proposal | None:
        if not codebase:
            return None
        return Proposal(dummy_propose(codebase, rng))


def dummy_propose(codebase: Codebase, rng: np.random.Generator) -> Program:
    return codebase.sample_quality_weighted(rng)

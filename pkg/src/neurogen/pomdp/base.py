from __future__ import annotations

import abc
import math
from dataclasses import dataclass
from typing import Generic, TypeVar

import numpy as np

from neurogen.errors import StepAfterTerminal
from neurogen.pomdp.spaces import EnvSpec

StateT = TypeVar("StateT")


@dataclass(frozen=True)
class Transition(Generic[StateT]):
    state: StateT
    reward: float
    terminal: bool


class Environment(abc.ABC, Generic[StateT]):
    """An episodic POMDP: ``reset`` samples an initial state, ``step`` samples the next one."""

    spec: EnvSpec

    def __init__(self) -> None:
        self.state: StateT | None = None
        self._terminal = True

    @abc.abstractmethod
    def initial_state(self, rng: np.random.Generator) -> StateT:
        """Draw a state from the initial state distribution."""

    @abc.abstractmethod
    def transition(self, state: StateT, action) -> Transition[StateT]:
        """Apply ``action`` in ``state``."""

    @abc.abstractmethod
    def observe(self, state: StateT) -> np.ndarray:
        """Observation vector for ``state``; one entry per observation cell."""

    def reset(self, rng: np.random.Generator) -> np.ndarray:
        self.state = self.initial_state(rng)
        self._terminal = False
        return self.observe(self.state)

    def step(self, action) -> tuple[np.ndarray, float, bool]:
        if self._terminal or self.state is None:
            raise StepAfterTerminal(f"{self.spec.name}: step called on a terminal state; call reset first")
        result = self.transition(self.state, action)
        if not math.isfinite(result.reward):
            raise ValueError(f"{self.spec.name}: non-finite reward {result.reward}")
        self.state = result.state
        self._terminal = result.terminal
        return self.observe(result.state), result.reward, result.terminal

    @property
    def terminal(self) -> bool:
        return self._terminal

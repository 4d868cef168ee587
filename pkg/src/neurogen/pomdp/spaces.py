from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

OBSERVATION_BINS = 256


@dataclass(frozen=True)
class Discrete:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("discrete action spaces need at least 2 actions")


@dataclass(frozen=True)
class Continuous:
    low: float
    high: float

    def __post_init__(self):
        if not self.low < self.high:
            raise ValueError("continuous action bounds must satisfy low < high")


ActionSpace = Discrete | Continuous


@dataclass(frozen=True)
class EnvSpec:
    """Static description of an environment: observation bounds, action kind and episode cap."""

    name: str
    obs_bounds: tuple[tuple[float, float], ...]
    action: ActionSpace
    max_episode_steps: int
    reward_range: tuple[float, float]

    def __post_init__(self):
        if not 1 <= len(self.obs_bounds) <= 5:
            raise ValueError(f"{self.name}: between 1 and 5 observation cells are supported")
        for lo, hi in self.obs_bounds:
            if not lo < hi:
                raise ValueError(f"{self.name}: observation bounds must satisfy lo < hi, got ({lo}, {hi})")
        if self.max_episode_steps < 1:
            raise ValueError(f"{self.name}: max_episode_steps must be positive")

    @property
    def obs_cell_count(self) -> int:
        return len(self.obs_bounds)

    @property
    def reward_span(self) -> float:
        lo, hi = self.reward_range
        return hi - lo


def discretize_observation(obs: Sequence[float], spec: EnvSpec) -> list[int]:
    """Clamp every dimension to its bounds and bin it into one of 256 cell values."""
    values = np.asarray(obs, dtype=np.float64)
    if values.shape != (spec.obs_cell_count,):
        raise ValueError(f"{spec.name}: expected {spec.obs_cell_count} observation values, got {values.shape}")
    bounds = np.asarray(spec.obs_bounds, dtype=np.float64)
    lo, hi = bounds[:, 0], bounds[:, 1]
    scaled = (np.clip(values, lo, hi) - lo) / (hi - lo) * OBSERVATION_BINS
    return [int(cell) for cell in np.clip(np.floor(scaled), 0, OBSERVATION_BINS - 1)]


def decode_action(cell: int, spec: EnvSpec) -> int | float:
    action = spec.action
    if isinstance(action, Discrete):
        return cell % action.n
    return action.low + cell / (OBSERVATION_BINS - 1) * (action.high - action.low)

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class BanditState:
    """
    Epsilon-greedy state over a fixed set of arms.

    ``values`` holds the running mean reward of each arm. While some arm is still untried the greedy share
    of probability is split among the untried arms; afterwards it goes to the best arm (lowest index on ties).
    """

    epsilon: float
    arms: int = 7
    counts: np.ndarray = field(init=False)
    values: np.ndarray = field(init=False)
    theta: np.ndarray = field(init=False)

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        self.counts = np.zeros(self.arms, dtype=np.int64)
        self.values = np.zeros(self.arms, dtype=np.float64)
        self.theta = self._probabilities()

    @property
    def greedy_arm(self) -> int:
        return int(np.argmax(self.values))

    def _probabilities(self) -> np.ndarray:
        theta = np.full(self.arms, self.epsilon / self.arms)
        untried = self.counts == 0
        if untried.any():
            theta[untried] += (1.0 - self.epsilon) / untried.sum()
        else:
            theta[self.greedy_arm] += 1.0 - self.epsilon
        return theta

    def select(self, rng: np.random.Generator) -> int:
        cumulative = np.cumsum(self.theta)
        idx = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
        return min(idx, self.arms - 1)


def bandit_update(bandit: BanditState, arm: int, reward: float) -> BanditState:
    if not 0 <= arm < bandit.arms:
        raise ValueError(f"arm {arm} out of range")
    bandit.counts[arm] += 1
    bandit.values[arm] += (reward - bandit.values[arm]) / bandit.counts[arm]
    bandit.theta = bandit._probabilities()
    return bandit

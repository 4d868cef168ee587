"""
Early stopping on a missing upward trend.

The trend is the slope of an exponentially weighted least-squares line of reward against sprint, fitted over the
trailing ``window`` sprints; the newest sprint has weight 1 and weights halve every ``half_life`` sprints into the
past. A run stops once that slope has been non-positive for ``patience`` consecutive sprints.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Sequence

import numpy as np


@lru_cache(maxsize=8)
def _slope_kernel(window: int, half_life: float) -> np.ndarray:
    """Coefficients turning a window of rewards into its weighted least-squares slope."""
    x = np.arange(window, dtype=np.float64)
    weights = 0.5 ** ((window - 1 - x) / half_life)
    centered = x - np.average(x, weights=weights)
    denom = float(np.sum(weights * centered**2))
    if denom == 0.0:
        return np.zeros(window)
    kernel = weights * centered / denom
    kernel.flags.writeable = False
    return kernel


def trend_slope(rewards: Sequence[float], half_life: float | None = None) -> float:
    values = np.asarray(rewards, dtype=np.float64)
    if values.size < 2:
        return 0.0
    kernel = _slope_kernel(values.size, half_life or values.size / 2)
    # relative to the first value, so a constant window is exactly flat
    return float((values - values[0]) @ kernel)


def should_stop(history: Sequence[float], window: int, patience: int, half_life: float | None = None) -> bool:
    """
    True iff each of the last ``patience`` sprints closed a full trailing window (a window with at least one
    earlier sprint before it) whose trend slope was <= 0.
    """
    if window < 1 or patience < 1:
        raise ValueError("window and patience must be positive")
    size = len(history)
    if size < window + patience:
        return False
    values = np.asarray(history, dtype=np.float64)
    for end in range(size, size - patience, -1):
        if trend_slope(values[end - window : end], half_life) > 0:
            return False
    return True


class TrendStopper:
    """Incremental ``should_stop``: feed one reward per sprint, O(window) work per sprint."""

    def __init__(self, window: int, patience: int, half_life: float | None = None):
        if window < 1 or patience < 1:
            raise ValueError("window and patience must be positive")
        self.window = window
        self.patience = patience
        self.half_life = half_life
        self.seen = 0
        self.flat_sprints = 0
        self._recent: deque[float] = deque(maxlen=window)

    def push(self, reward: float) -> bool:
        self._recent.append(reward)
        self.seen += 1
        if self.seen > self.window:
            if trend_slope(np.fromiter(self._recent, dtype=np.float64, count=self.window), self.half_life) > 0:
                self.flat_sprints = 0
            else:
                self.flat_sprints += 1
        return self.stopped

    @property
    def stopped(self) -> bool:
        return self.flat_sprints >= self.patience

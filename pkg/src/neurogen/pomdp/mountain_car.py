from __future__ import annotations

import math

import numpy as np

from neurogen.pomdp.base import Environment, Transition
from neurogen.pomdp.spaces import Continuous, EnvSpec

MIN_POSITION = -1.2
MAX_POSITION = 0.6
MAX_SPEED = 0.07
GOAL_POSITION = 0.45
GOAL_VELOCITY = 0.0
POWER = 0.0015
MIN_ACTION = -1.0
MAX_ACTION = 1.0

MOUNTAIN_CAR_SPEC = EnvSpec(
    name="mountaincar",
    obs_bounds=((MIN_POSITION, MAX_POSITION), (-MAX_SPEED, MAX_SPEED)),
    action=Continuous(MIN_ACTION, MAX_ACTION),
    max_episode_steps=999,
    reward_range=(-100.0, 100.0),
)

MountainCarState = tuple[float, float]


def mountain_car_transition(state: MountainCarState, action: float) -> Transition[MountainCarState]:
    position, velocity = state
    force = min(max(float(action), MIN_ACTION), MAX_ACTION)

    velocity += force * POWER - 0.0025 * math.cos(3 * position)
    velocity = min(max(velocity, -MAX_SPEED), MAX_SPEED)
    position += velocity
    position = min(max(position, MIN_POSITION), MAX_POSITION)
    if position == MIN_POSITION and velocity < 0:
        velocity = 0.0

    terminal = position >= GOAL_POSITION and velocity >= GOAL_VELOCITY
    reward = 100.0 if terminal else 0.0
    reward -= force**2 * 0.1
    return Transition((position, velocity), reward, bool(terminal))


class MountainCarContinuous(Environment[MountainCarState]):
    spec = MOUNTAIN_CAR_SPEC

    def initial_state(self, rng: np.random.Generator) -> MountainCarState:
        return float(rng.uniform(-0.6, -0.4)), 0.0

    def transition(self, state: MountainCarState, action) -> Transition[MountainCarState]:
        return mountain_car_transition(state, action)

    def observe(self, state: MountainCarState) -> np.ndarray:
        return np.asarray(state, dtype=np.float64)

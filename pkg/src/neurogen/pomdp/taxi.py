from __future__ import annotations

from typing import NamedTuple

import numpy as np

from neurogen.pomdp.base import Environment, Transition
from neurogen.pomdp.spaces import Discrete, EnvSpec

MAP = (
    "+---------+",
    "|R: | : :G|",
    "| : | : : |",
    "| : : : : |",
    "| | : | : |",
    "|Y| : |B: |",
    "+---------+",
)
GRID_SIZE = 5
LANDMARKS = ((0, 0), (0, 4), (4, 0), (4, 3))
IN_TAXI = len(LANDMARKS)

SOUTH, NORTH, EAST, WEST, PICKUP, DROPOFF = range(6)

STEP_REWARD = -1.0
ILLEGAL_REWARD = -10.0
DROPOFF_REWARD = 20.0

TAXI_SPEC = EnvSpec(
    name="taxi",
    # small integer cells: (0, 256) bounds make binning the identity
    obs_bounds=((0.0, 256.0),) * 4,
    action=Discrete(6),
    max_episode_steps=200,
    reward_range=(-2000.0, 20.0),
)


class TaxiState(NamedTuple):
    row: int
    col: int
    passenger: int
    destination: int


def _open_east(row: int, col: int) -> bool:
    return MAP[1 + row][2 * col + 2] == ":"


def _open_west(row: int, col: int) -> bool:
    return MAP[1 + row][2 * col] == ":"


def taxi_transition(state: TaxiState, action: int) -> Transition[TaxiState]:
    row, col, passenger, destination = state
    reward = STEP_REWARD
    terminal = False

    if action == SOUTH:
        row = min(row + 1, GRID_SIZE - 1)
    elif action == NORTH:
        row = max(row - 1, 0)
    elif action == EAST:
        if _open_east(row, col):
            col = min(col + 1, GRID_SIZE - 1)
    elif action == WEST:
        if _open_west(row, col):
            col = max(col - 1, 0)
    elif action == PICKUP:
        if passenger < IN_TAXI and (row, col) == LANDMARKS[passenger]:
            passenger = IN_TAXI
        else:
            reward = ILLEGAL_REWARD
    elif action == DROPOFF:
        if passenger == IN_TAXI and (row, col) == LANDMARKS[destination]:
            passenger = destination
            reward = DROPOFF_REWARD
            terminal = True
        elif passenger == IN_TAXI and (row, col) in LANDMARKS:
            passenger = LANDMARKS.index((row, col))
        else:
            reward = ILLEGAL_REWARD
    else:
        raise ValueError(f"taxi: unknown action {action}")

    return Transition(TaxiState(row, col, passenger, destination), reward, terminal)


def initial_states() -> list[TaxiState]:
    return [
        TaxiState(row, col, passenger, destination)
        for row in range(GRID_SIZE)
        for col in range(GRID_SIZE)
        for passenger in range(len(LANDMARKS))
        for destination in range(len(LANDMARKS))
        if passenger != destination
    ]


_INITIAL_STATES = initial_states()


class Taxi(Environment[TaxiState]):
    spec = TAXI_SPEC

    def initial_state(self, rng: np.random.Generator) -> TaxiState:
        return _INITIAL_STATES[int(rng.integers(len(_INITIAL_STATES)))]

    def transition(self, state: TaxiState, action) -> Transition[TaxiState]:
        return taxi_transition(state, int(action))

    def observe(self, state: TaxiState) -> np.ndarray:
        return np.asarray(state, dtype=np.float64)

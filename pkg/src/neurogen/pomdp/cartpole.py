from __future__ import annotations

import math

import numpy as np

from neurogen.pomdp.base import Environment, Transition
from neurogen.pomdp.spaces import Discrete, EnvSpec

GRAVITY = 9.8
CART_MASS = 1.0
POLE_MASS = 0.1
TOTAL_MASS = CART_MASS + POLE_MASS
HALF_LENGTH = 0.5
POLE_MASS_LENGTH = POLE_MASS * HALF_LENGTH
FORCE_MAG = 10.0
TAU = 0.02
THETA_THRESHOLD = 12 * 2 * math.pi / 360
X_THRESHOLD = 2.4

CARTPOLE_SPEC = EnvSpec(
    name="cartpole",
    # velocities are unbounded; clamp them to ranges a balancing policy actually visits
    obs_bounds=((-X_THRESHOLD, X_THRESHOLD), (-3.0, 3.0), (-THETA_THRESHOLD, THETA_THRESHOLD), (-3.5, 3.5)),
    action=Discrete(2),
    max_episode_steps=500,
    reward_range=(0.0, 500.0),
)

CartPoleState = tuple[float, float, float, float]


def cartpole_transition(state: CartPoleState, action: int) -> Transition[CartPoleState]:
    """Euler-integrated cart-pole dynamics; action 1 pushes right, 0 pushes left."""
    x, x_dot, theta, theta_dot = state
    force = FORCE_MAG if action == 1 else -FORCE_MAG
    costheta = math.cos(theta)
    sintheta = math.sin(theta)

    temp = (force + POLE_MASS_LENGTH * theta_dot**2 * sintheta) / TOTAL_MASS
    thetaacc = (GRAVITY * sintheta - costheta * temp) / (
        HALF_LENGTH * (4.0 / 3.0 - POLE_MASS * costheta**2 / TOTAL_MASS)
    )
    xacc = temp - POLE_MASS_LENGTH * thetaacc * costheta / TOTAL_MASS

    x = x + TAU * x_dot
    x_dot = x_dot + TAU * xacc
    theta = theta + TAU * theta_dot
    theta_dot = theta_dot + TAU * thetaacc

    terminal = x < -X_THRESHOLD or x > X_THRESHOLD or theta < -THETA_THRESHOLD or theta > THETA_THRESHOLD
    return Transition((x, x_dot, theta, theta_dot), 1.0, bool(terminal))


class CartPole(Environment[CartPoleState]):
    spec = CARTPOLE_SPEC

    def initial_state(self, rng: np.random.Generator) -> CartPoleState:
        x, x_dot, theta, theta_dot = (float(v) for v in rng.uniform(-0.05, 0.05, size=4))
        return x, x_dot, theta, theta_dot

    def transition(self, state: CartPoleState, action) -> Transition[CartPoleState]:
        return cartpole_transition(state, int(action))

    def observe(self, state: CartPoleState) -> np.ndarray:
        return np.asarray(state, dtype=np.float64)

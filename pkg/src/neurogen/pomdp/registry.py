from __future__ import annotations

from typing import Callable

from neurogen.pomdp.base import Environment
from neurogen.pomdp.cartpole import CartPole
from neurogen.pomdp.mountain_car import MountainCarContinuous
from neurogen.pomdp.taxi import Taxi

ENVIRONMENTS: dict[str, Callable[[], Environment]] = {
    "cartpole": CartPole,
    "mountaincar": MountainCarContinuous,
    "taxi": Taxi,
}

ALIASES = {
    "cartpole-v1": "cartpole",
    "mountaincarcontinuous-v0": "mountaincar",
    "taxi-v3": "taxi",
}


def canonical_name(name: str) -> str:
    key = name.strip().lower()
    key = ALIASES.get(key, key)
    if key not in ENVIRONMENTS:
        known = ", ".join(sorted(ENVIRONMENTS))
        raise KeyError(f"unknown environment {name!r} (known: {known})")
    return key


def make_environment(name: str) -> Environment:
    return ENVIRONMENTS[canonical_name(name)]()

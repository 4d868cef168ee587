"""Episodic environments, observation/action plumbing and program evaluation."""

from . import base, cartpole, evaluation, mountain_car, registry, spaces, taxi

__all__ = [
    "base",
    "cartpole",
    "evaluation",
    "mountain_car",
    "registry",
    "spaces",
    "taxi",
]

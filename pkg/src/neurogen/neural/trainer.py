"""REINFORCE with a moving-average baseline plus a Priority Queue Training term."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import torch

from tapelang import Program

from neurogen.neural.policy import ProgramPolicy, sequence_logprobs


@dataclass(frozen=True)
class TrainerConfig:
    learning_rate: float = 1e-3
    baseline_decay: float = 0.9
    pqt_weight: float = 1.0
    pqt_k: int = 10
    entropy_weight: float = 0.01
    max_program_length: int = 100
    # temperature applied to reward before exponentiation; None means 1% of the environment's reward span
    reward_scale: float | None = None

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if not 0.0 <= self.baseline_decay < 1.0:
            raise ValueError("baseline_decay must lie in [0, 1)")
        if self.pqt_weight < 0 or self.entropy_weight < 0:
            raise ValueError("pqt_weight and entropy_weight must be non-negative")
        if self.pqt_k < 1:
            raise ValueError("pqt_k must be positive")
        if self.max_program_length < 1:
            raise ValueError("max_program_length must be at least 1")
        if self.reward_scale is not None and self.reward_scale <= 0:
            raise ValueError("reward_scale must be positive")


@dataclass
class Baseline:
    value: float | None = None


@dataclass(frozen=True)
class UpdateStats:
    q: float
    advantage: float
    loss: float


def reinforce_pqt_update(
    policy: ProgramPolicy,
    optimizer: torch.optim.Optimizer,
    program: Program,
    reward: float,
    topk: Sequence[Program],
    cfg: TrainerConfig,
    baseline: Baseline,
    *,
    shift: float,
    reward_scale: float,
) -> UpdateStats:
    """
    One gradient ascent step on ``(q - b) * log p(program) + pqt_weight * mean(log p(topk)) + entropy_weight * H``.

    ``q = exp((reward - shift) / reward_scale)``; ``b`` is the baseline before this update. The baseline is then
    moved towards ``q``. Queue programs longer than ``cfg.max_program_length`` are left out of the PQT term.
    """
    q = math.exp((reward - shift) / reward_scale)
    b = q if baseline.value is None else baseline.value
    advantage = q - b

    queue = [candidate for candidate in topk if len(candidate) <= cfg.max_program_length]
    logprobs, entropies = sequence_logprobs(policy, [program, *queue])
    objective = advantage * logprobs[0] + cfg.entropy_weight * entropies[0]
    if queue and cfg.pqt_weight > 0:
        objective = objective + cfg.pqt_weight * logprobs[1:].mean()
    loss = -objective

    optimizer.zero_grad()
    loss.backward()
    optimizer.step()

    baseline.value = cfg.baseline_decay * b + (1.0 - cfg.baseline_decay) * q
    return UpdateStats(q=q, advantage=advantage, loss=float(loss.detach()))

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tapelang import BudgetExhausted, LanguageConfig, Program, TapeInterpreter

from neurogen.errors import EnvironmentMismatch
from neurogen.pomdp.base import Environment
from neurogen.pomdp.spaces import decode_action, discretize_observation


@dataclass(frozen=True)
class EpisodeResult:
    total_reward: float
    steps: int
    aborted: bool = False


def eval_program(
    program: Program, env: Environment, lang_cfg: LanguageConfig, rng: np.random.Generator
) -> EpisodeResult:
    """
    Runs one episode of ``program`` in ``env`` and returns its total reward.

    A pass that exhausts its operation budget aborts the episode; the reward collected so far is kept.
    """
    spec = env.spec
    if lang_cfg.obs_cell_count != spec.obs_cell_count:
        raise EnvironmentMismatch(
            f"{spec.name} has {spec.obs_cell_count} observation cells, "
            f"language config expects {lang_cfg.obs_cell_count}"
        )

    interpreter = TapeInterpreter(lang_cfg)
    memory = interpreter.new_memory()
    obs = env.reset(rng)
    total = 0.0
    steps = 0
    while steps < spec.max_episode_steps:
        cells = discretize_observation(obs, spec)
        try:
            action_cell = interpreter.step(program, memory, cells)
        except BudgetExhausted:
            return EpisodeResult(total, steps, aborted=True)
        obs, reward, terminal = env.step(decode_action(action_cell, spec))
        total += reward
        steps += 1
        if terminal:
            break
    return EpisodeResult(total, steps)


def evaluate_episodes(
    program: Program, env: Environment, lang_cfg: LanguageConfig, rng: np.random.Generator, episodes: int
) -> list[EpisodeResult]:
    return [eval_program(program, env, lang_cfg, rng) for _ in range(episodes)]

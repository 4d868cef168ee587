"""Instant Scrum: developers take turns proposing a program, which is evaluated once and recorded."""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from tapelang import LanguageConfig

from neurogen.codebase import Codebase, ScoredEntry
from neurogen.developer import Developer
from neurogen.errors import DeadlockedTeam
from neurogen.pomdp.base import Environment
from neurogen.pomdp.evaluation import eval_program
from neurogen.scrum.sprint_log import SprintLog, SprintRecord
from neurogen.scrum.stopping import TrendStopper

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class StoppingConfig:
    """
    :param enabled: Whether the trend rule may end a run early.
    :param window: Number of trailing sprints the reward trend is fitted over.
    :param patience: Consecutive sprints without an upward trend before the run stops.
    :param half_life: Decay of the trend weights in sprints. Defaults to half the window.
    """

    enabled: bool = True
    window: int = 2000
    patience: int = 10000
    half_life: float | None = None

    def __post_init__(self):
        if self.window < 2:
            raise ValueError("window must be at least 2")
        if self.patience < 1:
            raise ValueError("patience must be at least 1")
        if self.half_life is not None and self.half_life <= 0:
            raise ValueError("half_life must be positive")


@dataclass(frozen=True)
class RunConfig:
    """
    :param n_max: Sprints to run in one call, counting every proposal by every developer.
    :param time_limit: Wall-clock limit in seconds, checked after each sprint. None for no limit.
    :param stopping: Early stopping settings.
    :param seed: Seed of the run's random generator.
    :param log_every: Emit a progress line every this many sprints.
    :param checkpoint_dir: Where neural developers save their parameters at the end of a run. None to skip.
    """

    n_max: int = 20000
    time_limit: float | None = None
    stopping: StoppingConfig = field(default_factory=StoppingConfig)
    seed: int = 0
    log_every: int = 1000
    checkpoint_dir: str | None = None

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.log_every < 1:
            raise ValueError("log_every must be at least 1")


class StopReason(enum.StrEnum):
    N_MAX = "n_max"
    EARLY_STOP = "early_stop"
    TIME_LIMIT = "time_limit"


@dataclass
class ScrumResult:
    codebase: Codebase
    log: SprintLog
    stop_reason: StopReason
    sprints: int


def instant_scrum(
    team: Sequence[Developer],
    codebase: Codebase,
    env: Environment,
    lang_cfg: LanguageConfig,
    run_cfg: RunConfig,
    rng: np.random.Generator,
    *,
    sprint_log: SprintLog | None = None,
    clock: Callable[[], float] = time.monotonic,
) -> ScrumResult:
    """
    Runs rounds over ``team`` in order until ``run_cfg.n_max`` sprints, early stopping or the time limit.

    Each sprint is: propose, evaluate one episode, record into ``codebase``, update the proposer. Sprint numbers
    continue from the last sprint already in ``codebase``. A developer that cannot propose is skipped without
    using a sprint; a round in which nobody proposes raises :class:`DeadlockedTeam`.
    """
    if not team:
        raise ValueError("a team needs at least one developer")
    sprint_log = sprint_log if sprint_log is not None else SprintLog()
    stopper = (
        TrendStopper(run_cfg.stopping.window, run_cfg.stopping.patience, run_cfg.stopping.half_life)
        if run_cfg.stopping.enabled
        else None
    )
    deadline = clock() + run_cfg.time_limit if run_cfg.time_limit is not None else None
    sprint = codebase.last_sprint
    done = 0
    reason: StopReason | None = None

    log.info("Starting Instant Scrum: %s on %s, n_max=%d", ", ".join(d.id for d in team), env.spec.name, run_cfg.n_max)
    while reason is None:
        proposed = False
        for developer in team:
            if done >= run_cfg.n_max:
                reason = StopReason.N_MAX
                break
            proposal = developer.propose(codebase, rng)
            if proposal is None:
                log.debug("%s cannot propose on an empty codebase; skipped", developer.id)
                continue
            proposed = True

            result = eval_program(proposal.program, env, lang_cfg, rng)
            sprint += 1
            done += 1
            codebase.record(
                ScoredEntry(
                    proposal.program,
                    result.total_reward,
                    developer.id,
                    proposal.operator,
                    sprint,
                    result.aborted,
                )
            )
            developer.update(proposal, result.total_reward, codebase)
            sprint_log.append(
                SprintRecord(
                    sprint=sprint,
                    developer=developer.id,
                    operator=proposal.operator,
                    reward=result.total_reward,
                    length=len(proposal.program),
                    aborted=result.aborted,
                )
            )

            if done % run_cfg.log_every == 0:
                (best, best_reward), *_ = codebase.top_k(1)
                log.info(
                    "Sprint %d: %d entries, %d distinct programs, best R=%.3f (%s)",
                    sprint,
                    len(codebase),
                    codebase.distinct_count,
                    best_reward,
                    best.text,
                )
            if stopper is not None and stopper.push(result.total_reward):
                reason = StopReason.EARLY_STOP
                break
            if deadline is not None and clock() >= deadline:
                reason = StopReason.TIME_LIMIT
                break
        else:
            if not proposed:
                log.warning("No developer in %s could propose a program", [d.id for d in team])
                raise DeadlockedTeam(
                    "every developer was skipped for a full round; teams without a neural developer need seed programs"
                )
        if reason is None and done >= run_cfg.n_max:
            reason = StopReason.N_MAX

    log.info("Instant Scrum stopped after %d sprints (%s)", done, reason)
    return ScrumResult(codebase, sprint_log, reason, done)

"""Final scoring: re-evaluate the best programs until their reward estimates rest on enough episodes."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Iterable

import numpy as np

from tapelang import LanguageConfig, Program

from neurogen.codebase import Codebase, ProgramStats, ScoredEntry
from neurogen.errors import EmptyCodebase
from neurogen.pomdp.base import Environment
from neurogen.pomdp.evaluation import eval_program

log = logging.getLogger(__name__)

DEFAULT_TOP = 100
DEFAULT_SAMPLES = 100


@dataclass(frozen=True)
class ProgramScore:
    program: Program
    mean_reward: float
    quality: float
    samples: int
    author: str
    operator: str | None

    @classmethod
    def from_stats(cls, stats: ProgramStats, shift: float) -> "ProgramScore":
        return cls(stats.program, stats.mean_reward, stats.quality(shift), stats.count, stats.author, stats.operator)

    def to_dict(self) -> dict[str, Any]:
        return {
            "program": self.program.text,
            "mean_reward": self.mean_reward,
            "quality": self.quality,
            "samples": self.samples,
            "author": self.author,
            "operator": self.operator,
        }


def rank_by_reward(stats: Iterable[ProgramStats]) -> list[ProgramStats]:
    return sorted(stats, key=lambda s: (-s.mean_reward, s.order))


def leaderboard_best(codebase: Codebase, min_samples: int = DEFAULT_SAMPLES) -> ProgramScore:
    """
    Highest mean reward among programs with at least ``min_samples`` samples; when none has that many, the highest
    mean reward overall.
    """
    if not codebase:
        raise EmptyCodebase("an empty codebase has no best program")
    distinct = codebase.distinct()
    candidates = [stats for stats in distinct if stats.count >= min_samples] or distinct
    return ProgramScore.from_stats(rank_by_reward(candidates)[0], codebase.max_reward)


@dataclass
class ScoringReport:
    programs: list[ProgramScore]
    best: ProgramScore
    new_entries: list[ScoredEntry]
    samples: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "samples_per_program": self.samples,
            "evaluations": len(self.new_entries),
            "best": self.best.to_dict(),
            "programs": [score.to_dict() for score in self.programs],
        }


def final_scoring(
    codebase: Codebase,
    env: Environment,
    lang_cfg: LanguageConfig,
    rng: np.random.Generator,
    *,
    top: int = DEFAULT_TOP,
    samples: int = DEFAULT_SAMPLES,
    sprint: int | None = None,
) -> ScoringReport:
    """
    Takes the ``top`` distinct programs by mean reward and evaluates each until it has ``samples`` reward samples.

    New samples are recorded into ``codebase`` with the provenance of the program's first appearance and sprint
    number ``sprint`` (the last sprint in the codebase by default). The returned table is sorted by final mean reward.
    """
    if not codebase:
        raise EmptyCodebase("final scoring needs at least one program in the codebase")
    if top < 1 or samples < 1:
        raise ValueError("top and samples must be positive")
    sprint = codebase.last_sprint if sprint is None else sprint

    chosen = rank_by_reward(codebase.distinct())[:top]
    new_entries: list[ScoredEntry] = []
    for stats in chosen:
        missing = samples - stats.count
        for _ in range(max(missing, 0)):
            result = eval_program(stats.program, env, lang_cfg, rng)
            entry = ScoredEntry(
                stats.program, result.total_reward, stats.author, stats.operator, sprint, result.aborted
            )
            codebase.record(entry)
            new_entries.append(entry)
    log.info("Final scoring: %d programs, %d extra evaluations", len(chosen), len(new_entries))

    shift = codebase.max_reward
    programs = [ProgramScore.from_stats(stats, shift) for stats in rank_by_reward(chosen)]
    return ScoringReport(programs, leaderboard_best(codebase, samples), new_entries, samples)

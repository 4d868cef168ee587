"""Append-only store of evaluated programs with empirical reward and quality statistics."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Iterator, Literal

import numpy as np

from tapelang import Program

from neurogen.errors import CodebaseIOError, EmptyCodebase, MalformedRecord, ProgramUnknown

log = logging.getLogger(__name__)

RECORD_FIELDS = ("program", "reward", "author", "operator", "sprint", "aborted")


@dataclass(frozen=True)
class ScoredEntry:
    """One reward sample of one program, plus who wrote it and when."""

    program: Program
    reward: float
    author: str
    operator: str | None = None
    sprint: int = 0
    aborted: bool = False

    def __post_init__(self):
        if not math.isfinite(self.reward):
            raise ValueError(f"reward must be finite, got {self.reward}")

    def to_record(self) -> dict[str, Any]:
        return {
            "program": self.program.text,
            "reward": self.reward,
            "author": self.author,
            "operator": self.operator,
            "sprint": self.sprint,
            "aborted": self.aborted,
        }

    @classmethod
    def from_record(cls, data: Any, line: int) -> "ScoredEntry":
        if not isinstance(data, dict):
            raise MalformedRecord(line, "expected a JSON object")
        missing = [name for name in RECORD_FIELDS if name not in data]
        if missing:
            raise MalformedRecord(line, f"missing fields: {', '.join(missing)}")
        extra = sorted(set(data) - set(RECORD_FIELDS))
        if extra:
            raise MalformedRecord(line, f"unknown fields: {', '.join(extra)}")

        program, reward, author = data["program"], data["reward"], data["author"]
        operator, sprint, aborted = data["operator"], data["sprint"], data["aborted"]
        if not isinstance(program, str):
            raise MalformedRecord(line, "program must be a string")
        if isinstance(reward, bool) or not isinstance(reward, (int, float)) or not math.isfinite(reward):
            raise MalformedRecord(line, "reward must be a finite number")
        if not isinstance(author, str):
            raise MalformedRecord(line, "author must be a string")
        if operator is not None and not isinstance(operator, str):
            raise MalformedRecord(line, "operator must be a string or null")
        if isinstance(sprint, bool) or not isinstance(sprint, int):
            raise MalformedRecord(line, "sprint must be an integer")
        if not isinstance(aborted, bool):
            raise MalformedRecord(line, "aborted must be a boolean")
        try:
            parsed = Program(program)
        except ValueError as exc:
            raise MalformedRecord(line, str(exc)) from exc
        return cls(parsed, float(reward), author, operator, sprint, aborted)


@dataclass
class ProgramStats:
    """Aggregated samples of one distinct program."""

    program: Program
    order: int
    author: str
    operator: str | None
    rewards: list[float] = field(default_factory=list)
    log_exp_sum: float = -math.inf

    @property
    def count(self) -> int:
        return len(self.rewards)

    @property
    def mean_reward(self) -> float:
        return math.fsum(self.rewards) / len(self.rewards)

    @property
    def log_mean_exp(self) -> float:
        return self.log_exp_sum - math.log(len(self.rewards))

    def quality(self, shift: float) -> float:
        return math.exp(self.log_mean_exp - shift)

    def add(self, reward: float) -> None:
        self.rewards.append(reward)
        self.log_exp_sum = float(np.logaddexp(self.log_exp_sum, reward))


class Codebase:
    """
    Multiset of scored programs.

    Statistics are kept per distinct program text. Quality is reported relative to a shared shift ``S``
    (the largest reward recorded so far) so that ``exp`` never overflows; ratios of qualities, and therefore
    quality-weighted sampling and ranking, do not depend on ``S``.
    """

    def __init__(self, entries: Iterable[ScoredEntry] = ()):
        self.entries: list[ScoredEntry] = []
        self._stats: dict[str, ProgramStats] = {}
        self._ordered: list[ProgramStats] = []
        self._log_quality = np.empty(64, dtype=np.float64)
        self.max_reward = -math.inf
        for entry in entries:
            self.record(entry)

    def __len__(self) -> int:
        return len(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __contains__(self, program: Program) -> bool:
        return program.text in self._stats

    def __iter__(self) -> Iterator[ScoredEntry]:
        return iter(self.entries)

    @property
    def distinct_count(self) -> int:
        return len(self._ordered)

    @property
    def last_sprint(self) -> int:
        return max((entry.sprint for entry in self.entries), default=0)

    def distinct(self) -> list[ProgramStats]:
        return list(self._ordered)

    def record(self, entry: ScoredEntry) -> "Codebase":
        stats = self._stats.get(entry.program.text)
        if stats is None:
            stats = ProgramStats(entry.program, len(self._ordered), entry.author, entry.operator)
            self._stats[entry.program.text] = stats
            self._ordered.append(stats)
            if stats.order >= len(self._log_quality):
                self._log_quality = np.resize(self._log_quality, 2 * len(self._log_quality))
        stats.add(entry.reward)
        self._log_quality[stats.order] = stats.log_mean_exp
        self.entries.append(entry)
        self.max_reward = max(self.max_reward, entry.reward)
        return self

    def stats(self, program: Program) -> ProgramStats:
        try:
            return self._stats[program.text]
        except KeyError:
            raise ProgramUnknown(f"program {program.text!r} has no reward samples") from None

    def empirical_reward(self, program: Program) -> float:
        return self.stats(program).mean_reward

    def empirical_quality(self, program: Program, shift: float | None = None) -> float:
        """Mean of ``exp(R_i - shift)`` over the program's samples; ``shift`` defaults to the largest reward seen."""
        stats = self.stats(program)
        return stats.quality(self.max_reward if shift is None else shift)

    def selection_probabilities(self) -> np.ndarray:
        """Probability of drawing each distinct program (in first-seen order), proportional to its quality."""
        if not self._ordered:
            raise EmptyCodebase("cannot sample from an empty codebase")
        log_q = self._log_quality[: len(self._ordered)]
        weights = np.exp(log_q - log_q.max())
        return weights / weights.sum()

    def sample_quality_weighted(self, rng: np.random.Generator) -> Program:
        if not self._ordered:
            raise EmptyCodebase("cannot sample from an empty codebase")
        log_q = self._log_quality[: len(self._ordered)]
        cumulative = np.cumsum(np.exp(log_q - log_q.max()))
        idx = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
        return self._ordered[min(idx, len(self._ordered) - 1)].program

    def top_k(self, k: int, by: Literal["reward", "quality"] = "reward") -> list[tuple[Program, float]]:
        """Distinct programs with the highest statistic; ties go to the program recorded first."""
        if by == "reward":
            ranked = sorted(self._ordered, key=lambda s: (-s.mean_reward, s.order))
            return [(s.program, s.mean_reward) for s in ranked[:k]]
        if by == "quality":
            ranked = sorted(self._ordered, key=lambda s: (-s.log_mean_exp, s.order))
            return [(s.program, s.quality(self.max_reward)) for s in ranked[:k]]
        raise ValueError(f"unknown ranking statistic {by!r}")

    def save(self, path: Path) -> None:
        write_entries(path, self.entries)

    @classmethod
    def load(cls, *paths: Path) -> "Codebase":
        codebase = cls()
        for path in paths:
            for entry in read_entries(path):
                codebase.record(entry)
        return codebase


def write_entries(path: Path, entries: Iterable[ScoredEntry], *, append: bool = False) -> None:
    try:
        with Path(path).open("a" if append else "w", encoding="utf-8") as fh:
            for entry in entries:
                fh.write(json.dumps(entry.to_record()) + "\n")
    except OSError as exc:
        raise CodebaseIOError(f"failed to write {path}: {exc}") from exc


def read_entries(path: Path) -> list[ScoredEntry]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CodebaseIOError(f"failed to read {path}: {exc}") from exc

    entries: list[ScoredEntry] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(lineno, f"invalid JSON ({exc.msg})") from exc
        entries.append(ScoredEntry.from_record(data, lineno))
    log.debug("Read %d entries from %s", len(entries), path)
    return entries

"""Leaderboard reports computed from codebase records."""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path
from typing import IO, Any, Sequence

import yaml

from neurogen.codebase import Codebase
from neurogen.errors import CodebaseIOError
from neurogen.scrum.scoring import DEFAULT_SAMPLES, DEFAULT_TOP, ProgramScore, leaderboard_best, rank_by_reward

log = logging.getLogger(__name__)

SEED_AUTHOR = "human"


def _initial_programs(codebase: Codebase) -> dict[str, Any] | None:
    """Best seed program by the rewards it earned at ingestion."""
    rewards: dict[str, list[float]] = {}
    for entry in codebase:
        if entry.author == SEED_AUTHOR and entry.sprint == 0:
            rewards.setdefault(entry.program.text, []).append(entry.reward)
    if not rewards:
        return None
    text, samples = max(rewards.items(), key=lambda item: sum(item[1]) / len(item[1]))
    return {"program": text, "mean_reward": sum(samples) / len(samples), "samples": len(samples), "seeds": len(rewards)}


def _best_by_author(codebase: Codebase, shift: float) -> dict[str, dict[str, Any]]:
    best: dict[str, ProgramScore] = {}
    for stats in rank_by_reward(codebase.distinct()):
        best.setdefault(stats.author, ProgramScore.from_stats(stats, shift))
    return {author: score.to_dict() for author, score in sorted(best.items())}


def build_report(codebase: Codebase, *, samples: int = DEFAULT_SAMPLES, top: int = DEFAULT_TOP) -> dict[str, Any]:
    """
    Recomputes reward and quality statistics from the records in ``codebase``.

    ``best`` is the highest mean reward among programs with at least ``samples`` samples (the leaderboard metric);
    if no program has been sampled that often it is the highest mean reward overall and ``best.scored`` is false.
    """
    if not codebase:
        return {
            "entries": 0,
            "distinct_programs": 0,
            "best": None,
            "by_author": {},
            "initial_programs": None,
            "programs": [],
        }

    shift = codebase.max_reward
    best = leaderboard_best(codebase, samples)
    programs = [ProgramScore.from_stats(stats, shift).to_dict() for stats in rank_by_reward(codebase.distinct())[:top]]
    return {
        "entries": len(codebase),
        "distinct_programs": codebase.distinct_count,
        "max_reward": codebase.max_reward,
        "best": {**best.to_dict(), "scored": best.samples >= samples},
        "by_author": _best_by_author(codebase, shift),
        "initial_programs": _initial_programs(codebase),
        "programs": programs,
    }


def write_report(path: Path, report: dict[str, Any]) -> None:
    try:
        Path(path).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise CodebaseIOError(f"failed to write {path}: {exc}") from exc


def summarize(report: dict[str, Any]) -> dict[str, Any]:
    best = report.get("best")
    if best is None:
        return {"entries": report.get("entries", 0), "best": None}
    summary = {
        "entries": report["entries"],
        "distinct_programs": report["distinct_programs"],
        "best_program": best["program"],
        "best_mean_reward": best["mean_reward"],
        "samples": best["samples"],
        "author": best["author"],
        "operator": best["operator"],
    }
    if report.get("initial_programs"):
        summary["initial_programs_mean_reward"] = report["initial_programs"]["mean_reward"]
    return summary


def print_summary(report: dict[str, Any], stream: IO[str] | None = None) -> None:
    stream = stream or sys.stdout
    stream.write(yaml.safe_dump(summarize(report), sort_keys=False))


def emit_report(
    codebase_paths: Sequence[Path], output: Path | None = None, *, samples: int = DEFAULT_SAMPLES
) -> dict[str, Any]:
    """Loads codebase files in order, writes ``report.json`` (next to the first file unless ``output`` is given)."""
    if not codebase_paths:
        raise ValueError("at least one codebase file is required")
    codebase = Codebase.load(*codebase_paths)
    report = build_report(codebase, samples=samples)
    target = Path(output) if output is not None else Path(codebase_paths[0]).parent / "report.json"
    write_report(target, report)
    log.info("Wrote report for %d entries to %s", len(codebase), target)
    return report

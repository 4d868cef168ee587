"""Runs one experiment end to end: seed ingestion, Instant Scrum, final scoring and artifacts."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from tapelang import LanguageConfig, Program, tokenize

from neurogen.codebase import Codebase, ScoredEntry, write_entries
from neurogen.config import ExperimentConfig
from neurogen.developer import Developer
from neurogen.errors import CodebaseIOError, DeadlockedTeam
from neurogen.neural.developer import NeuralDeveloper
from neurogen.pomdp.base import Environment
from neurogen.pomdp.evaluation import eval_program
from neurogen.pomdp.registry import make_environment
from neurogen.reporting import SEED_AUTHOR, build_report, write_report
from neurogen.scrum.loop import ScrumResult, instant_scrum
from neurogen.scrum.scoring import ScoringReport, final_scoring
from neurogen.scrum.sprint_log import SprintLog
from neurogen.scrum.teams import build_team, can_generate

log = logging.getLogger(__name__)

CODEBASE_FILENAME = "codebase.jsonl"
SCORING_FILENAME = "scoring.jsonl"
SPRINTS_FILENAME = "sprints.csv"
REPORT_FILENAME = "report.json"


@dataclass
class ExperimentResult:
    out_dir: Path
    codebase: Codebase
    scrum: ScrumResult
    scoring: ScoringReport
    report: dict[str, Any]


def read_seeds(path: Path) -> list[Program]:
    """One program per line. Characters outside the alphabet are dropped; lines left empty are skipped."""
    programs: list[Program] = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        program = tokenize(line)
        if not program:
            log.warning("%s:%d: skipping seed line with no program tokens: %r", path, lineno, line)
            continue
        if len(program) != len(line.strip()):
            log.debug("%s:%d: dropped characters outside the alphabet", path, lineno)
        programs.append(program)
    return programs


def ingest_seeds(
    codebase: Codebase,
    programs: Iterable[Program],
    env: Environment,
    lang_cfg: LanguageConfig,
    rng: np.random.Generator,
) -> list[ScoredEntry]:
    """Evaluates each seed program once so it enters the codebase with one reward sample."""
    entries = []
    for program in programs:
        result = eval_program(program, env, lang_cfg, rng)
        entry = ScoredEntry(program, result.total_reward, SEED_AUTHOR, None, 0, result.aborted)
        codebase.record(entry)
        entries.append(entry)
    if entries:
        log.info("Ingested %d seed programs, best seed reward %.3f", len(entries), max(e.reward for e in entries))
    return entries


def save_checkpoints(team: Sequence[Developer], directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for developer in team:
        if isinstance(developer, NeuralDeveloper):
            path = directory / f"{re.sub(r'[^A-Za-z0-9_.-]+', '_', developer.id).strip('_')}.pt"
            developer.save(path)
            paths.append(path)
    return paths


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    env = make_environment(cfg.env)
    lang_cfg = cfg.language.for_environment(env.spec)
    rng = np.random.default_rng(cfg.run.seed)
    team = build_team(cfg.team, trainer_config=cfg.neural, seed=cfg.run.seed, reward_span=env.spec.reward_span)

    out_dir = cfg.out_path
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CodebaseIOError(f"cannot create output directory {out_dir}: {exc}") from exc

    codebase = Codebase()
    if cfg.seeds_path is not None:
        ingest_seeds(codebase, read_seeds(cfg.seeds_path), env, lang_cfg, rng)
    if not codebase and not can_generate(team):
        raise DeadlockedTeam("no seed programs and no developer in the team can write programs from scratch")

    with SprintLog(out_dir / SPRINTS_FILENAME) as sprint_log:
        scrum = instant_scrum(team, codebase, env, lang_cfg, cfg.run, rng, sprint_log=sprint_log)
    codebase.save(out_dir / CODEBASE_FILENAME)

    scoring = final_scoring(codebase, env, lang_cfg, rng, top=cfg.scoring.top, samples=cfg.scoring.samples)
    write_entries(out_dir / SCORING_FILENAME, scoring.new_entries)

    report = build_report(codebase, samples=cfg.scoring.samples, top=cfg.scoring.top)
    report["run"] = {
        "env": env.spec.name,
        "team": [developer.id for developer in team],
        "seed": cfg.run.seed,
        "sprints": scrum.sprints,
        "stop_reason": str(scrum.stop_reason),
        "scoring_evaluations": len(scoring.new_entries),
    }
    write_report(out_dir / REPORT_FILENAME, report)

    if cfg.run.checkpoint_dir:
        save_checkpoints(team, cfg.resolve_path(cfg.run.checkpoint_dir))
    log.info(
        "Wrote %s, %s, %s and %s to %s",
        CODEBASE_FILENAME,
        SCORING_FILENAME,
        SPRINTS_FILENAME,
        REPORT_FILENAME,
        out_dir,
    )
    return ExperimentResult(out_dir, codebase, scrum, scoring, report)


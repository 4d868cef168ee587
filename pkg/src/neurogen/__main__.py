from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np
import yaml

from tapelang import Program, prune, tokenize

from neurogen import __version__
from neurogen.config import LanguageSettings, load_config
from neurogen.errors import NeurogenError
from neurogen.experiment import run_experiment
from neurogen.pomdp.evaluation import evaluate_episodes
from neurogen.pomdp.registry import make_environment
from neurogen.reporting import emit_report, print_summary

log = logging.getLogger(__name__)


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(
        prog="neurogen", description="Neurogenetic program synthesis for tape-language agents"
    )
    parser.add_argument("--log-level", default="WARNING", help="Logging level (DEBUG, INFO, WARNING, ERROR)")
    parser.add_argument("--version", action="store_true", help="Print version and exit")
    subparsers = parser.add_subparsers(dest="command")

    run_parser = subparsers.add_parser("run", help="Run an experiment from a JSON config")
    run_parser.add_argument("config", type=Path)
    run_parser.add_argument("--seed", type=int, help="Random seed (overrides config)")
    run_parser.add_argument("--time-limit", type=float, help="Wall-clock limit in seconds (overrides config)")
    run_parser.add_argument("--out-dir", help="Output directory (overrides config)")

    report_parser = subparsers.add_parser("report", help="Summarize one or more codebase files")
    report_parser.add_argument("codebases", type=Path, nargs="+")
    report_parser.add_argument("--output", type=Path, help="Where to write report.json")
    report_parser.add_argument(
        "--samples", type=int, default=100, help="Samples a program needs to rank on the leaderboard"
    )

    eval_parser = subparsers.add_parser("eval", help="Evaluate a program in an environment")
    eval_parser.add_argument("env")
    eval_parser.add_argument("program")
    eval_parser.add_argument("--episodes", type=int, default=1)
    eval_parser.add_argument("--seed", type=int, default=0)
    eval_parser.add_argument("--tape-len", type=int, default=LanguageSettings.tape_len)
    eval_parser.add_argument("--pass-op-budget", type=int, default=LanguageSettings.pass_op_budget)

    prune_parser = subparsers.add_parser("prune", help="Remove dead code from a program")
    prune_parser.add_argument("program")

    args = parser.parse_args(argv)

    _configure_logging(args.log_level)

    if args.version:
        print(__version__)
        return

    if args.command == "run":
        sys.exit(_run(args.config, seed=args.seed, time_limit=args.time_limit, out_dir=args.out_dir))
    if args.command == "report":
        sys.exit(_report(args.codebases, args.output, samples=args.samples))
    if args.command == "eval":
        if args.episodes < 1:
            parser.error("--episodes must be at least 1")
        sys.exit(
            _eval(
                args.env,
                args.program,
                episodes=args.episodes,
                seed=args.seed,
                language=LanguageSettings(tape_len=args.tape_len, pass_op_budget=args.pass_op_budget),
            )
        )
    if args.command == "prune":
        sys.exit(_prune(args.program))
    parser.print_help()
    sys.exit(2)


def _configure_logging(level: str) -> None:
    numeric = getattr(logging, level.upper(), logging.WARNING)
    if not isinstance(numeric, int):
        numeric = logging.WARNING
    logging.basicConfig(
        level=numeric,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _run(config_path: Path, *, seed: int | None, time_limit: float | None, out_dir: str | None) -> int:
    if not config_path.exists():
        print(f"Config not found: {config_path}", file=sys.stderr)
        return 2
    try:
        cfg, _warnings = load_config(config_path)
        cfg = cfg.with_overrides(seed=seed, time_limit=time_limit, out_dir=out_dir)
        if cfg.seeds_path is not None and not cfg.seeds_path.exists():
            print(f"Seeds file not found: {cfg.seeds_path}", file=sys.stderr)
            return 2
        log.info("Running %s with team %s (seed %d)", cfg.env, cfg.team_specs, cfg.run.seed)
        result = run_experiment(cfg)
    except NeurogenError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"Invalid config: {exc}", file=sys.stderr)
        return 1
    print_summary(result.report)
    print(f"Artifacts written to {result.out_dir}")
    return 0


def _report(paths: list[Path], output: Path | None, *, samples: int) -> int:
    for path in paths:
        if not path.exists():
            print(f"Codebase not found: {path}", file=sys.stderr)
            return 2
    try:
        report = emit_report(paths, output, samples=samples)
    except NeurogenError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print_summary(report)
    if report["best"] is None:
        print("No entries found", file=sys.stderr)
        return 1
    return 0


def _program_from_text(text: str) -> Program:
    program = tokenize(text)
    if text.strip() and not program:
        raise ValueError(f"no program tokens in {text!r}")
    return program


def _eval(env_name: str, text: str, *, episodes: int, seed: int, language: LanguageSettings) -> int:
    try:
        env = make_environment(env_name)
        program = _program_from_text(text)
        lang_cfg = language.for_environment(env.spec)
    except (KeyError, ValueError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) else exc
        print(f"Error: {message}", file=sys.stderr)
        return 1
    results = evaluate_episodes(program, env, lang_cfg, np.random.default_rng(seed), episodes)
    rewards = [result.total_reward for result in results]
    summary = {
        "env": env.spec.name,
        "program": program.text,
        "episodes": episodes,
        "mean_reward": float(np.mean(rewards)),
        "rewards": rewards,
        "aborted": sum(result.aborted for result in results),
    }
    print(yaml.safe_dump(summary, sort_keys=False), end="")
    return 0


def _prune(text: str) -> int:
    try:
        program = _program_from_text(text)
    except ValueError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 1
    print(prune(program).text)
    return 0


if __name__ == "__main__":
    main()

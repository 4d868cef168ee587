from __future__ import annotations

import dataclasses
import json
import logging
import os
import re
import types
import typing
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Tuple

from tapelang import LanguageConfig

from neurogen.errors import ConfigError, TeamSpecError
from neurogen.neural.trainer import TrainerConfig
from neurogen.pomdp.registry import canonical_name
from neurogen.pomdp.spaces import EnvSpec
from neurogen.scrum.loop import RunConfig, StoppingConfig
from neurogen.scrum.teams import parse_developer_spec, resolve_team_specs

log = logging.getLogger(__name__)
_ENV_VAR_PATTERN = re.compile(r"\$(\w+)|\$\{([^}]+)\}")

# taxi runs default to a fixed sprint budget per developer with trend stopping off
TAXI_SPRINTS_PER_DEVELOPER = 100000


@dataclass(frozen=True)
class LanguageSettings:
    tape_len: int = 100
    pass_op_budget: int = 5000

    def for_environment(self, spec: EnvSpec) -> LanguageConfig:
        return LanguageConfig(
            obs_cell_count=spec.obs_cell_count, tape_len=self.tape_len, pass_op_budget=self.pass_op_budget
        )


@dataclass(frozen=True)
class ScoringConfig:
    top: int = 100
    samples: int = 100

    def __post_init__(self):
        if self.top < 1 or self.samples < 1:
            raise ValueError("top and samples must be positive")


@dataclass(frozen=True)
class ExperimentConfig:
    env: str
    team: str | Tuple[str, ...]
    seeds: str | None = None
    out_dir: str = "runs"
    run: RunConfig = field(default_factory=RunConfig)
    language: LanguageSettings = field(default_factory=LanguageSettings)
    neural: TrainerConfig = field(default_factory=TrainerConfig)
    scoring: ScoringConfig = field(default_factory=ScoringConfig)
    config_dir: Path | None = field(default=None, compare=False)

    @property
    def team_specs(self) -> list[str]:
        return resolve_team_specs(self.team)

    def resolve_path(self, value: str) -> Path:
        candidate = Path(value)
        if not candidate.is_absolute() and self.config_dir is not None:
            candidate = self.config_dir / candidate
        return candidate

    @property
    def seeds_path(self) -> Path | None:
        return self.resolve_path(self.seeds) if self.seeds else None

    @property
    def out_path(self) -> Path:
        return self.resolve_path(self.out_dir)

    def with_overrides(
        self, *, seed: int | None = None, time_limit: float | None = None, out_dir: str | None = None
    ) -> "ExperimentConfig":
        run = self.run
        if seed is not None:
            run = dataclasses.replace(run, seed=seed)
        if time_limit is not None:
            run = dataclasses.replace(run, time_limit=time_limit)
        cfg = dataclasses.replace(self, run=run)
        if out_dir is not None:
            # relative to where the command runs, not to the config file
            cfg = dataclasses.replace(cfg, out_dir=str(Path(out_dir).absolute()))
        return cfg

    def to_dict(self) -> dict[str, Any]:
        data = {
            name: _section_to_dict(getattr(self, name))
            for name in ("env", "team", "seeds", "out_dir", "run", "language", "neural", "scoring")
        }
        if isinstance(self.team, tuple):
            data["team"] = list(self.team)
        return data


def _section_to_dict(value: Any) -> Any:
    if dataclasses.is_dataclass(value):
        return {f.name: _section_to_dict(getattr(value, f.name)) for f in dataclasses.fields(value)}
    return value


def _substitute(value: Any, env: Mapping[str, str], path: str, missing: dict[str, str]) -> Any:
    """Replaces $VAR and ${VAR} in string values; ``missing`` maps each unset variable to the first field using it."""
    if isinstance(value, dict):
        return {key: _substitute(item, env, _join(path, key), missing) for key, item in value.items()}
    if isinstance(value, list):
        return [_substitute(item, env, f"{path}[{i}]", missing) for i, item in enumerate(value)]
    if not isinstance(value, str):
        return value

    def lookup(match: re.Match[str]) -> str:
        name = match.group(1) or match.group(2)
        if name not in env:
            missing.setdefault(name, path)
        return env.get(name, "")

    return _ENV_VAR_PATTERN.sub(lookup, value)


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _check_value(value: Any, hint: Any, path: str) -> Any:
    """Checks a JSON scalar against a field annotation, widening ints to floats where a float is expected."""
    options = typing.get_args(hint) if isinstance(hint, types.UnionType) else (hint,)
    if value is None:
        if type(None) in options:
            return None
        raise ConfigError(path, "must not be null")
    if bool in options and isinstance(value, bool):
        return value
    if int in options and isinstance(value, int) and not isinstance(value, bool):
        return value
    if float in options and isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if str in options and isinstance(value, str):
        return value
    expected = " or ".join(getattr(option, "__name__", str(option)) for option in options)
    raise ConfigError(path, f"expected {expected}, got {type(value).__name__}")


def _parse_section(cls: type, data: Any, path: str, *, nested: Mapping[str, Any] | None = None) -> Any:
    """Builds a frozen settings dataclass from a JSON object, rejecting unknown keys."""
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(path, "expected an object")
    hints = typing.get_type_hints(cls)
    names = {f.name for f in dataclasses.fields(cls) if f.init}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ConfigError(_join(path, unknown[0]), "unknown field")

    kwargs: dict[str, Any] = {}
    for key, value in data.items():
        if not nested or key not in nested:
            kwargs[key] = _check_value(value, hints[key], _join(path, key))
    kwargs.update(nested or {})
    try:
        return cls(**kwargs)
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc


def _parse_team(raw: Any) -> str | Tuple[str, ...]:
    if isinstance(raw, str):
        try:
            resolve_team_specs(raw)
        except TeamSpecError as exc:
            raise ConfigError("team", str(exc)) from exc
        return raw
    if not isinstance(raw, list) or not raw:
        raise ConfigError("team", "expected a preset name or a nonempty list of developer specs")
    for idx, spec in enumerate(raw):
        if not isinstance(spec, str):
            raise ConfigError(f"team[{idx}]", "expected a developer spec string")
        try:
            parse_developer_spec(spec)
        except TeamSpecError as exc:
            raise ConfigError(f"team[{idx}]", str(exc)) from exc
    return tuple(raw)


def parse_config(raw: Any, *, config_dir: Path | None = None) -> ExperimentConfig:
    """Builds an :class:`ExperimentConfig` from a decoded JSON document."""
    if not isinstance(raw, dict):
        raise ConfigError("", "config must be a JSON object")
    known = {"env", "team", "seeds", "out_dir", "run", "language", "neural", "scoring"}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(unknown[0], "unknown field")
    for required in ("env", "team"):
        if required not in raw:
            raise ConfigError(required, "required field is missing")

    env = _check_value(raw["env"], str, "env")
    try:
        canonical = canonical_name(env)
    except KeyError as exc:
        raise ConfigError("env", exc.args[0]) from exc
    team = _parse_team(raw["team"])

    run_raw = raw.get("run") or {}
    if not isinstance(run_raw, dict):
        raise ConfigError("run", "expected an object")
    stopping_raw = run_raw.get("stopping")
    run_raw = dict(run_raw)
    if canonical == "taxi":
        run_raw.setdefault("n_max", TAXI_SPRINTS_PER_DEVELOPER * len(resolve_team_specs(team)))
        if stopping_raw is None:
            stopping_raw = {}
        if isinstance(stopping_raw, dict):
            stopping_raw = {"enabled": False, **stopping_raw}
    stopping = _parse_section(StoppingConfig, stopping_raw, "run.stopping")
    run = _parse_section(RunConfig, run_raw, "run", nested={"stopping": stopping})

    seeds = raw.get("seeds")
    return ExperimentConfig(
        env=env,
        team=team,
        seeds=_check_value(seeds, str | None, "seeds") if seeds is not None else None,
        out_dir=_check_value(raw.get("out_dir", "runs"), str, "out_dir"),
        run=run,
        language=_parse_section(LanguageSettings, raw.get("language"), "language"),
        neural=_parse_section(TrainerConfig, raw.get("neural"), "neural"),
        scoring=_parse_section(ScoringConfig, raw.get("scoring"), "scoring"),
        config_dir=config_dir,
    )


def load_config(path: Path) -> Tuple[ExperimentConfig, Iterable[str]]:
    """Load an experiment config, returning it with warnings about unset environment variables."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"failed to parse {path.name}: {exc}") from exc

    warnings: list[str] = []
    missing: dict[str, str] = {}
    env = {**os.environ}
    env.setdefault("configDir", str(path.parent.absolute()))
    raw = _substitute(raw, env, "", missing)
    for var, field in sorted(missing.items()):
        warning = f"{path.name}: {field or '<root>'}: environment variable '{var}' is not set; using an empty string"
        warnings.append(warning)
        log.warning(warning)

    return parse_config(raw, config_dir=path.parent), warnings

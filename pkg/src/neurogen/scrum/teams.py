from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from neurogen.developer import Developer, DummyDeveloper
from neurogen.errors import TeamSpecError
from neurogen.genetic.developer import GeneticConfig, GeneticDeveloper
from neurogen.neural.developer import NeuralDeveloper
from neurogen.neural.trainer import TrainerConfig

TEAM_PRESETS: dict[str, tuple[str, ...]] = {
    "small": ("lstm(50,50)", "gen(0.2,0.2)", "dummy"),
    "large": (
        "lstm(10)",
        "lstm(50)",
        "lstm(256)",
        "lstm(10,10)",
        "lstm(50,50)",
        "lstm(256,256)",
        "gen(1/3,0.2)",
        "gen(1/6,0.2)",
        "gen(1/12,0.2)",
        "dummy",
    ),
    "neural": ("lstm(50,50)", "dummy"),
    "genetic": ("gen(0.2,0.2)", "dummy"),
}

_RECURRENT_RE = re.compile(r"^(lstm|gru)\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)$")
_GENETIC_RE = re.compile(r"^gen\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)$")


@dataclass(frozen=True)
class DeveloperSpec:
    kind: str
    label: str
    hidden_sizes: tuple[int, ...] = ()
    cell: str = "lstm"
    genetic: GeneticConfig | None = None


def _parse_number(text: str, spec: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise TeamSpecError(f"{spec!r}: {text!r} is not a number") from exc


def parse_developer_spec(spec: str) -> DeveloperSpec:
    """Parses ``lstm(h1[,h2...])``, ``gru(h1[,h2...])``, ``gen(p_ind,epsilon)`` or ``dummy``."""
    text = re.sub(r"\s+", "", spec).lower()
    if text == "dummy":
        return DeveloperSpec("dummy", text)
    if match := _RECURRENT_RE.match(text):
        sizes = tuple(int(size) for size in match.group(2).split(","))
        if any(size < 1 for size in sizes):
            raise TeamSpecError(f"{spec!r}: hidden sizes must be positive")
        return DeveloperSpec("neural", text, hidden_sizes=sizes, cell=match.group(1))
    if match := _GENETIC_RE.match(text):
        p_ind = _parse_number(match.group(1), spec)
        epsilon = _parse_number(match.group(2), spec)
        try:
            return DeveloperSpec("genetic", text, genetic=GeneticConfig(p_ind=p_ind, epsilon=epsilon))
        except ValueError as exc:
            raise TeamSpecError(f"{spec!r}: {exc}") from exc
    raise TeamSpecError(f"{spec!r} is not a developer spec (expected lstm(...), gru(...), gen(p_ind,epsilon) or dummy)")


def resolve_team_specs(team: str | Sequence[str]) -> list[str]:
    if isinstance(team, str):
        try:
            return list(TEAM_PRESETS[team.strip().lower()])
        except KeyError:
            known = ", ".join(sorted(TEAM_PRESETS))
            raise TeamSpecError(f"unknown team preset {team!r} (known: {known})") from None
    return list(team)


def build_team(
    team: str | Sequence[str],
    *,
    trainer_config: TrainerConfig | None = None,
    seed: int = 0,
    reward_span: float = 100.0,
) -> list[Developer]:
    """
    Builds developers in the given order. Neural developers get distinct parameter seeds derived from ``seed``;
    repeated specs get ``#2``, ``#3``... suffixes so every developer id is unique.
    """
    specs = [parse_developer_spec(spec) for spec in resolve_team_specs(team)]
    if not specs:
        raise TeamSpecError("a team needs at least one developer")

    seen: Counter[str] = Counter()
    developers: list[Developer] = []
    for position, spec in enumerate(specs):
        seen[spec.label] += 1
        developer_id = spec.label if seen[spec.label] == 1 else f"{spec.label}#{seen[spec.label]}"
        if spec.kind == "neural":
            developers.append(
                NeuralDeveloper(
                    developer_id,
                    spec.hidden_sizes,
                    trainer_config,
                    cell=spec.cell,
                    seed=seed * 1000 + position,
                    reward_span=reward_span,
                )
            )
        elif spec.kind == "genetic":
            developers.append(GeneticDeveloper(developer_id, spec.genetic))
        else:
            developers.append(DummyDeveloper(developer_id))
    return developers


def can_generate(team: Sequence[Developer]) -> bool:
    """True when some developer writes programs without needing existing ones."""
    return any(isinstance(developer, NeuralDeveloper) for developer in team)

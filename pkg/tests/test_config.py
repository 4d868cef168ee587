import json
from pathlib import Path

import pytest

from neurogen.config import TAXI_SPRINTS_PER_DEVELOPER, ExperimentConfig, load_config, parse_config
from neurogen.errors import ConfigError


def _write(tmp_path: Path, data) -> Path:
    path = tmp_path / "experiment.json"
    path.write_text(json.dumps(data))
    return path


def test_minimal_config_uses_defaults():
    cfg = parse_config({"env": "cartpole", "team": "small"})
    assert cfg.team_specs == ["lstm(50,50)", "gen(0.2,0.2)", "dummy"]
    assert cfg.run.n_max == 20000
    assert cfg.run.stopping.enabled
    assert cfg.language.tape_len == 100
    assert cfg.language.pass_op_budget == 5000
    assert cfg.scoring.samples == 100
    assert cfg.seeds_path is None


def test_full_config(tmp_path: Path):
    path = _write(
        tmp_path,
        {
            "env": "MountainCarContinuous-v0",
            "team": ["lstm(10)", "gen(1/6,0.2)", "dummy"],
            "seeds": "seeds.txt",
            "out_dir": "out",
            "run": {"n_max": 50, "time_limit": 30, "seed": 7, "stopping": {"window": 10, "patience": 5}},
            "language": {"tape_len": 50},
            "neural": {"learning_rate": 0.01, "reward_scale": 2},
            "scoring": {"top": 5, "samples": 10},
        },
    )
    cfg, warnings = load_config(path)
    assert warnings == []
    assert cfg.team == ("lstm(10)", "gen(1/6,0.2)", "dummy")
    assert cfg.run.time_limit == 30.0
    assert isinstance(cfg.run.time_limit, float)
    assert cfg.run.stopping.window == 10
    assert cfg.neural.reward_scale == 2.0
    assert cfg.language.tape_len == 50
    assert cfg.seeds_path == tmp_path / "seeds.txt"
    assert cfg.out_path == tmp_path / "out"


def test_env_vars_are_substituted(tmp_path: Path, monkeypatch):
    monkeypatch.setenv("NEUROGEN_OUT", "results")
    raw = {"env": "cartpole", "team": "neural", "out_dir": "${NEUROGEN_OUT}/$MISSING_VAR_X"}
    path = _write(tmp_path, {**raw, "seeds": "$configDir/seeds.txt"})
    cfg, warnings = load_config(path)
    assert cfg.out_dir == "results/"
    assert cfg.seeds == f"{tmp_path.absolute()}/seeds.txt"
    assert len(warnings) == 1
    assert "MISSING_VAR_X" in warnings[0]
    assert warnings[0].startswith("experiment.json: out_dir:")


@pytest.mark.parametrize(
    ("raw", "path"),
    [
        ({"team": "small"}, "env"),
        ({"env": "cartpole"}, "team"),
        ({"env": "pong", "team": "small"}, "env"),
        ({"env": "cartpole", "team": "huge"}, "team"),
        ({"env": "cartpole", "team": ["dummy", "lstm()"]}, "team[1]"),
        ({"env": "cartpole", "team": []}, "team"),
        ({"env": "cartpole", "team": "small", "extra": 1}, "extra"),
        ({"env": "cartpole", "team": "small", "run": {"nmax": 5}}, "run.nmax"),
        ({"env": "cartpole", "team": "small", "run": {"n_max": "many"}}, "run.n_max"),
        ({"env": "cartpole", "team": "small", "run": {"n_max": 1.5}}, "run.n_max"),
        ({"env": "cartpole", "team": "small", "run": {"stopping": {"enabled": 1}}}, "run.stopping.enabled"),
        ({"env": "cartpole", "team": "small", "run": {"stopping": {"window": 1}}}, "run.stopping"),
        ({"env": "cartpole", "team": "small", "neural": {"pqt_k": None}}, "neural.pqt_k"),
        ({"env": "cartpole", "team": "small", "scoring": []}, "scoring"),
        ({"env": "cartpole", "team": "small", "scoring": {"top": 0}}, "scoring"),
    ],
)
def test_invalid_configs_name_the_field(raw, path):
    with pytest.raises(ConfigError) as excinfo:
        parse_config(raw)
    assert excinfo.value.path == path


def test_malformed_json(tmp_path: Path):
    path = tmp_path / "broken.json"
    path.write_text("{")
    with pytest.raises(ConfigError):
        load_config(path)


def test_missing_file(tmp_path: Path):
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "absent.json")


def test_taxi_defaults():
    cfg = parse_config({"env": "Taxi-v3", "team": ["lstm(10)", "dummy"]})
    assert cfg.run.n_max == 2 * TAXI_SPRINTS_PER_DEVELOPER
    assert not cfg.run.stopping.enabled

    explicit = parse_config({"env": "taxi", "team": "small", "run": {"n_max": 10, "stopping": {"enabled": True}}})
    assert explicit.run.n_max == 10
    assert explicit.run.stopping.enabled


def test_to_dict_round_trip():
    cfg = parse_config(
        {
            "env": "taxi",
            "team": ["gru(8)", "dummy"],
            "run": {"seed": 3, "stopping": {"half_life": 4.5}},
            "neural": {"pqt_k": 3},
        }
    )
    data = cfg.to_dict()
    assert data["team"] == ["gru(8)", "dummy"]
    assert json.loads(json.dumps(data)) == data
    assert parse_config(data) == cfg


def test_overrides(tmp_path: Path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    cfg = parse_config({"env": "cartpole", "team": "small"}, config_dir=tmp_path / "configs")
    changed = cfg.with_overrides(seed=9, time_limit=1.5, out_dir="elsewhere")
    assert changed.run.seed == 9
    assert changed.run.time_limit == 1.5
    assert changed.out_path == tmp_path / "elsewhere"
    assert cfg.run.seed == 0
    assert cfg.out_path == tmp_path / "configs" / "runs"
    assert cfg.with_overrides() == cfg


def test_config_is_frozen():
    cfg = ExperimentConfig(env="cartpole", team="small")
    with pytest.raises(AttributeError):
        cfg.env = "taxi"

import csv
import json
from pathlib import Path

import pytest
import yaml

from tapelang import Program

from neurogen import __version__
from neurogen.__main__ import _eval, _prune, _report, _run, main
from neurogen.codebase import ScoredEntry, read_entries, write_entries
from neurogen.config import LanguageSettings
from neurogen.experiment import read_seeds


def _experiment(tmp_path: Path, *, team=("dummy",), seeds: str | None = "c[-]b1!\n", **extra) -> Path:
    config = {
        "env": "cartpole",
        "team": list(team),
        "out_dir": "out",
        "run": {"n_max": 10, "seed": 1},
        "scoring": {"top": 2, "samples": 3},
        **extra,
    }
    if seeds is not None:
        (tmp_path / "seeds.txt").write_text(seeds)
        config["seeds"] = "seeds.txt"
    path = tmp_path / "experiment.json"
    path.write_text(json.dumps(config))
    return path


def test_run_writes_all_artifacts(tmp_path, capsys):
    exit_code = _run(_experiment(tmp_path), seed=None, time_limit=None, out_dir=None)
    captured = capsys.readouterr()

    assert exit_code == 0
    out = tmp_path / "out"
    lines = (out / "codebase.jsonl").read_text().splitlines()
    assert len(lines) == 11
    assert json.loads(lines[0])["author"] == "human"
    assert [json.loads(line)["sprint"] for line in lines] == list(range(11))

    with (out / "sprints.csv").open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 10
    assert {row["developer"] for row in rows} == {"dummy"}

    # the single program already has 11 samples
    assert read_entries(out / "scoring.jsonl") == []
    report = json.loads((out / "report.json").read_text())
    assert report["run"]["sprints"] == 10
    assert report["run"]["stop_reason"] == "n_max"
    assert report["best"]["program"] == "c[-]b1!"
    assert report["best"]["samples"] == 11

    summary = yaml.safe_load(captured.out.split("Artifacts written to")[0])
    assert summary["best_program"] == "c[-]b1!"
    assert f"Artifacts written to {out}" in captured.out


def test_runs_with_same_seed_write_identical_reports(tmp_path):
    config = _experiment(tmp_path, team=("gen(0.2,0.2)", "dummy"), seeds="c[-]b1!\nd1\n+[-]\n")
    assert _run(config, seed=5, time_limit=None, out_dir=str(tmp_path / "first")) == 0
    assert _run(config, seed=5, time_limit=None, out_dir=str(tmp_path / "second")) == 0
    first = (tmp_path / "first" / "report.json").read_bytes()
    assert first == (tmp_path / "second" / "report.json").read_bytes()
    assert json.loads(first)["run"]["seed"] == 5


def test_genetic_team_without_seeds_fails(tmp_path, capsys):
    config = _experiment(tmp_path, team=("gen(0.2,0.2)", "dummy"), seeds=None)
    assert _run(config, seed=None, time_limit=None, out_dir=None) == 1
    assert "DeadlockedTeam" in capsys.readouterr().err
    assert not (tmp_path / "out" / "sprints.csv").exists()
    assert not (tmp_path / "out" / "sprints.csv").exists()


def test_run_missing_files(tmp_path, capsys):
    assert _run(tmp_path / "absent.json", seed=None, time_limit=None, out_dir=None) == 2
    config = _experiment(tmp_path)
    (tmp_path / "seeds.txt").unlink()
    assert _run(config, seed=None, time_limit=None, out_dir=None) == 2
    assert "Seeds file not found" in capsys.readouterr().err


def test_run_invalid_config(tmp_path, capsys):
    config = _experiment(tmp_path, scoring={"top": "many"})
    assert _run(config, seed=None, time_limit=None, out_dir=None) == 1
    assert "scoring.top" in capsys.readouterr().err


def test_read_seeds_drops_unknown_characters(tmp_path, caplog):
    path = tmp_path / "seeds.txt"
    path.write_text("a+\n\n  b-  \nxyz\nae>>>>>34+@5\n")
    assert read_seeds(path) == [Program("a+"), Program("b-"), Program("ae>>>>>34+")]
    assert "no program tokens" in caplog.text


def test_report_merges_codebases(tmp_path, capsys):
    first, second = tmp_path / "one.jsonl", tmp_path / "two.jsonl"
    write_entries(first, [ScoredEntry(Program("a"), 1.0, "dummy")])
    write_entries(second, [ScoredEntry(Program("a"), 3.0, "dummy", sprint=1)])
    assert _report([first, second], None, samples=2) == 0
    summary = yaml.safe_load(capsys.readouterr().out)
    assert summary["best_mean_reward"] == 2.0
    assert summary["samples"] == 2
    assert json.loads((tmp_path / "report.json").read_text())["best"]["mean_reward"] == 2.0


def test_report_on_empty_codebase(tmp_path, capsys):
    path = tmp_path / "codebase.jsonl"
    path.write_text("")
    assert _report([path], None, samples=100) == 1
    assert "No entries found" in capsys.readouterr().err


def test_report_missing_or_malformed(tmp_path, capsys):
    assert _report([tmp_path / "absent.jsonl"], None, samples=100) == 2
    path = tmp_path / "broken.jsonl"
    path.write_text("{not json\n")
    assert _report([path], None, samples=100) == 1
    assert "line 1" in capsys.readouterr().err


def test_eval_prints_episode_rewards(capsys):
    assert _eval("taxi", "", episodes=3, seed=0, language=LanguageSettings()) == 0
    result = yaml.safe_load(capsys.readouterr().out)
    assert result["env"] == "taxi"
    assert result["rewards"] == [-200.0, -200.0, -200.0]
    assert result["mean_reward"] == -200.0
    assert result["aborted"] == 0


def test_eval_counts_aborted_episodes(capsys):
    assert _eval("CartPole-v1", "+[]", episodes=2, seed=0, language=LanguageSettings(pass_op_budget=100)) == 0
    assert yaml.safe_load(capsys.readouterr().out)["aborted"] == 2


@pytest.mark.parametrize(("env", "program"), [("pong", ""), ("cartpole", "xyz"), ("taxi", "   ?")])
def test_eval_rejects_bad_input(env, program, capsys):
    assert _eval(env, program, episodes=1, seed=0, language=LanguageSettings()) == 1
    assert capsys.readouterr().err.startswith("Error:")


def test_prune_command(capsys):
    assert _prune("ae>>>>>34+") == 0
    assert capsys.readouterr().out == "e>>>>>4+\n"
    assert _prune("ae>>>>>34+ @5") == 0
    assert capsys.readouterr().out == "e>>>>>4+\n"
    assert _prune("xyz") == 1
    assert "no program tokens" in capsys.readouterr().err


def test_main_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["prune", "--", "+-a"])
    assert excinfo.value.code == 0
    assert capsys.readouterr().out == "a\n"

    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 2

    with pytest.raises(SystemExit) as excinfo:
        main(["report", str(tmp_path / "absent.jsonl")])
    assert excinfo.value.code == 2


def test_version(capsys):
    main(["--version"])
    assert capsys.readouterr().out.strip() == __version__

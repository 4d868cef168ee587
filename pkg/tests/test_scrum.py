import itertools
from pathlib import Path

import numpy as np
import pytest

from tapelang import LanguageConfig, Program

from neurogen.codebase import Codebase, ScoredEntry
from neurogen.developer import Developer, DummyDeveloper, Proposal
from neurogen.errors import DeadlockedTeam, TeamSpecError
from neurogen.genetic.developer import GeneticDeveloper
from neurogen.neural.developer import NeuralDeveloper
from neurogen.pomdp.cartpole import CartPole
from neurogen.pomdp.taxi import Taxi
from neurogen.scrum.loop import RunConfig, StoppingConfig, StopReason, instant_scrum
from neurogen.scrum.sprint_log import SprintLog, SprintRecord, read_sprint_log
from neurogen.scrum.teams import TEAM_PRESETS, build_team, can_generate, parse_developer_spec, resolve_team_specs

NO_STOPPING = StoppingConfig(enabled=False)


class ScriptedDeveloper(Developer):
    """Always proposes the same program; optionally waits for a non-empty codebase."""

    def __init__(self, developer_id: str, text: str, *, needs_codebase: bool = False):
        super().__init__(developer_id)
        self.program = Program(text)
        self.needs_codebase = needs_codebase
        self.rewards: list[float] = []

    def propose(self, codebase, rng):
        if self.needs_codebase and not codebase:
            return None
        return Proposal(self.program, operator="scripted")

    def update(self, proposal, reward, codebase):
        assert proposal.program in codebase
        self.rewards.append(reward)


def _run(team, codebase=None, *, env=None, n_max=10, stopping=NO_STOPPING, **kwargs):
    env = env or CartPole()
    lang_cfg = LanguageConfig(obs_cell_count=env.spec.obs_cell_count)
    run_cfg = RunConfig(n_max=n_max, stopping=stopping, log_every=1)
    codebase = codebase if codebase is not None else Codebase()
    return instant_scrum(team, codebase, env, lang_cfg, run_cfg, np.random.default_rng(0), **kwargs)


@pytest.mark.parametrize(
    ("spec", "kind", "label"),
    [
        ("LSTM( 50, 50 )", "neural", "lstm(50,50)"),
        ("gru(8)", "neural", "gru(8)"),
        ("gen(1/3, 0.2)", "genetic", "gen(1/3,0.2)"),
        ("dummy", "dummy", "dummy"),
    ],
)
def test_parse_developer_spec(spec, kind, label):
    parsed = parse_developer_spec(spec)
    assert parsed.kind == kind
    assert parsed.label == label


def test_parse_developer_spec_values():
    assert parse_developer_spec("lstm(10,256)").hidden_sizes == (10, 256)
    assert parse_developer_spec("gru(8)").cell == "gru"
    genetic = parse_developer_spec("gen(1/12,0.2)").genetic
    assert genetic.p_ind == pytest.approx(1 / 12)
    assert genetic.epsilon == 0.2


@pytest.mark.parametrize("spec", ["lstm()", "lstm(0)", "gen(2,0.2)", "gen(a,b)", "gen(1/0,0.2)", "cnn(5)", ""])
def test_invalid_developer_specs(spec):
    with pytest.raises(TeamSpecError):
        parse_developer_spec(spec)


def test_team_presets():
    assert resolve_team_specs("Small") == ["lstm(50,50)", "gen(0.2,0.2)", "dummy"]
    assert len(TEAM_PRESETS["large"]) == 10
    with pytest.raises(TeamSpecError):
        resolve_team_specs("huge")


def test_build_team_kinds_and_unique_ids():
    team = build_team(["lstm(4)", "gen(0.2,0.2)", "dummy", "dummy", "lstm(4)"])
    assert [d.id for d in team] == ["lstm(4)", "gen(0.2,0.2)", "dummy", "dummy#2", "lstm(4)#2"]
    assert isinstance(team[0], NeuralDeveloper)
    assert isinstance(team[1], GeneticDeveloper)
    assert isinstance(team[2], DummyDeveloper)
    # neural developers at different positions get different parameters
    first, last = team[0].policy.head.weight, team[4].policy.head.weight
    assert not np.array_equal(first.detach().numpy(), last.detach().numpy())
    assert can_generate(team)
    assert not can_generate(team[1:4])
    with pytest.raises(TeamSpecError):
        build_team([])


def test_dummy_resubmits_seed_program():
    seed = Program("c[-]b1!")
    codebase = Codebase([ScoredEntry(seed, 10.0, "human")])
    result = _run([DummyDeveloper()], codebase, n_max=5)
    assert result.stop_reason is StopReason.N_MAX
    assert result.sprints == 5
    assert len(codebase) == 6
    assert codebase.distinct_count == 1
    assert [entry.sprint for entry in codebase] == [0, 1, 2, 3, 4, 5]
    assert codebase.stats(seed).count == 6


def test_team_that_cannot_write_deadlocks():
    team = build_team(["gen(0.2,0.2)", "dummy"])
    with pytest.raises(DeadlockedTeam):
        _run(team)


def test_developers_take_turns():
    team = [ScriptedDeveloper(name, text) for name, text in (("x", "0"), ("y", "1"), ("z", "2"))]
    result = _run(team, n_max=7)
    assert result.sprints == 7
    assert [entry.author for entry in result.codebase] == ["x", "y", "z", "x", "y", "z", "x"]
    assert [record.sprint for record in result.log] == list(range(1, 8))
    assert [len(d.rewards) for d in team] == [3, 2, 2]


def test_skipped_developers_do_not_use_sprints():
    waiter = ScriptedDeveloper("waiter", "a", needs_codebase=True)
    writer = ScriptedDeveloper("writer", "b")
    result = _run([waiter, writer], n_max=4)
    assert [entry.author for entry in result.codebase] == ["writer", "waiter", "writer", "waiter"]


def test_sprints_continue_from_codebase():
    codebase = Codebase([ScoredEntry(Program("a"), 1.0, "human", sprint=10)])
    result = _run([ScriptedDeveloper("x", "b")], codebase, n_max=3)
    assert [record.sprint for record in result.log] == [11, 12, 13]


def test_records_match_codebase_entries():
    team = [ScriptedDeveloper("x", "c[-]b1!"), ScriptedDeveloper("y", "+[]")]
    result = _run(team, n_max=4)
    for record, entry in zip(result.log, result.codebase):
        assert record.reward == entry.reward
        assert record.developer == entry.author
        assert record.aborted == entry.aborted
        assert record.length == len(entry.program)
    assert result.log.rewards() == [entry.reward for entry in result.codebase]
    assert [entry.aborted for entry in result.codebase] == [False, True, False, True]


def test_sprint_log_streams_csv(tmp_path: Path):
    path = tmp_path / "sprints.csv"
    seed = Codebase([ScoredEntry(Program("a+"), 1.0, "human")])
    team = [ScriptedDeveloper("x", "b"), DummyDeveloper()]
    with SprintLog(path) as sprint_log:
        result = _run(team, seed, n_max=6, sprint_log=sprint_log)
    assert path.read_text().splitlines()[0] == "sprint,developer,operator,reward,length,aborted"
    assert read_sprint_log(path) == result.log.records
    assert read_sprint_log(path)[1].operator is None


def test_sprint_log_rejects_out_of_order_records():
    sprint_log = SprintLog()
    sprint_log.append(SprintRecord(2, "x", None, 0.0, 1, False))
    with pytest.raises(ValueError):
        sprint_log.append(SprintRecord(2, "x", None, 0.0, 1, False))


def test_time_limit_with_fake_clock():
    ticks = itertools.count(0.0, 1.0)
    run_cfg = RunConfig(n_max=100, time_limit=3.0, stopping=NO_STOPPING)
    env = CartPole()
    result = instant_scrum(
        [ScriptedDeveloper("x", "a")],
        Codebase(),
        env,
        LanguageConfig(obs_cell_count=env.spec.obs_cell_count),
        run_cfg,
        np.random.default_rng(0),
        clock=lambda: next(ticks),
    )
    assert result.stop_reason is StopReason.TIME_LIMIT
    assert result.sprints == 3


def test_flat_rewards_stop_early():
    # the empty program never moves the passenger: every episode scores -200
    codebase = Codebase([ScoredEntry(Program(""), -200.0, "human")])
    stopping = StoppingConfig(enabled=True, window=5, patience=3)
    result = _run([DummyDeveloper()], codebase, env=Taxi(), n_max=100, stopping=stopping)
    assert result.stop_reason is StopReason.EARLY_STOP
    assert result.sprints == 8


def test_empty_team_is_rejected():
    with pytest.raises(ValueError):
        _run([])


@pytest.mark.parametrize(
    "kwargs",
    [{"n_max": 0}, {"time_limit": 0.0}, {"log_every": 0}],
)
def test_run_config_validation(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs)


@pytest.mark.parametrize("kwargs", [{"window": 1}, {"patience": 0}, {"half_life": 0.0}])
def test_stopping_config_validation(kwargs):
    with pytest.raises(ValueError):
        StoppingConfig(**kwargs)

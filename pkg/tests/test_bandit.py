import numpy as np
import pytest

from neurogen.genetic.bandit import BanditState, bandit_update


def _tried(epsilon: float, best: int, arms: int = 7) -> BanditState:
    bandit = BanditState(epsilon=epsilon, arms=arms)
    for arm in range(arms):
        bandit_update(bandit, arm, 10.0 if arm == best else 1.0)
    return bandit


def test_greedy_arm_gets_exploitation_share():
    bandit = _tried(0.2, best=4)
    assert bandit.greedy_arm == 4
    assert bandit.theta[4] == pytest.approx(0.2 / 7 + 0.8)
    assert bandit.theta[4] == pytest.approx(0.82857, abs=1e-5)
    others = np.delete(bandit.theta, 4)
    assert np.allclose(others, 0.2 / 7)
    assert bandit.theta.sum() == pytest.approx(1.0)


def test_full_exploration_is_uniform():
    bandit = _tried(1.0, best=2)
    assert np.allclose(bandit.theta, 1 / 7)


def test_value_is_mean_reward():
    bandit = BanditState(epsilon=0.2)
    for reward in (1.0, 2.0, 3.0):
        bandit_update(bandit, 0, reward)
    assert bandit.values[0] == 2.0
    assert bandit.counts[0] == 3


def test_untried_arms_share_the_greedy_mass():
    bandit = BanditState(epsilon=0.2)
    assert np.allclose(bandit.theta, 1 / 7)
    bandit_update(bandit, 0, 100.0)
    assert bandit.theta[0] == pytest.approx(0.2 / 7)
    assert np.allclose(bandit.theta[1:], 0.2 / 7 + 0.8 / 6)


def test_theta_stays_a_probability_vector():
    rng = np.random.default_rng(3)
    bandit = BanditState(epsilon=0.1)
    for _ in range(200):
        bandit_update(bandit, int(rng.integers(7)), float(rng.normal()))
        assert bandit.theta.sum() == pytest.approx(1.0)
        assert np.all(bandit.theta >= 0.1 / 7 - 1e-12)


def test_select_follows_theta():
    bandit = _tried(0.0, best=5)
    rng = np.random.default_rng(0)
    assert {bandit.select(rng) for _ in range(100)} == {5}


def test_invalid_arguments():
    with pytest.raises(ValueError):
        BanditState(epsilon=1.5)
    with pytest.raises(ValueError):
        bandit_update(BanditState(epsilon=0.2), 7, 1.0)


def test_converges_to_best_arm():
    means = np.array([0.0, 0.5, 1.0, 3.0, 1.5, 2.0, 2.5])
    hits = 0
    for trial in range(20):
        rng = np.random.default_rng(trial)
        bandit = BanditState(epsilon=0.2)
        for _ in range(10000):
            arm = bandit.select(rng)
            bandit_update(bandit, arm, float(rng.normal(means[arm], 1.0)))
        hits += bandit.greedy_arm == 3
    assert hits >= 19

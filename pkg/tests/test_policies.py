import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import chisquare
from sklearn.base import clone

from comomab.core import Action, ActionSet
from comomab.envs import BernoulliEnvironment
from comomab.exceptions import ConfigError, FeedbackError
from comomab.pareto import compute_spf
from comomab.policies import LLR, SOUCB1, ComoUCB, ParetoUCB1, como_confidence, make_policy


def singletons(n, d=1):
    return ActionSet([Action.unit([i], n) for i in range(n)], n, d)


def test_como_confidence_examples():
    assert como_confidence(2, 1, L=1, D=1) == 0.0
    assert como_confidence(11, 5, L=1, D=16) == pytest.approx(math.sqrt(2 * math.log(20) / 5))
    assert como_confidence(3, 4, 1, 1) >= como_confidence(2, 4, 1, 1)
    with pytest.raises(ValueError):
        como_confidence(5, 0, 1, 1)


def test_como_initialization_covers_every_arm(rng):
    aset = ActionSet(
        [Action.unit(a, 4) for a in ([0, 1], [1, 2], [2, 3], [0, 3])], 4, 2
    )
    env = BernoulliEnvironment(aset, rng.random((4, 2)))
    pol = ComoUCB().reset(aset, 0)
    for t in range(1, 5):
        k = pol.select(t)
        assert t - 1 in aset.supports[k]
        pol.update(t, k, env.sample(aset.supports[k], rng))
    assert pol.counts_.min() >= 1


def test_init_single_covering_action():
    aset = ActionSet([Action.unit([0, 1], 3), Action.unit([2], 3)], 3, 1)
    pol = ComoUCB().reset(aset, 0)
    assert pol.select(3) == 1


def test_init_uniform_over_covering_actions():
    aset = ActionSet([Action.unit([0, i], 4) for i in (1, 2, 3)], 4, 1)
    pol = ComoUCB().reset(aset, 7)
    draws = np.bincount([pol.select(1) for _ in range(9000)], minlength=3)
    assert chisquare(draws).pvalue > 0.01


def test_como_update_examples():
    aset = singletons(2, 2)
    pol = ComoUCB().reset(aset, 0)
    pol.update(1, 0, [[0.4, 0.6]])
    assert np.allclose(pol.mu_hat_[0], (0.4, 0.6)) and pol.counts_[0] == 1
    pol.mu_hat_[1] = (1.0, 0.0)
    pol.counts_[1] = 1
    pol.update(2, 1, [[0.0, 1.0]])
    assert np.allclose(pol.mu_hat_[1], (0.5, 0.5)) and pol.counts_[1] == 2


def test_running_mean_matches_direct_mean(rng):
    aset = singletons(1, 3)
    pol = ComoUCB().reset(aset, 0)
    xs = rng.random((500, 3))
    for t, x in enumerate(xs, 1):
        pol.update(t, 0, [x])
    assert np.allclose(pol.mu_hat_[0], xs.mean(axis=0), atol=1e-12)


def test_feedback_contract():
    aset = ActionSet([Action.unit([0, 1], 2)], 2, 2)
    pol = ComoUCB().reset(aset, 0)
    with pytest.raises(FeedbackError):
        pol.update(1, 0, [[0.1, 0.2]])
    with pytest.raises(FeedbackError):
        pol.update(1, 0, {0: (0.1, 0.2)})
    pol.update(1, 0, {1: (0.1, 0.2), 0: (0.3, 0.4)})
    assert np.allclose(pol.mu_hat_, [[0.3, 0.4], [0.1, 0.2]])


def test_symmetric_statistics_uniform_selection():
    aset = singletons(4, 2)
    pol = ComoUCB().reset(aset, 3)
    pol.mu_hat_[:] = 0.5
    pol.counts_[:] = 10
    assert pol.estimated_front(50).tolist() == [0, 1, 2, 3]
    draws = np.bincount([pol.select(50) for _ in range(10_000)], minlength=4)
    assert chisquare(draws).pvalue > 0.01


def test_forced_exploration_of_rare_arm():
    # arm 1 has a poor mean but one sample; its inflated index survives
    aset = singletons(2, 2)
    pol = ComoUCB().reset(aset, 0)
    pol.mu_hat_[:] = [[0.9, 0.9], [0.1, 0.1]]
    pol.counts_[:] = [10_000, 1]
    t = 10_002
    radius = como_confidence(t, pol.counts_, 1, 2)
    scores = pol.mu_hat_ + radius[:, None]  # direct evaluation of the optimistic indices
    expected = sorted(compute_spf(scores))
    assert expected == [1]
    assert pol.estimated_front(t).tolist() == expected


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(0, 1), min_size=2, max_size=6),
    st.lists(st.integers(1, 50), min_size=6, max_size=6),
    st.integers(10, 10_000),
)
def test_d1_front_is_ucb_argmax_set(means, counts, t):
    n = len(means)
    aset = singletons(n, 1)
    pol = ComoUCB().reset(aset, 0)
    pol.mu_hat_[:, 0] = means
    pol.counts_[:] = counts[:n]
    index = np.asarray(means) + como_confidence(t, np.asarray(counts[:n]), 1, 1)
    assert set(pol.estimated_front(t).tolist()) == set(np.flatnonzero(index == index.max()).tolist())


def test_conditional_uniformity_on_realised_front(rng):
    aset = ActionSet([Action.unit(a, 3) for a in ([0], [1], [2], [0, 1], [1, 2])], 3, 2)
    pol = ComoUCB().reset(aset, 11)
    pol.mu_hat_[:] = rng.random((3, 2))
    pol.counts_[:] = [3, 40, 7]
    front = pol.estimated_front(100)
    draws = [pol.select(100) for _ in range(8000)]
    assert set(draws) <= set(front.tolist())
    if front.size > 1:
        assert chisquare(np.bincount(draws, minlength=5)[front]).pvalue > 0.01


def _play(policy, env, T, seed):
    rng = np.random.default_rng(seed)
    policy.reset(env.action_set, seed)
    out = []
    for t in range(1, T + 1):
        k = policy.select(t)
        policy.update(t, k, env.sample(env.action_set.supports[k], rng))
        out.append(k)
    return out


@pytest.mark.parametrize("policy", [ComoUCB(), ParetoUCB1(k_star=2), LLR(), SOUCB1()])
def test_replay_determinism_and_counters(policy, rng):
    aset = ActionSet([Action.unit(a, 4) for a in ([0, 1], [2, 3], [1, 2], [0, 3])], 4, 2)
    env = BernoulliEnvironment(aset, rng.random((4, 2)))
    a = _play(clone(policy), env, 300, 5)
    p2 = clone(policy)
    b = _play(p2, env, 300, 5)
    assert a == b
    if isinstance(policy, (ComoUCB, LLR)):
        assert p2.counts_.sum() == sum(len(aset.supports[k]) for k in b)
    else:
        assert p2.counts_.sum() == 300


def test_pareto_ucb1_config_and_sweep():
    aset = singletons(3, 2)
    with pytest.raises(ConfigError):
        ParetoUCB1().reset(aset, 0)
    pol = ParetoUCB1(k_star=1).reset(aset, 0)
    assert [pol.select(t) for t in (1, 2, 3)] == [0, 1, 2]


def test_pareto_ucb1_d1_reduces_to_ucb1_argmax():
    aset = singletons(3, 1)
    pol = ParetoUCB1(k_star=1).reset(aset, 0)
    pol.mu_hat_[:, 0] = [0.2, 0.6, 0.5]
    pol.counts_[:] = [100, 100, 100]
    t = 301
    idx = pol.mu_hat_[:, 0] + np.sqrt(2 * math.log(t) / 100)
    assert pol.estimated_front(t).tolist() == [int(np.argmax(idx))]


def test_pareto_ucb1_identical_stats_half_half():
    aset = singletons(2, 2)
    pol = ParetoUCB1(k_star=2).reset(aset, 9)
    pol.mu_hat_[:] = 0.3
    pol.counts_[:] = 5
    draws = np.bincount([pol.select(20) for _ in range(10_000)], minlength=2)
    assert chisquare(draws).pvalue > 0.01


def test_pareto_ucb1_updates_only_played_action():
    aset = ActionSet([Action.unit([0, 1], 2), Action.unit([1], 2)], 2, 2)
    pol = ParetoUCB1(k_star=1).reset(aset, 0)
    pol.update(1, 0, [[0.5, 0.5], [0.25, 0.0]])
    assert pol.counts_.tolist() == [1, 0]
    assert np.allclose(pol.mu_hat_[0], (0.75, 0.5))


def _deterministic_env(aset, means):
    class Det(BernoulliEnvironment):
        def sample(self, arms, rng):
            return self._means[np.asarray(arms)]

    return Det(aset, means)


def test_llr_exploits_best_first_objective():
    aset = singletons(3, 2)
    env = _deterministic_env(aset, [[0.9, 0.1], [0.5, 0.9], [0.2, 0.2]])
    picks = np.asarray(_play(LLR(), env, 20_000, 0))
    assert np.mean(picks[-2000:] == 0) > 0.97
    assert np.mean(picks[-2000:] == 0) > np.mean(picks[3:2000] == 0)


def test_llr_tie_break_lowest_index():
    aset = singletons(2, 1)
    pol = LLR().reset(aset, 0)
    pol.mu_hat_[:] = 0.5
    pol.counts_[:] = 4
    assert pol.select(10) == 0


def test_so_ucb1_single_action_and_convergence():
    aset = ActionSet([Action.unit([0], 1)], 1, 2)
    env = _deterministic_env(aset, [[0.3, 0.3]])
    assert set(_play(SOUCB1(), env, 50, 0)) == {0}
    aset = singletons(2, 2)
    env = _deterministic_env(aset, [[0.9, 0.0], [0.1, 1.0]])
    picks = _play(SOUCB1(), env, 5000, 0)
    assert np.mean(np.asarray(picks[-1000:]) == 0) > 0.98


def test_make_policy_and_params():
    assert isinstance(make_policy("como_ucb"), ComoUCB)
    assert make_policy("pareto_ucb1", k_star=9).get_params() == {"k_star": 9}
    with pytest.raises(ConfigError):
        make_policy("thompson")
    with pytest.raises(ConfigError):
        make_policy("llr", k_star=3)

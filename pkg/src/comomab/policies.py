"""Bandit policies for combinatorial multi-objective problems.

All policies share one protocol::

    policy.reset(action_set, seed)
    for t in range(1, T + 1):
        k = policy.select(t)
        policy.update(t, k, observations)   # one row per arm in the support

``observations`` holds the reward vectors of the arms in
``action_set.supports[k]``, in that (ascending) order. Policies never see
true means or gaps.

The classes are scikit-learn estimators, so ``get_params``/``set_params``
and :func:`sklearn.base.clone` give a fresh, unfitted copy per replication.
"""

from __future__ import annotations

import math
from collections.abc import Mapping

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .core import ActionSet
from .exceptions import ConfigError, FeedbackError
from .pareto import spf_mask


def como_confidence(t: int, m_i, L: int, D: int):
    """Confidence radius ``sqrt((L+1) log((t-1) D^(1/4)) / m_i)``.

    The logarithm is clamped at 0 where its argument drops below 1.
    Works elementwise when ``m_i`` is an array.
    """
    if np.any(np.asarray(m_i) < 1):
        raise ValueError("confidence radius needs every counter >= 1")
    if t < 2:
        raise ValueError("confidence radius is defined for t >= 2")
    log_term = max(0.0, math.log((t - 1) * D ** 0.25))
    return np.sqrt((L + 1) * log_term / np.asarray(m_i, dtype=float))


class BasePolicy(BaseEstimator):
    """Shared state handling: the action set, the RNG and feedback checks."""

    policy_id = "base"

    def reset(self, action_set: ActionSet, seed=None):
        self.action_set_ = action_set
        self.rng_ = np.random.default_rng(seed)
        self._init_stats()
        return self

    def _init_stats(self):
        raise NotImplementedError

    def _check_ready(self):
        if not hasattr(self, "action_set_"):
            raise NotFittedError(f"{type(self).__name__} must be reset with an action set first")

    def _observations(self, k: int, observations) -> np.ndarray:
        """Validate feedback for action ``k`` and return it support-aligned."""
        support = self.action_set_.supports[k]
        if isinstance(observations, Mapping):
            if set(observations) != set(support.tolist()):
                raise FeedbackError(
                    f"feedback arms {sorted(observations)} != support {support.tolist()}"
                )
            observations = [observations[i] for i in support.tolist()]
        obs = np.asarray(observations, dtype=float)
        if obs.shape != (support.size, self.action_set_.dimension):
            raise FeedbackError(
                f"expected feedback of shape {(support.size, self.action_set_.dimension)}, "
                f"got {obs.shape}"
            )
        return obs

    def _uniform(self, candidates: np.ndarray) -> int:
        return int(candidates[self.rng_.integers(candidates.size)])

    def select(self, t: int) -> int:
        raise NotImplementedError

    def update(self, t: int, k: int, observations) -> None:
        raise NotImplementedError


class _ArmLevelPolicy(BasePolicy):
    """Per-arm running means and counters with semi-bandit updates.

    The first ``N`` steps play, for arm ``t-1``, a uniformly random action
    that contains it, so every counter is positive once they are done.
    """

    def _init_stats(self):
        n, d = self.action_set_.n_arms, self.action_set_.dimension
        self.mu_hat_ = np.zeros((n, d))
        self.counts_ = np.zeros(n, dtype=np.int64)

    def _init_select(self, t: int) -> int:
        return self._uniform(self.action_set_.covering[t - 1])

    def update(self, t, k, observations):
        self._check_ready()
        obs = self._observations(k, observations)
        s = self.action_set_.supports[k]
        m = self.counts_[s]
        self.mu_hat_[s] = (self.mu_hat_[s] * m[:, None] + obs) / (m[:, None] + 1)
        self.counts_[s] = m + 1


class _ActionLevelPolicy(BasePolicy):
    """Treats each action as an independent arm; one sweep over all actions first."""

    def _init_stats(self):
        n_actions, d = len(self.action_set_), self.action_set_.dimension
        self.mu_hat_ = np.zeros((n_actions, d))
        self.counts_ = np.zeros(n_actions, dtype=np.int64)

    def update(self, t, k, observations):
        self._check_ready()
        obs = self._observations(k, observations)
        reward = self.action_set_.weight_matrix[k, self.action_set_.supports[k]] @ obs
        m = self.counts_[k]
        self.mu_hat_[k] = (self.mu_hat_[k] * m + reward) / (m + 1)
        self.counts_[k] = m + 1


class ComoUCB(_ArmLevelPolicy):
    """COMO-UCB: uniform choice from the front of optimistic action indices.

    Each arm's sample mean is inflated by the same radius in every
    objective, actions are scored by the weighted sum of inflated arm
    vectors, and the action is drawn uniformly from the set of scores that
    no other score super-dominates.
    """

    policy_id = "como_ucb"

    def estimated_front(self, t: int) -> np.ndarray:
        """Indices of the estimated super Pareto front at step ``t``."""
        aset = self.action_set_
        radius = como_confidence(t, self.counts_, aset.L, aset.dimension)
        scores = aset.weight_matrix @ (self.mu_hat_ + radius[:, None])
        return np.flatnonzero(spf_mask(scores))

    def select(self, t):
        self._check_ready()
        if t <= self.action_set_.n_arms:
            return self._init_select(t)
        return self._uniform(self.estimated_front(t))


class ParetoUCB1(_ActionLevelPolicy):
    """Pareto UCB1 over actions; needs the size of the Pareto front.

    Index of action ``a``: its sample mean plus
    ``sqrt(2 log(t (D k_star)^(1/4)) / n_a)`` in every objective.
    """

    policy_id = "pareto_ucb1"

    def __init__(self, k_star=None):
        self.k_star = k_star

    def reset(self, action_set, seed=None):
        if self.k_star is None or self.k_star <= 0:
            raise ConfigError("pareto_ucb1 needs a positive k_star (Pareto front size)")
        return super().reset(action_set, seed)

    def estimated_front(self, t: int) -> np.ndarray:
        d = self.action_set_.dimension
        radius = np.sqrt(2.0 * math.log(t * (d * self.k_star) ** 0.25) / self.counts_)
        return np.flatnonzero(spf_mask(self.mu_hat_ + radius[:, None]))

    def select(self, t):
        self._check_ready()
        if t <= len(self.action_set_):
            return t - 1
        return self._uniform(self.estimated_front(t))


class LLR(_ArmLevelPolicy):
    """Learning with Linear Rewards on a single objective.

    Scalar arm index ``mu_hat[objective] + sqrt((L+1) log t / m_i)``; plays
    the action with the largest weighted index, lowest index on ties.
    """

    policy_id = "llr"

    def __init__(self, objective=0):
        self.objective = objective

    def select(self, t):
        self._check_ready()
        aset = self.action_set_
        if t <= aset.n_arms:
            return self._init_select(t)
        index = self.mu_hat_[:, self.objective] + np.sqrt(
            (aset.L + 1) * math.log(t) / self.counts_
        )
        return int(np.argmax(aset.weight_matrix @ index))


class SOUCB1(_ActionLevelPolicy):
    """UCB1 over actions on a single objective, lowest index on ties."""

    policy_id = "so_ucb1"

    def __init__(self, objective=0):
        self.objective = objective

    def select(self, t):
        self._check_ready()
        if t <= len(self.action_set_):
            return t - 1
        index = self.mu_hat_[:, self.objective] + np.sqrt(2.0 * math.log(t) / self.counts_)
        return int(np.argmax(index))


POLICIES = {cls.policy_id: cls for cls in (ComoUCB, ParetoUCB1, LLR, SOUCB1)}


def make_policy(policy_id: str, **params) -> BasePolicy:
    try:
        cls = POLICIES[policy_id]
    except KeyError:
        raise ConfigError(f"unknown policy {policy_id!r}; known: {sorted(POLICIES)}") from None
    try:
        return cls(**params)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for {policy_id}: {exc}") from None

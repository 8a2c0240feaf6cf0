"""Environment protocol and a generic Bernoulli-arm environment."""

from __future__ import annotations

import numpy as np

from .._validation import check_matrix
from ..core import ActionSet
from ..exceptions import ConfigError


class Environment:
    """Stochastic arms behind a fixed action set.

    Subclasses set ``action_set`` and implement :meth:`true_means` and
    :meth:`sample`. ``true_means``/``action_means`` are for regret
    accounting only and are never handed to a policy.
    """

    action_set: ActionSet

    @property
    def dimension(self) -> int:
        return self.action_set.dimension

    @property
    def n_arms(self) -> int:
        return self.action_set.n_arms

    def true_means(self) -> np.ndarray:
        raise NotImplementedError

    def action_means(self) -> np.ndarray:
        """Exact mean reward vector of every action, ``(n_actions, D)``."""
        return self.action_set.means(self.true_means())

    def sample(self, arms, rng: np.random.Generator) -> np.ndarray:
        """One reward vector per arm in ``arms``, shape ``(len(arms), D)``."""
        raise NotImplementedError


class BernoulliEnvironment(Environment):
    """Each arm-objective pair is an independent Bernoulli draw."""

    def __init__(self, action_set: ActionSet, arm_means):
        means = check_matrix(arm_means, "arm_means")
        if means.shape != (action_set.n_arms, action_set.dimension):
            raise ConfigError(
                f"arm_means shape {means.shape} does not match "
                f"{(action_set.n_arms, action_set.dimension)}"
            )
        if np.any(means < 0) or np.any(means > 1):
            raise ConfigError("Bernoulli means must lie in [0, 1]")
        self.action_set = action_set
        self._means = means

    def true_means(self):
        return self._means.copy()

    def sample(self, arms, rng):
        p = self._means[np.asarray(arms, dtype=np.intp)]
        return (rng.random(p.shape) < p).astype(float)

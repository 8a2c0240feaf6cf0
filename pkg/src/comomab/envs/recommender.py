"""Slate recommendation with an average-like objective and a diversity objective.

Arms are items; actions are all ``K``-item slates. Each step ``M`` users
arrive, each with a hidden type drawn from ``type_probs``, and likes item
``i`` independently with probability ``like_probs[type, i]``.

Objective 1 of an item is the fraction of users liking it. Objective 2 is
either

* ``cosine``: mean pairwise cosine distance between the users' like
  vectors restricted to the slate (one value shared by every item in the
  slate; an all-zero like vector counts as distance 1), or
* ``variance``: the population variance of the ``M`` binary ratings of
  the item, times 4.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..core import Action, ActionSet
from ..exceptions import ConfigError
from .base import Environment

DIVERSITY_MODES = ("cosine", "variance")
MAX_COSINE_SLATE = 10


@dataclass
class RecConfig:
    n_items: int
    slate_size: int
    n_users: int
    type_probs: np.ndarray
    like_probs: np.ndarray
    diversity: str = "cosine"

    def __post_init__(self):
        if self.n_items < 1 or self.slate_size < 1:
            raise ConfigError("n_items and slate_size must be >= 1")
        if self.slate_size > self.n_items:
            raise ConfigError(f"slate_size={self.slate_size} exceeds n_items={self.n_items}")
        if self.diversity not in DIVERSITY_MODES:
            raise ConfigError(f"diversity must be one of {DIVERSITY_MODES}")
        min_users = 2 if self.diversity == "cosine" else 1
        if self.n_users < min_users:
            raise ConfigError(f"n_users must be >= {min_users} for {self.diversity} diversity")
        if self.diversity == "cosine" and self.slate_size > MAX_COSINE_SLATE:
            raise ConfigError(f"cosine diversity supports slates of at most {MAX_COSINE_SLATE} items")
        self.type_probs = np.asarray(self.type_probs, dtype=float).ravel()
        if np.any(self.type_probs < 0) or not np.isclose(self.type_probs.sum(), 1.0):
            raise ConfigError("type_probs must be nonnegative and sum to 1")
        self.like_probs = np.asarray(self.like_probs, dtype=float).reshape(
            self.type_probs.size, self.n_items
        )
        if np.any(self.like_probs < 0) or np.any(self.like_probs > 1):
            raise ConfigError("like_probs must lie in [0, 1]")


def cosine_diversity(likes: np.ndarray) -> float:
    """Mean pairwise cosine distance between the rows of a 0/1 matrix."""
    u = np.asarray(likes, dtype=float)
    m = u.shape[0]
    norms = np.linalg.norm(u, axis=1)
    nz = norms > 0
    sim = np.zeros((m, m))
    sim[np.ix_(nz, nz)] = (u[nz] @ u[nz].T) / np.outer(norms[nz], norms[nz])
    dist = 1.0 - np.clip(sim, 0.0, 1.0)
    return float(dist[~np.eye(m, dtype=bool)].sum() / (m * (m - 1)))


class RecommenderEnvironment(Environment):
    def __init__(self, cfg: RecConfig):
        self.cfg = cfg
        n, k = cfg.n_items, cfg.slate_size
        actions = [Action.unit(c, n) for c in itertools.combinations(range(n), k)]
        self.action_set = ActionSet(actions, n, dimension=2)
        self._cum_types = np.cumsum(cfg.type_probs)
        self._marginal = cfg.type_probs @ cfg.like_probs

    def true_means(self):
        if self.cfg.diversity == "cosine":
            raise ValueError("cosine diversity is slate-level; use action_means()")
        q = self._marginal
        m = self.cfg.n_users
        return np.column_stack([q, 4.0 * q * (1.0 - q) * (1.0 - 1.0 / m)])

    def action_means(self):
        if self.cfg.diversity != "cosine":
            return super().action_means()
        k = self.cfg.slate_size
        patterns = np.array(list(itertools.product((0, 1), repeat=k)), dtype=float)
        norms = np.linalg.norm(patterns, axis=1)
        nz = norms > 0
        sim = np.zeros((len(patterns), len(patterns)))
        sim[np.ix_(nz, nz)] = (patterns[nz] @ patterns[nz].T) / np.outer(norms[nz], norms[nz])
        dist = 1.0 - np.clip(sim, 0.0, 1.0)
        out = np.empty((len(self.action_set), 2))
        for row, support in enumerate(self.action_set.supports):
            q = self.cfg.like_probs[:, support]  # types x k
            # probability of each like pattern for one user, mixed over types
            p = np.prod(
                np.where(patterns[None, :, :] == 1, q[:, None, :], 1.0 - q[:, None, :]), axis=2
            )
            mix = self.cfg.type_probs @ p
            out[row, 0] = self._marginal[support].sum()
            out[row, 1] = k * (mix @ dist @ mix)
        return out

    def sample(self, arms, rng):
        arms = np.asarray(arms, dtype=np.intp)
        m = self.cfg.n_users
        types = np.searchsorted(self._cum_types, rng.random(m), side="right")
        types = np.minimum(types, self.cfg.type_probs.size - 1)
        likes = rng.random((m, arms.size)) < self.cfg.like_probs[np.ix_(types, arms)]
        liked = likes.mean(axis=0)
        if self.cfg.diversity == "cosine":
            second = np.full(arms.size, cosine_diversity(likes))
        else:
            second = 4.0 * liked * (1.0 - liked)
        return np.column_stack([liked, second])

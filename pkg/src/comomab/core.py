"""Reward vectors, actions and the dominance relations between them.

Reward vectors are plain 1-d numpy arrays. Arms are indexed from 0.
Dominance comparisons are exact: no tolerance is applied anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._validation import check_matrix, check_pair
from .exceptions import ConfigError, DimensionError


def weakly_dominates(u, v) -> bool:
    """``v`` is weakly dominated by ``u``: ``v_j <= u_j`` for every j."""
    u, v = check_pair(u, v)
    return bool(np.all(v <= u))


def dominates(u, v) -> bool:
    """``v`` is dominated by ``u``: weakly dominated and strictly worse somewhere."""
    u, v = check_pair(u, v)
    return bool(np.all(v <= u) and np.any(v < u))


def super_dominates(u, v) -> bool:
    """``v`` is super-dominated by ``u``: strictly worse in every objective."""
    u, v = check_pair(u, v)
    return bool(np.all(v < u))


def incomparable(u, v) -> bool:
    """Neither vector super-dominates the other."""
    u, v = check_pair(u, v)
    return not (np.all(v < u) or np.all(u < v))


@dataclass(frozen=True)
class Action:
    """Nonnegative weights over ``n_arms`` arms, stored sparsely.

    Only strictly positive weights are kept; ``support`` is sorted ascending.
    """

    weights: Mapping[int, float]
    n_arms: int
    support: tuple[int, ...] = field(init=False, repr=False)
    values: tuple[float, ...] = field(init=False, repr=False)

    def __post_init__(self):
        items = []
        for arm, w in self.weights.items():
            arm = int(arm)
            w = float(w)
            if not 0 <= arm < self.n_arms:
                raise ConfigError(f"arm index {arm} out of range for {self.n_arms} arms")
            if not np.isfinite(w) or w < 0:
                raise ConfigError(f"weight of arm {arm} must be a finite nonnegative number, got {w}")
            if w > 0:
                items.append((arm, w))
        if not items:
            raise ConfigError("an action must play at least one arm")
        items.sort()
        object.__setattr__(self, "weights", dict(items))
        object.__setattr__(self, "support", tuple(a for a, _ in items))
        object.__setattr__(self, "values", tuple(w for _, w in items))

    @classmethod
    def from_dense(cls, dense: Sequence[float]) -> "Action":
        return cls({i: w for i, w in enumerate(dense) if w != 0}, len(dense))

    @classmethod
    def unit(cls, arms: Iterable[int], n_arms: int) -> "Action":
        """Action with weight 1 on each listed arm."""
        return cls({int(a): 1.0 for a in arms}, n_arms)

    def dense(self) -> np.ndarray:
        out = np.zeros(self.n_arms)
        out[list(self.support)] = self.values
        return out

    def __hash__(self):
        return hash((self.n_arms, self.support, self.values))


def action_mean(action: Action, arm_means) -> np.ndarray:
    """Mean reward vector of ``action``: the weighted sum of its arms' means."""
    means = check_matrix(arm_means, "arm_means")
    if means.shape[0] != action.n_arms:
        raise DimensionError(
            f"action is over {action.n_arms} arms but {means.shape[0]} arm means were given"
        )
    out = np.zeros(means.shape[1])
    for arm, w in zip(action.support, action.values):
        out += w * means[arm]
    return out


class ActionSet:
    """A finite, ordered collection of actions over the same arms.

    Besides the actions themselves this keeps the dense ``weight_matrix``
    (``n_actions x n_arms``) used by the vectorised policies, and the two
    constants that enter the regret bound: ``L`` (largest support) and
    ``a_max`` (largest single weight).
    """

    def __init__(self, actions: Sequence[Action], n_arms: int, dimension: int):
        actions = list(actions)
        if not actions:
            raise ConfigError("action set is empty")
        if dimension < 1:
            raise ConfigError("dimension must be >= 1")
        for a in actions:
            if a.n_arms != n_arms:
                raise ConfigError(f"action over {a.n_arms} arms in a set over {n_arms} arms")
        self.actions = actions
        self.n_arms = int(n_arms)
        self.dimension = int(dimension)
        self.weight_matrix = np.vstack([a.dense() for a in actions])
        self.supports = [np.asarray(a.support, dtype=np.intp) for a in actions]
        self.L = max(len(a.support) for a in actions)
        self.a_max = float(self.weight_matrix.max())

        covering = [[] for _ in range(self.n_arms)]
        for k, a in enumerate(actions):
            for arm in a.support:
                covering[arm].append(k)
        missing = [i for i, c in enumerate(covering) if not c]
        if missing:
            raise ConfigError(f"arms {missing} are not played by any action")
        self.covering = [np.asarray(c, dtype=np.intp) for c in covering]

    def __len__(self):
        return len(self.actions)

    def __getitem__(self, k) -> Action:
        return self.actions[k]

    def __iter__(self):
        return iter(self.actions)

    def means(self, arm_means) -> np.ndarray:
        """Mean vector of every action, as an ``(n_actions, D)`` array."""
        m = check_matrix(arm_means, "arm_means")
        if m.shape != (self.n_arms, self.dimension):
            raise DimensionError(
                f"expected arm means of shape {(self.n_arms, self.dimension)}, got {m.shape}"
            )
        return self.weight_matrix @ m

    def __repr__(self):
        return (
            f"ActionSet(n_actions={len(self)}, n_arms={self.n_arms}, "
            f"dimension={self.dimension}, L={self.L}, a_max={self.a_max:g})"
        )

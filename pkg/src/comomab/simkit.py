"""Seeded, replicated policy-versus-environment simulation."""

from __future__ import annotations

import logging
import warnings
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import clone

from .envs.base import Environment
from .exceptions import BoundWarning, ConfigError
from .pareto import GapStats, gap_stats, theorem1_bound
from .policies import BasePolicy

logger = logging.getLogger(__name__)


def derive_seed(master: int, run: int, policy_id: str) -> np.random.SeedSequence:
    """Seed keyed by (master seed, run index, policy id).

    Independent of which other policies or runs exist, and of the order in
    which runs execute.
    """
    return np.random.SeedSequence(entropy=int(master), spawn_key=(int(run), zlib.crc32(policy_id.encode())))


def checkpoints(horizon: int, stride: int) -> np.ndarray:
    """``stride, 2*stride, ...`` up to ``horizon``, always ending at ``horizon``."""
    if stride < 1:
        raise ConfigError("checkpoint stride must be >= 1")
    ts = np.arange(stride, horizon + 1, stride)
    if ts.size == 0 or ts[-1] != horizon:
        ts = np.append(ts, horizon)
    return ts


@dataclass
class RunTrace:
    policy_id: str
    actions: np.ndarray
    checkpoints: np.ndarray
    regret: np.ndarray
    spf_hits: np.ndarray
    spf_counts: dict

    @property
    def total_steps(self) -> int:
        return int(self.actions.size)

    @property
    def spf_fraction(self) -> np.ndarray:
        return self.spf_hits / self.checkpoints


def run_single(
    env: Environment,
    policy: BasePolicy,
    horizon: int,
    seed=None,
    stride: int = 100,
    gaps: GapStats | None = None,
) -> RunTrace:
    """Play ``policy`` against ``env`` for ``horizon`` steps.

    The policy is reset here with its own child seed; the environment draws
    from a sibling stream. Regret uses the exact action means.
    """
    aset = env.action_set
    if horizon < aset.n_arms:
        raise ConfigError(f"horizon {horizon} is shorter than the {aset.n_arms}-arm initialization")
    if gaps is None:
        gaps = gap_stats(env.action_means())
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    # explicit child keys: SeedSequence.spawn is stateful and would break replays
    policy_ss, env_ss = (
        np.random.SeedSequence(ss.entropy, spawn_key=tuple(ss.spawn_key) + (i,)) for i in (0, 1)
    )
    policy.reset(aset, policy_ss)
    rng = np.random.default_rng(env_ss)

    supports = aset.supports
    chosen = np.empty(horizon, dtype=np.int64)
    for t in range(1, horizon + 1):
        k = policy.select(t)
        policy.update(t, k, env.sample(supports[k], rng))
        chosen[t - 1] = k

    ts = checkpoints(horizon, stride)
    in_spf = np.zeros(len(aset), dtype=bool)
    in_spf[list(gaps.spf_indices)] = True
    regret = np.cumsum(gaps.psg_per_action[chosen])[ts - 1]
    hits = np.cumsum(in_spf[chosen])[ts - 1]
    counts = np.bincount(chosen, minlength=len(aset))
    spf_counts = {int(k): int(counts[k]) for k in sorted(gaps.spf_indices)}
    return RunTrace(
        policy_id=getattr(policy, "policy_id", type(policy).__name__),
        actions=chosen,
        checkpoints=ts,
        regret=regret,
        spf_hits=hits,
        spf_counts=spf_counts,
    )


def fairness_profile(spf_counts: dict) -> dict:
    """Share of each front action among the steps that hit the front.

    Returns an empty dict, with a warning, when the front was never hit.
    """
    total = sum(spf_counts.values())
    if total == 0:
        warnings.warn("no front selections; fairness profile is empty", RuntimeWarning, stacklevel=2)
        return {}
    return {k: c / total for k, c in sorted(spf_counts.items())}


@dataclass
class ExperimentSpec:
    env: Environment
    policies: list
    horizon: int
    runs: int = 5
    seed: int = 0
    stride: int = 100

    def __post_init__(self):
        if not self.policies:
            raise ConfigError("at least one policy is required")
        ids = [p.policy_id for p in self.policies]
        if len(set(ids)) != len(ids):
            raise ConfigError(f"duplicate policy ids: {ids}")
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.stride < 1:
            raise ConfigError("checkpoint_stride must be >= 1")
        if self.horizon < self.env.n_arms:
            raise ConfigError(f"horizon must be >= number of arms ({self.env.n_arms})")


@dataclass
class PolicyResult:
    policy_id: str
    checkpoints: np.ndarray
    mean_regret: np.ndarray
    std_regret: np.ndarray
    mean_fraction: np.ndarray
    std_fraction: np.ndarray
    spf_counts: dict
    traces: list = field(repr=False)

    @property
    def fairness(self) -> dict:
        return fairness_profile(self.spf_counts)


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    gaps: GapStats
    policies: dict

    def bound(self, T: int | None = None) -> float:
        aset = self.spec.env.action_set
        T = self.spec.horizon if T is None else T
        if T <= aset.n_arms:
            return float("inf")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BoundWarning)
            return theorem1_bound(
                T, aset.n_arms, aset.L, aset.dimension, aset.a_max,
                self.gaps.delta_min, self.gaps.delta_max,
            )


def _mean_std(rows: np.ndarray):
    mean = rows.mean(axis=0)
    std = rows.std(axis=0, ddof=1) if rows.shape[0] > 1 else np.zeros_like(mean)
    return mean, std


def _task(args):
    env, policy, horizon, seed, stride, gaps = args
    return run_single(env, policy, horizon, seed, stride, gaps)


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> ExperimentResult:
    """All runs of all policies; aggregates do not depend on ``workers``."""
    gaps = gap_stats(spec.env.action_means())
    tasks = [
        (spec.env, clone(policy), spec.horizon, derive_seed(spec.seed, run, policy.policy_id),
         spec.stride, gaps)
        for policy in spec.policies
        for run in range(spec.runs)
    ]
    logger.info("running %d simulations with %d worker(s)", len(tasks), workers)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            traces = list(pool.map(_task, tasks))
    else:
        traces = [_task(t) for t in tasks]

    results = {}
    for p_idx, policy in enumerate(spec.policies):
        group = traces[p_idx * spec.runs:(p_idx + 1) * spec.runs]
        ts = group[0].checkpoints
        mean_r, std_r = _mean_std(np.vstack([tr.regret for tr in group]))
        mean_f, std_f = _mean_std(np.vstack([tr.spf_fraction for tr in group]))
        pooled = {k: sum(tr.spf_counts[k] for tr in group) for k in group[0].spf_counts}
        results[policy.policy_id] = PolicyResult(
            policy.policy_id, ts, mean_r, std_r, mean_f, std_f, pooled, group
        )
    return ExperimentResult(spec, gaps, results)

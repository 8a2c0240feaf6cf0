"""Multi-user channel and rate allocation over Rayleigh-faded channels.

Arm ``(i, j, k)`` is user ``i`` on channel ``j`` at rate index ``k``; its
flat index is ``(i * Q + j) * H + k``. An action gives every user one
(channel, rate) pair with no channel shared, all weights 1. Rewards are
(success indicator, success * rate / top rate), both driven by one
exponential channel-gain draw per arm.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from ..core import Action, ActionSet
from ..exceptions import ConfigError
from .base import Environment
from .lambertw import lambert_w

PAPER6_LAMBDA = (
    (0.14, 0.14, 0.16, 0.05),
    (0.05, 0.11, 0.13, 0.07),
)


def outage_probability(lam: float, rate: float, snr: float) -> float:
    """Probability that ``log(1 + g * snr) < rate`` for ``g ~ Exp(lam)``."""
    if lam <= 0 or snr <= 0:
        raise ValueError("lambda and snr must be positive")
    if rate < 0:
        raise ValueError("rate must be nonnegative")
    return -math.expm1(-lam * math.expm1(rate) / snr)


def paper6_rates(lam) -> np.ndarray:
    """Rates ``(R/4, R/2, R)`` per user-channel pair with ``R = W(15 lambda)``."""
    lam = np.asarray(lam, dtype=float)
    base = np.vectorize(lambda x: lambert_w(15.0 * x))(lam)
    return np.stack([base / 4.0, base / 2.0, base], axis=-1)


@dataclass
class CommConfig:
    m: int
    q: int
    h: int
    lam: np.ndarray
    snr: float = 1.0
    rates: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.m < 1 or self.h < 1:
            raise ConfigError("m and h must be >= 1")
        if self.q < self.m:
            raise ConfigError(f"q={self.q} channels cannot serve m={self.m} users one-to-one")
        self.lam = np.asarray(self.lam, dtype=float).reshape(self.m, self.q)
        if np.any(self.lam <= 0) or not np.all(np.isfinite(self.lam)):
            raise ConfigError("lambda entries must be positive and finite")
        if not self.snr > 0:
            raise ConfigError("snr must be positive")
        self.rates = np.asarray(self.rates, dtype=float).reshape(self.m, self.q, self.h)
        if np.any(self.rates <= 0):
            raise ConfigError("rates must be positive")
        if np.any(np.diff(self.rates, axis=2) <= 0):
            raise ConfigError("rates must be strictly increasing in the rate index")

    @classmethod
    def paper6(cls, lam=PAPER6_LAMBDA, snr: float = 1.0) -> "CommConfig":
        lam = np.asarray(lam, dtype=float)
        return cls(m=lam.shape[0], q=lam.shape[1], h=3, lam=lam, snr=snr, rates=paper6_rates(lam))


class CommEnvironment(Environment):
    def __init__(self, cfg: CommConfig):
        self.cfg = cfg
        m, q, h = cfg.m, cfg.q, cfg.h
        n_arms = m * q * h
        actions = []
        for channels in itertools.permutations(range(q), m):
            for ks in itertools.product(range(h), repeat=m):
                arms = [(i * q + j) * h + k for i, (j, k) in enumerate(zip(channels, ks))]
                actions.append(Action.unit(arms, n_arms))
        self.action_set = ActionSet(actions, n_arms, dimension=2)

        lam = np.repeat(cfg.lam[:, :, None], h, axis=2)
        p_out = -np.expm1(-lam * np.expm1(cfg.rates) / cfg.snr)
        success = 1.0 - p_out
        top = cfg.rates[:, :, -1:]
        self._lam = lam.ravel()
        self._rate = cfg.rates.ravel()
        self._norm_rate = (cfg.rates / top).ravel()
        self._means = np.column_stack([success.ravel(), (cfg.rates * success / top).ravel()])

    def arm_index(self, user: int, channel: int, rate: int) -> int:
        return (user * self.cfg.q + channel) * self.cfg.h + rate

    def true_means(self):
        return self._means.copy()

    def sample(self, arms, rng):
        arms = np.asarray(arms, dtype=np.intp)
        gain = rng.standard_exponential(arms.size) / self._lam[arms]
        ok = (np.log1p(gain * self.cfg.snr) >= self._rate[arms]).astype(float)
        return np.column_stack([ok, ok * self._norm_rate[arms]])

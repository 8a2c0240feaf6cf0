"""Super Pareto front, Pareto front, suboptimality gaps and regret bounds."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import check_matrix, check_vector
from .exceptions import BoundWarning, DimensionError

_BLOCK = 512


def _super_beaten(challengers: np.ndarray, block: np.ndarray) -> np.ndarray:
    """``out[k', k]`` is True iff challenger ``k'`` super-dominates block row ``k``."""
    out = challengers[:, None, 0] > block[None, :, 0]
    for j in range(1, challengers.shape[1]):
        out &= challengers[:, None, j] > block[None, :, j]
    return out


def _undominated(means: np.ndarray, strict_all: bool) -> np.ndarray:
    """Boolean mask of rows not beaten by any other row.

    ``strict_all`` selects super-dominance (strictly better everywhere);
    otherwise ordinary dominance (no worse everywhere, better somewhere).
    """
    n = means.shape[0]
    keep = np.ones(n, dtype=bool)
    for start in range(0, n, _BLOCK):
        block = means[start:start + _BLOCK]
        if strict_all:
            beaten = _super_beaten(means, block)
        else:
            ge = (means[:, None, :] >= block[None, :, :]).all(axis=2)
            gt = (means[:, None, :] > block[None, :, :]).any(axis=2)
            beaten = ge & gt
        keep[start:start + _BLOCK] = ~beaten.any(axis=0)
    return keep


def spf_mask(means: np.ndarray) -> np.ndarray:
    """Unchecked fast path of :func:`compute_spf` returning a mask."""
    if means.shape[0] <= _BLOCK:
        return ~_super_beaten(means, means).any(axis=0)
    return _undominated(means, strict_all=True)


def compute_spf(means) -> set[int]:
    """Indices of the vectors that no other vector super-dominates.

    Duplicated vectors are all retained.
    """
    m = check_matrix(means)
    if m.shape[0] == 0:
        raise ValueError("cannot compute a front of an empty set")
    return set(np.flatnonzero(_undominated(m, strict_all=True)).tolist())


def compute_pareto_front(means) -> set[int]:
    """Indices of the vectors that no other vector dominates."""
    m = check_matrix(means)
    if m.shape[0] == 0:
        raise ValueError("cannot compute a front of an empty set")
    return set(np.flatnonzero(_undominated(m, strict_all=False)).tolist())


def psg(mean_a, spf_means) -> float:
    """Pareto suboptimality gap of ``mean_a`` with respect to a front.

    Smallest uniform boost ``eps >= 0`` such that no front member
    super-dominates ``mean_a + eps``; this is
    ``max(0, max_f min_j (f_j - mean_a_j))``.
    """
    a = check_vector(mean_a, "mean_a")
    front = check_matrix(spf_means, "spf_means")
    if front.shape[0] == 0:
        raise ValueError("front is empty")
    if front.shape[1] != a.size:
        raise DimensionError(f"dimension mismatch: {a.size} vs {front.shape[1]}")
    return max(0.0, float((front - a).min(axis=1).max()))


def psg_oracle(mean_a, spf_means, tol: float = 1e-12) -> float:
    """Bisection on the "not super-dominated by any front member" predicate.

    Independent check of :func:`psg`; it never uses the closed form.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = check_vector(mean_a, "mean_a")
    front = check_matrix(spf_means, "spf_means")
    if front.shape[1] != a.size:
        raise DimensionError(f"dimension mismatch: {a.size} vs {front.shape[1]}")

    def safe(eps):
        boosted = a + eps
        return not any(np.all(boosted < f) for f in front)

    if safe(0.0):
        return 0.0
    span = float(np.max(front.max(axis=0) - np.minimum(front.min(axis=0), a)))
    hi = max(a.size * span, tol)
    while not safe(hi):
        hi *= 2.0
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if safe(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class GapStats:
    psg_per_action: np.ndarray
    delta_min: float
    delta_max: float
    spf_indices: frozenset
    pareto_indices: frozenset


def gap_stats(means) -> GapStats:
    """Front membership and per-action gaps for a table of action means.

    ``delta_min`` is ``inf`` when every action is in the super Pareto front.
    """
    m = check_matrix(means)
    if m.shape[0] == 0:
        raise ValueError("cannot compute gaps of an empty set")
    spf = _undominated(m, strict_all=True)
    pareto = _undominated(m, strict_all=False)
    front = m[spf]
    gaps = np.array([psg(row, front) for row in m])
    gaps[spf] = 0.0
    sub = gaps[~spf]
    return GapStats(
        psg_per_action=gaps,
        delta_min=float(sub.min()) if sub.size else math.inf,
        delta_max=float(gaps.max()),
        spf_indices=frozenset(np.flatnonzero(spf).tolist()),
        pareto_indices=frozenset(np.flatnonzero(pareto).tolist()),
    )


def cumulative_regret(selected_gaps) -> np.ndarray:
    """Prefix sums of the gaps of the played actions."""
    g = np.asarray(selected_gaps, dtype=float)
    if g.ndim != 1:
        raise ValueError("gaps must be a 1-d sequence")
    if np.any(g < 0):
        raise ValueError("gaps must be nonnegative")
    return np.cumsum(g)


def theorem1_bound(T, N, L, D, a_max, delta_min, delta_max) -> float:
    """Upper bound on the expected Pareto regret of COMO-UCB after ``T`` steps.

    Returns 0 when every action is optimal (``delta_max == 0`` or
    ``delta_min == inf``) and ``inf`` when ``delta_min == 0``; both cases
    also emit a :class:`BoundWarning`.
    """
    if N < 1 or L < 1 or D < 1:
        raise ValueError("N, L and D must be >= 1")
    if T <= N:
        raise ValueError(f"bound requires T > N (T={T}, N={N})")
    if delta_max == 0 or math.isinf(delta_min):
        warnings.warn("all actions are super Pareto optimal; bound is 0", BoundWarning, stacklevel=2)
        return 0.0
    if delta_min <= 0:
        warnings.warn("delta_min is 0; bound is infinite", BoundWarning, stacklevel=2)
        return math.inf
    log_term = math.log(T * D ** 0.25)
    explore = 4.0 * a_max ** 2 * N * L ** 2 * (L + 1) * log_term / delta_min ** 2
    return delta_max * (explore + N + (math.pi ** 2 / 3.0) * N * L)


def hoeffding_violation_bound(n: int, k: float, D: int) -> float:
    """``D * exp(-2 n k^2)``: bound on a D-dimensional sample mean escaping
    the box ``mu +/- k`` in the super-dominance sense."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if k <= 0:
        raise ValueError("k must be positive")
    return D * math.exp(-2.0 * n * k * k)

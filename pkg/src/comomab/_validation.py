"""Input validation helpers shared by estimators and environments."""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionError


def check_vector(v, name: str = "vector") -> np.ndarray:
    """Return ``v`` as a 1-d float array with finite entries."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"{name} must be a non-empty 1-d vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError(f"{name} has non-finite entries")
    return arr


def check_pair(u, v) -> tuple[np.ndarray, np.ndarray]:
    u = check_vector(u, "u")
    v = check_vector(v, "v")
    if u.shape != v.shape:
        raise DimensionError(f"dimension mismatch: {u.size} vs {v.size}")
    return u, v


def check_matrix(rows, name: str = "means") -> np.ndarray:
    """Stack a list of equal-length reward vectors into an ``(n, D)`` array."""
    try:
        arr = np.asarray(rows, dtype=float)
    except ValueError as exc:  # ragged input
        raise DimensionError(f"{name}: vectors of unequal dimension") from exc
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be a list of equal-length vectors, got shape {arr.shape}")
    if arr.shape[1] == 0:
        raise DimensionError(f"{name}: dimension must be >= 1")
    if not np.all(np.isfinite(arr)):
        raise DimensionError(f"{name} has non-finite entries")
    return arr


def check_unit_cube(x: np.ndarray, name: str = "observation") -> np.ndarray:
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise DimensionError(f"{name} outside [0, 1]^D")
    return x

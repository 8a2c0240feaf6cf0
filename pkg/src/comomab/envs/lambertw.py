"""Principal branch of the Lambert W function for nonnegative arguments."""

from __future__ import annotations

import math


def lambert_w(x: float, max_iter: int = 64) -> float:
    """Return ``w >= 0`` with ``w * exp(w) == x``.

    Halley iteration started from ``log(1 + x)``, halving any step that
    would leave ``[0, inf)``.
    """
    x = float(x)
    if not x >= 0 or math.isinf(x):
        raise ValueError(f"lambert_w is implemented for finite x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    w = math.log1p(x)
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        if f == 0.0:
            break
        wp1 = w + 1.0
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        new = w - step
        while new < 0.0:
            step *= 0.5
            new = w - step
        if abs(new - w) <= 4e-16 * max(1.0, abs(new)):
            w = new
            break
        w = new
    return w

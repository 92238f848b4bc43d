"""Numpy implementations of the hot kernels.

Selected by ``lastsuccess._kernel`` when the compiled extension is absent.
Mirrors the signatures and semantics of ``lastsuccess._core`` exactly.
"""

from __future__ import annotations

import numpy as np

COMPILED = False


def _cutoffs(n: int) -> np.ndarray:
    """b_t for t = 1..n at positions 1..n (position 0 unused)."""
    t = np.arange(0, n + 1, dtype=np.int64)
    q = n - t + 1
    b = np.zeros(n + 1, dtype=np.int64)
    b[1:n] = (t[1:n] + q[1:n] - 1) // q[1:n] - 1
    b[n] = n
    return b


def dp_win_prob(n: int, p: float) -> float:
    """Single-point W_n(p) via the rolling-row recursion."""
    q = 1.0 - p
    b = _cutoffs(n)
    u = np.zeros(n + 1)
    u[0] = 1.0
    shift = np.empty(n + 1)
    total = 0.0
    for t in range(1, n + 1):
        bt = b[t]
        total *= q
        if bt >= 1:
            total += p * u[:bt].sum()
        # u[k] <- q*u[k] + p*u[k-1]*[k > bt], computed with a shifted copy
        np.multiply(u, p, out=shift)
        u *= q
        if bt < t:
            u[bt + 1 : t + 1] += shift[bt:t]
    return float(total)


def dp_win_prob_grid(n: int, ps: np.ndarray) -> np.ndarray:
    """W_n at every p in ``ps`` simultaneously (vectorized over the grid)."""
    ps = np.ascontiguousarray(ps, dtype=np.float64)
    if ps.ndim != 1:
        raise ValueError("probability grid must be one-dimensional")
    g = ps.size
    if g == 0:
        return np.empty(0)
    p = ps[:, None]
    q = 1.0 - p
    b = _cutoffs(n)
    u = np.zeros((g, n + 1))
    u[:, 0] = 1.0
    shift = np.empty_like(u)
    total = np.zeros(g)
    qflat = q[:, 0]
    for t in range(1, n + 1):
        bt = b[t]
        total *= qflat
        if bt >= 1:
            total += ps * u[:, :bt].sum(axis=1)
        np.multiply(u[:, : t + 1], p, out=shift[:, : t + 1])
        u[:, : t + 1] *= q
        if bt < t:
            u[:, bt + 1 : t + 1] += shift[:, bt:t]
    return total


def plugin_stop_times(paths: np.ndarray) -> np.ndarray:
    """Stop time of the plug-in rule on each row of a 0/1 path matrix.

    Returns int64 times in 1..n, with 0 meaning the rule never stops.
    """
    paths = np.ascontiguousarray(paths, dtype=np.uint8)
    if paths.ndim != 2:
        raise ValueError("paths must be a 2-D matrix")
    m, n = paths.shape
    if n < 2:
        raise ValueError("horizon must be >= 2")
    b = _cutoffs(n)[1:]  # aligned with columns 0..n-1
    s = np.cumsum(paths, axis=1, dtype=np.int64)
    mask = (paths == 1) & (s <= b[None, :])
    idx = mask.argmax(axis=1)
    hit = mask.any(axis=1)
    return np.where(hit, idx + 1, 0).astype(np.int64)

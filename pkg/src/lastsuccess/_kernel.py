"""Kernel dispatch: compiled extension when built, numpy fallback otherwise.

Both backends expose the same three functions with identical semantics:

    dp_win_prob(n, p)            -> float
    dp_win_prob_grid(n, ps)      -> float64 array
    plugin_stop_times(paths)     -> int64 array, 0 = never stops

``dp_win_prob_grid`` additionally accepts ``threads`` here: grid points are
independent, so the grid is chunked and evaluated on a thread pool (both
backends release the GIL for the bulk of the work).  Results are merged by
position, so the output is identical for any thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

try:  # pragma: no cover - exercised only in builds with the extension
    from . import _core as _impl

    COMPILED = True
except ImportError:  # pragma: no cover
    from . import _fallback as _impl

    COMPILED = False

from . import _fallback

__all__ = [
    "COMPILED",
    "backend_name",
    "dp_win_prob",
    "dp_win_prob_grid",
    "plugin_stop_times",
]

_MIN_CHUNK = 64


def backend_name() -> str:
    return "compiled" if COMPILED else "numpy"


def dp_win_prob(n: int, p: float) -> float:
    return float(_impl.dp_win_prob(n, p))


def dp_win_prob_grid(n: int, ps, threads: int | None = None) -> np.ndarray:
    ps = np.ascontiguousarray(ps, dtype=np.float64)
    if threads is None or threads <= 1 or ps.size <= _MIN_CHUNK:
        return np.asarray(_impl.dp_win_prob_grid(n, ps), dtype=np.float64)
    chunks = np.array_split(ps, min(threads * 4, max(1, ps.size // _MIN_CHUNK)))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda c: _impl.dp_win_prob_grid(n, c), chunks))
    return np.concatenate([np.asarray(part, dtype=np.float64) for part in parts])


def plugin_stop_times(paths) -> np.ndarray:
    return np.asarray(_impl.plugin_stop_times(paths), dtype=np.int64)


# the fallback is always importable; kept reachable for benchmarks and tests
fallback = _fallback

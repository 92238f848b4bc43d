"""Seeded, sharded Monte Carlo estimation of rule win probabilities.

Reproducibility model: the stream for shard i is ``Philox(key=seed)`` jumped
i times, so every shard owns an independent counter-based substream derived
deterministically from (seed, shard index).  Shards are merged by summing
win counts, which is associative and order-independent, so estimates are
bit-identical for any worker count.  Trials are split into fixed-size shards
of 2^16 paths; the shard size is part of the stream layout and is therefore
a constant, not a tuning knob.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .oracle import check_horizon, check_probability
from .rules import StoppingRule, stop_and_win

__all__ = [
    "DEFAULT_SEED",
    "SHARD_SIZE",
    "SimResult",
    "shard_generator",
    "estimate_win",
    "sample_stop_times",
]

DEFAULT_SEED = 42
SHARD_SIZE = 1 << 16


@dataclass(frozen=True)
class SimResult:
    """Monte Carlo estimate with a conservative 4-sigma half-width band."""

    rule: str
    n: int
    p: float
    trials: int
    wins: int
    estimate: float
    half_width: float
    seed: int

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def shard_generator(seed: int, index: int) -> np.random.Generator:
    """Independent substream for one shard: Philox(seed) jumped ``index`` times."""
    return np.random.Generator(np.random.Philox(key=seed).jumped(index))


def _shard_sizes(trials: int) -> list[int]:
    full, rem = divmod(trials, SHARD_SIZE)
    return [SHARD_SIZE] * full + ([rem] if rem else [])


def _run_shard(rule: StoppingRule, n: int, p: float, size: int, seed: int, index: int) -> int:
    gen = shard_generator(seed, index)
    paths = (gen.random((size, n)) < p).astype(np.uint8)
    uniforms = gen.random((size, n)) if rule.randomized else None
    _, wins = stop_and_win(rule, paths, uniforms)
    return int(wins.sum())


def estimate_win(
    rule: StoppingRule,
    n: int,
    p: float,
    trials: int,
    seed: int = DEFAULT_SEED,
    threads: Optional[int] = None,
) -> SimResult:
    """Unbiased estimate of the rule's win probability from i.i.d. paths."""
    check_horizon(n)
    check_probability(p)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    sizes = _shard_sizes(trials)
    if threads is not None and threads > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            wins = sum(
                pool.map(
                    lambda item: _run_shard(rule, n, p, item[1], seed, item[0]),
                    enumerate(sizes),
                )
            )
    else:
        wins = sum(_run_shard(rule, n, p, size, seed, i) for i, size in enumerate(sizes))
    estimate = wins / trials
    half_width = 4.0 * math.sqrt(estimate * (1.0 - estimate) / trials)
    return SimResult(
        rule=rule.name,
        n=n,
        p=float(p),
        trials=trials,
        wins=wins,
        estimate=estimate,
        half_width=half_width,
        seed=seed,
    )


def sample_stop_times(
    rule: StoppingRule,
    n: int,
    p: float,
    trials: int,
    seed: int = DEFAULT_SEED,
) -> np.ndarray:
    """Stop times (0 = never) over ``trials`` simulated paths.

    Same stream layout as ``estimate_win``, so the two are consistent.
    """
    check_horizon(n)
    check_probability(p)
    out = np.empty(trials, dtype=np.int64)
    pos = 0
    for i, size in enumerate(_shard_sizes(trials)):
        gen = shard_generator(seed, i)
        paths = (gen.random((size, n)) < p).astype(np.uint8)
        uniforms = gen.random((size, n)) if rule.randomized else None
        out[pos : pos + size] = rule.stop_times(paths, uniforms)
        pos += size
    return out

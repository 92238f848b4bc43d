"""Stopping rules, deterministic path rollout, and exact path enumeration.

A rule is consulted only at success times and decides stop/continue from the
history seen so far; it wins if it stops exactly on the last success of the
path.  All built-in rules except the oracle are p-blind: their decisions read
the outcomes (and, for randomized rules, an auxiliary uniform stream) but
never the success probability.

``enumerate_exact`` sums the win indicator over all 2^n paths, weighted by
p^k (1-p)^(n-k); with a ``Fraction`` p the result is exact, which makes it an
independent cross-check of the dynamic-programming value for small n.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _kernel
from .dp import cutoff
from .oracle import (
    Probability,
    check_horizon,
    check_probability,
    oracle_threshold,
)

__all__ = [
    "StoppingRule",
    "PluginRule",
    "FirstSuccessRule",
    "LastTrialRule",
    "FixedThresholdRule",
    "OracleRule",
    "CoinFlipRule",
    "plugin_rule",
    "first_rule",
    "last_rule",
    "fixed_threshold_rule",
    "oracle_rule",
    "apply_rule",
    "stop_and_win",
    "enumerate_exact",
    "exact_reference",
    "ENUMERATION_HORIZON_LIMIT",
]

ENUMERATION_HORIZON_LIMIT = 24
_ENUM_CHUNK = 1 << 18


class StoppingRule:
    """Base class: an online stop/continue decision, consulted at successes.

    ``decide(t, history, n, u)`` sees only the first t outcomes; ``u`` is a
    uniform variate from a per-path stream, ignored by deterministic rules.
    Subclasses may override ``stop_times`` with a vectorized version.
    """

    name = "rule"
    p_blind = True
    randomized = False

    def decide(
        self, t: int, history: Sequence[int], n: int, u: Optional[float] = None
    ) -> bool:
        raise NotImplementedError

    def stop_times(
        self, paths: np.ndarray, uniforms: Optional[np.ndarray] = None
    ) -> np.ndarray:
        """Stop time per path row (0 = never stops). Generic rollout loop."""
        paths = np.asarray(paths, dtype=np.uint8)
        out = np.zeros(paths.shape[0], dtype=np.int64)
        for i, row in enumerate(paths):
            u_row = None if uniforms is None else uniforms[i]
            stop, _ = apply_rule(self, tuple(int(x) for x in row), u_row)
            out[i] = 0 if stop is None else stop
        return out

    def __repr__(self):
        return f"{type(self).__name__}()"


class PluginRule(StoppingRule):
    """Stops at the first success time t with S_t <= b_t (terminal b_n = n),
    the integer-exact form of the empirical-odds comparison S_t/t < 1/(n-t+1)."""

    name = "plugin"

    def decide(self, t, history, n, u=None):
        return sum(history) <= cutoff(t, n)

    def stop_times(self, paths, uniforms=None):
        return _kernel.plugin_stop_times(np.asarray(paths, dtype=np.uint8))


class FirstSuccessRule(StoppingRule):
    """Stops at the first success; wins iff the path has exactly one."""

    name = "first"

    def decide(self, t, history, n, u=None):
        return True

    def stop_times(self, paths, uniforms=None):
        paths = np.asarray(paths, dtype=np.uint8)
        idx = paths.argmax(axis=1)
        hit = paths.any(axis=1)
        return np.where(hit, idx + 1, 0).astype(np.int64)


class LastTrialRule(StoppingRule):
    """Never stops before time n; stops at n if X_n = 1. Win probability p."""

    name = "last"

    def decide(self, t, history, n, u=None):
        return t == n

    def stop_times(self, paths, uniforms=None):
        paths = np.asarray(paths, dtype=np.uint8)
        n = paths.shape[1]
        return np.where(paths[:, n - 1] == 1, n, 0).astype(np.int64)


class FixedThresholdRule(StoppingRule):
    """Stops at the first success at or after a deterministic time s."""

    name = "threshold"

    def __init__(self, s: int):
        if not isinstance(s, int) or isinstance(s, bool) or s < 1:
            raise ValueError(f"threshold time must be a positive integer, got {s!r}")
        self.s = s
        self.name = f"threshold:{s}"

    def _check(self, n: int) -> None:
        if self.s > n:
            raise ValueError(f"threshold {self.s} exceeds horizon {n}")

    def decide(self, t, history, n, u=None):
        self._check(n)
        return t >= self.s

    def stop_times(self, paths, uniforms=None):
        paths = np.asarray(paths, dtype=np.uint8)
        n = paths.shape[1]
        self._check(n)
        tail = paths[:, self.s - 1 :]
        idx = tail.argmax(axis=1)
        hit = tail.any(axis=1)
        return np.where(hit, idx + self.s, 0).astype(np.int64)

    def __repr__(self):
        return f"FixedThresholdRule(s={self.s})"


class OracleRule(StoppingRule):
    """The known-p optimal rule: fixed threshold at s_n(p). Not p-blind."""

    name = "oracle"
    p_blind = False

    def __init__(self, p: Probability):
        check_probability(p)
        self.p = p

    def _threshold(self, n: int) -> FixedThresholdRule:
        return FixedThresholdRule(oracle_threshold(n, self.p))

    def decide(self, t, history, n, u=None):
        return t >= oracle_threshold(n, self.p)

    def stop_times(self, paths, uniforms=None):
        n = np.asarray(paths).shape[1]
        return self._threshold(n).stop_times(paths)

    def __repr__(self):
        return f"OracleRule(p={self.p!r})"


class CoinFlipRule(StoppingRule):
    """Demo randomized rule: stops at a success with probability ``bias``.

    Exists to exercise the auxiliary-randomization hook; it does not
    correspond to any specific rule from the analysis.
    """

    name = "coinflip"
    randomized = True

    def __init__(self, bias: float = 0.5):
        if not (0.0 <= bias <= 1.0):
            raise ValueError("bias must lie in [0, 1]")
        self.bias = bias

    def decide(self, t, history, n, u=None):
        if u is None:
            raise ValueError("randomized rule needs a uniform variate")
        return t == n or u < self.bias

    def stop_times(self, paths, uniforms=None):
        paths = np.asarray(paths, dtype=np.uint8)
        if uniforms is None:
            raise ValueError("randomized rule needs a uniform stream")
        n = paths.shape[1]
        willing = np.asarray(uniforms) < self.bias
        willing[:, n - 1] = True
        mask = (paths == 1) & willing
        idx = mask.argmax(axis=1)
        hit = mask.any(axis=1)
        return np.where(hit, idx + 1, 0).astype(np.int64)


def plugin_rule() -> PluginRule:
    return PluginRule()


def first_rule() -> FirstSuccessRule:
    return FirstSuccessRule()


def last_rule() -> LastTrialRule:
    return LastTrialRule()


def fixed_threshold_rule(s: int) -> FixedThresholdRule:
    return FixedThresholdRule(s)


def oracle_rule(p: Probability) -> OracleRule:
    return OracleRule(p)


def apply_rule(
    rule: StoppingRule,
    path: Sequence[int],
    uniforms: Optional[Sequence[float]] = None,
) -> tuple[Optional[int], bool]:
    """Deterministic rollout of a rule on one path.

    Returns (stop_time, win); stop_time is None when the rule never stops.
    The rule wins iff it stops exactly at the position of the last success.
    """
    n = len(path)
    check_horizon(n)
    if any(x not in (0, 1) for x in path):
        raise ValueError("path outcomes must be 0 or 1")
    stop: Optional[int] = None
    for t in range(1, n + 1):
        if path[t - 1] == 1:
            u = None if uniforms is None else float(uniforms[t - 1])
            if rule.decide(t, path[:t], n, u):
                stop = t
                break
    last = 0
    for t in range(n, 0, -1):
        if path[t - 1] == 1:
            last = t
            break
    return stop, stop is not None and stop == last


def stop_and_win(
    rule: StoppingRule, paths: np.ndarray, uniforms: Optional[np.ndarray] = None
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (stop_times, win) over a 0/1 path matrix."""
    paths = np.asarray(paths, dtype=np.uint8)
    stops = rule.stop_times(paths, uniforms)
    n = paths.shape[1]
    last = np.where(paths.any(axis=1), n - paths[:, ::-1].argmax(axis=1), 0)
    wins = (stops > 0) & (stops == last)
    return stops, wins


def _winning_success_counts(rule: StoppingRule, n: int) -> np.ndarray:
    """counts[k] = number of winning paths among all 2^n with k successes."""
    counts = np.zeros(n + 1, dtype=object)
    bits = np.arange(n, dtype=np.uint64)
    total = 1 << n
    for start in range(0, total, _ENUM_CHUNK):
        stop = min(start + _ENUM_CHUNK, total)
        codes = np.arange(start, stop, dtype=np.uint64)
        paths = ((codes[:, None] >> bits[None, :]) & 1).astype(np.uint8)
        _, wins = stop_and_win(rule, paths)
        ks = paths.sum(axis=1, dtype=np.int64)[wins]
        for k, c in zip(*np.unique(ks, return_counts=True)):
            counts[int(k)] += int(c)
    return counts


def enumerate_exact(rule: StoppingRule, n: int, p: Probability) -> Probability:
    """Win probability by full path enumeration: sum over the 2^n paths of
    the win indicator times p^k (1-p)^(n-k).

    Exact in rational arithmetic when p is a Fraction.  Guarded to n <= 24;
    this is the independent oracle, not the production evaluator.
    """
    check_horizon(n)
    check_probability(p)
    if n > ENUMERATION_HORIZON_LIMIT:
        raise ValueError(
            f"enumeration is limited to n <= {ENUMERATION_HORIZON_LIMIT}, got {n}"
        )
    if rule.randomized:
        raise ValueError("cannot enumerate a randomized rule exactly")
    counts = _winning_success_counts(rule, n)
    one = Fraction(1) if isinstance(p, Fraction) else 1.0
    q = one - p
    total = 0 * one
    for k in range(n + 1):
        if counts[k]:
            total += int(counts[k]) * p**k * q ** (n - k)
    return total


def exact_reference(rule: StoppingRule, n: int, p: float) -> Optional[float]:
    """Closed-form (or DP-exact) win probability for built-in rules.

    plugin -> exact DP value; first -> n p (1-p)^(n-1); last -> p;
    threshold at s -> (n-s+1) p (1-p)^(n-s); oracle -> oracle value.
    Returns None for rules without a known reference.
    """
    from .dp import plugin_value
    from .oracle import oracle_value, threshold_value

    if isinstance(rule, PluginRule):
        return float(plugin_value(n, p))
    if isinstance(rule, FirstSuccessRule):
        return float(n * p * (1.0 - p) ** (n - 1))
    if isinstance(rule, LastTrialRule):
        return float(p)
    if isinstance(rule, OracleRule):
        return float(oracle_value(n, rule.p))
    if isinstance(rule, FixedThresholdRule):
        return float(threshold_value(n, n - rule.s, p))
    return None

"""Closed-form quantities for the known-p last-success problem.

For i.i.d. Bernoulli(p) trials X_1..X_n, the optimal known-p ("oracle") rule
stops at the first success at or after the threshold

    s_n(p) = max(1, n - m(p) + 1),    m(p) = ceil(1/p) - 1,

and wins with probability V_n(p) = (n - s + 1) p (1-p)^(n-s).  Every function
here accepts the success probability either as a ``float`` (fast sweeps) or as
a ``fractions.Fraction`` (exact arithmetic), and computes in kind.  The dual
representation matters at the boundary points p = 1/k, where the ceiling in
m(p) is decided by a tie that floating point gets wrong.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Probability = Union[float, Fraction]

__all__ = [
    "Probability",
    "ProblemInstance",
    "BoundarySet",
    "odds_count",
    "oracle_threshold",
    "oracle_value",
    "threshold_value",
    "boundary_set",
    "boundary_distance",
    "check_probability",
    "check_horizon",
]


def check_probability(p: Probability) -> None:
    """Reject anything outside the open interval (0, 1)."""
    if isinstance(p, Fraction):
        if not (0 < p < 1):
            raise ValueError(f"success probability must lie in (0,1), got {p}")
        return
    if isinstance(p, bool) or not isinstance(p, (int, float)):
        raise ValueError(f"success probability must be float or Fraction, got {p!r}")
    if not (0.0 < p < 1.0) or math.isnan(p):
        raise ValueError(f"success probability must lie in (0,1), got {p}")


def check_horizon(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ValueError(f"horizon must be an integer >= 2, got {n!r}")


@dataclass(frozen=True)
class ProblemInstance:
    """A horizon/probability pair (n, p) with n >= 2 and p in (0,1)."""

    n: int
    p: Probability

    def __post_init__(self):
        check_horizon(self.n)
        check_probability(self.p)

    @property
    def exact(self) -> bool:
        return isinstance(self.p, Fraction)


def odds_count(p: Probability) -> int:
    """m(p) = ceil(1/p) - 1, the number of trials with odds summing past 1.

    For rational p = a/b the ceiling is computed as ceil(b/a) in integer
    arithmetic, so boundary points p = 1/k are exact.
    """
    check_probability(p)
    if isinstance(p, Fraction):
        a, b = p.numerator, p.denominator
        return -(-b // a) - 1
    return math.ceil(1.0 / p) - 1


def oracle_threshold(n: int, p: Probability) -> int:
    """The sum-the-odds threshold s_n(p) = max(1, n - m(p) + 1)."""
    check_horizon(n)
    return max(1, n - odds_count(p) + 1)


def oracle_value(n: int, p: Probability) -> Probability:
    """Win probability V_n(p) of the oracle rule; exact for rational p."""
    s = oracle_threshold(n, p)
    r = n - s
    one = Fraction(1) if isinstance(p, Fraction) else 1.0
    return (r + 1) * p * (one - p) ** r


def threshold_value(n: int, r: int, p: Probability) -> Probability:
    """Win probability (r+1) p (1-p)^r of the rule stopping at the first
    success in the final r+1 trials {n-r, ..., n}.

    The oracle rule is the case r = m(p) - 1 whenever m(p) <= n.
    """
    check_horizon(n)
    check_probability(p)
    if not isinstance(r, int) or isinstance(r, bool) or not (0 <= r <= n - 1):
        raise ValueError(f"threshold depth r must satisfy 0 <= r <= n-1, got {r!r}")
    one = Fraction(1) if isinstance(p, Fraction) else 1.0
    return (r + 1) * p * (one - p) ** r


@dataclass(frozen=True)
class BoundarySet:
    """The points {1/k : k = 2..m(p0)+1} where the oracle threshold changes.

    ``points`` is stored in increasing k (decreasing value); every point lies
    in (0, 1/2].  For p0 > 1/2 the set is the singleton {1/2}.
    """

    p0: Probability
    m0: int
    points: tuple[Fraction, ...]


def boundary_set(p0: Probability) -> BoundarySet:
    check_probability(p0)
    m0 = odds_count(p0)
    points = tuple(Fraction(1, k) for k in range(2, m0 + 2))
    return BoundarySet(p0=p0, m0=m0, points=points)


def boundary_distance(p: Probability, bset: BoundarySet) -> Probability:
    """dist(p, B_{p0}) = min_k |p - 1/k|; exact when p is rational."""
    check_probability(p)
    if not bset.points:
        raise ValueError("boundary set is empty")
    if isinstance(p, Fraction):
        return min(abs(p - q) for q in bset.points)
    return min(abs(p - float(q)) for q in bset.points)

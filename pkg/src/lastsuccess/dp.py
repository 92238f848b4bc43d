"""Exact dynamic program for the plug-in rule's win probability.

The plug-in rule replaces the unknown success probability by the running
empirical estimate ``S_t / t`` and applies the oracle decision at each time.
Its stopping condition at a success time t < n is equivalent to the integer
test ``S_t <= b_t`` with cutoff

    b_t = ceil(t / (n - t + 1)) - 1,       b_n = n,

so no floating comparison against 1/(n-t+1) is ever needed.  The win
probability W_n(p) follows from the state probabilities

    u_{t,k} = P[rule has not stopped by t and S_t = k],

which obey the one-step recursion

    u_{t,k} = p * u_{t-1,k-1} * [k > b_t] + (1-p) * u_{t-1,k},
    u_{t,0} = (1-p) * u_{t-1,0},

initialized at u_{0,k} = [k == 0].  The recursion is generic over a scalar
algebra: with float scalars it is an O(n^2) numeric scheme (dispatched to the
compiled kernel when available), with ``Fraction`` scalars it is exact, and
with ``IntPolynomial`` scalars it produces W_n as an integer-coefficient
polynomial in p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any

from . import _kernel
from .oracle import Probability, check_horizon, check_probability
from .polynomial import ONE, ONE_MINUS_X, X, IntPolynomial, ZERO, eval_rational

__all__ = [
    "ScalarAlgebra",
    "float_algebra",
    "rational_algebra",
    "polynomial_algebra",
    "StateTable",
    "StopDistribution",
    "cutoff",
    "earliest_stop",
    "state_table",
    "stop_distribution",
    "win_probability",
    "plugin_value",
    "plugin_polynomial",
    "POLYNOMIAL_HORIZON_LIMIT",
    "FLOAT_HORIZON_LIMIT",
    "TABLE_HORIZON_LIMIT",
]

POLYNOMIAL_HORIZON_LIMIT = 256  # coefficient growth guard
FLOAT_HORIZON_LIMIT = 10**6  # O(n) memory, O(n^2) time
TABLE_HORIZON_LIMIT = 4096  # full table is O(n^2) scalars


def cutoff(t: int, n: int) -> int:
    """Integer cutoff b_t; the stopping test at time t is S_t <= b_t."""
    check_horizon(n)
    if not isinstance(t, int) or isinstance(t, bool) or not (1 <= t <= n):
        raise ValueError(f"time index must satisfy 1 <= t <= n={n}, got {t!r}")
    if t == n:
        return n
    q = n - t + 1
    return (t + q - 1) // q - 1


def earliest_stop(n: int) -> int:
    """ceil(n/2) + 1, the first time the plug-in rule can possibly stop."""
    check_horizon(n)
    return (n + 1) // 2 + 1


@dataclass(frozen=True)
class ScalarAlgebra:
    """Commutative scalar arithmetic with distinguished generators p and 1-p."""

    zero: Any
    one: Any
    gen_p: Any
    gen_q: Any

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y


def float_algebra(p: float) -> ScalarAlgebra:
    check_probability(float(p))
    p = float(p)
    return ScalarAlgebra(zero=0.0, one=1.0, gen_p=p, gen_q=1.0 - p)


def rational_algebra(p: Fraction) -> ScalarAlgebra:
    p = Fraction(p)
    check_probability(p)
    return ScalarAlgebra(zero=Fraction(0), one=Fraction(1), gen_p=p, gen_q=1 - p)


def polynomial_algebra() -> ScalarAlgebra:
    return ScalarAlgebra(zero=ZERO, one=ONE, gen_p=X, gen_q=ONE_MINUS_X)


def _next_row(prev: list, t: int, b: int, alg: ScalarAlgebra) -> list:
    """Row t of the state table from row t-1."""
    p, q = alg.gen_p, alg.gen_q
    row = [alg.mul(q, prev[0])]
    for k in range(1, t + 1):
        v = alg.mul(q, prev[k]) if k < len(prev) else alg.zero
        if k > b:
            v = alg.add(v, alg.mul(p, prev[k - 1]))
        row.append(v)
    return row


@dataclass(frozen=True)
class StateTable:
    """Full triangular table of state scalars u_{t,k}, rows t = 0..n."""

    n: int
    rows: list = field(repr=False)

    def u(self, t: int, k: int):
        return self.rows[t][k]


def state_table(n: int, algebra: ScalarAlgebra) -> StateTable:
    """All state scalars; O(n^2) memory, guarded against absurd horizons."""
    check_horizon(n)
    if n > TABLE_HORIZON_LIMIT:
        raise ValueError(
            f"full state table is limited to n <= {TABLE_HORIZON_LIMIT}; "
            "use stop_distribution or plugin_value for large horizons"
        )
    rows = [[algebra.one]]
    for t in range(1, n + 1):
        rows.append(_next_row(rows[-1], t, cutoff(t, n), algebra))
    return StateTable(n=n, rows=rows)


@dataclass(frozen=True)
class StopDistribution:
    """Stopping-time scalars of the plug-in rule.

    ``ell[t]`` is the probability of stopping at time t (index 0 unused);
    ``residual`` is the probability of never stopping.  In any algebra the
    scalars satisfy sum(ell) + residual = 1 exactly up to rounding of the
    scalar type.
    """

    n: int
    ell: list
    residual: Any


def stop_distribution(n: int, algebra: ScalarAlgebra) -> StopDistribution:
    """Stopping probabilities via one rolling row of the recursion."""
    check_horizon(n)
    p = algebra.gen_p
    first = earliest_stop(n)
    ell: list = [algebra.zero] * (n + 1)
    prev = [algebra.one]
    for t in range(1, n + 1):
        b = cutoff(t, n)
        if t < first and b >= 1:
            raise RuntimeError(
                f"internal invariant broken: b_{t} = {b} >= 1 before ceil(n/2)+1"
            )
        if b >= 1:
            # ell_t = p * sum_{k=1..b} u_{t-1,k-1}, i.e. prev[0..b-1]
            acc = prev[0]
            for j in range(1, min(b - 1, len(prev) - 1) + 1):
                acc = algebra.add(acc, prev[j])
            ell[t] = algebra.mul(p, acc)
        prev = _next_row(prev, t, b, algebra)
    residual = prev[0]
    for v in prev[1:]:
        residual = algebra.add(residual, v)
    return StopDistribution(n=n, ell=ell, residual=residual)


def win_probability(n: int, algebra: ScalarAlgebra):
    """W_n in the given algebra: sum over t of (1-p)^(n-t) * ell_t.

    Accumulated as T <- q*T + ell_t so no explicit powers of q are formed;
    the final T equals the win probability exactly in exact algebras.
    """
    check_horizon(n)
    p, q = algebra.gen_p, algebra.gen_q
    total = algebra.zero
    prev = [algebra.one]
    for t in range(1, n + 1):
        b = cutoff(t, n)
        total = algebra.mul(q, total)
        if b >= 1:
            # ell_t = p * sum_{k=1..b} u_{t-1,k-1}, i.e. prev[0..b-1]
            acc = prev[0]
            for j in range(1, min(b - 1, len(prev) - 1) + 1):
                acc = algebra.add(acc, prev[j])
            total = algebra.add(total, algebra.mul(p, acc))
        prev = _next_row(prev, t, b, algebra)
    return total


def plugin_value(n: int, p: Probability) -> Probability:
    """Win probability W_n(p) of the plug-in rule.

    Float p runs the O(n^2) numeric recursion (compiled kernel when built);
    Fraction p is exact, via the cached integer polynomial for moderate n and
    the rational-algebra recursion beyond the polynomial guard.
    """
    check_horizon(n)
    check_probability(p)
    if isinstance(p, Fraction):
        if n <= POLYNOMIAL_HORIZON_LIMIT:
            return eval_rational(plugin_polynomial(n), p)
        return win_probability(n, rational_algebra(p))
    if n > FLOAT_HORIZON_LIMIT:
        raise ValueError(f"floating evaluation is limited to n <= {FLOAT_HORIZON_LIMIT}")
    return _kernel.dp_win_prob(n, float(p))


@lru_cache(maxsize=None)
def plugin_polynomial(n: int) -> IntPolynomial:
    """W_n as an integer-coefficient polynomial in p.

    Satisfies W_n(0) = 0 and W_n(1) = 1 as coefficient identities (constant
    term zero, coefficients summing to one); both are asserted here.
    """
    check_horizon(n)
    if n > POLYNOMIAL_HORIZON_LIMIT:
        raise ValueError(
            f"exact polynomial is limited to n <= {POLYNOMIAL_HORIZON_LIMIT}"
        )
    poly = win_probability(n, polynomial_algebra())
    if poly.coeffs[0] != 0 or sum(poly.coeffs) != 1:
        raise RuntimeError(f"internal invariant broken: W_{n} endpoints are off")
    return poly

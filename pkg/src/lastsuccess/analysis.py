"""Deficit computations and the experimental surfaces around them.

The deficit V_n(p) - W_n(p) is the price of not knowing p.  This module
produces the standard views of it: pointwise records, p-grid sweeps,
worst-case (sup) deficits over [p0, 1) with grid refinement near the
oracle-threshold transition points 1/k, fixed-p decay curves, the sparse
regime p_n -> 0 with n p_n -> infinity where both values approach 1/e, the
two-sided uniform-range sweep, and the critical regime p = c/n where the
deficit provably does not vanish.

Numeric policy: sweeps run in floating point (vectorized DP kernel);
zero-versus-positive questions (equality regions) run in exact rational
arithmetic, because they cannot rest on floats.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from . import _kernel
from .dp import plugin_polynomial, plugin_value
from .oracle import (
    Probability,
    boundary_set,
    check_horizon,
    check_probability,
    oracle_value,
)
from .polynomial import ONE_MINUS_X, X, IntPolynomial

__all__ = [
    "DeficitRecord",
    "SupDeficitReport",
    "SparseRecord",
    "CriticalReport",
    "UniformRangeReport",
    "deficit",
    "sweep_grid",
    "oracle_values_grid",
    "sup_deficit",
    "fixed_p_decay",
    "sparse_check",
    "critical_regime",
    "uniform_range_sweep",
    "closed_form_check",
    "records_to_csv",
    "CSV_HEADER",
    "EULER_INV",
    "ORACLE_RATE_CONSTANT",
    "critical_bound_constant",
]

CSV_HEADER = "n,p,v,w,deficit,method"
EULER_INV = 1.0 / math.e

# |V_n(p_n) - 1/e| <= (1 + 6 e^2) p_n in the sparse regime
ORACLE_RATE_CONSTANT = 1.0 + 6.0 * math.e**2

_EDGE_GAP = 1e-6  # the grid stops at 1 - _EDGE_GAP; both values -> 1 as p -> 1
_COARSE_STEP = 1e-3


@dataclass(frozen=True)
class DeficitRecord:
    """One evaluated point: oracle value v, plug-in value w, deficit v - w."""

    n: int
    p: Probability
    v: Probability
    w: Probability
    deficit: Probability
    method: str


def deficit(n: int, p: Probability, method: str = "auto") -> DeficitRecord:
    """Oracle-minus-plug-in at one point, with matching numeric backends.

    method: "dp_float" (vectorized float DP), "dp_exact" (rational, exact),
    or "auto" which picks by the type of p.
    """
    check_horizon(n)
    check_probability(p)
    if method == "auto":
        method = "dp_exact" if isinstance(p, Fraction) else "dp_float"
    if method == "dp_exact":
        pf = p if isinstance(p, Fraction) else Fraction(p)
        v = oracle_value(n, pf)
        w = plugin_value(n, pf)
    elif method == "dp_float":
        pf = float(p)
        v = float(oracle_value(n, pf))
        w = plugin_value(n, pf)
    else:
        raise ValueError(f"unknown deficit method {method!r}")
    return DeficitRecord(n=n, p=pf, v=v, w=w, deficit=v - w, method=method)


def oracle_values_grid(n: int, grid: np.ndarray) -> np.ndarray:
    """Vectorized V_n over a float grid."""
    grid = np.asarray(grid, dtype=np.float64)
    m = np.ceil(1.0 / grid) - 1.0
    r = np.minimum(m - 1.0, float(n - 1))
    return (r + 1.0) * grid * (1.0 - grid) ** r


def sweep_grid(
    n: int, grid: Sequence[float], threads: Optional[int] = None
) -> list[DeficitRecord]:
    """Float deficit records over an arbitrary p-grid, one per grid point."""
    check_horizon(n)
    arr = np.asarray(list(grid), dtype=np.float64)
    for p in arr:
        check_probability(float(p))
    v = oracle_values_grid(n, arr)
    w = _kernel.dp_win_prob_grid(n, arr, threads=threads)
    return [
        DeficitRecord(
            n=n,
            p=float(pi),
            v=float(vi),
            w=float(wi),
            deficit=float(vi - wi),
            method="dp_float",
        )
        for pi, vi, wi in zip(arr, v, w)
    ]


@dataclass(frozen=True)
class SupDeficitReport:
    """Maximum deficit over [p0, 1 - edge_gap] on the refined grid."""

    n: int
    p0: float
    sup_value: float
    argmax_p: float
    scaled: float  # sqrt(n) * sup_value
    coarse_step: float
    window_halfwidth: float
    window_step: float
    edge_gap: float
    grid_size: int

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def _sup_grid(n: int, p0: float) -> tuple[np.ndarray, float, float]:
    """Coarse grid plus 1/sqrt(n)-scaled windows around each point 1/k.

    The worst-case deficit concentrates within O(1/sqrt(n)) of the oracle
    transition points, so a uniform grid fine enough there would be
    wastefully large globally.
    """
    edge = 1.0 - _EDGE_GAP
    halfwidth = 10.0 / math.sqrt(n)
    step = 1.0 / (50.0 * math.sqrt(n))
    pieces = [np.arange(p0, edge, _COARSE_STEP), np.asarray([edge])]
    for q in boundary_set(p0).points:
        c = float(q)
        if c < p0:
            continue
        lo, hi = max(p0, c - halfwidth), min(edge, c + halfwidth)
        pieces.append(np.arange(lo, hi, step))
        pieces.append(np.asarray([c]))
    grid = np.unique(np.concatenate(pieces))
    grid = grid[(grid >= p0) & (grid <= edge)]
    return grid, halfwidth, step


def sup_deficit(n: int, p0: float, threads: Optional[int] = None) -> SupDeficitReport:
    """Worst-case deficit over [p0, 1) via the refined grid."""
    check_horizon(n)
    check_probability(p0)
    grid, halfwidth, step = _sup_grid(n, p0)
    d = oracle_values_grid(n, grid) - _kernel.dp_win_prob_grid(n, grid, threads=threads)
    i = int(np.argmax(d))
    sup = float(d[i])
    return SupDeficitReport(
        n=n,
        p0=float(p0),
        sup_value=sup,
        argmax_p=float(grid[i]),
        scaled=math.sqrt(n) * sup,
        coarse_step=_COARSE_STEP,
        window_halfwidth=halfwidth,
        window_step=step,
        edge_gap=_EDGE_GAP,
        grid_size=int(grid.size),
    )


def fixed_p_decay(
    p: float, horizons: Iterable[int], threads: Optional[int] = None
) -> list[DeficitRecord]:
    """Deficit along a horizon list at fixed p (the exponential-decay view)."""
    return [deficit(n, float(p), method="dp_float") for n in horizons]


@dataclass(frozen=True)
class SparseRecord:
    """One sparse-regime point: p_n, both values, and their 1/e errors."""

    n: int
    p: float
    np_product: float
    v: float
    w: float
    v_err: float  # |V_n(p_n) - 1/e|
    w_err: float  # |W_n(p_n) - 1/e|
    v_rate_bound: float  # (1 + 6 e^2) p_n

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def sparse_check(
    schedule: Callable[[int], float], horizons: Iterable[int]
) -> list[SparseRecord]:
    """Evaluate V, W and their distances to 1/e along p_n = schedule(n)."""
    out = []
    for n in horizons:
        check_horizon(n)
        p = float(schedule(n))
        check_probability(p)
        v = float(oracle_value(n, p))
        w = plugin_value(n, p)
        out.append(
            SparseRecord(
                n=n,
                p=p,
                np_product=n * p,
                v=v,
                w=w,
                v_err=abs(v - EULER_INV),
                w_err=abs(w - EULER_INV),
                v_rate_bound=ORACLE_RATE_CONSTANT * p,
            )
        )
    return out


def critical_bound_constant(c: float) -> float:
    """(1 + 3c/2) e^{-c} - 1, the asymptotic deficit floor at p = c/n."""
    return (1.0 + 1.5 * c) * math.exp(-c) - 1.0


@dataclass(frozen=True)
class CriticalReport:
    """Deficits at p = c/n alongside the analytic lower-bound constant."""

    c: float
    bound_constant: float
    records: list[DeficitRecord]

    def to_json(self) -> str:
        return json.dumps(
            {
                "c": self.c,
                "bound_constant": self.bound_constant,
                "records": [asdict(r) for r in self.records],
            }
        )


def critical_regime(c: float, horizons: Iterable[int]) -> CriticalReport:
    """Deficit at p = c/n for each horizon; it does not vanish as n grows."""
    if not (0.0 < c < 1.0):
        raise ValueError(f"critical constant c must lie in (0,1), got {c}")
    records = [deficit(n, c / n, method="dp_float") for n in horizons]
    return CriticalReport(c=c, bound_constant=critical_bound_constant(c), records=records)


@dataclass(frozen=True)
class UniformRangeReport:
    """Grid maxima over (0, tilde_p] and [p_low, 1), checked separately.

    On the left range every win probability is at most n p (one success is
    needed), capping the deficit by 2 n tilde_p; ``left_cap_ok`` records the
    pointwise max(v, w) <= n p cross-check.
    """

    n: int
    tilde_p: float
    p_low: float
    left_max: float
    left_cap: float  # 2 n tilde_p
    left_cap_ok: bool
    right_max: float
    right_argmax: float

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def uniform_range_sweep(
    n: int, tilde_p: float, p_low: float, threads: Optional[int] = None
) -> UniformRangeReport:
    """Max deficit over the two-sided range (0, tilde_p] union [p_low, 1)."""
    check_horizon(n)
    check_probability(tilde_p)
    check_probability(p_low)
    if not tilde_p < p_low:
        raise ValueError(f"need tilde_p < p_low, got {tilde_p} >= {p_low}")
    left_grid = np.geomspace(tilde_p / 1000.0, tilde_p, 33)
    lv = oracle_values_grid(n, left_grid)
    lw = _kernel.dp_win_prob_grid(n, left_grid, threads=threads)
    cap_ok = bool(
        np.all(np.maximum(lv, lw) <= n * left_grid * (1.0 + 1e-12))
    )
    right = sup_deficit(n, p_low, threads=threads)
    return UniformRangeReport(
        n=n,
        tilde_p=float(tilde_p),
        p_low=float(p_low),
        left_max=float(np.max(lv - lw)),
        left_cap=2.0 * n * tilde_p,
        left_cap_ok=cap_ok,
        right_max=right.sup_value,
        right_argmax=right.argmax_p,
    )


def closed_form_check(n: int) -> bool:
    """Coefficient-level equality of W_n with its small-horizon closed form.

    The closed forms are built independently from polynomial arithmetic:
    W_2 = W_3 = p, W_4 = p(1-p)^3 + p - p^2(1-p)^2,
    W_5 = p(1-p)^4 + p - p^2(1-p)^3.
    """
    forms: dict[int, IntPolynomial] = {
        2: X,
        3: X,
        4: X * ONE_MINUS_X**3 + X - X**2 * ONE_MINUS_X**2,
        5: X * ONE_MINUS_X**4 + X - X**2 * ONE_MINUS_X**3,
    }
    if n not in forms:
        raise ValueError(f"closed forms are tabulated for n in 2..5, got {n}")
    return plugin_polynomial(n) == forms[n]


def _fmt(x: Union[float, Fraction]) -> str:
    if isinstance(x, Fraction):
        return f"{float(x):.17g}"
    return f"{x:.17g}"


def records_to_csv(records: Iterable[DeficitRecord]) -> str:
    """Stable CSV: header ``n,p,v,w,deficit,method``, floats at 17 digits."""
    lines = [CSV_HEADER]
    for r in sorted(records, key=lambda r: (r.n, float(r.p))):
        lines.append(
            f"{r.n},{_fmt(r.p)},{_fmt(r.v)},{_fmt(r.w)},{_fmt(r.deficit)},{r.method}"
        )
    return "\n".join(lines) + "\n"

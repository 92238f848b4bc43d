"""Command-line front end: every computation behind reproducible flags.

Conventions:
  * probabilities written ``a/b`` are exact rationals and route to the exact
    backend; decimal syntax routes to floating point;
  * horizon specs are a single value ``60``, a comma list ``5,10,30`` or an
    inclusive range ``100:800:100``;
  * the seed defaults to 42, so identical flags give byte-identical output;
  * exit codes: 0 success, 2 flag/usage error, 1 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import analysis, isolation, rules, simulate
from .dp import plugin_polynomial
from .oracle import Probability

DEFAULT_SEED = simulate.DEFAULT_SEED


class UsageError(Exception):
    """Flag validation failure; mapped to exit code 2."""


def _parse_p(text: str) -> Probability:
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse probability {text!r}: {exc}") from exc


def _parse_n_list(text: str) -> list[int]:
    try:
        if ":" in text:
            parts = [int(x) for x in text.split(":")]
            if len(parts) == 2:
                lo, hi, step = parts[0], parts[1], 1
            elif len(parts) == 3:
                lo, hi, step = parts
            else:
                raise ValueError("range must be lo:hi or lo:hi:step")
            if step < 1 or hi < lo:
                raise ValueError("empty range")
            return list(range(lo, hi + 1, step))
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse horizon spec {text!r}: {exc}") from exc


def _parse_grid(text: str) -> list[float]:
    try:
        if ":" in text:
            start, stop, step = (float(x) for x in text.split(":"))
            if step <= 0 or stop < start:
                raise ValueError("empty grid")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return [start + i * step for i in range(count)]
        return [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse grid spec {text!r}: {exc}") from exc


def _emit(out: Optional[str], text: str) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _p_str(x: Probability) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return f"{x:.17g}"


# -------------------------------------------------------------------- value


def _cmd_value(args) -> int:
    p = _parse_p(args.p)
    rec = analysis.deficit(args.n, p)
    if args.format == "json":
        payload = {
            "n": rec.n,
            "p": _p_str(rec.p),
            "v": _p_str(rec.v),
            "w": _p_str(rec.w),
            "deficit": _p_str(rec.deficit),
            "method": rec.method,
        }
        _emit(args.out, json.dumps(payload) + "\n")
    else:
        exact = " (exact)" if rec.method == "dp_exact" else ""
        _emit(
            args.out,
            f"n = {rec.n}\nv = {_p_str(rec.v)}\nw = {_p_str(rec.w)}\n"
            f"deficit = {_p_str(rec.deficit)}{exact}\n",
        )
    return 0


# -------------------------------------------------------------------- sweep


def _cmd_sweep(args) -> int:
    grid = _parse_grid(args.grid)
    records = []
    for n in _parse_n_list(args.n):
        records.extend(analysis.sweep_grid(n, grid, threads=args.threads))
    if args.format == "json":
        from dataclasses import asdict

        text = "\n".join(json.dumps(asdict(r)) for r in records) + "\n"
    else:
        text = analysis.records_to_csv(records)
    _emit(args.out, text)
    return 0


# --------------------------------------------------------------- supdeficit


def _cmd_supdeficit(args) -> int:
    p0 = _parse_p(args.p0)
    lines = []
    for n in _parse_n_list(args.n):
        report = analysis.sup_deficit(n, float(p0), threads=args.threads)
        lines.append(report.to_json())
    _emit(args.out, "\n".join(lines) + "\n")
    return 0


# ------------------------------------------------------------------- sparse


def _cmd_sparse(args) -> int:
    exponent = args.exponent
    if not (0.0 < exponent < 1.0):
        raise UsageError("--exponent must lie in (0,1)")
    records = analysis.sparse_check(lambda n: n**-exponent, _parse_n_list(args.n))
    _emit(args.out, "\n".join(r.to_json() for r in records) + "\n")
    return 0


# ----------------------------------------------------------------- critical


def _cmd_critical(args) -> int:
    report = analysis.critical_regime(args.c, _parse_n_list(args.n))
    _emit(args.out, report.to_json() + "\n")
    return 0


# ------------------------------------------------------------------ uniform


def _cmd_uniform(args) -> int:
    tilde_p = float(_parse_p(args.tilde_p))
    p_low = float(_parse_p(args.p_low))
    lines = []
    for n in _parse_n_list(args.n):
        report = analysis.uniform_range_sweep(n, tilde_p, p_low, threads=args.threads)
        lines.append(report.to_json())
    _emit(args.out, "\n".join(lines) + "\n")
    return 0


# ------------------------------------------------------------------ certify


def _cmd_certify(args) -> int:
    ns = _parse_n_list(args.n)
    methods = isolation.METHODS if args.method == "both" else (args.method,)
    lines = []
    for n in ns:
        certs = [isolation.monotonicity_certificate(n, method=m) for m in methods]
        verdicts = {c.verdict for c in certs}
        if len(verdicts) != 1:
            raise RuntimeError(f"isolation backends disagree at n={n}: {verdicts}")
        lines.append(json.dumps(certs[0].to_json_dict()))
    _emit(args.out, "\n".join(lines) + "\n")
    return 0


# ----------------------------------------------------------------- simulate


def _cmd_simulate(args) -> int:
    p = float(_parse_p(args.p))
    rule = _make_rule(args.rule, p)
    result = simulate.estimate_win(
        rule, args.n, p, args.trials, seed=args.seed, threads=args.threads
    )
    payload = json.loads(result.to_json())
    exact = rules.exact_reference(rule, args.n, p)
    if exact is not None:
        payload["exact"] = exact
        sigma = math.sqrt(max(exact * (1.0 - exact), 1e-300) / args.trials)
        payload["z"] = (result.estimate - exact) / sigma
    _emit(args.out, json.dumps(payload) + "\n")
    return 0


def _make_rule(spec: str, p: float) -> rules.StoppingRule:
    if spec == "plugin":
        return rules.plugin_rule()
    if spec == "first":
        return rules.first_rule()
    if spec == "last":
        return rules.last_rule()
    if spec == "oracle":
        return rules.oracle_rule(p)  # the one rule that reads the true p
    if spec.startswith("threshold:"):
        try:
            return rules.fixed_threshold_rule(int(spec.split(":", 1)[1]))
        except ValueError as exc:
            raise UsageError(f"bad threshold spec {spec!r}") from exc
    raise UsageError(
        f"unknown rule {spec!r}; expected plugin, first, last, oracle or threshold:S"
    )


# --------------------------------------------------------------------- poly


def _cmd_poly(args) -> int:
    coeffs = plugin_polynomial(args.n).coeffs
    _emit(args.out, json.dumps([str(c) for c in coeffs]) + "\n")
    return 0


# -------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lastsuccess",
        description="Plug-in versus oracle stopping on the last success of "
        "Bernoulli trials with unknown success probability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, threads=False):
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        if threads:
            sp.add_argument("--threads", type=int, default=None, help="worker cap")

    sp = sub.add_parser("value", help="V_n(p), W_n(p) and the deficit at one point")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", required=True, help="decimal for float, a/b for exact")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    add_common(sp)
    sp.set_defaults(func=_cmd_value)

    sp = sub.add_parser("sweep", help="deficit records over a p-grid")
    sp.add_argument("--n", required=True, help="horizon list/range spec")
    sp.add_argument("--grid", required=True, help="start:stop:step or comma list")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    add_common(sp, threads=True)
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("supdeficit", help="worst-case deficit over [p0, 1)")
    sp.add_argument("--p0", required=True)
    sp.add_argument("--n", required=True)
    sp.add_argument("--scaled", action="store_true", help="kept for symmetry; "
                    "reports always include the sqrt(n)-scaled value")
    add_common(sp, threads=True)
    sp.set_defaults(func=_cmd_supdeficit)

    sp = sub.add_parser("sparse", help="sparse-regime check with p_n = n^-a")
    sp.add_argument("--n", required=True)
    sp.add_argument("--exponent", type=float, default=0.5)
    add_common(sp)
    sp.set_defaults(func=_cmd_sparse)

    sp = sub.add_parser("critical", help="deficits at p = c/n with the barrier constant")
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--n", required=True)
    add_common(sp)
    sp.set_defaults(func=_cmd_critical)

    sp = sub.add_parser("uniform", help="two-sided range sweep (0,tilde_p] + [p_low,1)")
    sp.add_argument("--n", required=True)
    sp.add_argument("--tilde-p", dest="tilde_p", required=True)
    sp.add_argument("--p-low", dest="p_low", required=True)
    add_common(sp, threads=True)
    sp.set_defaults(func=_cmd_uniform)

    sp = sub.add_parser("certify", help="exact monotonicity certificates for W_n")
    sp.add_argument("--n", required=True)
    sp.add_argument(
        "--method", choices=("descartes", "sturm", "both"), default="descartes"
    )
    add_common(sp)
    sp.set_defaults(func=_cmd_certify)

    sp = sub.add_parser("simulate", help="seeded Monte Carlo win-probability estimate")
    sp.add_argument("--rule", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    add_common(sp, threads=True)
    sp.set_defaults(func=_cmd_simulate)

    sp = sub.add_parser("poly", help="W_n coefficients as decimal strings")
    sp.add_argument("--n", type=int, required=True)
    add_common(sp)
    sp.set_defaults(func=_cmd_poly)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

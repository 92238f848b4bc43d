"""Exact sign certification of integer polynomials on (0, 1).

Decides whether f(p) < 0 somewhere on the open unit interval, in exact
arithmetic, and produces a rational witness interval when it does.  Two
independent root-isolation backends feed the same downstream analysis:

* ``descartes`` -- Vincent-Collins-Akritas bisection driven by Descartes'
  rule of signs on the Mobius-transformed polynomial (fast, default);
* ``sturm``     -- bisection driven by Sturm-chain sign-variation counts
  (independent cross-check; works without square-free preprocessing).

Either way the interval endpoints are dyadic rationals, every sign decision
is an integer computation, and no floating point is involved anywhere.

The headline consumer is ``monotonicity_certificate(n)``, which applies the
machinery to the derivative of the plug-in win-probability polynomial W_n.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .dp import POLYNOMIAL_HORIZON_LIMIT, plugin_polynomial
from .polynomial import IntPolynomial, divexact, pseudo_remainder, sign_at, squarefree_part

__all__ = [
    "NON_NEGATIVE",
    "NEGATIVE_SOMEWHERE",
    "RootInterval",
    "SignCertificate",
    "isolate_roots01",
    "isolate_negative_region",
    "monotonicity_certificate",
    "METHODS",
]

NON_NEGATIVE = "NonNegativeOnInterval"
NEGATIVE_SOMEWHERE = "NegativeSomewhere"
METHODS = ("descartes", "sturm")

_WITNESS_WIDTH_CAP = Fraction(1, 10**9)  # fallback stop for 4-decimal shrink
_MAX_NODES = 100_000


@dataclass(frozen=True)
class RootInterval:
    """A real root of the target captured in (lo, hi); lo == hi marks an
    exactly known rational root."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class SignCertificate:
    """Outcome of the sign decision on (0, 1).

    On ``NegativeSomewhere`` the witness is an open rational interval on
    which the polynomial is strictly negative throughout; its endpoints are
    bisected until they pin the bounding roots to four decimal digits.
    """

    verdict: str
    witness: Optional[tuple[Fraction, Fraction]]
    method: str
    n: Optional[int] = None

    def to_json_dict(self) -> dict:
        lo, hi = (None, None) if self.witness is None else self.witness
        return {
            "n": self.n,
            "verdict": self.verdict,
            "witness_lo": None if lo is None else _decimal_str(lo),
            "witness_hi": None if hi is None else _decimal_str(hi),
            "method": self.method,
        }


def _decimal_str(x: Fraction) -> str:
    """Exact decimal string for fractions with 2^a 5^b denominators."""
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:  # not a terminating decimal; keep it exact as a fraction
        return f"{x.numerator}/{x.denominator}"
    shift = max(twos, fives)
    scaled = x.numerator * 10**shift // x.denominator
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(shift + 1, "0")
    if shift == 0:
        return sign + digits
    return f"{sign}{digits[:-shift]}.{digits[-shift:]}"


def _round4(x: Fraction) -> Fraction:
    """Round half up to 4 decimal places, exactly."""
    return Fraction(math.floor(x * 10000 + Fraction(1, 2)), 10000)


# --------------------------------------------------------------------------
# coefficient-list helpers (plain int lists, lowest degree first)


def _norm(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _primitive(c: list[int]) -> list[int]:
    g = 0
    for x in c:
        g = math.gcd(g, x)
        if g == 1:
            return c
    if g in (0, 1):
        return c
    return [x // g for x in c]


def _shift1(c: list[int]) -> list[int]:
    """c(x) -> c(x+1) via the synthetic Horner scheme."""
    c = list(c)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += c[j + 1]
    return c


def _variations(c: list[int]) -> int:
    signs = [1 if x > 0 else -1 for x in c if x != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _descartes_bound_01(c: list[int]) -> int:
    """Descartes bound on the number of roots in open (0,1).

    Counts sign variations of (1+x)^d c(1/(1+x)); equals the root count when
    it is 0 or 1.
    """
    return _variations(_shift1(list(reversed(c))))


def _divide_by_x_minus_1(c: list[int]) -> list[int]:
    """Exact quotient c / (x - 1); requires c(1) == 0."""
    out = [0] * (len(c) - 1)
    carry = c[-1]
    for i in range(len(c) - 2, -1, -1):
        out[i] = carry
        carry = c[i] + carry
    if carry != 0:
        raise ValueError("polynomial does not vanish at 1")
    return _norm(out)


# --------------------------------------------------------------------------
# backend: Descartes / VCA


def _vca_isolate(sf: IntPolynomial) -> list[RootInterval]:
    """Isolating intervals for the roots of square-free ``sf`` in (0,1).

    Requires sf(0) != 0 and sf(1) != 0.  Returned intervals are disjoint
    apart from possibly shared endpoints, with non-root dyadic endpoints;
    exact dyadic roots come back as degenerate intervals.
    """
    out: list[RootInterval] = []
    stack = [(Fraction(0), Fraction(1), list(sf.coeffs))]
    nodes = 0
    while stack:
        nodes += 1
        if nodes > _MAX_NODES:
            raise RuntimeError("root isolation did not terminate (input not square-free?)")
        lo, hi, g = stack.pop()
        v = _descartes_bound_01(g)
        if v == 0:
            continue
        if v == 1:
            out.append(RootInterval(lo, hi))
            continue
        mid = (lo + hi) / 2
        d = len(g) - 1
        gl = _norm([c * 2 ** (d - i) for i, c in enumerate(g)])  # 2^d g(x/2)
        gr = _shift1(gl)  # 2^d g((x+1)/2)
        if gr and gr[0] == 0:  # g(1/2) == 0: mid is an exact root
            out.append(RootInterval(mid, mid))
            gr = _norm(gr[1:])
            gl = _divide_by_x_minus_1(gl)
        stack.append((lo, mid, _primitive(gl)))
        stack.append((mid, hi, _primitive(gr)))
    return sorted(out, key=lambda iv: (iv.lo, iv.hi))


def _vca_refine(sf: IntPolynomial) -> Callable[[RootInterval], RootInterval]:
    """One bisection step on an isolating interval, by exact sign of sf."""

    def step(iv: RootInterval) -> RootInterval:
        if iv.exact:
            return iv
        mid = (iv.lo + iv.hi) / 2
        s_mid = sign_at(sf, mid)
        if s_mid == 0:
            return RootInterval(mid, mid)
        if s_mid == sign_at(sf, iv.lo):
            return RootInterval(mid, iv.hi)
        return RootInterval(iv.lo, mid)

    return step


# --------------------------------------------------------------------------
# backend: Sturm


def sturm_chain(f: IntPolynomial) -> list[IntPolynomial]:
    """Canonical Sturm chain with content removed at every step.

    Pseudo-remainders are sign-corrected so each element is the true
    remainder times a positive rational; sign-variation counts are therefore
    those of the classical chain.
    """
    chain = [f.primitive(), f.derivative().primitive()]
    while not chain[-1].is_zero:
        r = pseudo_remainder(chain[-2], chain[-1])
        if r.is_zero:
            break
        chain.append((-r).primitive())
    return chain


class _SturmIsolator:
    """Root isolation on (0,1) by bisection on Sturm variation counts.

    Works directly on a possibly non-square-free polynomial: the chain counts
    distinct roots, and interval refinement is also count-driven (sign
    bisection would be blind to even-multiplicity roots).
    """

    def __init__(self, f: IntPolynomial):
        self.f = f
        self.chain = sturm_chain(f)
        self._vcache: dict[Fraction, int] = {}

    def variations_at(self, x: Fraction) -> int:
        v = self._vcache.get(x)
        if v is None:
            v = _variations_signs([sign_at(g, x) for g in self.chain])
            self._vcache[x] = v
        return v

    def count(self, a: Fraction, b: Fraction) -> int:
        """Distinct roots in (a, b]; endpoints must not be roots of f."""
        return self.variations_at(a) - self.variations_at(b)

    def isolate(self) -> list[RootInterval]:
        out: list[RootInterval] = []
        zero, one = Fraction(0), Fraction(1)
        self._isolate_rec(zero, one, self.count(zero, one), out, 0)
        return sorted(out, key=lambda iv: (iv.lo, iv.hi))

    def _isolate_rec(self, a, b, cnt, out, depth):
        if cnt == 0:
            return
        if depth > 4000:
            raise RuntimeError("Sturm isolation did not terminate")
        if cnt == 1:
            out.append(RootInterval(a, b))
            return
        mid = (a + b) / 2
        if sign_at(self.f, mid) != 0:
            self._isolate_rec(a, mid, self.count(a, mid), out, depth + 1)
            self._isolate_rec(mid, b, self.count(mid, b), out, depth + 1)
            return
        # exact root at the midpoint: carve out a punctured neighbourhood
        out.append(RootInterval(mid, mid))
        w = (b - a) / 8
        while True:
            mlo, mhi = mid - w, mid + w
            if (
                mlo > a
                and mhi < b
                and sign_at(self.f, mlo) != 0
                and sign_at(self.f, mhi) != 0
                and self.count(mlo, mhi) == 1
            ):
                break
            w /= 2
        self._isolate_rec(a, mlo, self.count(a, mlo), out, depth + 1)
        self._isolate_rec(mhi, b, self.count(mhi, b), out, depth + 1)

    def refine(self, iv: RootInterval) -> RootInterval:
        if iv.exact:
            return iv
        mid = (iv.lo + iv.hi) / 2
        if sign_at(self.f, mid) == 0:
            return RootInterval(mid, mid)
        if self.count(iv.lo, mid) == 1:
            return RootInterval(iv.lo, mid)
        return RootInterval(mid, iv.hi)


def _variations_signs(signs: list[int]) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


# --------------------------------------------------------------------------
# shared driver


def _deflate_ends(f: IntPolynomial) -> IntPolynomial:
    """Remove x^a and (x-1)^b factors; interior roots are untouched."""
    c = list(f.coeffs)
    while c and c[0] == 0:
        c.pop(0)
    work = IntPolynomial(c)
    while not work.is_zero and work(1) == 0:
        work = divexact(work, IntPolynomial((-1, 1)))
    return work


def _isolator_for(f: IntPolynomial, method: str):
    """(intervals, refine_step) for the deflated target polynomial."""
    if method == "descartes":
        sf = squarefree_part(f)
        return _vca_isolate(sf), _vca_refine(sf)
    if method == "sturm":
        iso = _SturmIsolator(f.primitive())
        return iso.isolate(), iso.refine
    raise ValueError(f"unknown isolation method {method!r}; expected one of {METHODS}")


def isolate_roots01(f: IntPolynomial, method: str = "descartes") -> list[RootInterval]:
    """Disjoint isolating intervals for the distinct roots of f in (0, 1).

    Intervals are refined until strictly separated from each other and from
    the endpoints 0 and 1.
    """
    if f.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    work = _deflate_ends(f)
    if work.degree <= 0:
        return []
    intervals, refine = _isolator_for(work, method)
    return _separate(intervals, refine)


def _separate(
    intervals: list[RootInterval], refine: Callable[[RootInterval], RootInterval]
) -> list[RootInterval]:
    """Refine until intervals are strictly inside (0,1) and pairwise strictly
    separated (hi_i < lo_{i+1})."""
    ivs = list(intervals)
    for _ in range(10_000):
        dirty = False
        for i, iv in enumerate(ivs):
            if not iv.exact and (iv.lo == 0 or iv.hi == 1):
                ivs[i] = refine(iv)
                dirty = True
        for i in range(len(ivs) - 1):
            if ivs[i].hi >= ivs[i + 1].lo:
                if not ivs[i].exact and ivs[i].width >= ivs[i + 1].width:
                    ivs[i] = refine(ivs[i])
                elif not ivs[i + 1].exact:
                    ivs[i + 1] = refine(ivs[i + 1])
                else:
                    raise RuntimeError("two coincident exact roots; input not square-free")
                dirty = True
        if not dirty:
            return ivs
    raise RuntimeError("failed to separate isolating intervals")


def isolate_negative_region(f: IntPolynomial, method: str = "descartes") -> SignCertificate:
    """Decide whether f < 0 somewhere on (0, 1), in exact arithmetic.

    The sign of f is constant between consecutive distinct roots, so one
    exact sign evaluation per root-free gap settles the verdict.  On a
    negative verdict the witness interval lies strictly inside the negative
    component, with endpoints refined to the 4-decimal reporting precision.
    """
    if f.is_zero:
        raise ValueError("the zero polynomial has no sign certificate")
    work = _deflate_ends(f)
    if work.degree <= 0:
        intervals: list[RootInterval] = []
        refine = lambda iv: iv  # noqa: E731 - no roots, never called
    else:
        intervals, refine = _isolator_for(work, method)
        intervals = _separate(intervals, refine)

    gaps = _gap_samples(intervals)
    signs = [sign_at(f, s) for s in gaps]
    if any(s == 0 for s in signs):
        raise RuntimeError("sample point landed on a root; separation failed")
    try:
        j = signs.index(-1)
    except ValueError:
        return SignCertificate(verdict=NON_NEGATIVE, witness=None, method=method)

    lo = Fraction(0)
    if j > 0:
        left = _refine_to_digits(intervals[j - 1], refine)
        lo = left.hi
    hi = Fraction(1)
    if j < len(intervals):
        right = _refine_to_digits(intervals[j], refine)
        hi = right.lo
    if not lo < hi:
        raise RuntimeError("degenerate witness interval")
    if sign_at(f, (lo + hi) / 2) >= 0:
        raise RuntimeError("witness midpoint is not negative")
    return SignCertificate(verdict=NEGATIVE_SOMEWHERE, witness=(lo, hi), method=method)


def _gap_samples(intervals: list[RootInterval]) -> list[Fraction]:
    """One interior sample per root-free gap, including the two end gaps."""
    cuts = [Fraction(0)]
    for iv in intervals:
        cuts.append(iv.lo)
        cuts.append(iv.hi)
    cuts.append(Fraction(1))
    return [(cuts[i] + cuts[i + 1]) / 2 for i in range(0, len(cuts), 2)]


def _refine_to_digits(
    iv: RootInterval, refine: Callable[[RootInterval], RootInterval]
) -> RootInterval:
    """Shrink until both endpoints round to the same 4 decimal digits.

    A width cap covers the (measure-zero) case of a root sitting exactly on
    a rounding boundary.
    """
    while not iv.exact and _round4(iv.lo) != _round4(iv.hi) and iv.width > _WITNESS_WIDTH_CAP:
        iv = refine(iv)
    return iv


def monotonicity_certificate(n: int, method: str = "descartes") -> SignCertificate:
    """Exact verdict on whether p -> W_n(p) is nondecreasing on (0, 1).

    ``NonNegativeOnInterval`` certifies W_n' >= 0 everywhere on (0,1);
    ``NegativeSomewhere`` comes with a rational interval on which W_n' < 0.
    """
    if not isinstance(n, int) or isinstance(n, bool) or not (2 <= n <= POLYNOMIAL_HORIZON_LIMIT):
        raise ValueError(
            f"certificates require 2 <= n <= {POLYNOMIAL_HORIZON_LIMIT}, got {n!r}"
        )
    cert = isolate_negative_region(plugin_polynomial(n).derivative(), method=method)
    return dataclasses.replace(cert, n=n)

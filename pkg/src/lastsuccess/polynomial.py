"""Dense integer-coefficient polynomials with arbitrary-precision arithmetic.

This is the exact-arithmetic substrate for certification: ring operations,
derivative, exact rational evaluation, exact division, primitive-PRS gcd and
square-free part.  Coefficients are Python ints (lowest degree first), so
nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Union

__all__ = [
    "IntPolynomial",
    "ZERO",
    "ONE",
    "X",
    "ONE_MINUS_X",
    "poly_add",
    "poly_mul",
    "poly_derivative",
    "eval_rational",
    "sign_at",
    "divexact",
    "pseudo_remainder",
    "poly_gcd",
    "squarefree_part",
]


def _normalized(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = list(coeffs)
    for c in out:
        if isinstance(c, bool) or not isinstance(c, int):
            raise TypeError(f"coefficients must be ints, got {c!r}")
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class IntPolynomial:
    """Immutable dense polynomial over the integers.

    ``coeffs[i]`` is the coefficient of x^i; the representation is normalized
    (no trailing zeros), so the leading coefficient is nonzero unless the
    polynomial is zero.  Supports +, -, *, ** and is hashable, so instances
    can serve as scalars in the generic dynamic program.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _normalized(coeffs))

    def __setattr__(self, *_):
        raise AttributeError("IntPolynomial is immutable")

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the convention degree(0) = -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int) and not isinstance(other, bool):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)!r})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus and evaluation ---------------------------------------------

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def __call__(self, x):
        """Horner evaluation in the arithmetic of ``x`` (float, Fraction, int)."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- integer-specific helpers ---------------------------------------------

    def content(self) -> int:
        """Positive gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.coeffs:
            g = _int_gcd(g, c)
            if g == 1:
                return 1
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide out the content; sign of the leading coefficient is kept."""
        g = self.content()
        if g in (0, 1):
            return self
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def shifted(self, k: int) -> "IntPolynomial":
        """Multiply by x^k."""
        if not self.coeffs:
            return ZERO
        return IntPolynomial((0,) * k + self.coeffs)


def _coerce(value) -> "IntPolynomial":
    if isinstance(value, IntPolynomial):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return IntPolynomial((value,))
    return NotImplemented


ZERO = IntPolynomial(())
ONE = IntPolynomial((1,))
X = IntPolynomial((0, 1))
ONE_MINUS_X = IntPolynomial((1, -1))


def poly_add(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    return a + b


def poly_mul(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    return a * b


def poly_derivative(a: IntPolynomial) -> IntPolynomial:
    return a.derivative()


def eval_rational(f: IntPolynomial, x: Union[Fraction, int]) -> Fraction:
    """Exact Horner evaluation at a rational point."""
    acc = Fraction(0)
    x = Fraction(x)
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def sign_at(f: IntPolynomial, x: Fraction) -> int:
    """Exact sign of f(x) at a rational point, computed in integers.

    Evaluates den^deg * f(num/den) = sum_i c_i num^i den^(deg-i), which has
    the sign of f(x) since den > 0.
    """
    num, den = x.numerator, x.denominator
    d = f.degree
    acc = 0
    npow = 1
    dpow = den**d if d >= 0 else 1
    for c in f.coeffs:
        acc += c * npow * dpow
        npow *= num
        if dpow != 1:
            dpow //= den
    return (acc > 0) - (acc < 0)


def divexact(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Quotient f/g when g divides f exactly over the integers.

    Raises ValueError if the division is not exact.
    """
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(f.coeffs)
    gc = g.coeffs
    dg = len(gc) - 1
    lg = gc[-1]
    q = [0] * max(len(rem) - dg, 0)
    while len(rem) - 1 >= dg and rem:
        c, r = divmod(rem[-1], lg)
        if r != 0:
            raise ValueError("division is not exact")
        k = len(rem) - 1 - dg
        q[k] = c
        for i, gi in enumerate(gc):
            rem[k + i] -= c * gi
        while rem and rem[-1] == 0:
            rem.pop()
    if rem:
        raise ValueError("division is not exact")
    return IntPolynomial(q)


def pseudo_remainder(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Remainder of f by g scaled by a positive integer constant.

    Classic pseudo-division multiplies f by lc(g)^k to keep arithmetic in the
    integers; the result here is additionally sign-corrected so that it equals
    rem(f, g) times a *positive* rational, which is what sign-based algorithms
    (Sturm chains, gcd) need.
    """
    if g.is_zero:
        raise ZeroDivisionError("pseudo-division by the zero polynomial")
    gc = g.coeffs
    dg = len(gc) - 1
    lg = gc[-1]
    rem = list(f.coeffs)
    steps = 0
    while rem and len(rem) - 1 >= dg:
        lr = rem[-1]
        k = len(rem) - 1 - dg
        rem = [lg * c for c in rem]
        for i, gi in enumerate(gc):
            rem[k + i] -= lr * gi
        while rem and rem[-1] == 0:
            rem.pop()
        steps += 1
    if lg < 0 and steps % 2 == 1:
        rem = [-c for c in rem]
    return IntPolynomial(rem)


def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Primitive gcd via the primitive polynomial remainder sequence."""
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        r = pseudo_remainder(a, b).primitive()
        a, b = b, r
    if a.is_zero:
        return ZERO
    return a if a.leading > 0 else -a


def squarefree_part(f: IntPolynomial) -> IntPolynomial:
    """f divided by gcd(f, f'): same distinct roots, all simple."""
    if f.is_zero:
        raise ValueError("zero polynomial has no square-free part")
    fp = f.primitive()
    g = poly_gcd(fp, fp.derivative())
    if g.degree <= 0:
        return fp
    return divexact(fp, g).primitive()

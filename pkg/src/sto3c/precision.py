"""Arbitrary-precision arithmetic kernel.

Everything numeric in this package flows through a PrecisionContext, which
wraps a private mpmath context at ``decimal_digits + guard_digits`` working
precision.  Results are bit-deterministic for a given context: fixed
summation orders, fixed algorithm switch points, no global mpmath state.

The special functions implemented here are the exponential integral at
negative real arguments and the Euler-Mascheroni constant; exact integer
factorials are cached module-wide.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

import mpmath


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


# ---------------------------------------------------------------------------
# exact factorials, shared by every context (exact integers, no rounding)
# ---------------------------------------------------------------------------

_FACT_LOCK = threading.Lock()
_FACT: list[int] = [1, 1]


def factorial(n: int) -> int:
    """Exact n! as a Python integer.

    Values are cached in a grow-only table; growth is synchronized so
    concurrent readers always see a consistent prefix.
    """
    if n < 0:
        raise DomainError("factorial requires n >= 0, got %r" % (n,))
    if n < len(_FACT):
        return _FACT[n]
    with _FACT_LOCK:
        while len(_FACT) <= n:
            _FACT.append(_FACT[-1] * len(_FACT))
    return _FACT[n]


class PrecisionContext:
    """Working precision and derived tolerances for all numeric operations.

    Parameters
    ----------
    decimal_digits : int
        Target certified decimal digits (>= 20).
    guard_digits : int
        Extra digits carried internally on top of the target.
    """

    def __init__(self, decimal_digits: int = 50, guard_digits: int = 10):
        if decimal_digits < 20:
            raise DomainError("decimal_digits must be >= 20, got %r" % (decimal_digits,))
        if guard_digits < 0:
            raise DomainError("guard_digits must be >= 0")
        self.decimal_digits = int(decimal_digits)
        self.guard_digits = int(guard_digits)
        self.mp = mpmath.ctx_mp.MPContext()
        self.mp.dps = self.decimal_digits + self.guard_digits
        self.tol_abs = self.mp.mpf(10) ** (-self.decimal_digits)

    def __repr__(self):
        return "PrecisionContext(decimal_digits=%d, guard_digits=%d)" % (
            self.decimal_digits, self.guard_digits)

    # -- conversions --------------------------------------------------------

    def mpf(self, x):
        """Convert x to an mpf at this context's working precision.

        Fractions and decimal strings convert exactly-then-round, so e.g.
        '1.4' means the decimal 7/5, not the binary double nearest 1.4.
        """
        mp = self.mp
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return mp.mpf(x.numerator) / x.denominator
        return mp.mpf(x)

    def workctx(self, decimal_digits: int) -> "PrecisionContext":
        """A scratch context with the same guard policy at a new target."""
        return PrecisionContext(max(20, decimal_digits), self.guard_digits)

    # -- constants ----------------------------------------------------------

    def euler_constant(self):
        """Euler-Mascheroni constant at working precision."""
        return +self.mp.euler

    def pi(self):
        return +self.mp.pi

    # -- formatting ---------------------------------------------------------

    def to_fixed(self, x, significant: int) -> str:
        """Fixed-point decimal string of x with `significant` digits.

        Never uses scientific notation; used by the CLI so that printed
        digit counts can be capped at the certified accuracy.
        """
        mp = self.mp
        significant = max(1, int(significant))
        if x == 0:
            return "0." + "0" * (significant - 1)
        sign = "-" if x < 0 else ""
        ax = abs(x)
        # digits before the point (0 for |x| < 1)
        intdigits = int(mp.floor(mp.log10(ax))) + 1
        decimals = max(0, significant - max(intdigits, 0))
        q = mp.mpf(10) ** decimals
        n = int(mp.nint(ax * q))
        s = str(n).rjust(decimals + 1, "0")
        if decimals:
            s = s[:-decimals] + "." + s[-decimals:]
        return sign + s


def euler_constant(ctx: PrecisionContext):
    """Euler-Mascheroni constant to ctx precision."""
    return ctx.euler_constant()


# ---------------------------------------------------------------------------
# exponential integral Ei(-x) for x > 0
# ---------------------------------------------------------------------------

def _ei_neg_series(ctx: PrecisionContext, x):
    # Ei(-x) = euler + ln x + sum_{k>=1} (-x)^k / (k k!), with extra digits
    # to absorb the ~0.44*x digits of alternating-sum cancellation.
    mp = ctx.mp
    extra = int(0.45 * float(x)) + 10
    with mp.workdps(mp.dps + extra):
        s = mp.mpf(0)
        term = mp.mpf(1)
        k = 0
        tiny = mp.mpf(10) ** (-(mp.dps + 5))
        while True:
            k += 1
            term *= -x / k
            inc = term / k
            s += inc
            if abs(inc) < tiny * (1 + abs(s)):
                break
            if k > 100000:  # unreachable for sane x; defensive
                raise ArithmeticError("Ei series failed to converge")
        out = mp.euler + mp.log(x) + s
    return +out


def _ei_neg_contfrac(ctx: PrecisionContext, x):
    # E1(x) = e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
    # evaluated with the modified Lentz algorithm; Ei(-x) = -E1(x).
    mp = ctx.mp
    with mp.workdps(mp.dps + 10):
        tiny = mp.mpf(10) ** (-(mp.dps + 20))
        eps = mp.mpf(10) ** (-(mp.dps + 5))
        b = x + 1
        c = 1 / tiny
        d = 1 / b
        h = d
        for i in range(1, 200000):
            a = -mp.mpf(i) * i
            b += 2
            d = a * d + b
            if abs(d) < tiny:
                d = tiny
            c = b + a / c
            if abs(c) < tiny:
                c = tiny
            d = 1 / d
            delta = c * d
            h *= delta
            if abs(delta - 1) < eps:
                break
        else:
            raise ArithmeticError("E1 continued fraction failed to converge")
        out = -mp.e ** (-x) * h
    return +out


def expint_ei_neg(x, ctx: PrecisionContext):
    """Ei(-x) = -E1(x) for x > 0, to ctx accuracy.

    Convergent series (with the Euler constant) below the crossover,
    continued fraction above it; the crossover scales with the digit count
    so that both branches are accurate where they are used.
    """
    mp = ctx.mp
    x = ctx.mpf(x)
    if not x > 0:
        raise DomainError("expint_ei_neg requires x > 0, got %s" % (x,))
    threshold = max(12, int(0.55 * mp.dps))
    if x <= threshold:
        return _ei_neg_series(ctx, x)
    return _ei_neg_contfrac(ctx, x)

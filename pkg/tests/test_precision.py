"""Kernel tests: factorials, the Euler constant, and Ei(-x).

The Ei oracle here is independent of the implementation: the ascending
series evaluated directly in raw mpmath, cross-checked by quadrature of the
defining integral int_x^inf e^-t / t dt.
"""

import mpmath
import pytest

from sto3c import DomainError, PrecisionContext, euler_constant, expint_ei_neg, factorial
from sto3c.precision import _ei_neg_contfrac, _ei_neg_series

from conftest import assert_close


def ei_series_oracle(x, dps=60):
    # -gamma... no: Ei(-x) = euler + ln x + sum (-x)^k/(k k!)
    mp = mpmath.ctx_mp.MPContext()
    mp.dps = dps + int(0.5 * x) + 10
    x = mp.mpf(x)
    s, term, k = mp.mpf(0), mp.mpf(1), 0
    while True:
        k += 1
        term *= -x / k
        inc = term / k
        s += inc
        if abs(inc) < mp.mpf(10) ** (-(dps + 10)):
            break
    return mp.euler + mp.log(x) + s


def ei_quadrature_oracle(x, dps=40):
    mp = mpmath.ctx_mp.MPContext()
    mp.dps = dps
    x = mp.mpf(x)
    return -mp.quad(lambda t: mp.e ** (-t) / t, [x, x + 5, x + 30, mp.inf])


def test_factorial_values():
    assert factorial(0) == 1
    assert factorial(5) == 120
    assert factorial(20) == 2432902008176640000


def test_factorial_negative_rejected():
    with pytest.raises(DomainError):
        factorial(-1)


def test_euler_constant_printed_digits():
    # 13-digit reference value
    ctx = PrecisionContext(20)
    got = ctx.to_fixed(euler_constant(ctx), 13)
    assert got == "0.5772156649015"


def test_euler_constant_precision_monotone():
    a = euler_constant(PrecisionContext(20))
    b = euler_constant(PrecisionContext(50))
    assert abs(mpmath.mpf(a._mpf_) - mpmath.mpf(b._mpf_)) < mpmath.mpf(10) ** -19


@pytest.mark.parametrize("x", ["0.3", "1", "2", "5", "11"])
def test_expint_against_series_oracle(ctx30, x):
    got = expint_ei_neg(x, ctx30)
    want = ei_series_oracle(ctx30.mpf(x), dps=45)
    assert_close(ctx30, got, ctx30.mpf(str(want)), ctx30.mpf(10) ** -28, "Ei(-%s)" % x)


@pytest.mark.parametrize("x", ["0.5", "1", "3", "8"])
def test_expint_against_quadrature_oracle(ctx30, x):
    got = expint_ei_neg(x, ctx30)
    want = ei_quadrature_oracle(ctx30.mpf(x), dps=40)
    assert_close(ctx30, got, ctx30.mpf(str(want)), ctx30.mpf(10) ** -28, "Ei(-%s)" % x)


def test_expint_reference_points(ctx30):
    # frozen from the series oracle above
    assert_close(ctx30, expint_ei_neg(1, ctx30),
                 "-0.219383934395520273677163775460", "1e-28")
    assert_close(ctx30, expint_ei_neg(2, ctx30),
                 "-0.048900510708061119567239835228", "1e-28")


def test_expint_large_argument_bound(ctx30):
    v = expint_ei_neg(200, ctx30)
    assert v < 0
    assert abs(v) <= ctx30.mp.e ** (-200) / 200


def test_expint_domain(ctx30):
    with pytest.raises(DomainError):
        expint_ei_neg(0, ctx30)
    with pytest.raises(DomainError):
        expint_ei_neg(-1, ctx30)


def test_expint_monotone_grid(ctx30):
    xs = ["0.2", "0.5", "1", "2", "4", "8", "16", "40"]
    vals = [expint_ei_neg(x, ctx30) for x in xs]
    for lo, hi in zip(vals, vals[1:]):
        assert lo < hi < 0


def test_expint_derivative(ctx50):
    # d/dx Ei(-x) = e^-x / x, checked by central differences
    mp = ctx50.mp
    h = mp.mpf(10) ** -(ctx50.decimal_digits // 3)
    for x in ("0.5", "1", "3"):
        x = ctx50.mpf(x)
        num = (expint_ei_neg(x + h, ctx50) - expint_ei_neg(x - h, ctx50)) / (2 * h)
        want = mp.e ** (-x) / x
        assert abs(num - want) < mp.mpf(10) ** -(ctx50.decimal_digits // 2)


def test_expint_branch_crossover(ctx30):
    # both branches agree to working accuracy at the switch point
    thr = max(12, int(0.55 * ctx30.mp.dps))
    for x in (thr - 1, thr, thr + 1):
        x = ctx30.mpf(x)
        a = _ei_neg_series(ctx30, x)
        b = _ei_neg_contfrac(ctx30, x)
        assert abs(a - b) <= ctx30.mp.mpf(10) ** -(ctx30.decimal_digits + 2)


def test_two_contexts_agree():
    d1, d2 = 25, 50
    c1, c2 = PrecisionContext(d1), PrecisionContext(d2)
    for x in ("0.7", "3", "19"):
        a = mpmath.mpf(expint_ei_neg(x, c1)._mpf_)
        b = mpmath.mpf(expint_ei_neg(x, c2)._mpf_)
        assert abs(a - b) <= abs(b) * mpmath.mpf(10) ** -(d1 - 2)


def test_bit_determinism(ctx30):
    a = expint_ei_neg("1.7", ctx30)
    b = expint_ei_neg("1.7", ctx30)
    assert a._mpf_ == b._mpf_


def test_context_validation():
    with pytest.raises(DomainError):
        PrecisionContext(10)


def test_to_fixed_formatting(ctx30):
    assert ctx30.to_fixed(ctx30.mpf("123.456789"), 5) == "123.46"
    assert ctx30.to_fixed(ctx30.mpf("-0.00123449"), 3) == "-0.00123"
    assert ctx30.to_fixed(ctx30.mpf(0), 4) == "0.000"

"""Auxiliary tower: Mulliken ladders, incomplete integrals, T and B functions.

Frozen reference digits come from independent quadrature of each defining
integral (elementary closed forms where they exist); the derived-vs-printed
variant comparison documents which closed form actually matches.
"""

import random

import pytest

from sto3c import (AuxCache, DomainError, QuadConfig, a_n, a_n_tail, a_nmk,
                   b_aux, factorial, quad_aux_check, t_minus, t_plus, u_head)

from conftest import assert_close


def test_a_n_closed_forms(ctx30):
    mp = ctx30.mp
    for astr in ("0.4", "1", "2.7"):
        alpha = ctx30.mpf(astr)
        assert_close(ctx30, a_n(0, alpha, ctx30), mp.e ** (-alpha) / alpha,
                     "1e-29", "A_0")
    # int_1^inf t e^-t dt = 2/e, frozen from quadrature
    assert_close(ctx30, a_n(1, 1, ctx30),
                 "0.7357588823428846431910475403229", "1e-29")
    # closed-form continuation at negative argument
    assert_close(ctx30, a_n(0, -1, ctx30), -ctx30.mp.e, "1e-28")


def test_a_n_domain(ctx30):
    with pytest.raises(DomainError):
        a_n(0, 0, ctx30)
    with pytest.raises(DomainError):
        a_n(-1, 1, ctx30)


def test_mulliken_recurrence(ctx30):
    mp = ctx30.mp
    tol = mp.mpf(10) ** (-(ctx30.decimal_digits - 5))
    cache = AuxCache()
    for astr in ("0.1", "0.9", "4.2", "9.5"):
        alpha = ctx30.mpf(astr)
        for n in range(1, 13):
            lhs = alpha * a_n(n, alpha, ctx30, cache)
            rhs = mp.e ** (-alpha) + n * a_n(n - 1, alpha, ctx30, cache)
            assert abs(lhs - rhs) <= tol * abs(rhs)


def test_a_n_tail(ctx30):
    alpha = ctx30.mpf("1.3")
    # x = 0 leaves the full moment n!/alpha^{n+1}
    for n in (0, 2, 5):
        assert_close(ctx30, a_n_tail(n, 0, alpha, ctx30),
                     factorial(n) / alpha ** (n + 1), "1e-28")
    assert_close(ctx30, a_n_tail(0, "0.7", alpha, ctx30),
                 ctx30.mp.e ** (-alpha * ctx30.mpf("0.7")) / alpha, "1e-29")
    # int_1^inf r^2 e^-r dr = 5/e, frozen from quadrature
    assert_close(ctx30, a_n_tail(2, 1, 1, ctx30),
                 "1.8393972058572116079776188508073", "1e-29")


def test_u_head(ctx30):
    alpha = ctx30.mpf("0.9")
    assert u_head(3, 0, alpha, ctx30) == 0
    x = ctx30.mpf("1.4")
    assert_close(ctx30, u_head(0, x, alpha, ctx30),
                 (1 - ctx30.mp.e ** (-alpha * x)) / alpha, "1e-29")
    rng = random.Random(3)
    for _ in range(8):
        n = rng.randint(0, 6)
        x = ctx30.mpf(str(round(3 * rng.random(), 3)))
        a = ctx30.mpf(str(round(0.2 + 2 * rng.random(), 3)))
        total = u_head(n, x, a, ctx30) + a_n_tail(n, x, a, ctx30)
        assert_close(ctx30, total, factorial(n) / a ** (n + 1), "1e-27")


def test_a_nmk(ctx30):
    alpha = ctx30.mpf("1.5")
    # no focal factors: plain Mulliken value
    for n in (0, 3):
        assert a_nmk(n, 0, 0, alpha, ctx30) == a_n(n, alpha, ctx30)
    # (mu+1)(mu-1) = mu^2 - 1
    got = a_nmk(0, 1, 1, alpha, ctx30)
    want = a_n(2, alpha, ctx30) - a_n(0, alpha, ctx30)
    assert_close(ctx30, got, want, "1e-28")
    # frozen quadrature of mu (mu+1)^2 (mu-1) e^{-1.5 mu}
    assert_close(ctx30, a_nmk(1, 2, 1, alpha, ctx30),
                 "3.4819323756495716515020557413051", "1e-28")


def test_t_plus_base_closed_form(ctx30):
    from sto3c import expint_ei_neg
    mp = ctx30.mp
    for a, b in (("1", "1"), ("1.5", "0.6")):
        aa, bb = ctx30.mpf(a), ctx30.mpf(b)
        want = (mp.e ** (-aa) * expint_ei_neg(2 * bb, ctx30)
                - mp.e ** aa * expint_ei_neg(2 * (aa + bb), ctx30)) / aa
        assert_close(ctx30, t_plus(0, aa, bb, ctx30), want, "1e-28")


def test_t_plus_frozen_values(ctx30):
    # quadrature of the defining integrals
    assert_close(ctx30, t_plus(0, 1, 1, ctx30),
                 "-0.0077161475732444715195415616485", "1e-28")
    assert_close(ctx30, t_plus(2, "1.3", "0.7", ctx30),
                 "-0.0311101077794549441451609366852", "1e-28")


def test_t_plus_printed_variant_is_defective(ctx30):
    # the transcribed closed form misses the defining integral by O(1)
    derived = t_plus(2, "1.3", "0.7", ctx30)
    printed = t_plus(2, "1.3", "0.7", ctx30, form="printed")
    assert abs(printed - derived) > ctx30.mpf("1e-3")


def test_t_minus_closed_form(ctx30):
    mp = ctx30.mp
    aa, bb = ctx30.mpf(1), ctx30.mpf(1)
    want = mp.e ** (-aa) / aa * mp.log(bb / (aa + bb))
    assert_close(ctx30, t_minus(0, aa, bb, ctx30), want, "1e-29")
    assert_close(ctx30, t_minus(0, 1, 1, ctx30),
                 "-0.2549945974339535092615721143327", "1e-29")


def test_t_minus_large_beta_limit(ctx30):
    v = t_minus(0, 1, 2000, ctx30)
    assert -ctx30.mpf("1e-3") < v < 0


def test_t_derivative_property(ctx50):
    # T_n = (-1)^n d^n/da^n T_0, by central differences on a and n = 1, 2
    mp = ctx50.mp
    h = mp.mpf(10) ** -(ctx50.decimal_digits // 3)
    a, b = ctx50.mpf("1.2"), ctx50.mpf("0.8")
    tol = mp.mpf(10) ** -(ctx50.decimal_digits // 2)
    for fn in (t_plus, t_minus):
        d1 = -(fn(0, a + h, b, ctx50) - fn(0, a - h, b, ctx50)) / (2 * h)
        assert abs(d1 - fn(1, a, b, ctx50)) < tol
        d2 = (fn(0, a + h, b, ctx50) - 2 * fn(0, a, b, ctx50)
              + fn(0, a - h, b, ctx50)) / (h * h)
        assert abs(d2 - fn(2, a, b, ctx50)) < tol


def test_t_domain(ctx30):
    for fn in (t_plus, t_minus):
        with pytest.raises(DomainError):
            fn(0, 0, 1, ctx30)
        with pytest.raises(DomainError):
            fn(0, 1, -2, ctx30)


def test_b_zero_power_identity(ctx30):
    mp = ctx30.mp
    alpha, beta = ctx30.mpf("1.5"), ctx30.mpf("0.8")
    got = b_aux(1, 1, 0, alpha, beta, ctx30)
    want = (mp.e ** beta - mp.e ** (-beta)) / beta * a_nmk(1, 1, 1, alpha + beta, ctx30)
    assert_close(ctx30, got, want, "1e-28")


def test_b_frozen_quadrature_values(ctx30):
    # nested quadrature of the defining double integral
    assert_close(ctx30, b_aux(1, 1, 2, "1.5", "0.8", ctx30),
                 "1.17539776931036913951397809118", "1e-27")
    assert_close(ctx30, b_aux(1, 1, -2, "1.5", "0.8", ctx30),
                 "0.20762296380194268287680400273", "1e-27")


def test_b_live_quadrature_cross_check(ctx25):
    q = QuadConfig(target_abs_tol="1e-18")
    for n, m, k, a, b in ((0, 2, -3, "1.1", "0.9"), (2, 1, 1, "2.0", "0.5")):
        closed = b_aux(n, m, k, a, b, ctx25)
        direct = quad_aux_check("B", (n, m, k), (a, b), q, ctx25)
        assert_close(ctx25, closed, direct, "1e-15", "B(%d,%d,%d)" % (n, m, k))


def test_b_positive_across_dispatch(ctx30):
    # the defining integrand is positive; m = 6 keeps every k in range
    for k in range(-6, 7):
        v = b_aux(1, 6, k, "1.5", "0.8", ctx30)
        assert v > 0
        assert ctx30.mp.isfinite(v)


def test_b_divergent_rejected(ctx30):
    with pytest.raises(DomainError):
        b_aux(1, 0, -3, "1.5", "0.8", ctx30)
    with pytest.raises(DomainError):
        b_aux(1, 1, 2, 0, "0.8", ctx30)


def test_cache_reuse_bit_identical(ctx30):
    cache = AuxCache()
    v1 = b_aux(1, 2, -2, "1.3", "0.7", ctx30, cache)
    v2 = b_aux(1, 2, -2, "1.3", "0.7", ctx30, cache)
    v3 = b_aux(1, 2, -2, "1.3", "0.7", ctx30)
    assert v1._mpf_ == v2._mpf_ == v3._mpf_

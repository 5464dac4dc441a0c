"""Spheroidal geometry: exponent mapping, focal distances, third-center distance."""

import random

import pytest

from sto3c import (DomainError, LINEAR_MIDPOINT, SYMMETRIC_TRIANGULAR,
                   general_on_axis, r_focii, r_third_center, scaled_exponents)
from sto3c.geometry import Conformation

from conftest import assert_close


def test_scaled_exponents_reference(ctx30):
    se = scaled_exponents("1.6", "1.4", "1.2", "1.4", ctx30)
    assert se.alpha == ctx30.mpf("1.82")
    assert se.beta == ctx30.mpf("0.14")
    assert se.gamma == ctx30.mpf("1.12")


def test_scaled_exponents_special(ctx30):
    assert scaled_exponents(1, "1.3", "1.3", 2, ctx30).beta == 0
    assert scaled_exponents(0, "1.3", "1.1", 2, ctx30).gamma == 0
    with pytest.raises(DomainError):
        scaled_exponents(1, 0, 1, 1, ctx30)


def test_r_focii_endpoints(ctx30):
    rb, rc = r_focii(1, 1, "2.0", ctx30)
    assert (rb, rc) == (ctx30.mpf(2), ctx30.mpf(0))
    rb, rc = r_focii(1, -1, "2.0", ctx30)
    assert (rb, rc) == (ctx30.mpf(0), ctx30.mpf(2))


def test_r_focii_inversion(ctx30):
    rng = random.Random(7)
    R = ctx30.mpf("1.7")
    for _ in range(20):
        mu = ctx30.mpf(str(1 + 4 * rng.random()))
        nu = ctx30.mpf(str(2 * rng.random() - 1))
        rb, rc = r_focii(mu, nu, R, ctx30)
        assert abs(rb + rc - R * mu) < ctx30.tol_abs
        assert abs(rb - rc - R * nu) < ctx30.tol_abs
        # triangle inequality against the focal separation
        assert abs(rb - rc) <= R + ctx30.tol_abs
        assert rb + rc >= R - ctx30.tol_abs


def test_third_center_linear(ctx30):
    assert r_third_center(1, 0, 0, LINEAR_MIDPOINT, 2, ctx30) == 0
    # generic point: (R/2) sqrt(mu^2 + nu^2 - 1)
    v = r_third_center("1.5", "0.5", 0, LINEAR_MIDPOINT, 2, ctx30)
    assert_close(ctx30, v, ctx30.mp.sqrt(ctx30.mpf("1.5")), "1e-29")


def test_third_center_triangular(ctx30):
    v = r_third_center(1, 0, 0, SYMMETRIC_TRIANGULAR, 2, ctx30)
    assert_close(ctx30, v, ctx30.mp.sqrt(3), "1e-29")


def test_general_reduces_to_linear(ctx30):
    rng = random.Random(11)
    g = general_on_axis(1, 0)
    for _ in range(12):
        mu = str(1 + 3 * rng.random())
        nu = str(2 * rng.random() - 1)
        a = r_third_center(mu, nu, 0, g, "1.4", ctx30)
        b = r_third_center(mu, nu, 0, LINEAR_MIDPOINT, "1.4", ctx30)
        assert abs(a - b) < ctx30.tol_abs


def test_distance_to_own_point_is_zero(ctx30):
    # the full two-point expression closes at identical coordinates
    conf = Conformation("general", 1.7, 0.3)
    v = r_third_center("1.7", "0.3", 0.0, conf, 2, ctx30)
    assert abs(v) < ctx30.mpf(10) ** -(ctx30.decimal_digits - 5)


def test_end_center_geometry(ctx30):
    # distribution center of the end-center repulsion route: (mu, nu) = (3, -1)
    conf = Conformation("general", 3.0, -1.0)
    assert conf.phi_term_exact
    # at the foci: distances sep and 2 sep
    sep = ctx30.mpf(1)
    va = r_third_center(1, -1, 0, conf, sep, ctx30)
    vc = r_third_center(1, 1, 0, conf, sep, ctx30)
    assert_close(ctx30, va, sep, "1e-29")
    assert_close(ctx30, vc, 2 * sep, "1e-29")


def test_coordinate_domain_errors(ctx30):
    with pytest.raises(DomainError):
        r_focii("0.5", 0, 1, ctx30)
    with pytest.raises(DomainError):
        r_third_center(2, "1.5", 0, LINEAR_MIDPOINT, 1, ctx30)
    with pytest.raises(DomainError):
        general_on_axis(0.5, 0)

"""Exact combinatorics: binomials and the (p+q)^m (p-q)^n expansion rows."""

import random
from fractions import Fraction

import pytest

from sto3c import DomainError, binom, d_coeff, d_coeff_row


def test_binom_values():
    assert binom(4, 2) == 6
    assert all(binom(n, 0) == 1 for n in range(10))
    assert binom(3, 5) == 0
    assert binom(3, -1) == 0


def test_d_coeff_simple_cases():
    # (p+q)(p-q) = p^2 - q^2
    assert d_coeff_row(1, 1) == (1, 0, -1)
    # n = 0 leaves the plain binomial row of (p+q)^m
    for m in range(6):
        for k in range(m + 1):
            assert d_coeff(m, 0, k) == binom(m, k)


def test_d_coeff_against_expansion_oracle():
    # exact rational evaluation of (p+q)^2 (p-q)^3 at several points
    m, n = 2, 3
    row = d_coeff_row(m, n)
    pts = [(Fraction(1, 2), Fraction(1, 3)), (Fraction(3), Fraction(-2)),
           (Fraction(-5, 7), Fraction(2, 9)), (Fraction(1), Fraction(1)),
           (Fraction(0), Fraction(4)), (Fraction(11, 4), Fraction(-3, 8))]
    for p, q in pts:
        direct = (p + q) ** m * (p - q) ** n
        via = sum(row[k] * p ** (m + n - k) * q ** k for k in range(m + n + 1))
        assert direct == via


def test_polynomial_identity_randomized():
    rng = random.Random(20240811)
    for _ in range(40):
        m, n = rng.randint(0, 8), rng.randint(0, 8)
        row = d_coeff_row(m, n)
        p = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        direct = (p + q) ** m * (p - q) ** n
        via = sum(row[k] * p ** (m + n - k) * q ** k for k in range(m + n + 1))
        assert direct == via


def test_row_invariants():
    for m in range(7):
        for n in range(7):
            row = d_coeff_row(m, n)
            assert row[0] == 1
            if n >= 1:
                assert sum(row) == 0  # evaluate at p = q = 1


def test_swap_symmetry():
    for m in range(6):
        for n in range(6):
            a, b = d_coeff_row(m, n), d_coeff_row(n, m)
            for k in range(m + n + 1):
                assert b[k] == (-1) ** k * a[k]


def test_domain_errors():
    with pytest.raises(DomainError):
        d_coeff(2, 2, 5)
    with pytest.raises(DomainError):
        d_coeff(2, 2, -1)
    with pytest.raises(DomainError):
        d_coeff_row(-1, 0)

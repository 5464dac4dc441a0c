"""Binomial coefficients and product-expansion coefficients.

The expansion (p+q)^m (p-q)^n = sum_k D_k^{mn} p^{m+n-k} q^k is used with
(p, q) = (mu, nu) and again with (p, q) = (t, b/t); its integer coefficients
D_k^{mn} alternate in sign, so they are kept exact and only converted to
floating point at use sites.
"""

from __future__ import annotations

import math
import threading

from .precision import DomainError


def binom(n: int, s: int) -> int:
    """C_s^n, with the out-of-range convention C_s^n = 0 for s < 0 or s > n."""
    if s < 0 or s > n:
        return 0
    return math.comb(n, s)


_D_LOCK = threading.Lock()
_D_ROWS: dict[tuple[int, int], tuple[int, ...]] = {}


def d_coeff_row(m: int, n: int) -> tuple[int, ...]:
    """All D_k^{mn} for k = 0..m+n, exact, memoized."""
    if m < 0 or n < 0:
        raise DomainError("d_coeff_row requires m, n >= 0")
    key = (m, n)
    row = _D_ROWS.get(key)
    if row is None:
        row = tuple(
            sum((-1) ** s * binom(m, k - s) * binom(n, s)
                for s in range(max(0, k - m), min(k, n) + 1))
            for k in range(m + n + 1)
        )
        with _D_LOCK:
            _D_ROWS.setdefault(key, row)
    return row


def d_coeff(m: int, n: int, k: int) -> int:
    """D_k^{mn} = sum_sigma (-1)^sigma C_{k-sigma}^m C_sigma^n (exact)."""
    if m < 0 or n < 0:
        raise DomainError("d_coeff requires m, n >= 0")
    if k < 0 or k > m + n:
        raise DomainError("d_coeff index k=%r outside [0, %d]" % (k, m + n))
    return d_coeff_row(m, n)[k]

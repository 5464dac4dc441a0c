"""Two-electron three-center Coulomb-exchange integrals.

[aa,bc] and [bb,ac] place both orbitals of electron 1 on one center; the
product contracts to a single s-distribution (n = n1+n1'-1, zeta = z1+z1'),
the monopole kernel integrates electron 1 in closed form, and the remainder
is a linear combination of three-center overlap integrals:

  [aa,bc] = 4 pi (n+1)!/z^{n+2} [S_{0,nb,nc}(0,..) - S_{0,nb,nc}(z,..)]
          + 4 pi sum_{k=0}^{n} c_k n!/((n-k)! z^{k+1}) S_{n-k+1,nb,nc}(z,..)

with c_k = -k/(n+1-k) ("derived"; the k = 0 term drops).  A published
variant prints c_k = (k-1)/(n+1-k) instead ("printed", kept selectable);
the derived form is the one that matches the two-electron quadrature
backend, which the validation suite enforces.

For [bb,ac] the distribution sits on an end center: the overlap geometry is
no longer focal-midpoint (relative to foci a, c the center b sits at
(mu, nu) = (3, -1), separation R/2), so every overlap routes through the
general-position quadrature backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import Conformation, LINEAR_MIDPOINT
from .overlap import (IntegralValue, NotRepresentableError, SlaterParams,
                      TruncationPolicy, overlap_3c)
from .precision import DomainError, PrecisionContext, factorial
from .quadrature import QuadConfig, quad_eri, quad_overlap_3c


@dataclass(frozen=True)
class ChargeDistribution:
    """Same-center product of two s-orbitals, itself s-shaped."""
    n_eff: int
    zeta_eff: object

    def __post_init__(self):
        if self.n_eff < 1:
            raise DomainError("distribution requires n_eff >= 1")


def _exact_sum(a, b):
    try:
        return Fraction(a) + Fraction(b)
    except (TypeError, ValueError):
        return a + b


def charge_distribution(n1: int, zeta1, n1p: int, zeta1p) -> ChargeDistribution:
    """Contract two s-orbitals on one center: (n1+n1'-1, z1+z1')."""
    if n1 < 1 or n1p < 1:
        raise DomainError("orbital principal numbers must be >= 1")
    return ChargeDistribution(n1 + n1p - 1, _exact_sum(zeta1, zeta1p))


@dataclass(frozen=True)
class EriSpec:
    """One Coulomb-exchange integral: distribution center, distribution,
    the two outer orbitals (on the remaining centers, in order), and R."""
    distribution_center: str          # 'a' | 'b'
    dist: ChargeDistribution
    outer: tuple                      # ((n, zeta), (n, zeta))
    R: object

    def __post_init__(self):
        if self.distribution_center not in ("a", "b"):
            raise DomainError("distribution_center must be 'a' or 'b'")


def overlap_backend(p: SlaterParams, policy: TruncationPolicy,
                    ctx: PrecisionContext, backend: str = "auto",
                    conf: Conformation = LINEAR_MIDPOINT,
                    quad_cfg: QuadConfig | None = None) -> IntegralValue:
    """Overlap dispatcher: analytic series, quadrature, or automatic.

    'auto' prefers the analytic path and falls back to quadrature when the
    series is not representable (near-degenerate (beta+gamma)/2) or the
    conformation is outside the midpoint scope.
    """
    qcfg = quad_cfg or QuadConfig()
    if backend == "quadrature":
        return quad_overlap_3c(p, conf, qcfg, ctx)
    analytic_ok = conf.kind == "linear"
    if backend == "analytic":
        if not analytic_ok:
            raise NotRepresentableError(
                "analytic series covers the focal-midpoint conformation only; "
                "use the quadrature backend")
        return overlap_3c(p, policy, ctx)
    if backend != "auto":
        raise DomainError("unknown backend %r" % (backend,))
    if not analytic_ok:
        return quad_overlap_3c(p, conf, qcfg, ctx)
    try:
        return overlap_3c(p, policy, ctx)
    except NotRepresentableError:
        return quad_overlap_3c(p, conf, qcfg, ctx)


def nuclear_attraction_K(attraction_center: str, n1: int, zeta1, n2: int,
                         zeta2, R, ctx: PrecisionContext,
                         policy: TruncationPolicy | None = None,
                         backend: str = "auto",
                         quad_cfg: QuadConfig | None = None) -> IntegralValue:
    """Attraction integral K = int chi chi' / r_center.

    For center a the orbitals sit on b and c (midpoint geometry, analytic
    eligible); for center b they sit on a and c and the general-position
    quadrature is the only path.
    """
    policy = policy or TruncationPolicy.adaptive()
    if attraction_center == "a":
        p = SlaterParams(0, n1, n2, 0, zeta1, zeta2, R)
        return overlap_backend(p, policy, ctx, backend, LINEAR_MIDPOINT, quad_cfg)
    if attraction_center == "b":
        half_R = _exact_half(R)
        p = SlaterParams(0, n1, n2, 0, zeta1, zeta2, half_R)
        return quad_overlap_3c(p, Conformation("general", 3.0, -1.0),
                               quad_cfg or QuadConfig(), ctx)
    raise DomainError("attraction_center must be 'a' or 'b'")


def _exact_half(R):
    try:
        return Fraction(R) / 2
    except (TypeError, ValueError):
        return R / 2


def _series_coeff(k: int, n_eff: int, form: str) -> Fraction:
    if form == "derived":
        return Fraction(-k, n_eff + 1 - k)
    if form == "printed":
        return Fraction(k - 1, n_eff + 1 - k)
    raise DomainError("coefficient form must be 'derived' or 'printed'")


def _assemble(dist: ChargeDistribution, s_free: IntegralValue,
              s_dist: IntegralValue, s_terms, ctx: PrecisionContext,
              form: str) -> IntegralValue:
    """4 pi [(n+1)!/z^{n+2} (S_free - S_dist) + sum_k c_k n!/((n-k)! z^{k+1}) S_k]."""
    mp = ctx.mp
    n, z = dist.n_eff, ctx.mpf(dist.zeta_eff)
    lead = factorial(n + 1) / z ** (n + 2)
    value = lead * (s_free.value - s_dist.value)
    tail = abs(lead) * (s_free.tail_estimate + s_dist.tail_estimate)
    converged = s_free.converged and s_dist.converged
    terms = s_free.terms_used + s_dist.terms_used
    for k, sk in s_terms:
        c = _series_coeff(k, n, form)
        if c == 0:
            continue
        w = ctx.mpf(c) * factorial(n) / (factorial(n - k) * z ** (k + 1))
        value += w * sk.value
        tail += abs(w) * sk.tail_estimate
        converged = converged and sk.converged
        terms += sk.terms_used
    fourpi = 4 * mp.pi
    return IntegralValue(+(fourpi * value), terms, +(fourpi * tail), converged)


def eri_aabc(spec: EriSpec, policy: TruncationPolicy, ctx: PrecisionContext,
             coefficient_form: str = "derived", backend: str = "auto",
             quad_cfg: QuadConfig | None = None) -> IntegralValue:
    """[aa,bc]: distribution on the midpoint center a.

    Every overlap is midpoint-analytic eligible; the free term
    S_{0,nb,nc}(0,...) has gamma = 0 and silently routes to quadrature
    when zeta_b = zeta_c makes the series unrepresentable.
    """
    if spec.distribution_center != "a":
        raise DomainError("eri_aabc requires distribution_center 'a'")
    dist = spec.dist
    (nb, zb), (nc, zc) = spec.outer
    R = spec.R
    s_free = overlap_backend(SlaterParams(0, nb, nc, 0, zb, zc, R),
                             policy, ctx, backend, LINEAR_MIDPOINT, quad_cfg)
    s_dist = overlap_backend(SlaterParams(0, nb, nc, dist.zeta_eff, zb, zc, R),
                             policy, ctx, backend, LINEAR_MIDPOINT, quad_cfg)
    s_terms = []
    for k in range(dist.n_eff + 1):
        if _series_coeff(k, dist.n_eff, coefficient_form) == 0:
            continue
        p = SlaterParams(dist.n_eff - k + 1, nb, nc, dist.zeta_eff, zb, zc, R)
        s_terms.append((k, overlap_backend(p, policy, ctx, backend,
                                           LINEAR_MIDPOINT, quad_cfg)))
    return _assemble(dist, s_free, s_dist, s_terms, ctx, coefficient_form)


def eri_bbac(spec: EriSpec, policy: TruncationPolicy, ctx: PrecisionContext,
             coefficient_form: str = "derived",
             quad_cfg: QuadConfig | None = None) -> IntegralValue:
    """[bb,ac]: distribution on the end center b.

    Relative to foci (a, c) the distribution center sits at (3, -1) with
    focal separation R/2; all overlaps go through the general-position
    quadrature backend.
    """
    if spec.distribution_center != "b":
        raise DomainError("eri_bbac requires distribution_center 'b'")
    dist = spec.dist
    (na, za), (nc, zc) = spec.outer
    half_R = _exact_half(spec.R)
    conf = Conformation("general", 3.0, -1.0)
    qcfg = quad_cfg or QuadConfig()

    def S(n_first, z_first):
        p = SlaterParams(n_first, na, nc, z_first, za, zc, half_R)
        return quad_overlap_3c(p, conf, qcfg, ctx)

    s_free = S(0, 0)
    s_dist = S(0, dist.zeta_eff)
    s_terms = []
    for k in range(dist.n_eff + 1):
        if _series_coeff(k, dist.n_eff, coefficient_form) == 0:
            continue
        s_terms.append((k, S(dist.n_eff - k + 1, dist.zeta_eff)))
    return _assemble(dist, s_free, s_dist, s_terms, ctx, coefficient_form)

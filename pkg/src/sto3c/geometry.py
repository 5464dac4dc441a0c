"""Prolate-spheroidal geometry for a three-center system.

Two centers (b, c) sit at the foci of the ellipse, separated by R; the third
center a is described by its own spheroidal coordinates (mu_a, nu_a).  The
linear arrangement with a at the midpoint of b--c is (1, 0); the symmetric
triangular arrangement with R_ab = R_ac = R is (2, 0).
"""

from __future__ import annotations

from dataclasses import dataclass

from .precision import DomainError, PrecisionContext


@dataclass(frozen=True)
class Conformation:
    """Placement of the third center relative to the foci.

    mu_a >= 1 and nu_a in [-1, 1]; phi_term_exact records whether dropping
    the azimuthal cross term of the two-point distance is exact (it is
    whenever mu_a = 1 or |nu_a| = 1, i.e. the center lies on the focal axis)
    or justified only by the s-orbital azimuthal integration.
    """
    kind: str       # 'linear' | 'triangular' | 'general'
    mu_a: float = 1.0
    nu_a: float = 0.0

    @property
    def phi_term_exact(self) -> bool:
        return self.mu_a == 1 or abs(self.nu_a) == 1

    def __str__(self):
        if self.kind in ("linear", "triangular"):
            return self.kind
        return "general(%g,%g)" % (self.mu_a, self.nu_a)


LINEAR_MIDPOINT = Conformation("linear", 1.0, 0.0)
SYMMETRIC_TRIANGULAR = Conformation("triangular", 2.0, 0.0)


def general_on_axis(mu_a, nu_a) -> Conformation:
    if mu_a < 1 or abs(nu_a) > 1:
        raise DomainError("general_on_axis requires mu_a >= 1, |nu_a| <= 1")
    return Conformation("general", float(mu_a), float(nu_a))


@dataclass(frozen=True)
class ScaledExponents:
    """Dimensionless exponents of the spheroidal integrand."""
    alpha: object
    beta: object
    gamma: object


def scaled_exponents(zeta_a, zeta_b, zeta_c, R, ctx: PrecisionContext) -> ScaledExponents:
    """alpha = (R/2)(zb+zc), beta = (R/2)(zb-zc), gamma = (R/2)za."""
    za, zb, zc, R = (ctx.mpf(v) for v in (zeta_a, zeta_b, zeta_c, R))
    if za < 0 or zb <= 0 or zc <= 0 or R <= 0:
        raise DomainError("exponents must satisfy zeta_a >= 0, zeta_b, zeta_c, R > 0")
    half = R / 2
    return ScaledExponents(half * (zb + zc), half * (zb - zc), half * za)


def r_focii(mu, nu, R, ctx: PrecisionContext):
    """Distances to the two foci: r_b = (R/2)(mu+nu), r_c = (R/2)(mu-nu)."""
    mu, nu, R = ctx.mpf(mu), ctx.mpf(nu), ctx.mpf(R)
    _check_coords(mu, nu)
    half = R / 2
    return half * (mu + nu), half * (mu - nu)


def rho_squared_factor(mu, nu, conf: Conformation):
    """(2 r_a / R)^2 as a function of the electron coordinates.

    mu and nu may be floats or mpfs; the arithmetic stays in their type.
    Linear midpoint: mu^2 + nu^2 - 1.  Triangular: mu^2 + nu^2 + 2.  General
    on-axis: the full two-point expression with the azimuthal term dropped.
    """
    if conf.kind == "linear":
        return mu * mu + nu * nu - 1
    if conf.kind == "triangular":
        return mu * mu + nu * nu + 2
    ma, na = conf.mu_a, conf.nu_a
    return mu * mu + nu * nu + (ma * ma + na * na - 2) - 2 * ma * na * mu * nu


def r_third_center(mu, nu, dphi, conf: Conformation, R, ctx: PrecisionContext):
    """Distance from (mu, nu, phi) to the third center.

    The azimuthal offset dphi only matters for conformations where the
    cross term survives; for those the s-orbital phi-reduced form is NOT
    used here and the full two-point distance is returned.
    """
    mp = ctx.mp
    mu, nu, R = ctx.mpf(mu), ctx.mpf(nu), ctx.mpf(R)
    _check_coords(mu, nu)
    q = rho_squared_factor(mu, nu, conf)
    if not conf.phi_term_exact:
        # cross term carries a factor 2 (forced by |P - P| = 0 at identical
        # points); without it the two-point expansion does not close
        ma, na = ctx.mpf(conf.mu_a), ctx.mpf(conf.nu_a)
        cross = mp.sqrt((mu * mu - 1) * (1 - nu * nu) * (ma * ma - 1) * (1 - na * na))
        q = q - 2 * cross * mp.cos(ctx.mpf(dphi))
    if q < 0:
        # negative only through rounding at a coincident point
        q = mp.mpf(0)
    return R / 2 * mp.sqrt(q)


def _check_coords(mu, nu):
    if mu < 1 or nu < -1 or nu > 1:
        raise DomainError("spheroidal coordinates require mu >= 1, -1 <= nu <= 1")

"""Independent quadrature backends used to certify the analytic engine.

Everything here evaluates a defining integral directly: the two-dimensional
spheroidal overlap integral (any conformation), the one- and two-dimensional
defining integrals of the auxiliary tower, and the two-electron
repulsion integral with the inner electron integrated in closed form.

The base rule is tanh-sinh on panels between a priori breakpoints (it
absorbs the boundary kinks and the 1/r_a endpoint singularities), with
panel bisection whenever the rule's own error report misses the target.
The half-infinite mu range maps to u in [0, 1) through
mu = 1 + scale * u/(1-u); the exponential decay makes the mapped tail
negligible without truncation.

These backends are referees, not production paths: they run at a looser
tolerance floor than the analytic kernel (five digits under the context),
and every value carries the accumulated error estimate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .auxiliary import a_n_tail, expint_ei_neg, u_head
from .geometry import Conformation, LINEAR_MIDPOINT, rho_squared_factor
from .overlap import IntegralValue, SlaterParams
from .precision import DomainError, PrecisionContext


@dataclass
class QuadConfig:
    """Effort and tolerance knobs for the quadrature backends.

    target_abs_tol defaults to (and is floored at) 10^-(digits-5): the
    oracle never claims more than the arithmetic kernel certifies.
    mu_map_scale is the scale of the half-infinite map.
    """
    target_abs_tol: object = None
    max_subdivisions: int = 14
    mu_map_scale: float = 1.0

    def resolved_tol(self, ctx: PrecisionContext):
        floor = ctx.mp.mpf(10) ** (-(ctx.decimal_digits - 5))
        if self.target_abs_tol is None:
            return floor
        t = ctx.mpf(self.target_abs_tol)
        return t if t > floor else floor


def _quad_ctx(ctx: PrecisionContext, tol) -> PrecisionContext:
    # tanh-sinh effort tracks the working precision, so run the rule in a
    # context matched to the requested tolerance rather than the caller's
    import math as _math
    digits = max(20, int(-_math.log10(float(tol))) + 4)
    if digits + 4 >= ctx.decimal_digits + ctx.guard_digits:
        return ctx
    return PrecisionContext(digits, 4)


class _Panel1D:
    """Adaptive tanh-sinh integration between fixed breakpoints."""

    def __init__(self, ctx: PrecisionContext, f, depth_limit: int):
        self.ctx = ctx
        self.f = f
        self.depth_limit = depth_limit
        self.evals = 0
        self.err = ctx.mp.mpf(0)
        self.converged = True

    def _rule(self, a, b):
        mp = self.ctx.mp
        val, err = mp.quad(self.f, [a, b], error=True)
        self.evals += 1
        return val, err

    def run(self, points, tol):
        mp = self.ctx.mp
        total = mp.mpf(0)
        for a, b in zip(points[:-1], points[1:]):
            total += self._panel(a, b, tol / (len(points) - 1), 0)
        return total

    def _panel(self, a, b, tol, depth):
        mp = self.ctx.mp
        val, err = self._rule(a, b)
        if err <= tol or depth >= self.depth_limit:
            if err > tol:
                self.converged = False
            self.err += err
            return val
        m = (a + b) / 2
        return self._panel(a, m, tol / 2, depth + 1) + \
            self._panel(m, b, tol / 2, depth + 1)


def _integrate_1d(ctx, f, points, tol, depth_limit):
    p = _Panel1D(ctx, f, depth_limit)
    val = p.run([ctx.mpf(x) for x in points], tol)
    return val, p


def _mu_points(ctx, conf: Conformation, alpha):
    """Breakpoints in the mapped u variable, denser where the integrand
    moves: near mu = 1 and near the third center for off-focus placements."""
    mus = {2.0, 6.0}
    if conf.kind == "general" and conf.mu_a > 1:
        mus.add(conf.mu_a)
    pts = [ctx.mpf(0)]
    for mu in sorted(mus):
        pts.append(ctx.mpf((mu - 1) / mu))
    pts.append(ctx.mpf(1))
    return pts


def _nu_points(ctx, conf: Conformation):
    pts = {-1.0, 0.0, 1.0}
    if conf.kind == "general" and -1 < conf.nu_a < 1:
        pts.add(conf.nu_a)
    return [ctx.mpf(x) for x in sorted(pts)]


def _integrate_mu_nu(ctx, g, conf, alpha, q: QuadConfig, tol):
    """Iterated integral of g(mu, nu) over [1, inf) x [-1, 1].

    The inner nu integral is evaluated adaptively at every outer node (the
    map keeps the outer integrand smooth), memoized on the node bits; its
    tolerance is damped by the outer Jacobian so the contributions stay
    inside the budget.
    """
    mp = ctx.mp
    scale = ctx.mpf(q.mu_map_scale)
    nu_pts = _nu_points(ctx, conf)
    inner_cache: dict = {}
    state = {"err": mp.mpf(0), "evals": 0, "converged": True}

    def outer(u):
        key = u._mpf_
        hit = inner_cache.get(key)
        if hit is not None:
            return hit
        one_m = 1 - u
        if one_m <= 0:
            return mp.mpf(0)
        mu = 1 + scale * u / one_m
        jac = scale / (one_m * one_m)
        inner_tol = tol / 8 * one_m * one_m
        val, pan = _integrate_1d(ctx, lambda nu: g(mu, nu), nu_pts,
                                 inner_tol, q.max_subdivisions)
        state["err"] += pan.err * jac
        state["evals"] += pan.evals
        state["converged"] &= pan.converged
        out = val * jac
        inner_cache[key] = out
        return out

    mu_pts = _mu_points(ctx, conf, alpha)
    val, pan = _integrate_1d(ctx, outer, mu_pts, tol / 2, q.max_subdivisions)
    err = pan.err + state["err"]
    return val, err, pan.evals + state["evals"], pan.converged and state["converged"]


def quad_overlap_3c(p: SlaterParams, conf: Conformation, q: QuadConfig,
                    ctx: PrecisionContext) -> IntegralValue:
    """Overlap integral by direct 2D quadrature, any conformation.

    Evaluates 2 pi (R/2)^{ntot} times the double integral of
    rho^{n_a-1} (mu+nu)^{n_b} (mu-nu)^{n_c} e^{-alpha mu - beta nu - gamma rho}
    with rho the scaled third-center distance of the conformation.
    """
    mp = ctx.mp
    za, zb, zc = (ctx.mpf(v) for v in (p.zeta_a, p.zeta_b, p.zeta_c))
    R = ctx.mpf(p.R)
    if za < 0 or zb <= 0 or zc <= 0 or R <= 0:
        raise DomainError("require zeta_a >= 0, zeta_b, zeta_c, R > 0")
    half = R / 2
    alpha = half * (zb + zc)
    beta = half * (zb - zc)
    gamma = half * za
    na, nb, nc = p.n_a, p.n_b, p.n_c
    pref = 2 * mp.pi * half ** p.n_total
    tol = q.resolved_tol(ctx) / pref
    qctx = _quad_ctx(ctx, tol)
    qmp = qctx.mp
    alpha, beta, gamma = qctx.mpf(alpha), qctx.mpf(beta), qctx.mpf(gamma)

    def g(mu, nu):
        rho2 = rho_squared_factor(mu, nu, conf)
        if rho2 < 0:
            rho2 = qmp.mpf(0)
        rho = qmp.sqrt(rho2)
        w = (mu + nu) ** nb * (mu - nu) ** nc * qmp.e ** (-alpha * mu - beta * nu - gamma * rho)
        if na == 0:
            return w / rho if rho != 0 else qmp.mpf(0)
        if na == 1:
            return w
        return w * rho ** (na - 1)

    val, err, evals, ok = _integrate_mu_nu(qctx, g, conf, alpha, q, qctx.mpf(tol))
    return IntegralValue(+(pref * ctx.mpf(val)), evals, +(pref * ctx.mpf(err)), ok)


def quad_aux_check(which: str, indices, args, q: QuadConfig,
                   ctx: PrecisionContext):
    """Direct quadrature of an auxiliary function's defining integral.

    which: 'Anmk' (n, m, k), 'Tplus'/'Tminus' (n,), or 'B' (n, m, k signed);
    args are the exponent arguments (alpha,) or (alpha, beta).
    """
    tol = q.resolved_tol(ctx)
    qctx = _quad_ctx(ctx, tol)
    mp = qctx.mp
    tol = qctx.mpf(tol)
    scale = qctx.mpf(q.mu_map_scale)
    u_pts = [0, qctx.mpf(1) / 3, qctx.mpf(2) / 3, qctx.mpf("0.9"), 1]

    def mapped(f):
        def F(u):
            one_m = 1 - u
            if one_m <= 0:
                return mp.mpf(0)
            mu = 1 + scale * u / one_m
            return f(mu) * scale / (one_m * one_m)
        return F

    if which == "Anmk":
        n, m, k = indices
        (alpha,) = (qctx.mpf(a) for a in args)

        def f(mu):
            return mu ** n * (mu + 1) ** m * (mu - 1) ** k * mp.e ** (-alpha * mu)

        val, pan = _integrate_1d(qctx, mapped(f), u_pts, tol, q.max_subdivisions)
        return ctx.mpf(val)
    if which in ("Tplus", "Tminus"):
        (n,) = indices
        alpha, beta = (qctx.mpf(a) for a in args)
        off = 1 if which == "Tplus" else -1

        def f(mu):
            arg = beta * (mu + off)
            if arg <= 0:
                return mp.mpf(0)
            return mu ** n * mp.e ** (-alpha * mu) * expint_ei_neg(arg, qctx)

        val, pan = _integrate_1d(qctx, mapped(f), u_pts, tol, q.max_subdivisions)
        return ctx.mpf(val)
    if which == "B":
        n, m, k = indices
        alpha, beta = (qctx.mpf(a) for a in args)

        def f(mu):
            def inner(t):
                return t ** k * mp.e ** (-beta * t)
            iv, _ = _integrate_1d(qctx, inner, [mu - 1, mu, mu + 1],
                                  tol * mp.e ** (-alpha * mu) / 4,
                                  q.max_subdivisions)
            return mu ** n * (mu * mu - 1) ** m * mp.e ** (-alpha * mu) * iv

        val, pan = _integrate_1d(qctx, mapped(f), u_pts, tol, q.max_subdivisions)
        return ctx.mpf(val)
    raise DomainError("unknown auxiliary check %r" % (which,))


def _distribution_bracket(n_eff: int, zeta_eff, r, ctx: PrecisionContext):
    # (1/r) U_{n+1}(r, z) + A_n(r, z): the electron-1 radial integral of a
    # same-center s-distribution against the larger-distance kernel
    if r == 0:
        from .precision import factorial
        return factorial(n_eff) / zeta_eff ** (n_eff + 1)
    return u_head(n_eff + 1, r, zeta_eff, ctx) / r + a_n_tail(n_eff, r, zeta_eff, ctx)


def quad_eri(spec, q: QuadConfig, ctx: PrecisionContext) -> IntegralValue:
    """Two-electron Coulomb-exchange integral by outer 2D quadrature.

    The distribution electron is integrated in closed form (the bracket
    above); the remaining electron is integrated in spheroidal coordinates
    over the two centers that carry its orbitals.  spec is an EriSpec.
    """
    mp = ctx.mp
    dist = spec.dist
    z_eff = ctx.mpf(dist.zeta_eff)
    R = ctx.mpf(spec.R)
    (n1, z1), (n2, z2) = spec.outer
    z1, z2 = ctx.mpf(z1), ctx.mpf(z2)
    if spec.distribution_center == "a":
        # outer electron around foci b, c (separation R); distribution at
        # the midpoint
        sep = R
        conf = LINEAR_MIDPOINT
    elif spec.distribution_center == "b":
        # outer electron around foci a, c (separation R/2); the
        # distribution sits on-axis beyond a at (mu, nu) = (3, -1)
        sep = R / 2
        conf = Conformation("general", 3.0, -1.0)
    else:
        raise DomainError("distribution_center must be 'a' or 'b'")
    half = sep / 2
    alpha = half * (z1 + z2)
    beta = half * (z1 - z2)
    pref = 8 * mp.pi ** 2 * half ** (n1 + n2 + 1)
    tol = q.resolved_tol(ctx) / pref
    qctx = _quad_ctx(ctx, tol)
    qmp = qctx.mp
    half_q = qctx.mpf(half)
    alpha, beta = qctx.mpf(alpha), qctx.mpf(beta)
    z_eff_q = qctx.mpf(z_eff)

    def g(mu, nu):
        rho2 = rho_squared_factor(mu, nu, conf)
        if rho2 < 0:
            rho2 = qmp.mpf(0)
        r_d = half_q * qmp.sqrt(rho2)
        w = (mu + nu) ** n1 * (mu - nu) ** n2 * qmp.e ** (-alpha * mu - beta * nu)
        return w * _distribution_bracket(dist.n_eff, z_eff_q, r_d, qctx)

    val, err, evals, ok = _integrate_mu_nu(qctx, g, conf, alpha, q, qctx.mpf(tol))
    return IntegralValue(+(pref * ctx.mpf(val)), evals, +(pref * ctx.mpf(err)), ok)

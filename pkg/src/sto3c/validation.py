"""Oracle-equivalence grids shared by the CLI validator and the test suite.

Every check pits a closed-form code path against a direct quadrature of the
corresponding defining integral (or an exact identity) and reports the worst
deviation against its tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .auxiliary import a_n, b_aux, t_minus, t_plus
from .geometry import LINEAR_MIDPOINT
from .overlap import SlaterParams, TruncationPolicy, overlap_3c
from .precision import PrecisionContext
from .quadrature import QuadConfig, quad_aux_check, quad_eri, quad_overlap_3c
from .repulsion import EriSpec, charge_distribution, eri_aabc, eri_bbac


@dataclass
class CheckResult:
    name: str
    max_dev: object
    tol: object
    passed: bool

    def line(self, nstr) -> str:
        flag = "pass" if self.passed else "FAIL"
        return "%-38s max dev %-12s tol %-10s %s" % (
            self.name, nstr(self.max_dev, 5), nstr(self.tol, 3), flag)


def _result(name, devs, tol):
    m = max(devs) if devs else 0
    return CheckResult(name, m, tol, bool(m <= tol))


# -- auxiliary tower ---------------------------------------------------------

T_POINTS = [(0, "1.0", "1.0"), (1, "1.0", "1.0"), (2, "1.3", "0.7"),
            (3, "0.6", "1.1"), (2, "2.4", "0.4"), (4, "1.1", "1.7"),
            (1, "3.0", "0.2"), (5, "0.9", "0.9"), (0, "0.5", "2.0"),
            (3, "1.8", "1.2"), (6, "1.2", "0.8")]

B_POINTS = [(1, 1, 2, "1.5", "0.8"), (1, 1, -2, "1.5", "0.8"),
            (0, 0, 0, "1.0", "1.0"), (2, 1, 1, "2.0", "0.5"),
            (1, 2, -3, "1.2", "0.9"), (0, 2, -1, "0.8", "1.3"),
            (2, 0, 3, "1.7", "0.6"), (1, 3, -4, "1.1", "0.7"),
            (3, 2, -2, "0.9", "1.1"), (0, 1, -1, "1.4", "1.6"),
            (2, 2, 2, "1.3", "1.0")]


def check_mulliken_recurrence(ctx: PrecisionContext) -> CheckResult:
    """alpha A_n = e^-alpha + n A_{n-1} over n <= 12, alpha in (0.1, 10)."""
    mp = ctx.mp
    tol = mp.mpf(10) ** (-(ctx.decimal_digits - 5))
    devs = []
    for astr in ("0.1", "0.35", "0.8", "1.7", "3.1", "5.5", "9.9"):
        alpha = ctx.mpf(astr)
        em = mp.e ** (-alpha)
        for n in range(1, 13):
            lhs = alpha * a_n(n, alpha, ctx)
            rhs = em + n * a_n(n - 1, alpha, ctx)
            devs.append(abs(lhs - rhs) / abs(rhs))
    return _result("mulliken recurrence", devs, tol)


def check_t_definitional(ctx: PrecisionContext) -> list[CheckResult]:
    """T^(+/-) closed forms vs quadrature of the defining integrals."""
    mp = ctx.mp
    tol = mp.mpf(10) ** (-(ctx.decimal_digits - 10))
    q = QuadConfig(target_abs_tol=tol / 8)
    out = []
    for which, fn in (("Tplus", t_plus), ("Tminus", t_minus)):
        devs = []
        for n, a, b in T_POINTS:
            closed = fn(n, a, b, ctx)
            direct = quad_aux_check(which, (n,), (a, b), q, ctx)
            devs.append(abs(closed - direct))
        out.append(_result("%s definitional" % which, devs, tol))
    return out


def check_b_definitional(ctx: PrecisionContext) -> CheckResult:
    """B values vs nested quadrature of the double defining integral."""
    mp = ctx.mp
    tol = mp.mpf(10) ** (-(ctx.decimal_digits - 10))
    q = QuadConfig(target_abs_tol=tol / 8)
    devs = []
    for n, m, k, a, b in B_POINTS:
        closed = b_aux(n, m, k, a, b, ctx)
        direct = quad_aux_check("B", (n, m, k), (a, b), q, ctx)
        devs.append(abs(closed - direct))
    return _result("B definitional", devs, tol)


def check_t_base_forms(ctx: PrecisionContext) -> CheckResult:
    """The n = 0 closed forms against their defining quadratures."""
    from .precision import expint_ei_neg
    mp = ctx.mp
    tol = mp.mpf(10) ** (-(ctx.decimal_digits - 10))
    q = QuadConfig(target_abs_tol=tol / 8)
    devs = []
    for a, b in (("1.0", "1.0"), ("1.5", "0.6"), ("0.7", "1.8")):
        aa, bb = ctx.mpf(a), ctx.mpf(b)
        plus = (mp.e ** (-aa) * expint_ei_neg(2 * bb, ctx)
                - mp.e ** aa * expint_ei_neg(2 * (aa + bb), ctx)) / aa
        minus = mp.e ** (-aa) / aa * mp.log(bb / (aa + bb))
        devs.append(abs(plus - quad_aux_check("Tplus", (0,), (a, b), q, ctx)))
        devs.append(abs(minus - quad_aux_check("Tminus", (0,), (a, b), q, ctx)))
    return _result("order-0 closed forms", devs, tol)


def aux_checks(ctx: PrecisionContext) -> list[CheckResult]:
    out = [check_mulliken_recurrence(ctx)]
    out.extend(check_t_definitional(ctx))
    out.append(check_b_definitional(ctx))
    out.append(check_t_base_forms(ctx))
    return out


# -- overlap grid ------------------------------------------------------------

OVERLAP_GRID = [
    # (n_a, n_b, n_c, za, zb, zc, R) with n <= 4, zeta in [0.8, 3], R in [1, 4]
    (1, 1, 1, "1.0", "1.2", "0.9", "2.0"),
    (1, 2, 1, "1.6", "1.4", "1.2", "1.4"),
    (2, 1, 1, "0.8", "2.0", "1.1", "1.5"),
    (1, 1, 2, "2.2", "1.0", "1.3", "2.5"),
    (2, 2, 2, "1.5", "1.5", "0.8", "3.0"),
    (3, 1, 1, "1.1", "0.9", "2.1", "1.8"),
    (1, 3, 2, "0.9", "1.8", "1.6", "2.2"),
    (4, 2, 1, "1.3", "2.4", "0.9", "1.2"),
    (2, 3, 3, "2.0", "1.1", "1.4", "2.8"),
    (1, 4, 1, "1.7", "0.8", "2.6", "1.0"),
    (3, 2, 4, "0.8", "1.6", "1.2", "3.5"),
    (2, 4, 2, "2.8", "1.3", "1.9", "1.6"),
    (1, 2, 3, "1.2", "2.9", "1.0", "4.0"),
    (4, 4, 4, "1.0", "1.1", "1.2", "2.0"),
    (2, 1, 2, "3.0", "2.2", "1.5", "1.1"),
    (0, 1, 1, "0",   "1.0", "0.8", "2.0"),   # attraction weight, free
    (0, 2, 1, "0",   "1.7", "1.1", "1.4"),
    (0, 1, 2, "1.5", "1.2", "0.9", "2.4"),   # attraction weight, screened
    (0, 3, 1, "2.1", "0.9", "1.8", "1.7"),
    (0, 1, 1, "0.9", "2.5", "1.4", "3.0"),
    (1, 1, 1, "1.3", "1.3", "1.3", "1.0"),
    (4, 3, 2, "2.6", "2.4", "1.6", "3.0"),
]


def overlap_checks(ctx: PrecisionContext, grid=None,
                   policy: TruncationPolicy | None = None) -> CheckResult:
    """Analytic series vs direct quadrature, relative, over the grid."""
    mp = ctx.mp
    grid = grid if grid is not None else OVERLAP_GRID
    policy = policy or TruncationPolicy.adaptive(N_max=200)
    tol = mp.mpf(10) ** (-(ctx.decimal_digits - 12))
    devs = []
    for row in grid:
        p = SlaterParams(*row)
        analytic = overlap_3c(p, policy, ctx)
        qcfg = QuadConfig(target_abs_tol=abs(analytic.value) * tol / 16)
        direct = quad_overlap_3c(p, LINEAR_MIDPOINT, qcfg, ctx)
        devs.append(abs(analytic.value - direct.value) / abs(direct.value))
    return _result("overlap analytic vs quadrature", devs, tol)


# -- two-electron assemblies --------------------------------------------------

ERI_AABC_SETS = [
    ((1, "1.0", 1, "1.0"), ((1, "1.0"), (1, "1.0")), "2.0"),   # symmetric
    ((1, "1.0", 1, "1.2"), ((1, "1.1"), (1, "0.9")), "2.0"),
    ((2, "1.3", 1, "0.8"), ((2, "1.0"), (1, "1.4")), "1.5"),
    ((1, "0.9", 2, "1.1"), ((1, "1.6"), (2, "1.0")), "2.5"),
    ((2, "1.1", 2, "1.0"), ((1, "1.2"), (1, "1.5")), "1.8"),
]

ERI_BBAC_SETS = [
    ((1, "1.0", 1, "1.0"), ((1, "1.0"), (1, "1.0")), "2.0"),   # symmetric
    ((1, "1.1", 1, "0.9"), ((1, "1.2"), (1, "0.8")), "2.0"),
    ((2, "1.0", 1, "1.2"), ((1, "0.9"), (1, "1.3")), "1.6"),
    ((1, "1.3", 2, "0.9"), ((2, "1.1"), (1, "1.0")), "2.4"),
    ((2, "0.8", 2, "1.2"), ((1, "1.4"), (2, "0.9")), "1.2"),
]


def eri_checks(ctx: PrecisionContext, kinds=("aabc", "bbac"),
               sets_per_kind: int | None = None,
               coefficient_form: str = "derived") -> list[CheckResult]:
    """Overlap-assembled integrals vs the direct two-electron quadrature."""
    mp = ctx.mp
    tol = mp.mpf("1e-12")
    policy = TruncationPolicy.adaptive(N_max=200)
    out = []
    for kind in kinds:
        sets = ERI_AABC_SETS if kind == "aabc" else ERI_BBAC_SETS
        if sets_per_kind:
            sets = sets[:sets_per_kind]
        devs = []
        for dist_args, outer, R in sets:
            spec = EriSpec("a" if kind == "aabc" else "b",
                           charge_distribution(*dist_args), outer, R)
            qcfg = QuadConfig(target_abs_tol="1e-15")
            direct = quad_eri(spec, QuadConfig(target_abs_tol="1e-14"), ctx)
            if kind == "aabc":
                assembled = eri_aabc(spec, policy, ctx, coefficient_form,
                                     quad_cfg=qcfg)
            else:
                assembled = eri_bbac(spec, policy, ctx, coefficient_form,
                                     quad_cfg=qcfg)
            devs.append(abs(assembled.value - direct.value) / abs(direct.value))
        out.append(_result("eri %s assembly vs quadrature" % kind, devs, tol))
    return out

"""Auxiliary integrals for the spheroidal-coordinate overlap engine.

The tower, bottom up:

  a_n        A_n(alpha)   = int_1^inf t^n e^{-alpha t} dt   (closed form,
             continued analytically to alpha < 0 where the formula pattern,
             not the divergent integral, is meant)
  a_n_tail   A_n(x,alpha) = int_x^inf r^n e^{-alpha r} dr
  u_head     U_n(x,alpha) = int_0^x  r^n e^{-alpha r} dr
  a_nmk      A_{n;mk}     = int_1^inf mu^n (mu+1)^m (mu-1)^k e^{-alpha mu} dmu
  t_plus     T_n^(+)      = int_1^inf mu^n e^{-alpha mu} Ei(-beta(mu+1)) dmu
  t_minus    T_n^(-)      = int_1^inf mu^n e^{-alpha mu} Ei(-beta(mu-1)) dmu
  b_aux      B_{nm;k}     = int_1^inf mu^n (mu^2-1)^m e^{-alpha mu}
                              [int_{mu-1}^{mu+1} t^k e^{-beta t} dt] dmu

b_aux dispatches on the sign of the inner power k: for k >= 0 the inner
integral has an elementary antiderivative (factorial ratio k!/(k-h)!); for
k < 0 it brings in Ei terms through t_plus / t_minus.

Conditioning note.  Expanding (mu+1)^m (mu-1)^k over Mulliken moments gives
violently alternating sums, so instead the cache keeps difference ladders

    G^(q)_j = int_1^inf mu^j (mu-1)^q e^{-c mu} dmu      (first differences)
    QE^(m)_j = int mu^j (mu^2-1)^m e^{-a mu} [Ei(-b(mu-1)) - Ei(-b(mu+1))]
                                                         (second differences)

whose entries are all positive; every A_{n;mk} and every Ei-difference block
is then a short nonnegative binomial combination, and the only genuinely
cancellation-prone sums left are the T^(+/-) closed forms themselves, whose
largest summand the cache tracks (the overlap engine uses that high-water
mark to pick a safe working precision).

Two published-formula variants are kept selectable for comparison:
``t_plus(..., form="printed")`` reproduces the defective closed form that a
literal transcription gives (wrong argument sign in the leading term and a
collapsed sign factor in the derivative sum).  The default "derived" form is
re-derived from the n-fold alpha-derivative and matches the defining
integral; the validation suite pins this against direct quadrature.
"""

from __future__ import annotations

import math
import threading

from mpmath.libmp import from_man_exp

from .coefficients import binom
from .precision import DomainError, PrecisionContext, expint_ei_neg, factorial

_LOG10_2 = math.log10(2.0)

# rows of binomial coefficients C_0^p .. C_p^p, shared by every context
_COMB_LOCK = threading.Lock()
_COMB_ROWS: list[tuple[int, ...]] = [(1,)]


def _comb_row(p: int) -> tuple[int, ...]:
    if p < len(_COMB_ROWS):
        return _COMB_ROWS[p]
    with _COMB_LOCK:
        while len(_COMB_ROWS) <= p:
            prev = _COMB_ROWS[-1]
            _COMB_ROWS.append(tuple(
                (prev[i - 1] if i else 0) + (prev[i] if i < len(prev) else 0)
                for i in range(len(prev) + 1)))
    return _COMB_ROWS[p]


def _mag_exp(x) -> int | None:
    # crude magnitude exponent (bits) of an mpf; None for zero
    t = x._mpf_
    if not t[1]:
        return None
    return t[2] + t[3]


class AuxCache:
    """Per-evaluation memo for the auxiliary tower.

    Keys carry exact argument bits, so one cache serves any number of calls
    under the same PrecisionContext; the overlap engine keeps one per
    evaluation pass.  ``peak_exp`` records the largest summand magnitude
    seen in the cancellation-prone sums.
    """

    def __init__(self):
        self._a: dict = {}      # exponent bits -> Mulliken ladder state
        self._g: dict = {}      # exponent bits -> list of G ladders by q
        self._t: dict = {}      # (a, b, form)  -> T ladders and constants
        self._qe: dict = {}     # (a, b, form)  -> list of QE ladders by m
        self._misc: dict = {}   # finished Ei / B values
        # worst per-sum relative cancellation (bits), by nesting level;
        # digits lost along a path add, so levels are accounted separately
        self.rel_t_bits: int = 0
        self.rel_b_bits: int = 0

    # -- cancellation bookkeeping -------------------------------------------

    def _note_sum(self, level: str, max_term_exp, result):
        if max_term_exp is None:
            return
        re = _mag_exp(result)
        loss = max_term_exp + 4 if re is None else max_term_exp - re
        if loss <= 0:
            return
        if level == "t":
            if loss > self.rel_t_bits:
                self.rel_t_bits = loss
        elif loss > self.rel_b_bits:
            self.rel_b_bits = loss

    def cancel_digits(self, _value=None) -> int:
        """Decimal digits of accuracy the recorded cancellations can consume."""
        return int((self.rel_t_bits + self.rel_b_bits) * _LOG10_2) + 1

    # -- Mulliken ladder A_j(c), grown lazily --------------------------------

    def a_list(self, c, upto: int, ctx: PrecisionContext) -> list:
        key = c._mpf_
        st = self._a.get(key)
        if st is None:
            mp = ctx.mp
            st = {"vals": [], "S": mp.mpf(0), "cpow": mp.mpf(1),
                  "fact": 1, "em": mp.e ** (-c), "inv": 1 / c, "c": c}
            self._a[key] = st
        vals = st["vals"]
        if len(vals) <= upto:
            S, cpow, fact = st["S"], st["cpow"], st["fact"]
            em, inv, c = st["em"], st["inv"], st["c"]
            j = len(vals)
            invp = inv ** (j + 1)
            while j <= upto:
                S = S + cpow                    # sum_{i<=j} c^i / i!
                cpow = cpow * c / (j + 1)
                vals.append(fact * em * invp * S)
                fact *= (j + 1)
                invp *= inv
                j += 1
            st["S"], st["cpow"], st["fact"] = S, cpow, fact
        return vals

    # -- positive difference ladders G^(q)_j --------------------------------
    #
    # Each level is kept both as mpf values (for the difference recursion)
    # and as aligned integer mantissa/exponent pairs, so the binomial dots
    # below run as exact big-integer accumulations with one final rounding.

    def _g_ladder(self, c, q: int, length: int, ctx: PrecisionContext):
        key = c._mpf_
        ladders = self._g.get(key)
        if ladders is None:
            base = self.a_list(c, length + q, ctx)
            ladders = [{"vals": base, "man": [], "exp": []}]
            self._g[key] = ladders
        lv = ladders[q] if q < len(ladders) else None
        if lv is None or len(lv["vals"]) < length:
            self.a_list(c, length + q, ctx)  # extend the shared base
            for qq in range(1, q + 1):
                need = length + (q - qq)
                if qq == len(ladders):
                    ladders.append({"vals": [], "man": [], "exp": []})
                vals, prev = ladders[qq]["vals"], ladders[qq - 1]["vals"]
                for j in range(len(vals), need):
                    vals.append(prev[j + 1] - prev[j])
            lv = ladders[q]
        vals, man, exp = lv["vals"], lv["man"], lv["exp"]
        for j in range(len(man), len(vals)):
            t = vals[j]._mpf_
            man.append(t[1])
            exp.append(t[2])
        return lv

    def a_nmk_dot(self, n: int, p: int, q: int, c, ctx: PrecisionContext):
        """A_{n;pq}(c) as sum_i C_i^p G^(q)_{n+i}: nonnegative summands."""
        lv = self._g_ladder(c, q, n + p + 1, ctx)
        row = _comb_row(p)
        man, exp = lv["man"], lv["exp"]
        e0 = min(exp[n:n + p + 1])
        acc = 0
        for i in range(p + 1):
            j = n + i
            acc += row[i] * (man[j] << (exp[j] - e0))
        return ctx.mp.make_mpf(from_man_exp(int(acc), e0, ctx.mp.prec, "n"))

    # -- T ladders and Ei-difference ladders ---------------------------------

    def _ei(self, x, ctx):
        key = ("Ei", x._mpf_)
        v = self._misc.get(key)
        if v is None:
            v = expint_ei_neg(x, ctx)
            self._misc[key] = v
        return v

    def t_ladders(self, alpha, beta, upto: int, ctx: PrecisionContext,
                  form: str = "derived"):
        """T^(+) and T^(-) value lists through order `upto` (lazy)."""
        key = (alpha._mpf_, beta._mpf_, form)
        st = self._t.get(key)
        if st is None:
            mp = ctx.mp
            apb = alpha + beta
            st = {"tp": [], "tm": [],
                  "ei_2b": self._ei(2 * beta, ctx),
                  "ei_2ab": self._ei(2 * apb, ctx),
                  "log_ratio": mp.log(beta / apb),
                  "inv_apb": 1 / apb}
            self._t[key] = st
        tp, tm = st["tp"], st["tm"]
        if len(tp) > upto:
            return st
        apb = alpha + beta
        a_pos = self.a_list(alpha, upto, ctx)
        a_neg = self.a_list(-alpha, upto, ctx)
        a_2 = self.a_list(2 * apb, upto, ctx)
        ei_2b, ei_2ab = st["ei_2b"], st["ei_2ab"]
        log_ratio, inv_apb = st["log_ratio"], st["inv_apb"]
        def _bump(me, x):
            e = _mag_exp(x)
            return me if e is None or (me is not None and e <= me) else e

        for n in range(len(tp), upto + 1):
            if form == "derived":
                v = a_pos[n] * ei_2b + (-1) ** n * a_neg[n] * ei_2ab
                me = _bump(None, v)
                for m in range(1, n + 1):
                    term = ((-1) ** (n + m - 1) * (binom(n, m) << m)
                            * a_neg[n - m] * a_2[m - 1])
                    v += term
                    me = _bump(me, term)
                self._note_sum("t", me, v)
            elif form == "printed":
                v = a_neg[n] * ei_2b + (-1) ** n * a_neg[n] * ei_2ab
                for m in range(1, n + 1):
                    v -= ((-1) ** (n - m) * (binom(n, m) << m)
                          * a_neg[n - m] * (-1) ** (m - 1) * a_2[m - 1])
            else:
                raise ValueError("unknown t_plus form %r" % (form,))
            tp.append(v)
            w = a_pos[n] * log_ratio
            me = _bump(None, w)
            fm = 1           # (m-1)!
            ppow = inv_apb   # (a+b)^-m
            for m in range(1, n + 1):
                term = binom(n, m) * fm * ppow * a_pos[n - m]
                w += term
                me = _bump(me, term)
                fm *= m
                ppow *= inv_apb
            self._note_sum("t", me, w)
            tm.append(w)
        return st

    def qe_ladder(self, alpha, beta, m: int, length: int,
                  ctx: PrecisionContext, form: str = "derived") -> list:
        """QE^(m)_j = int mu^j (mu^2-1)^m e^{-a mu} [Ei(-b(mu-1)) - Ei(-b(mu+1))].

        Built as m-fold second differences of E_j = T^(-)_j - T^(+)_j; every
        entry is positive, so the Ei-difference block of b_aux is a single
        lookup with no alternating sum.
        """
        key = (alpha._mpf_, beta._mpf_, form)
        ladders = self._qe.get(key)
        if ladders is None:
            ladders = [[]]
            self._qe[key] = ladders
        if m < len(ladders) and len(ladders[m]) >= length:
            return ladders[m]
        st = self.t_ladders(alpha, beta, length + 2 * m, ctx, form)
        tp, tm = st["tp"], st["tm"]
        base = ladders[0]
        for j in range(len(base), length + 2 * m):
            base.append(tm[j] - tp[j])
        for mm in range(1, m + 1):
            need = length + 2 * (m - mm)
            if mm == len(ladders):
                ladders.append([])
            lad, prev = ladders[mm], ladders[mm - 1]
            for j in range(len(lad), need):
                lad.append(prev[j + 2] - prev[j])
        return ladders[m]


def _key(tag, *args):
    return (tag,) + tuple(a._mpf_ if hasattr(a, "_mpf_") else a for a in args)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def a_n(n: int, alpha, ctx: PrecisionContext, cache: AuxCache | None = None):
    """Mulliken integral A_n(alpha) = n! e^{-a} a^{-n-1} sum_{k<=n} a^k/k!.

    For alpha < 0 this is the analytic continuation of the closed form
    (the defining integral diverges there); the derivative-of-A_0 pattern
    behind t_plus needs exactly this continuation.
    """
    if n < 0:
        raise DomainError("a_n requires n >= 0")
    alpha = ctx.mpf(alpha)
    if alpha == 0:
        raise DomainError("a_n diverges at alpha = 0")
    if cache is None:
        cache = AuxCache()
    return cache.a_list(alpha, n, ctx)[n]


def a_n_tail(n: int, x, alpha, ctx: PrecisionContext):
    """A_n(x, alpha) = int_x^inf r^n e^{-alpha r} dr, x >= 0."""
    if n < 0:
        raise DomainError("a_n_tail requires n >= 0")
    mp = ctx.mp
    x, alpha = ctx.mpf(x), ctx.mpf(alpha)
    if x < 0 or alpha <= 0:
        raise DomainError("a_n_tail requires x >= 0, alpha > 0")
    s = mp.mpf(0)
    for k in range(n + 1):
        s += (factorial(n) // factorial(n - k)) * x ** (n - k) / alpha ** (k + 1)
    return mp.e ** (-alpha * x) * s


def u_head(n: int, x, alpha, ctx: PrecisionContext):
    """U_n(x, alpha) = int_0^x r^n e^{-alpha r} dr = n!/a^{n+1} - A_n(x, a)."""
    mp = ctx.mp
    x, alpha = ctx.mpf(x), ctx.mpf(alpha)
    if x < 0 or alpha <= 0:
        raise DomainError("u_head requires x >= 0, alpha > 0")
    return factorial(n) / alpha ** (n + 1) - a_n_tail(n, x, alpha, ctx)


def a_nmk(n: int, m: int, k: int, alpha, ctx: PrecisionContext,
          cache: AuxCache | None = None):
    """A_{n;mk}(alpha) = int_1^inf mu^n (mu+1)^m (mu-1)^k e^{-alpha mu} dmu."""
    if n < 0 or m < 0 or k < 0:
        raise DomainError("a_nmk requires n, m, k >= 0")
    alpha = ctx.mpf(alpha)
    if alpha <= 0:
        raise DomainError("a_nmk requires alpha > 0")
    if cache is None:
        cache = AuxCache()
    return cache.a_nmk_dot(n, m, k, alpha, ctx)


def t_plus(n: int, alpha, beta, ctx: PrecisionContext,
           cache: AuxCache | None = None, form: str = "derived"):
    """T_n^(+)(a, b) = int_1^inf mu^n e^{-a mu} Ei(-b(mu+1)) dmu.

    form="derived" (default): closed form from the n-th alpha-derivative,

        A_n(a) Ei(-2b) + (-1)^n A_n(-a) Ei(-2(a+b))
          + sum_{m=1}^n (-1)^{n+m-1} 2^m C_m^n A_{n-m}(-a) A_{m-1}(2(a+b)),

    which matches the defining integral.  form="printed" keeps the
    defective published variant for comparison runs.
    """
    if n < 0:
        raise DomainError("t_plus requires n >= 0")
    alpha, beta = ctx.mpf(alpha), ctx.mpf(beta)
    if alpha <= 0 or beta <= 0:
        raise DomainError("t_plus requires alpha > 0, beta > 0")
    if cache is None:
        cache = AuxCache()
    return cache.t_ladders(alpha, beta, n, ctx, form)["tp"][n]


def t_minus(n: int, alpha, beta, ctx: PrecisionContext,
            cache: AuxCache | None = None):
    """T_n^(-)(a, b) = int_1^inf mu^n e^{-a mu} Ei(-b(mu-1)) dmu.

    Closed form: A_n(a) ln(b/(a+b)) + sum_m C_m^n (m-1)! (a+b)^{-m} A_{n-m}(a).
    """
    if n < 0:
        raise DomainError("t_minus requires n >= 0")
    alpha, beta = ctx.mpf(alpha), ctx.mpf(beta)
    if alpha <= 0 or beta <= 0:
        raise DomainError("t_minus requires alpha > 0, beta > 0")
    if cache is None:
        cache = AuxCache()
    return cache.t_ladders(alpha, beta, n, ctx, "derived")["tm"][n]


def b_aux(n: int, m: int, k: int, alpha, beta, ctx: PrecisionContext,
          cache: AuxCache | None = None, t_form: str = "derived"):
    """B_{nm;k}(alpha, beta) with signed inner power k.

    k >= 0: sum over the elementary antiderivative of t^k e^{-beta t},

        sum_{h=0}^k k!/(k-h)! beta^{-h-1}
            (e^beta A_{n;m,m+k-h} - e^{-beta} A_{n;m+k-h,m})(alpha+beta).

    k < 0 with kk = -k: an Ei-difference block (one QE-ladder lookup) plus
    a sum of one-electron integrals; the h-sum is empty for kk = 1.  The
    defining double integral converges only for m >= kk - 1, which is also
    exactly when every A index below stays nonnegative.
    """
    if n < 0 or m < 0:
        raise DomainError("b_aux requires n, m >= 0")
    mp = ctx.mp
    alpha, beta = ctx.mpf(alpha), ctx.mpf(beta)
    if alpha <= 0 or beta <= 0:
        raise DomainError("b_aux requires alpha > 0, beta > 0")
    if cache is None:
        cache = AuxCache()
    key = _key("B", n, m, k, alpha, beta, t_form)
    v = cache._misc.get(key)
    if v is not None:
        return v
    apb = alpha + beta
    eb = mp.e ** beta
    emb = 1 / eb
    max_e = None

    def _bump(x):
        nonlocal max_e
        e = _mag_exp(x)
        if e is not None and (max_e is None or e > max_e):
            max_e = e

    if k >= 0:
        v = mp.mpf(0)
        for h in range(k + 1):
            q = m + k - h
            term = ((factorial(k) // factorial(k - h)) * beta ** (-h - 1)
                    * (eb * cache.a_nmk_dot(n, m, q, apb, ctx)
                       - emb * cache.a_nmk_dot(n, q, m, apb, ctx)))
            v += term
            _bump(term)
    else:
        kk = -k
        if m < kk - 1:
            raise DomainError(
                "b_aux(n=%d, m=%d, k=%d) diverges: need m >= %d" % (n, m, k, kk - 1))
        qe = cache.qe_ladder(alpha, beta, m, n + 1, ctx, t_form)
        v = -((-beta) ** (kk - 1) / factorial(kk - 1)) * qe[n]
        _bump(v)
        fk1 = mp.mpf(factorial(kk - 1))
        for h in range(1, kk):
            p = m - kk + h
            term = -((factorial(kk - h - 1) / fk1) * (-beta) ** (h - 1)
                     * (emb * cache.a_nmk_dot(n, p, m, apb, ctx)
                        - eb * cache.a_nmk_dot(n, m, p, apb, ctx)))
            v += term
            _bump(term)
    cache._note_sum("b", max_e, v)
    cache._misc[key] = v
    return v

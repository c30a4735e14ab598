"""Truncated Carlitz-Goss zeta values and depth-two multizeta values in F_q((1/t)).

Degree cutoff.  For s >= 1 and d >= 1,

    v(S_d(s)) >= s*d + (q-1)*d*(d+1)/2,

because a^(-s) = u^(sd) (1 + c_1 u + ... + c_d u^d)^(-s) and summing over all
(c_1, ..., c_d) in F_q^d kills every monomial unless each c_i occurs with an
exponent that is a positive multiple of q-1.  The crude bound v >= s*d would
need degree ceil(prec/s), i.e. 3^20 polynomials for zeta(2) at precision 40 over F_3.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import LaurentSeries, Poly, RatFunc, _backend, enumerate_monic, laurent_expand
from .carlitz import CarlitzCtx, bernoulli, bracket, carlitz_factorial, ell
from .report import PASS, FAIL, VerifyReport


@dataclass(frozen=True)
class ZetaQuery:
    weights: tuple[int, ...]
    prec: int
    d_max: int | None = None

    def __post_init__(self):
        if self.prec < 1:
            raise ValueError("precision must be >= 1")
        if len(self.weights) not in (1, 2):
            raise ValueError("weights: one value for zeta, two for multizeta")
        if any(w == 0 for w in self.weights):
            raise ValueError("weights must be nonzero")
        if any(w < 0 for w in self.weights) and self.d_max is None:
            raise ValueError("negative weights need an explicit d_max")


def valuation_bound(q: int, s: int, d: int) -> int:
    """Lower bound for the u-adic valuation of S_d(s), s >= 1."""
    return s * d + (q - 1) * d * (d + 1) // 2 if d else 0


def cutoff(q: int, s: int, prec: int) -> int:
    """Largest d whose S_d(s) can touch a coefficient below u^prec."""
    d = 0
    while valuation_bound(q, s, d + 1) < prec:
        d += 1
    return d


def powersum_laurent(ctx: CarlitzCtx, d: int, s: int, prec: int) -> LaurentSeries:
    """S_d(s) = sum of a^(-s) over monic a of degree d, expanded to u^prec."""
    key = ("S-laurent", d, s, prec)
    return ctx._memo(key, lambda: _powersum_laurent(ctx, d, s, prec))


def _powersum_laurent(ctx: CarlitzCtx, d: int, s: int, prec: int) -> LaurentSeries:
    base = ctx.base
    if s < 0:
        acc = Poly.const(base, 0)
        for a in enumerate_monic(base, d):
            acc = acc + a ** (-s)
        if acc.is_zero():
            return LaurentSeries.zero(base, prec)
        return laurent_expand(RatFunc(acc), prec)
    lead = s * d
    n = prec - lead
    if n <= 0:
        return LaurentSeries.zero(base, prec)
    B = _backend(base)
    elems = [B.to_fq(x) for x in base.elements()]
    one = B.fq(1)
    acc = B.zero
    # u^d a(1/u) = 1 + c_{d-1} u + ... + c_0 u^d
    for tail in itertools.product(elems, repeat=d):
        rev = B.R([one, *tail])
        acc = acc + (rev.pow_trunc(s, n) if s > 1 else rev).inverse_series_trunc(n)
    return LaurentSeries(base, lead, acc, prec)


def zeta(ctx: CarlitzCtx, query: ZetaQuery | int, prec: int | None = None) -> LaurentSeries:
    """zeta(s) = sum_d S_d(s), exact below u^prec for s >= 1 (partial sum otherwise)."""
    if isinstance(query, int):
        query = ZetaQuery((query,), prec)
    (s,) = query.weights
    D = query.d_max if query.d_max is not None else cutoff(ctx.q, s, query.prec)
    acc = LaurentSeries.zero(ctx.base, query.prec)
    for d in range(D + 1):
        acc = acc + powersum_laurent(ctx, d, s, query.prec)
    return acc


def multizeta(ctx: CarlitzCtx, s1: int, s2: int, prec: int) -> LaurentSeries:
    """zeta(s1, s2) = sum over d1 > d2 >= 0 of S_{d1}(s1) S_{d2}(s2)."""
    if s1 < 1 or s2 < 1:
        raise ValueError("multizeta needs positive weights")
    q = ctx.q
    acc = LaurentSeries.zero(ctx.base, prec)
    d1 = 1
    while valuation_bound(q, s1, d1) < prec:
        inner = LaurentSeries.zero(ctx.base, prec)
        for d2 in range(d1):
            if valuation_bound(q, s1, d1) + valuation_bound(q, s2, d2) >= prec:
                break
            inner = inner + powersum_laurent(ctx, d2, s2, prec)
        acc = acc + powersum_laurent(ctx, d1, s1, prec) * inner
        d1 += 1
    return acc.truncate(prec) if acc.prec > prec else acc


def multizeta_factor(ctx: CarlitzCtx, n: int, k_list) -> RatFunc:
    """(-1)^s / ell_1^(q^n) * prod_i [n - k_i]^(q^(k_i))."""
    q, s = ctx.q, len(k_list)
    num = Poly.const(ctx.base, (-1) ** s)
    for k in k_list:
        num = num * bracket(ctx, n - k) ** (q**k)
    return RatFunc(num, ell(ctx, 1) ** (q**n))


def verify_multizeta_identity(ctx: CarlitzCtx, n: int, k_list, prec: int = 40) -> VerifyReport:
    q, s = ctx.q, len(k_list)
    if n < 1:
        raise ValueError("need n > 0")
    if not 1 <= s < q:
        raise ValueError("need 1 <= s < q")
    if any(not 0 <= k < n for k in k_list):
        raise ValueError("need 0 <= k_i < n")
    w1 = q**n - sum(q**k for k in k_list)
    w2 = (q - 1) * q**n
    w = q ** (n + 1) - sum(q**k for k in k_list)
    factor = multizeta_factor(ctx, n, k_list)
    # v = q^n (q - s) > 0; precision is counted from the right side's leading term,
    # otherwise large weights make both sides vanish below u^prec.
    v = factor.den.degree - factor.num.degree
    top = v + prec
    lhs = multizeta(ctx, w1, w2, top)
    rhs = laurent_expand(factor, top) * zeta(ctx, ZetaQuery((w,), prec))
    common = min(lhs.prec, rhs.prec)
    equal = lhs.truncate(common) == rhs.truncate(common)
    lo = min(lhs.lead, rhs.lead)
    params = {"q": q, "n": n, "k_list": list(k_list), "prec": prec, "weights": [w1, w2],
              "zeta_weight": w, "abs_prec": top}
    extra = {"factor": factor, "compared_from": lo, "compared_to": common,
             "compared": common - lo}
    witness = None
    if not equal:
        witness = {"first_difference": lhs.first_difference(rhs), "lhs": lhs, "rhs": rhs}
    return VerifyReport("multizeta", params, lhs.truncate(common), rhs.truncate(common),
                        PASS if equal else FAIL, witness, extra)


def multizeta_instances(q: int, n_max: int):
    """Every admissible (n, k_list) with n <= n_max, as sorted multisets."""
    for n in range(1, n_max + 1):
        for s in range(1, q):
            for ks in itertools.combinations_with_replacement(range(n - 1, -1, -1), s):
                yield n, ks


def euler_ratio(ctx: CarlitzCtx, n: int, rel_prec: int) -> LaurentSeries:
    """zeta(n) n!_c / B_n, which equals the n-th power of the Carlitz period."""
    entry = bernoulli(ctx, n)
    if entry.value.is_zero():
        raise ZeroDivisionError(f"B_{n} vanishes")
    r = RatFunc(carlitz_factorial(ctx, n)) / entry.value
    v = r.den.degree - r.num.degree
    return laurent_expand(r, v + rel_prec) * zeta(ctx, ZetaQuery((n,), rel_prec))


def euler_carlitz_crosscheck(ctx: CarlitzCtx, n: int, m: int, prec: int = 40) -> VerifyReport:
    """(zeta(n) n!_c/B_n)^m = (zeta(m) m!_c/B_m)^n; both sides are the period to the nm."""
    q = ctx.q
    if n < 1 or m < 1 or n % (q - 1) or m % (q - 1):
        raise ValueError("n and m must be positive multiples of q-1")
    lhs = euler_ratio(ctx, n, prec) ** m
    rhs = euler_ratio(ctx, m, prec) ** n
    common = min(lhs.prec, rhs.prec)
    a, b = lhs.truncate(common), rhs.truncate(common)
    equal = a == b
    lo = min(a.lead, b.lead)
    params = {"q": q, "n": n, "m": m, "prec": prec}
    witness = None if equal else {"first_difference": lhs.first_difference(rhs)}
    return VerifyReport("euler-carlitz", params, a, b, PASS if equal else FAIL, witness,
                        {"compared": common - lo, "valuation": a.lead})

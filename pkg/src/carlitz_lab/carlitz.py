"""Carlitz constants over F_q(t): brackets, D_m, L_n, the exponential and
logarithm, factorials, binomial polynomials and Bernoulli-Carlitz fractions.

Conventions: [n] = t^(q^n) - t, D_m = prod_{i<m} [m-i]^(q^i) (= d_m),
L_n = prod_{i=1..n} [i] and ell_n = (-1)^n L_n.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from .algebra import FactorMap, Poly, RatFunc, factor_trial, function_field, monic_irreducibles
from .field import FieldCtx
from .linear import LinearSeries


class CarlitzCtx:
    """Memoized tower constants for one base field F_q."""

    def __init__(self, base: FieldCtx):
        self.base = base
        self.q = base.q
        self.K = function_field(base)
        self._cache: dict[tuple, object] = {}
        self._lock = threading.RLock()

    def _memo(self, key, build):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]

    @property
    def t(self) -> Poly:
        return Poly.t(self.base)

    def __repr__(self) -> str:
        return f"CarlitzCtx({self.base!r})"


def _check_index(n: int) -> None:
    if n < 0:
        raise ValueError("index must be >= 0")


def bracket(ctx: CarlitzCtx, n: int) -> Poly:
    _check_index(n)
    return ctx._memo(("bracket", n), lambda: ctx.t ** (ctx.q**n) - ctx.t)


def bigD(ctx: CarlitzCtx, m: int) -> Poly:
    _check_index(m)

    def build():
        out = Poly.const(ctx.base, 1)
        for i in range(m):
            out = out * bracket(ctx, m - i) ** (ctx.q**i)
        return out

    return ctx._memo(("D", m), build)


def bigL(ctx: CarlitzCtx, n: int) -> Poly:
    _check_index(n)
    return ctx._memo(("L", n), lambda: Poly.const(ctx.base, 1) if n == 0 else bigL(ctx, n - 1) * bracket(ctx, n))


def ell(ctx: CarlitzCtx, n: int) -> Poly:
    return bigL(ctx, n) if n % 2 == 0 else -bigL(ctx, n)


def dfact(ctx: CarlitzCtx, n: int) -> Poly:
    """d_n, which equals D_n."""
    return bigD(ctx, n)


def carlitz_exp(ctx: CarlitzCtx, order: int) -> LinearSeries:
    """e(z) = sum z^(q^i)/d_i, truncated after index ``order``."""
    K = ctx.K
    return LinearSeries([K.one / bigD(ctx, i) for i in range(order + 1)], ctx.q, K, "series")


def carlitz_log(ctx: CarlitzCtx, order: int) -> LinearSeries:
    K = ctx.K
    return LinearSeries([K.one / ell(ctx, i) for i in range(order + 1)], ctx.q, K, "series")


def base_digits(n: int, q: int) -> list[int]:
    out = []
    while n:
        n, r = divmod(n, q)
        out.append(r)
    return out


def carlitz_factorial(ctx: CarlitzCtx, n: int) -> Poly:
    """n!_c = prod d_i^(n_i) over the base-q digits of n."""
    _check_index(n)
    out = Poly.const(ctx.base, 1)
    for i, ni in enumerate(base_digits(n, ctx.q)):
        if ni:
            out = out * dfact(ctx, i) ** ni
    return out


def _binomial_product_check(ctx: CarlitzCtx, d: int, coeffs) -> None:
    """Expand prod_{deg a < d} (z - a) and compare with D_d times the sum form."""
    from .algebra import enumerate_monic

    zero = Poly.const(ctx.base, 0)
    roots = [zero]
    for k in range(d):
        for a in enumerate_monic(ctx.base, k):
            roots += [a * c for c in ctx.base.elements() if c]
    prod = [Poly.const(ctx.base, 1)]  # coefficients in z, entries in F_q[t]
    for a in roots:
        nxt = [zero] * (len(prod) + 1)
        for k, c in enumerate(prod):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - a * c
        prod = nxt
    Dd = bigD(ctx, d)
    expected = {ctx.q**i: c * Dd for i, c in enumerate(coeffs)}
    for k, c in enumerate(prod):
        if RatFunc(c) != expected.get(k, RatFunc(zero)):
            raise AssertionError(f"binomial sum and product forms differ at z^{k}")


def carlitz_binomial(ctx: CarlitzCtx, d: int, check: bool | None = None) -> LinearSeries:
    """binom(z, q^d)_c = sum_i z^(q^i) / (d_i ell_{d-i}^(q^i)), a polynomial of q-degree d.

    For d <= 2 and q <= 3 (or when ``check`` is true) the sum form is checked
    against the product (1/D_d) prod_{deg a < d} (z - a) by enumeration.
    """
    _check_index(d)
    K, q = ctx.K, ctx.q
    coeffs = [K.one / (bigD(ctx, i) * ell(ctx, d - i) ** (q**i)) for i in range(d + 1)]
    if check or (check is None and d <= 2 and q <= 3):
        ctx._memo(("binomcheck", d), lambda: _binomial_product_check(ctx, d, coeffs) or True)
    return LinearSeries(coeffs, q, K, "polynomial")


# --- Bernoulli-Carlitz -----------------------------------------------------------

def reciprocal_series(coeffs: list, order: int, one):
    """Dense power-series reciprocal: c with (sum coeffs_i x^i)(sum c_i x^i) = 1 mod x^(order+1)."""
    if not coeffs or not coeffs[0]:
        raise ZeroDivisionError("constant term must be invertible")
    inv0 = one / coeffs[0]
    c = [inv0]
    for n in range(1, order + 1):
        acc = one * 0
        for j in range(1, min(n, len(coeffs) - 1) + 1):
            if coeffs[j]:
                acc = acc + coeffs[j] * c[n - j]
        c.append(-(acc * inv0))
    return c


@dataclass(frozen=True)
class BernoulliEntry:
    n: int
    value: RatFunc
    num_factors: FactorMap
    den_factors: FactorMap

    def to_json(self) -> dict:
        return {"n": self.n, "value": self.value.to_json(),
                "num_factors": self.num_factors.to_json(), "den_factors": self.den_factors.to_json()}


def _default_factor_degree(q: int, n: int) -> int:
    return max(1, math.ceil(math.log(n + 1, q))) if n > 0 else 1


def bernoulli(ctx: CarlitzCtx, n: int, order: int | None = None, max_deg: int | None = None) -> BernoulliEntry:
    """B_n from z/e(z) = sum B_n z^n / n!_c, via a dense reciprocal of e(z)/z."""
    _check_index(n)
    order = n if order is None else order
    if order < n:
        raise ValueError(f"order {order} is too small for B_{n}")
    vals = ctx._memo(("bern-series",), lambda: [])
    with ctx._lock:
        if len(vals) <= order:
            K, q = ctx.K, ctx.q
            series = [K.zero] * (order + 1)
            i = 0
            while q**i - 1 <= order:
                series[q**i - 1] = K.one / bigD(ctx, i)
                i += 1
            vals[:] = reciprocal_series(series, order, K.one)
    value = vals[n] * carlitz_factorial(ctx, n)
    md = _default_factor_degree(ctx.q, n) if max_deg is None else max_deg
    if value.is_zero():
        zero_map = FactorMap(ctx.base.zero, {})
        return BernoulliEntry(n, value, zero_map, FactorMap(ctx.base.one, {}))
    return BernoulliEntry(n, value, factor_trial(value.num, md), factor_trial(value.den, md))


def bernoulli_qk_closed(ctx: CarlitzCtx, k: int) -> RatFunc:
    """Closed form for B_(q^k - 1): (-1)^k prod_{i=1}^{k-1} [k-i]^(q^i - 2) / [k]."""
    if k < 1:
        raise ValueError("k must be >= 1")
    num = Poly.const(ctx.base, (-1) ** k)
    for i in range(1, k):
        num = num * bracket(ctx, k - i) ** (ctx.q**i - 2)
    return RatFunc(num, bracket(ctx, k))


def bernoulli_qk_exponents(ctx: CarlitzCtx, k: int) -> dict[Poly, int]:
    """Predicted exponent of each monic irreducible of degree <= k in B_(q^k - 1).

    [m] is the product of the monic irreducibles of degree dividing m, so an
    irreducible of degree delta collects q^i - 2 from every i with delta | k - i
    and loses one when delta | k.  Positive means numerator, negative denominator.
    """
    out = {}
    for delta in range(1, k + 1):
        e = sum(ctx.q**i - 2 for i in range(1, k) if (k - i) % delta == 0) - (k % delta == 0)
        if e:
            for P in monic_irreducibles(ctx.base, delta):
                out[P] = e
    return out


def factor_exponents(entry: BernoulliEntry) -> dict[Poly, int]:
    """Signed exponents from an entry's two factor maps."""
    out = dict(entry.num_factors.factors)
    for P, m in entry.den_factors.factors.items():
        out[P] = out.get(P, 0) - m
    return out

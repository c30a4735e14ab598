"""Power sums over monic polynomials and the product identities for h, H, a, alpha.

``S_d(k)`` is the sum of a^(-k) over monic a of degree d and ``S_{<d}(k)`` the
same over degrees 0..d-1; positive k means negative powers.  For
f = binom(z, q^d)_c the coefficient families are these power sums:

    h_k = S_{<d}(k),  H_k = S_{<d}(-k)   for (q-1) | k,
    a_k = S_d(k),     alpha_k = S_d(-k)  for k >= 1,

with no sign correction needed (checked against brute force in the tests).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import Poly, RatFunc, enumerate_monic
from .carlitz import CarlitzCtx, carlitz_binomial, carlitz_exp, dfact, ell
from .linear import LinearSeries, comp_inverse
from .report import EXPECTED_FAIL, FAIL, PASS, VerifyReport

BRUTE_LIMIT = 10**6


def is_even(k: int, q: int) -> bool:
    """The function-field parity: (q-1) divides k."""
    return k % (q - 1) == 0


@dataclass(frozen=True)
class PowerSumQuery:
    d: int
    k: int
    scope: str = "exact"  # or "below"

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("degree must be >= 0")
        if self.k == 0:
            raise ValueError("exponent k must be nonzero")
        if self.scope not in ("exact", "below"):
            raise ValueError(f"scope must be 'exact' or 'below', not {self.scope!r}")

    def to_json(self) -> dict:
        return {"d": self.d, "k": self.k, "scope": self.scope}


@dataclass(frozen=True)
class PowerSumResult:
    value: RatFunc
    method: str  # "engine" or "brute"
    fallback: bool = False
    family: str | None = None
    index: int | None = None

    def to_json(self) -> dict:
        out = {"value": self.value.to_json(), "method": self.method, "fallback": self.fallback}
        if self.family:
            out.update(family=self.family, index=self.index)
        return out


def _monic_sum(ctx: CarlitzCtx, d: int, k: int) -> RatFunc:
    if ctx.q**d > BRUTE_LIMIT:
        raise ValueError(f"q^d = {ctx.q ** d} exceeds the brute-force guard {BRUTE_LIMIT}")
    K = ctx.K
    if k < 0:
        acc = Poly.const(ctx.base, 0)
        for a in enumerate_monic(ctx.base, d):
            acc = acc + a ** (-k)
        return RatFunc(acc)
    acc = K.zero
    for a in enumerate_monic(ctx.base, d):
        acc = acc + RatFunc(1, a**k)
    return acc


def powersum_brute(ctx: CarlitzCtx, query: PowerSumQuery) -> RatFunc:
    if query.scope == "exact":
        return _monic_sum(ctx, query.d, query.k)
    acc = ctx.K.zero
    for deg in range(query.d):
        acc = acc + _monic_sum(ctx, deg, query.k)
    return acc


def _family_for(query: PowerSumQuery) -> tuple[str, int]:
    if query.scope == "below":
        return ("h", query.k) if query.k > 0 else ("H", -query.k)
    return ("a", query.k) if query.k > 0 else ("alpha", -query.k)


def is_admissible(q: int, query: PowerSumQuery) -> bool:
    family, _ = _family_for(query)
    if family in ("h", "H"):
        return is_even(query.k, q)
    return True


def powersum_fast(ctx: CarlitzCtx, query: PowerSumQuery) -> PowerSumResult:
    """Read the power sum off the coefficient tables of binom(z, q^d)_c.

    Inadmissible queries (h/H at a non-'even' exponent) are answered by brute
    force and flagged with ``fallback=True``.
    """
    family, index = _family_for(query)
    if not is_admissible(ctx.q, query):
        return PowerSumResult(powersum_brute(ctx, query), "brute", True, family, index)
    f = carlitz_binomial(ctx, query.d)
    return PowerSumResult(f.table(family, index)[index], "engine", False, family, index)


def closed_form(ctx: CarlitzCtx, d: int, i: int, family: str) -> RatFunc:
    """Closed forms of the four families at index q^i - 1 for binom(z, q^d)_c."""
    q, K = ctx.q, ctx.K
    if family == "h":
        if d < 1:
            raise ValueError("the h closed form needs d >= 1")
        return K.one * ell(ctx, d + i - 1) / (ell(ctx, i) * ell(ctx, d - 1) ** (q**i))
    if family == "a":
        if i < 1:
            raise ValueError("the a closed form needs i >= 1")
        return K.one * ell(ctx, d + i - 1) / (ell(ctx, i - 1) * ell(ctx, d) ** (q**i))
    if family in ("H", "alpha") and i < d:
        raise ValueError(f"the {family} closed form needs i >= d")
    if family == "H":
        if d < 1:
            raise ValueError("the H closed form needs d >= 1")
        return K.one * dfact(ctx, i - 1) ** q / (ell(ctx, d - 1) * dfact(ctx, i - d) ** (q**d))
    if family == "alpha":
        return K.one * dfact(ctx, i) / (ell(ctx, d) * dfact(ctx, i - d) ** (q**d))
    raise ValueError(f"unknown family {family!r}")


def carlitz_inverse_closed(ctx: CarlitzCtx, d: int, j: int) -> RatFunc:
    """g_j for the inverse of ell_d * binom(z, q^d)_c, d >= 1."""
    if d < 1:
        raise ValueError("needs d >= 1")
    q = ctx.q
    return ctx.K.one * ell(ctx, d + j - 1) / (ell(ctx, j) * ell(ctx, d - 1) ** (q**j))


def scaled_binomial(ctx: CarlitzCtx, d: int) -> LinearSeries:
    f = carlitz_binomial(ctx, d)
    c = RatFunc(ell(ctx, d))
    return LinearSeries([c * x for x in f.coeffs], f.q, f.field, "polynomial")


# --- product identities ----------------------------------------------------------

def _status(equal: bool, in_range: bool) -> str:
    if equal:
        return PASS
    return FAIL if in_range else EXPECTED_FAIL


def _prod(values, one):
    out = one
    for v in values:
        out = out * v
    return out


def _report(id, params, lhs, rhs, in_range, **extra) -> VerifyReport:
    equal = lhs == rhs
    params = dict(params, in_range=in_range)
    return VerifyReport(id, params, lhs, rhs, _status(equal, in_range),
                        None if equal else {"lhs": lhs, "rhs": rhs}, extra)


def series_params(f: LinearSeries) -> dict:
    return {"q": f.q, "f": f.to_json()}


def verify_thm1(f: LinearSeries, k: int, k_list: Sequence[int]) -> VerifyReport:
    """prod_j h_{q^k - q^{k_j}} = h_{sum_j (q^k - q^{k_j})}, claimed for 1 <= l <= q."""
    q, l = f.q, len(k_list)
    if l < 1 or any(not 0 <= kj <= k for kj in k_list):
        raise ValueError("need 1 <= l and 0 <= k_j <= k")
    idx = [q**k - q**kj for kj in k_list]
    top = sum(idx)
    tab = f.table("h", top)
    lhs = _prod((tab[i] for i in idx), f.field.one)
    params = {**series_params(f), "k": k, "k_list": list(k_list), "l": l}
    return _report("thm1", params, lhs, tab[top], l <= q, indices=idx, rhs_index=top)


def verify_thm3(f: LinearSeries, k_list: Sequence[int]) -> VerifyReport:
    """prod_i H_{q^{k_i} - 1} = H_{sum q^{k_i} - s}, claimed for 1 <= s <= q."""
    q, s = f.q, len(k_list)
    if s < 1 or any(ki < 0 for ki in k_list):
        raise ValueError("need s >= 1 and k_i >= 0")
    idx = [q**ki - 1 for ki in k_list]
    top = sum(q**ki for ki in k_list) - s
    tab = f.table("H", max([top, *idx]))
    lhs = _prod((tab[i] for i in idx), f.field.one)
    params = {**series_params(f), "k_list": list(k_list), "s": s}
    return _report("thm3", params, lhs, tab[top], s <= q, indices=idx, rhs_index=top)


def verify_thm4(f: LinearSeries, k: int, k_list: Sequence[int]) -> VerifyReport:
    """prod_i a_{q^k - q^{k_i}} = f_0^{(s-1) q^k} a_{q^k - sum q^{k_i}}, claimed for 1 <= s < q."""
    q, s = f.q, len(k_list)
    if s < 1 or any(not 0 <= ki < k for ki in k_list):
        raise ValueError("need s >= 1 and 0 <= k_i < k")
    idx = [q**k - q**ki for ki in k_list]
    low = q**k - sum(q**ki for ki in k_list)
    if low < 0:
        raise ValueError("sum of q^{k_i} exceeds q^k")
    tab = f.table("a", max(idx))
    lhs = _prod((tab[i] for i in idx), f.field.one)
    rhs = f.coeffs[0] ** ((s - 1) * q**k) * tab[low]
    params = {**series_params(f), "k": k, "k_list": list(k_list), "s": s}
    return _report("thm4", params, lhs, rhs, s < q, indices=idx, rhs_index=low)


def verify_thm6(f: LinearSeries, k_list: Sequence[int]) -> VerifyReport:
    """prod_j alpha_{q^{k_j} - 1} = f_0^{s-1} alpha_{sum q^{k_j} - 1}, claimed for 1 <= s < q."""
    q, s = f.q, len(k_list)
    if s < 1 or any(kj < 0 for kj in k_list):
        raise ValueError("need s >= 1 and k_j >= 0")
    idx = [q**kj - 1 for kj in k_list]
    top = sum(q**kj for kj in k_list) - 1
    tab = f.table("alpha", top)
    lhs = _prod((tab[i] for i in idx), f.field.one)
    rhs = f.coeffs[0] ** (s - 1) * tab[top]
    params = {**series_params(f), "k_list": list(k_list), "s": s}
    return _report("thm6", params, lhs, rhs, s < q, indices=idx, rhs_index=top)


def admissible_instances(which: str, q: int, k_max: int) -> Iterator[tuple]:
    """Every admissible parameter tuple (as a multiset, sorted descending).

    thm1 yields (k, k_list); thm4 yields (k, k_list); thm3 and thm6 yield (k_list,).
    """
    if which == "thm1":
        for k in range(0, k_max + 1):
            for l in range(1, q + 1):
                for ks in itertools.combinations_with_replacement(range(k, -1, -1), l):
                    yield (k, ks)
    elif which == "thm3":
        for s in range(1, q + 1):
            for ks in itertools.combinations_with_replacement(range(k_max, 0, -1), s):
                yield (ks,)
    elif which == "thm4":
        for k in range(1, k_max + 1):
            for s in range(1, q):
                for ks in itertools.combinations_with_replacement(range(k - 1, -1, -1), s):
                    yield (k, ks)
    elif which == "thm6":
        for s in range(1, q):
            for ks in itertools.combinations_with_replacement(range(k_max, -1, -1), s):
                yield (ks,)
    else:
        raise ValueError(f"unknown theorem {which!r}")


def max_index(which: str, q: int, k_max: int) -> int:
    """Largest table index the admissible instances of ``which`` touch."""
    if which == "thm1":
        return q * (q**k_max - 1)
    if which == "thm3":
        return q * q**k_max - q
    if which == "thm4":
        return q**k_max - 1
    if which == "thm6":
        return (q - 1) * q**k_max - 1
    raise ValueError(which)


def order_for(q: int, N: int) -> int:
    """Smallest truncation order whose h/a tables are valid through index N."""
    order = 0
    while q ** (order + 1) - 2 < N:
        order += 1
    return order


VERIFIERS = {"thm1": verify_thm1, "thm3": verify_thm3, "thm4": verify_thm4, "thm6": verify_thm6}


def run_instance(which: str, f: LinearSeries, inst: tuple) -> VerifyReport:
    return VERIFIERS[which](f, *inst)


# --- the documented counterexamples -------------------------------------------------

def counterexamples(ctx: CarlitzCtx) -> list[VerifyReport]:
    """The four sharpness instances, computed at q = 3.

    The H and alpha cases use f = t z + z^3 + (t+1) z^9 and report the
    extra witness H_8 H_18 = 0 for the H case.
    """
    if ctx.q != 3:
        raise ValueError("the documented instances are stated for q = 3")
    K = ctx.K
    t = K.t
    f = LinearSeries([t, K.one, t + 1], 3, K, "polynomial")
    e = carlitz_exp(ctx, 2)
    out = [verify_thm1(e, 1, (0, 0, 0, 0))]
    r3 = verify_thm3(f, (2, 2, 2, 1))
    H = f.table("H", 26)
    r3.extra["witness_H8_H18"] = H[8] * H[18]
    r3.extra["witness_H26"] = H[26]
    out.append(r3)
    out.append(verify_thm4(f, 2, (0, 0, 0)))
    out.append(verify_thm6(f, (2, 2, 2)))
    return out


def check_inverse_conjecture(f: LinearSeries, k_max: int) -> VerifyReport:
    """a_{q^k - 1} - a_{q^(k-1) - 1} = g_{k-1} for 1 <= k <= k_max (f_0 = 1).

    This is an observed pattern, not a theorem: the report is labelled
    CONJECTURE and a mismatch is a finding.
    """
    if f.coeffs[0] != f.field.one:
        raise ValueError("the conjectured identity is stated for f_0 = 1")
    q = f.q
    a = f.table("a", q**k_max - 1)
    g = comp_inverse(f, k_max - 1)
    rows, bad = [], None
    for k in range(1, k_max + 1):
        lhs = a[q**k - 1] - a[q ** (k - 1) - 1]
        ok = lhs == g.coeffs[k - 1]
        rows.append({"k": k, "lhs": lhs, "rhs": g.coeffs[k - 1], "equal": ok})
        if not ok and bad is None:
            bad = rows[-1]
    label = "CONJECTURE:confirmed-at-desk-scale" if bad is None else "CONJECTURE:refuted"
    return VerifyReport("conjecture", {**series_params(f), "k_max": k_max},
                        status=PASS if bad is None else FAIL, witness=bad,
                        extra={"label": label, "rows": rows})

"""F_q-linear series f(z) = sum f_i z^(q^i) and their coefficient families.

Four families are attached to such an f:

* ``h``: h(z) = z f'(z)/f(z) = f_0 z / f(z) = sum h_n z^n,
* ``a``: a(z) = f_0 z / (1 - f(z)) = sum a_n z^n,
* ``H`` and ``alpha`` (polynomial f only): -h = sum H_m u^m and
  -a = sum alpha_m u^m, expanded in u = 1/z.

Each family is produced by a linear recursion obtained by clearing the
denominator; tables are complete prefixes 0..N and are cached on the series.
The coefficient field is anything with ``zero``, ``one``, ``q``, ``p`` and a
call-to-coerce, which covers :class:`FieldCtx` (F_q, F_{q^m}) and
:class:`FunctionField` (F_q(t)).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Any, Sequence

from .algebra import FunctionField, Poly, RatFunc, function_field
from .field import FieldCtx, FieldElem
from .report import FAIL, PASS, VerifyReport

FAMILIES = ("h", "a", "H", "alpha")


def qpow(x, n: int, q: int):
    """x^(q^n) for a coefficient-field element."""
    return x ** (q**n) if n else x


# --- domain (de)serialization ---------------------------------------------------

def domain_to_json(dom) -> dict:
    if isinstance(dom, FieldCtx):
        return {"type": "finite", **dom.to_json()}
    if isinstance(dom, FunctionField):
        return dom.to_json()
    raise TypeError(f"unknown coefficient field {dom!r}")


def domain_from_json(data: dict):
    if data["type"] == "finite":
        return FieldCtx.from_json(data)
    if data["type"] == "ratfunc":
        return function_field(FieldCtx.from_json(data["base"]))
    raise ValueError(f"unknown coefficient field type {data['type']!r}")


def elem_to_json(x):
    return x.to_json()


def elem_from_json(dom, data):
    if isinstance(dom, FieldCtx):
        return dom(data)
    return RatFunc.from_json(dom.base, data)


# --- the series --------------------------------------------------------------------

class LinearSeries:
    """sum_i f_i z^(q^i).

    ``kind='polynomial'`` means the sum stops at f_d (nonzero) and d is the
    q-degree; ``kind='series'`` means a truncation after f_order, so derived
    tables are only meaningful below index q^(order+1) - 1.
    """

    def __init__(self, coeffs: Sequence[Any], q: int, field, kind: str = "series"):
        if kind not in ("series", "polynomial"):
            raise ValueError(f"kind must be 'series' or 'polynomial', not {kind!r}")
        if not coeffs:
            raise ValueError("a linear series needs at least f_0")
        if field.p != _char(q) or not _contains_fq(field, q):
            raise ValueError(f"coefficient field {field!r} does not contain F_{q}")
        self.field = field
        self.q = q
        self.kind = kind
        self.coeffs = tuple(field(c) for c in coeffs)
        if kind == "polynomial" and not self.coeffs[-1]:
            raise ValueError("leading coefficient f_d of a polynomial must be nonzero")
        self._tables: dict[str, list] = {}
        self._lock = threading.Lock()

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def d(self) -> int:
        if self.kind != "polynomial":
            raise ValueError("q-degree is only defined for polynomials")
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        return self.coeffs[i] if i < len(self.coeffs) else self.field.zero

    @property
    def valid_bound(self) -> int | None:
        """Largest index at which h/a tables are unaffected by truncation."""
        if self.kind == "polynomial":
            return None
        return self.q ** (self.order + 1) - 2

    def table(self, family: str, N: int) -> CoeffTable:
        """Prefix 0..N of a coefficient family (cached, extended on demand)."""
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        if N < 0:
            raise ValueError("table bound must be >= 0")
        if family in ("h", "a") and self.valid_bound is not None and N > self.valid_bound:
            raise ValueError(
                f"series truncated at order {self.order} only determines {family}_n "
                f"for n <= {self.valid_bound}; asked for N={N}"
            )
        if family in ("H", "alpha") and self.kind != "polynomial":
            raise ValueError(f"the {family} family needs a polynomial, got a truncated series")
        with self._lock:
            vals = self._tables.get(family)
            if vals is None or len(vals) <= N:
                vals = _ENGINES[family](self, vals or [], N)
                self._tables[family] = vals
        degenerate = family in ("h", "a") and not self.coeffs[0]
        return CoeffTable(family, tuple(vals[: N + 1]), N, self, degenerate)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearSeries):
            return NotImplemented
        return (self.q == other.q and self.field is other.field and self.kind == other.kind
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.q, self.kind, self.coeffs))

    def __repr__(self) -> str:
        terms = " + ".join(f"({c})*z^{self.q**i}" for i, c in enumerate(self.coeffs) if c)
        return f"LinearSeries[{self.kind}]({terms or '0'})"

    def to_json(self) -> dict:
        return {"q": self.q, "field": domain_to_json(self.field),
                "coeffs": [elem_to_json(c) for c in self.coeffs], "kind": self.kind}

    @classmethod
    def from_json(cls, data: dict) -> LinearSeries:
        dom = domain_from_json(data["field"])
        return cls([elem_from_json(dom, c) for c in data["coeffs"]], data["q"], dom, data["kind"])


def _char(q: int) -> int:
    p = 2
    while q % p:
        p += 1
    return p


def _contains_fq(dom, q: int) -> bool:
    base = dom if isinstance(dom, FieldCtx) else dom.base
    e_q = 0
    while q > 1:
        q //= base.p
        e_q += 1
    return base.e % e_q == 0


@dataclass(frozen=True)
class CoeffTable:
    family: str
    values: tuple
    N: int
    source: LinearSeries = field(repr=False, compare=False)
    degenerate: bool = False

    def __getitem__(self, m: int):
        if m < 0:
            return self.source.field.zero
        if m > self.N:
            raise IndexError(f"{self.family}_{m} is beyond the table bound {self.N}")
        return self.values[m]

    def __len__(self) -> int:
        return self.N + 1

    def to_json(self) -> dict:
        return {"family": self.family, "N": self.N,
                "values": {str(m): elem_to_json(v) for m, v in enumerate(self.values) if v}}

    @classmethod
    def from_json(cls, data: dict, source: LinearSeries) -> CoeffTable:
        dom = source.field
        vals = [dom.zero] * (data["N"] + 1)
        for m, v in data["values"].items():
            vals[int(m)] = elem_from_json(dom, v)
        return cls(data["family"], tuple(vals), data["N"], source)


# --- engines -------------------------------------------------------------------------

def _extend_h(f: LinearSeries, vals: list, N: int) -> list:
    F, q = f.field, f.q
    f0 = f.coeffs[0]
    if not f0:
        return [F.zero] * (N + 1)
    vals = list(vals) or [F.one]
    inv0 = F.one / f0
    steps = [(q**i - 1, f.coeffs[i]) for i in range(1, len(f.coeffs)) if f.coeffs[i]]
    for n in range(len(vals), N + 1):
        # sum_i f_i h_{n - (q^i - 1)} = 0 for n >= 1
        acc = F.zero
        for shift, fi in steps:
            if shift > n:
                break
            acc = acc + vals[n - shift] * fi
        vals.append(-(acc * inv0))
    return vals


def _extend_a(f: LinearSeries, vals: list, N: int) -> list:
    F, q = f.field, f.q
    f0 = f.coeffs[0]
    vals = list(vals) or [F.zero]
    steps = [(q**i, f.coeffs[i]) for i in range(1, len(f.coeffs)) if f.coeffs[i]]
    for m in range(len(vals), N + 1):
        acc = f0 * vals[m - 1]
        if m == 1:
            acc = acc + f0
        for shift, fi in steps:
            if shift > m:
                break
            acc = acc + vals[m - shift] * fi
        vals.append(acc)
    return vals


def _extend_H(f: LinearSeries, vals: list, N: int) -> list:
    F, q, d = f.field, f.q, f.d
    top = q**d
    inv_d = F.one / f.coeffs[d]
    lower = [(top - q**j, f.coeffs[j]) for j in range(d) if f.coeffs[j]]
    vals = list(vals)
    for m in range(len(vals), N + 1):
        if m < top - 1:
            vals.append(F.zero)
            continue
        acc = -f.coeffs[0] if m == top - 1 else F.zero
        for back, fj in lower:
            idx = m - back
            if idx >= 0:
                acc = acc - fj * vals[idx]
        vals.append(acc * inv_d)
    return vals


def _extend_alpha(f: LinearSeries, vals: list, N: int) -> list:
    F, q, d = f.field, f.q, f.d
    top = q**d
    inv_d = F.one / f.coeffs[d]
    lower = [(top - q**j, f.coeffs[j]) for j in range(d) if f.coeffs[j]]
    vals = list(vals)
    for m in range(len(vals), N + 1):
        if m < top - 1:
            vals.append(F.zero)
            continue
        acc = f.coeffs[0] if m == top - 1 else F.zero
        if m >= top:
            acc = acc + vals[m - top]
        for back, fj in lower:
            idx = m - back
            if idx >= 0:
                acc = acc - fj * vals[idx]
        vals.append(acc * inv_d)
    return vals


_ENGINES = {"h": _extend_h, "a": _extend_a, "H": _extend_H, "alpha": _extend_alpha}


def h_table(f: LinearSeries, N: int) -> CoeffTable:
    return f.table("h", N)


def a_table(f: LinearSeries, N: int) -> CoeffTable:
    return f.table("a", N)


def H_table(f: LinearSeries, N: int) -> CoeffTable:
    return f.table("H", N)


def alpha_table(f: LinearSeries, N: int) -> CoeffTable:
    return f.table("alpha", N)


# --- evaluation, composition, inversion ----------------------------------------------

def ls_eval(f: LinearSeries, x: FieldElem) -> FieldElem:
    if not isinstance(f.field, FieldCtx):
        raise TypeError("ls_eval needs a finite coefficient field")
    x = f.field(x)
    acc, xp = f.field.zero, x
    for c in f.coeffs:
        acc = acc + c * xp
        xp = xp**f.q
    return acc


def _check_pair(f: LinearSeries, g: LinearSeries) -> None:
    if f.q != g.q or f.field is not g.field:
        raise ValueError("series must share q and coefficient field")


def compose(f: LinearSeries, g: LinearSeries, order: int) -> LinearSeries:
    """Coefficients of f(g(z)) through index ``order``."""
    _check_pair(f, g)
    F, q = f.field, f.q
    out = []
    for n in range(order + 1):
        acc = F.zero
        for i in range(n + 1):
            fi, gj = f[i], g[n - i]
            if fi and gj:
                acc = acc + fi * qpow(gj, i, q)
        out.append(acc)
    return LinearSeries(out, q, F, "series")


def comp_inverse(f: LinearSeries, order: int) -> LinearSeries:
    """The g with f(g(z)) = z = g(f(z)), through index ``order``."""
    F, q = f.field, f.q
    f0 = f.coeffs[0]
    if not f0:
        raise ZeroDivisionError("f_0 = 0: f has no compositional inverse")
    inv0 = F.one / f0
    g = [inv0]
    for n in range(1, order + 1):
        acc = F.zero
        for i in range(1, n + 1):
            fi = f[i]
            if fi:
                acc = acc + fi * qpow(g[n - i], i, q)
        g.append(-(acc * inv0))
    return LinearSeries(g, q, F, "series")


def identity_series(q: int, field) -> LinearSeries:
    return LinearSeries([field.one], q, field, "polynomial")


# --- root spaces -----------------------------------------------------------------------

def span(basis: Sequence[FieldElem], q: int) -> list[FieldElem]:
    """All F_q-linear combinations of ``basis`` (F_q taken inside the basis' field)."""
    ctx = basis[0].ctx
    scalars = ctx.subfield(q)
    out = [ctx.zero]
    for b in basis:
        out = [v + c * b for c in scalars for v in out]
    return out


def from_root_space(basis: Sequence[FieldElem], q: int, shift: FieldElem | None = None) -> LinearSeries:
    """The F_q-linear polynomial whose roots are span(basis).

    With ``shift = mu`` the result is P/P(mu), whose solutions of f(v) = 1
    are exactly mu + span(basis).
    """
    if not basis:
        raise ValueError("basis must be nonempty")
    ctx = basis[0].ctx
    if not isinstance(ctx, FieldCtx):
        raise TypeError("root spaces live in a finite field")
    d = len(basis)
    roots = span(basis, q)
    if len(set(roots)) < q**d:
        raise ValueError("basis is not F_q-linearly independent")
    P = Poly.const(ctx, 1)
    z = Poly.t(ctx)
    for v in roots:
        P = P * (z - v)
    cs = P.coeffs
    fi = [cs[q**i] for i in range(d + 1)]
    stray = [n for n, c in enumerate(cs) if c and n not in {q**i for i in range(d + 1)}]
    if stray:  # pragma: no cover - impossible for a genuine F_q-space
        raise AssertionError(f"product is not F_q-linear (terms at {stray})")
    if shift is not None:
        val = P.eval(shift)
        if not val:
            raise ValueError("shift lies in the root space; the affine normalization is undefined")
        inv = val.inverse()
        fi = [c * inv for c in fi]
    return LinearSeries(fi, q, ctx, "polynomial")


# --- structural checks ------------------------------------------------------------------

def check_ppower(tab: CoeffTable) -> VerifyReport:
    """c_{pm} = c_m^p for all pm <= N."""
    p = tab.source.field.p
    bad = [p * m for m in range(tab.N // p + 1) if tab[p * m] != tab[m] ** p]
    params = {"family": tab.family, "N": tab.N, "p": p}
    if bad:
        m = bad[0] // p
        return VerifyReport("ppower", params, tab[bad[0]], tab[m] ** p, FAIL,
                            {"index": bad[0], "lhs": tab[bad[0]], "rhs": tab[m] ** p},
                            {"violations": bad})
    return VerifyReport("ppower", params, status=PASS)


def vanishing_violations(tab: CoeffTable) -> list[int]:
    """Indices breaking the vanishing rules for the table's family."""
    q = tab.source.q
    bad = []
    if tab.family in ("h", "H"):
        bad += [m for m in range(tab.N + 1) if m % (q - 1) and tab[m]]
    if tab.family in ("H", "alpha"):
        bound = q**tab.source.d - 1
        bad += [m for m in range(min(bound, tab.N + 1)) if tab[m]]
    return sorted(set(bad))


def expansion_of(f: LinearSeries, N: int) -> list:
    """Dense coefficients of f(z) through z^N."""
    F = f.field
    out = [F.zero] * (N + 1)
    for i, c in enumerate(f.coeffs):
        if f.q**i <= N:
            out[f.q**i] = c
    return out


__all__ = [
    "LinearSeries", "CoeffTable", "FAMILIES",
    "h_table", "a_table", "H_table", "alpha_table",
    "ls_eval", "compose", "comp_inverse", "identity_series",
    "span", "from_root_space", "check_ppower", "vanishing_violations",
    "expansion_of", "domain_to_json", "domain_from_json", "qpow",
]

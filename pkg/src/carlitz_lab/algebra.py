"""Exact arithmetic in F_q[t], F_q(t) and F_q((1/t)).

Polynomials are backed by FLINT (through python-flint) for speed; the public
types only ever hand out :class:`~carlitz_lab.field.FieldElem` coefficients.

Laurent series are expansions at infinity in ``u = 1/t``.  Every series carries
an absolute precision ``prec``: coefficients of ``u^n`` are known exactly for
``n < prec`` and nothing is claimed beyond that.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator

from flint import fmpz_mod_poly_ctx, fq_default_ctx, fq_default_poly_ctx

from .field import FieldCtx, FieldElem, FieldMismatchError

__all__ = [
    "Poly",
    "RatFunc",
    "FunctionField",
    "LaurentSeries",
    "FactorMap",
    "function_field",
    "rat_make",
    "laurent_expand",
    "enumerate_monic",
    "monic_irreducibles",
    "factor_trial",
]


class _Backend:
    """FLINT contexts mirroring one FieldCtx (same modulus, same basis)."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        if ctx.e == 1:
            self.fq = fq_default_ctx(ctx.p, 1)
        else:
            modulus = fmpz_mod_poly_ctx(ctx.p)(list(ctx.modulus))
            self.fq = fq_default_ctx(ctx.p, modulus=modulus)
        self.R = fq_default_poly_ctx(self.fq)
        self.zero = self.R(0)
        self.one = self.R(1)
        self.gen = self.R([0, 1])

    def to_fq(self, x: FieldElem):
        if self.ctx.e == 1:
            return self.fq(x.code)
        return self.fq(list(x.rep))

    def from_fq(self, c) -> FieldElem:
        digits = [int(v) for v in c.to_list()]
        return self.ctx(digits[: self.ctx.e])

    def coerce_scalar(self, x):
        if isinstance(x, FieldElem):
            if x.ctx is not self.ctx:
                raise FieldMismatchError(f"{x!r} is not in {self.ctx!r}")
            return self.to_fq(x)
        if isinstance(x, int):
            return self.fq(x % self.ctx.p)
        if isinstance(x, (list, tuple)):
            return self.to_fq(self.ctx(x))
        raise TypeError(f"cannot use {x!r} as a coefficient over {self.ctx!r}")

    def poly(self, coeffs):
        return self.R([self.coerce_scalar(c) for c in coeffs])


@functools.lru_cache(maxsize=None)
def _backend(ctx: FieldCtx) -> _Backend:
    return _Backend(ctx)


def _frob_poly(B: _Backend, f, j: int):
    """f(t)^(p^j) for a flint polynomial f."""
    n = B.ctx.p**j
    g = f.inflate(n) if f.degree() > 0 else f
    if B.ctx.e == 1 or f.is_zero():
        return g
    return B.R([c**n for c in g.coeffs()])


def _pow_poly(B: _Backend, f, n: int):
    p, j = B.ctx.p, 0
    while n and n % p == 0:
        n //= p
        j += 1
    g = f**n if n != 1 else f
    return _frob_poly(B, g, j) if j else g


# --- text form ---------------------------------------------------------------

def _coeff_str(x: FieldElem) -> str:
    if x.ctx.e == 1:
        return str(x.code)
    return "[" + ",".join(map(str, x.rep)) + "]"


def _poly_str(coeffs: tuple[FieldElem, ...], var: str = "t") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(_coeff_str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{_coeff_str(c)}*{mono}")
    return "+".join(terms) if terms else "0"


_TERM = re.compile(r"([+-])?(\[[0-9,\s]*\]|\d+)?(\*)?(t(?:\^(\d+))?)?")


def _parse_poly(base: FieldCtx, text: str) -> Poly:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    pos, out = 0, {}
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(4) is None):
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        if m.group(3) and not m.group(4):
            raise ValueError(f"dangling '*' in {text!r}")
        sign, coef, _, mono, expo = m.groups()
        if coef is None:
            c = base.one
        elif coef.startswith("["):
            c = base([int(v) for v in coef[1:-1].split(",") if v])
        else:
            c = base(int(coef))
        if sign == "-":
            c = -c
        deg = 0 if mono is None else (1 if expo is None else int(expo))
        out[deg] = out.get(deg, base.zero) + c
        pos = m.end()
    n = max(out) + 1
    return Poly(base, [out.get(i, base.zero) for i in range(n)])


class Poly:
    """Polynomial in t over a finite field; immutable, ascending coefficients."""

    __slots__ = ("base", "_f")

    def __init__(self, base: FieldCtx, coeffs=()):
        self.base = base
        self._f = _backend(base).poly(coeffs)

    @classmethod
    def _wrap(cls, base: FieldCtx, f) -> Poly:
        obj = cls.__new__(cls)
        obj.base = base
        obj._f = f
        return obj

    @classmethod
    def t(cls, base: FieldCtx) -> Poly:
        return cls._wrap(base, _backend(base).gen)

    @classmethod
    def const(cls, base: FieldCtx, c) -> Poly:
        return cls(base, [c])

    @classmethod
    def parse(cls, base: FieldCtx, text: str) -> Poly:
        return _parse_poly(base, text)

    @property
    def coeffs(self) -> tuple[FieldElem, ...]:
        B = _backend(self.base)
        return tuple(B.from_fq(c) for c in self._f.coeffs())

    @property
    def degree(self) -> int:
        return int(self._f.degree())

    @property
    def lc(self) -> FieldElem:
        if self._f.is_zero():
            return self.base.zero
        return _backend(self.base).from_fq(self._f.leading_coefficient())

    def is_zero(self) -> bool:
        return self._f.is_zero()

    def is_monic(self) -> bool:
        return not self._f.is_zero() and self._f.is_monic()

    def monic(self) -> Poly:
        if self._f.is_zero():
            return self
        return Poly._wrap(self.base, self._f.monic())

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.base is not self.base:
                raise FieldMismatchError(f"{self.base!r} vs {other.base!r}")
            return other._f
        if isinstance(other, (FieldElem, int)):
            return _backend(self.base).R(_backend(self.base).coerce_scalar(other))
        return None

    def __add__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return Poly._wrap(self.base, self._f + g)

    __radd__ = __add__

    def __sub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return Poly._wrap(self.base, self._f - g)

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return Poly._wrap(self.base, g - self._f)

    def __neg__(self):
        return Poly._wrap(self.base, -self._f)

    def __mul__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return Poly._wrap(self.base, self._f * g)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial; use RatFunc")
        return Poly._wrap(self.base, _pow_poly(_backend(self.base), self._f, n))

    def divrem(self, other) -> tuple[Poly, Poly]:
        g = self._coerce(other)
        if g is None:
            raise TypeError(f"cannot divide by {other!r}")
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        qq, r = divmod(self._f, g)
        return Poly._wrap(self.base, qq), Poly._wrap(self.base, r)

    def __divmod__(self, other):
        return self.divrem(other)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def __truediv__(self, other):
        return RatFunc(self, other)

    def __rtruediv__(self, other):
        return RatFunc(other, self)

    def gcd(self, other) -> Poly:
        g = self._coerce(other)
        if self._f.is_zero() and g.is_zero():
            return self
        return Poly._wrap(self.base, self._f.gcd(g))

    def eval(self, x) -> FieldElem:
        B = _backend(self.base)
        return B.from_fq(self._f(B.coerce_scalar(x)))

    def derivative(self) -> Poly:
        return Poly._wrap(self.base, self._f.derivative())

    def frobenius(self, j: int) -> Poly:
        """self^(p^j), computed by inflation."""
        return Poly._wrap(self.base, _frob_poly(_backend(self.base), self._f, j))

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.base is other.base and self._f == other._f
        if isinstance(other, (FieldElem, int)):
            return self._f == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.base), self._f))

    def __bool__(self) -> bool:
        return not self._f.is_zero()

    def __str__(self) -> str:
        return _poly_str(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def to_json(self) -> dict:
        return {"coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, base: FieldCtx, data: dict) -> Poly:
        return cls(base, [base(c) for c in data["coeffs"]])


def _as_flint(base: FieldCtx, x):
    B = _backend(base)
    if isinstance(x, Poly):
        if x.base is not base:
            raise FieldMismatchError(f"{x.base!r} vs {base!r}")
        return x._f
    if isinstance(x, (FieldElem, int)):
        return B.R(B.coerce_scalar(x))
    raise TypeError(f"cannot use {x!r} in F_q(t)")


def _base_of(*xs) -> FieldCtx:
    for x in xs:
        if isinstance(x, (Poly, RatFunc)):
            return x.base
        if isinstance(x, FieldElem):
            return x.ctx
    raise TypeError("cannot infer the base field from plain integers")


class RatFunc:
    """Reduced fraction num/den in F_q(t) with monic denominator.

    Equality is representational, which is sound because the normal form is
    unique.
    """

    __slots__ = ("base", "_n", "_d")

    def __init__(self, num, den=1):
        if isinstance(num, RatFunc) and den == 1:
            self.base, self._n, self._d = num.base, num._n, num._d
            return
        if isinstance(num, RatFunc) or isinstance(den, RatFunc):
            r = RatFunc(num) / RatFunc(den) if isinstance(num, RatFunc) else RatFunc(den).inverse() * num
            self.base, self._n, self._d = r.base, r._n, r._d
            return
        base = _base_of(num, den)
        n, d = _as_flint(base, num), _as_flint(base, den)
        if d.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.base = base
        self._n, self._d = _normalize(base, n, d)

    @classmethod
    def _make(cls, base, n, d) -> RatFunc:
        obj = cls.__new__(cls)
        obj.base, obj._n, obj._d = base, n, d
        return obj

    @property
    def num(self) -> Poly:
        return Poly._wrap(self.base, self._n)

    @property
    def den(self) -> Poly:
        return Poly._wrap(self.base, self._d)

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def is_poly(self) -> bool:
        return self._d.is_one()

    def __bool__(self) -> bool:
        return not self._n.is_zero()

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.base is not self.base:
                raise FieldMismatchError(f"{self.base!r} vs {other.base!r}")
            return other._n, other._d
        if isinstance(other, (Poly, FieldElem, int)):
            return _as_flint(self.base, other), _backend(self.base).one
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n2, d2 = o
        if self._d == d2:
            n, d = self._n + n2, self._d
        else:
            n, d = self._n * d2 + n2 * self._d, self._d * d2
        return RatFunc._make(self.base, *_normalize(self.base, n, d))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(self.base, -self._n, self._d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + RatFunc._make(self.base, -o[0], o[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n2, d2 = o
        if self._n.is_zero() or n2.is_zero():
            return RatFunc._make(self.base, _backend(self.base).zero, _backend(self.base).one)
        g1 = self._n.gcd(d2)
        g2 = n2.gcd(self._d)
        n = self._n.exact_division(g1) * n2.exact_division(g2)
        d = self._d.exact_division(g2) * d2.exact_division(g1)
        return RatFunc._make(self.base, *_normalize_unit(self.base, n, d))

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self._n.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc._make(self.base, *_normalize_unit(self.base, self._d, self._n))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * RatFunc._make(self.base, o[0], o[1]).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> RatFunc:
        if n < 0:
            return self.inverse() ** (-n)
        B = _backend(self.base)
        if n == 0:
            return RatFunc._make(self.base, B.one, B.one)
        num, den = _pow_poly(B, self._n, n), _pow_poly(B, self._d, n)
        return RatFunc._make(self.base, num, den)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.base is other.base and self._n == other._n and self._d == other._d
        if isinstance(other, (Poly, FieldElem, int)):
            return self._d.is_one() and self._n == _as_flint(self.base, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.base), self._n, self._d))

    def __str__(self) -> str:
        if self._d.is_one():
            return str(self.num)
        n, d = str(self.num), str(self.den)
        wrap = lambda x: f"({x})" if "+" in x or "*" in x else x
        return f"{wrap(n)}/{wrap(d)}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    @classmethod
    def parse(cls, base: FieldCtx, text: str) -> RatFunc:
        s = text.replace(" ", "")
        depth = 0
        for i, ch in enumerate(s):
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            elif ch == "/" and depth == 0:
                return cls(_parse_poly(base, _strip_parens(s[:i])), _parse_poly(base, _strip_parens(s[i + 1:])))
        return cls(_parse_poly(base, _strip_parens(s)))

    def to_json(self) -> dict:
        return {"num": str(self.num), "den": str(self.den)}

    @classmethod
    def from_json(cls, base: FieldCtx, data: dict) -> RatFunc:
        return cls(Poly.parse(base, data["num"]), Poly.parse(base, data["den"]))


def _strip_parens(s: str) -> str:
    while s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    return s


def _normalize(base, n, d):
    g = n.gcd(d)
    if not g.is_one():
        n, d = n.exact_division(g), d.exact_division(g)
    return _normalize_unit(base, n, d)


def _normalize_unit(base, n, d):
    if n.is_zero():
        B = _backend(base)
        return B.zero, B.one
    lc = d.leading_coefficient()
    if not lc.is_one():
        inv = lc.inverse()
        n, d = n * inv, d * inv
    return n, d


def rat_make(num, den=1) -> RatFunc:
    return RatFunc(num, den)


class FunctionField:
    """F_q(t) viewed as a coefficient domain for the series engines."""

    def __init__(self, base: FieldCtx):
        self.base = base
        self.q = base.q
        self.p = base.p
        B = _backend(base)
        self.zero = RatFunc._make(base, B.zero, B.one)
        self.one = RatFunc._make(base, B.one, B.one)
        self.t = RatFunc._make(base, B.gen, B.one)

    def __call__(self, x) -> RatFunc:
        if isinstance(x, str):
            return RatFunc.parse(self.base, x)
        if isinstance(x, int):
            return RatFunc(self.base(x))
        if isinstance(x, (list, tuple)):
            return RatFunc(Poly(self.base, x))
        return RatFunc(x)

    def random_element(self, rng, degree: int = 2) -> RatFunc:
        """Random polynomial of degree <= ``degree`` (as a RatFunc)."""
        return RatFunc(Poly(self.base, [self.base.random_element(rng) for _ in range(degree + 1)]))

    def element_to_json(self, x: RatFunc) -> dict:
        return x.to_json()

    def element_from_json(self, data) -> RatFunc:
        return RatFunc.from_json(self.base, data)

    def to_json(self) -> dict:
        return {"type": "ratfunc", "base": self.base.to_json()}

    def __repr__(self) -> str:
        return f"{self.base!r}(t)"


@functools.lru_cache(maxsize=None)
def function_field(base: FieldCtx) -> FunctionField:
    return FunctionField(base)


# --- Laurent series at infinity ------------------------------------------------

class LaurentSeries:
    """sum_{n >= lead} c_n u^n + O(u^prec), u = 1/t.

    ``lead`` is the valuation when the series is nonzero to precision; a series
    that is zero to precision has ``lead == prec`` and no stored coefficients.
    """

    __slots__ = ("base", "lead", "_c", "prec")

    def __init__(self, base: FieldCtx, lead: int, coeffs, prec: int):
        B = _backend(base)
        f = coeffs if not isinstance(coeffs, (list, tuple)) else B.poly(coeffs)
        self.base = base
        self.prec = prec
        n = prec - lead
        f = f.truncate(n) if n > 0 else B.zero
        v = _poly_valuation(f)
        if v is None:
            self.lead, self._c = prec, B.zero
        else:
            self.lead = lead + v
            self._c = f.right_shift(v) if v else f

    @classmethod
    def zero(cls, base: FieldCtx, prec: int) -> LaurentSeries:
        return cls(base, prec, _backend(base).zero, prec)

    @classmethod
    def one(cls, base: FieldCtx, prec: int) -> LaurentSeries:
        return cls(base, 0, _backend(base).one, prec)

    def is_zero(self) -> bool:
        return self._c.is_zero()

    @property
    def valuation(self) -> int:
        return self.lead

    @property
    def coeffs(self) -> list[FieldElem]:
        """Coefficients of u^lead, ..., u^(prec-1)."""
        B = _backend(self.base)
        out = [B.from_fq(c) for c in self._c.coeffs()]
        return out + [self.base.zero] * (self.prec - self.lead - len(out))

    def coeff(self, n: int) -> FieldElem:
        if n >= self.prec:
            raise ValueError(f"coefficient of u^{n} is beyond precision {self.prec}")
        if n < self.lead:
            return self.base.zero
        i = n - self.lead
        if i > self._c.degree():
            return self.base.zero
        return _backend(self.base).from_fq(self._c[i])

    def _check(self, other: LaurentSeries) -> None:
        if other.base is not self.base:
            raise FieldMismatchError(f"{self.base!r} vs {other.base!r}")

    def _lift(self, other):
        if isinstance(other, LaurentSeries):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElem, Poly, RatFunc)):
            r = RatFunc(other) if not isinstance(other, int) else RatFunc(self.base(other))
            if r.is_zero():
                return LaurentSeries.zero(self.base, 10**9)
            v = r._d.degree() - r._n.degree()
            rel = max(self.prec - self.lead, 1)
            return laurent_expand(r, v + rel)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        lead = min(self.lead, o.lead)
        a = self._c.left_shift(self.lead - lead) if self.lead < prec else _backend(self.base).zero
        b = o._c.left_shift(o.lead - lead) if o.lead < prec else _backend(self.base).zero
        return LaurentSeries(self.base, lead, a + b, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.base, self.lead, -self._c, self.prec)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec + o.lead, o.prec + self.lead)
        lead = self.lead + o.lead
        n = prec - lead
        if n <= 0 or self.is_zero() or o.is_zero():
            return LaurentSeries.zero(self.base, prec)
        return LaurentSeries(self.base, lead, self._c.mul_low(o._c, n), prec)

    __rmul__ = __mul__

    def inverse(self) -> LaurentSeries:
        if self.is_zero():
            raise ZeroDivisionError("series is zero to its precision")
        rel = self.prec - self.lead
        return LaurentSeries(self.base, -self.lead, self._c.inverse_series_trunc(rel), self.prec - 2 * self.lead)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> LaurentSeries:
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return LaurentSeries.one(self.base, self.prec - self.lead)
        if self.is_zero():
            return LaurentSeries.zero(self.base, self.prec + (n - 1) * self.lead)
        rel = self.prec - self.lead
        return LaurentSeries(self.base, n * self.lead, self._c.pow_trunc(n, rel), n * self.lead + rel)

    def truncate(self, prec: int) -> LaurentSeries:
        if prec > self.prec:
            raise ValueError("cannot raise precision by truncation")
        return LaurentSeries(self.base, self.lead, self._c, prec)

    def agrees_with(self, other: LaurentSeries, upto: int | None = None) -> bool:
        """Coefficientwise agreement for every exponent below ``upto``
        (default: the smaller of the two precisions)."""
        self._check(other)
        bound = min(self.prec, other.prec) if upto is None else upto
        if bound > min(self.prec, other.prec):
            raise ValueError("comparison bound exceeds the available precision")
        lo = min(self.lead, other.lead)
        return all(self.coeff(n) == other.coeff(n) for n in range(lo, bound))

    def first_difference(self, other: LaurentSeries) -> int | None:
        bound = min(self.prec, other.prec)
        for n in range(min(self.lead, other.lead), bound):
            if self.coeff(n) != other.coeff(n):
                return n
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.base is other.base and self.prec == other.prec
                and self.lead == other.lead and self._c == other._c)

    def __hash__(self) -> int:
        return hash((id(self.base), self.lead, self.prec, self._c))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                n = self.lead + i
                mono = "1" if n == 0 else ("u" if n == 1 else f"u^{n}")
                terms.append(mono if c == 1 and n != 0 else (mono if n == 0 and c == 1 else f"{_coeff_str(c)}*{mono}" if n else _coeff_str(c)))
        terms.append(f"O(u^{self.prec})")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"LaurentSeries({self})"

    def to_json(self) -> dict:
        return {"lead": self.lead, "coeffs": [c.to_json() for c in self.coeffs], "prec": self.prec}

    @classmethod
    def from_json(cls, base: FieldCtx, data: dict) -> LaurentSeries:
        return cls(base, data["lead"], [base(c) for c in data["coeffs"]], data["prec"])


def _poly_valuation(f) -> int | None:
    if f.is_zero():
        return None
    for i, c in enumerate(f.coeffs()):
        if not c.is_zero():
            return i
    return None  # pragma: no cover


def laurent_expand(r, prec: int) -> LaurentSeries:
    """Expansion of r at t = infinity in u = 1/t, exact below u^prec."""
    r = RatFunc(r)
    B = _backend(r.base)
    if r.is_zero():
        return LaurentSeries.zero(r.base, prec)
    dn, dd = r._n.degree(), r._d.degree()
    v = dd - dn
    if prec <= v:
        raise ValueError(f"precision {prec} must exceed the valuation {v}")
    rel = prec - v
    nrev = r._n.reverse()
    drev = r._d.reverse()
    c = nrev.mul_low(drev.inverse_series_trunc(rel), rel)
    return LaurentSeries(r.base, v, c, prec)


# --- enumeration and factorization ----------------------------------------------

def enumerate_monic(ctx: FieldCtx, d: int) -> Iterator[Poly]:
    """All q^d monic polynomials of degree d; constant term varies fastest."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    B = _backend(ctx)
    elems = [B.to_fq(x) for x in ctx.elements()]
    one = B.fq(1)
    for tail in itertools.product(elems, repeat=d):
        yield Poly._wrap(ctx, B.R(list(reversed(tail)) + [one]))


@functools.lru_cache(maxsize=None)
def _irreducibles(ctx: FieldCtx, deg: int) -> tuple[Poly, ...]:
    if deg == 1:
        return tuple(enumerate_monic(ctx, 1))
    smaller = [g for k in range(1, deg // 2 + 1) for g in _irreducibles(ctx, k)]
    out = []
    for f in enumerate_monic(ctx, deg):
        if all(not (f._f % g._f).is_zero() for g in smaller):
            out.append(f)
    return tuple(out)


def monic_irreducibles(ctx: FieldCtx, deg: int) -> tuple[Poly, ...]:
    """Monic irreducibles of the given degree, found by a trial-division sieve."""
    if deg < 1:
        raise ValueError("degree must be >= 1")
    return _irreducibles(ctx, deg)


@dataclass
class FactorMap:
    """unit * prod(P^m) * cofactor; ``cofactor`` is 1 when the factorization is complete."""

    unit: FieldElem
    factors: dict[Poly, int] = field(default_factory=dict)
    cofactor: Poly | None = None

    @property
    def complete(self) -> bool:
        return self.cofactor is None or self.cofactor == 1

    def expand(self) -> Poly:
        base = self.unit.ctx
        out = Poly.const(base, self.unit)
        for g, m in self.factors.items():
            out = out * g**m
        if self.cofactor is not None:
            out = out * self.cofactor
        return out

    def exponent(self, g: Poly) -> int:
        return self.factors.get(g, 0)

    def to_json(self) -> dict:
        out = {"unit": self.unit.to_json(),
               "factors": [[str(g), m] for g, m in self.factors.items()]}
        if not self.complete:
            out["cofactor"] = str(self.cofactor)
        return out

    @classmethod
    def from_json(cls, base: FieldCtx, data: dict) -> FactorMap:
        factors = {Poly.parse(base, g): m for g, m in data["factors"]}
        cof = Poly.parse(base, data["cofactor"]) if "cofactor" in data else None
        return cls(base(data["unit"]), factors, cof)


def factor_trial(f: Poly, max_deg: int) -> FactorMap:
    """Factor ``f`` by trial division with monic irreducibles of degree <= max_deg.

    Factors are listed in degree order.  A leftover cofactor whose degree is
    below twice the next trial degree is irreducible and is accepted as a
    factor when its degree is <= max_deg; anything else is returned as the
    (incomplete) cofactor.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = f.lc
    rest = f.monic()._f
    factors: dict[Poly, int] = {}
    for deg in range(1, max_deg + 1):
        if rest.degree() < 2 * deg:
            break
        for g in _irreducibles(f.base, deg):
            if rest.degree() < deg:
                break
            m = 0
            while True:
                qq, r = divmod(rest, g._f)
                if not r.is_zero():
                    break
                rest, m = qq, m + 1
            if m:
                factors[g] = m
    cof = Poly._wrap(f.base, rest)
    if 0 < rest.degree() <= max_deg:
        # no factor of degree < deg(rest)/2 remains, so rest is irreducible
        factors[cof] = factors.get(cof, 0) + 1
        cof = Poly.const(f.base, 1)
    ordered = dict(sorted(factors.items(), key=lambda kv: (kv[0].degree, str(kv[0]))))
    return FactorMap(unit, ordered, None if cof == 1 else cof)

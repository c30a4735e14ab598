"""Finite fields F_q, q = p^e, in a polynomial-basis representation.

An element of F_q is stored as the integer code ``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``
of its coefficient vector ``(c_0, ..., c_{e-1})`` with respect to the basis
``1, x, ..., x^{e-1}`` of F_p[x]/(modulus).  For fields with at most 2**16
elements, multiplication and addition go through exponent and Zech logarithm
tables; larger fields fall back to schoolbook arithmetic modulo the modulus.

Contexts are interned: ``field_make(3, 2)`` returns the same object on every
call, and elements of different contexts never mix.
"""

from __future__ import annotations

import functools
import itertools
import random
from typing import Iterator, Sequence

__all__ = [
    "FieldCtx",
    "FieldElem",
    "FieldMismatchError",
    "field_make",
    "field_extension",
    "field_from_order",
    "frobenius",
    "enumerate_tuples",
    "random_elem",
    "seed_stream",
    "is_prime",
    "prime_power",
    "is_irreducible_mod_p",
]

TABLE_LIMIT = 1 << 16

# Conway polynomials, ascending coefficients, for every non-prime q <= 64.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


class FieldMismatchError(ValueError):
    """Raised when elements of two different fields are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(r for r in range(2, q + 1) if q % r == 0)
    e, n = 0, q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def _prime_factors(n: int) -> list[int]:
    out, r = [], 2
    while r * r <= n:
        if n % r == 0:
            out.append(r)
            while n % r == 0:
                n //= r
        r += 1
    if n > 1:
        out.append(n)
    return out


# --- small dense polynomials over F_p (lists, ascending) -----------------------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _ptrim(a[:dm] if len(a) > dm else a)


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a: Sequence[int], n: int, m: Sequence[int], p: int) -> list[int]:
    result, base = [1], _pmod(a, m, p)
    while n:
        if n & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        n >>= 1
    return result


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible_mod_p(m: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``m`` (ascending coefficients) over F_p."""
    m = _ptrim([c % p for c in m])
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**n, m, p), x, p):
        return False
    for r in _prime_factors(n):
        h = _psub(_ppowmod(x, p ** (n // r), m, p), x, p)
        if len(_pgcd(m, h, p)) != 1:
            return False
    return True


def _first_irreducible(p: int, e: int) -> tuple[int, ...]:
    # lexicographically smallest monic irreducible, low coefficients varying fastest
    for tail in itertools.product(range(p), repeat=e):
        cand = tail[::-1] + (1,)
        if cand[0] and is_irreducible_mod_p(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """The field F_q with q = p**e; build it with :func:`field_make`."""

    def __init__(self, p: int, e: int, modulus: tuple[int, ...] | None):
        self.p = p
        self.e = e
        self.modulus = modulus
        self.q = p**e
        self._log: list[int] | None = None
        self._exp: list[int] | None = None
        self._zech: list[int] | None = None
        if e > 1 and self.q <= TABLE_LIMIT:
            self._build_tables()
        self.zero = FieldElem(self, 0)
        self.one = FieldElem(self, 1)

    # -- construction helpers --------------------------------------------------

    def _build_tables(self) -> None:
        q = self.q
        order = q - 1
        factors = _prime_factors(order)
        gen = None
        for code in range(2, q):
            if all(self._slow_pow(code, order // r) != 1 for r in factors):
                gen = code
                break
        if gen is None:
            raise ValueError("modulus does not define a field")
        exp = [0] * (2 * order)
        log = [-1] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        exp[order:] = exp[:order]
        self._exp, self._log = exp, log
        # zech[n] = log(1 + g^n), or -1 when 1 + g^n = 0
        zech = [-1] * order
        for n in range(order):
            s = self._digit_add(1, exp[n])
            zech[n] = log[s] if s else -1
        self._zech = zech
        self.generator_code = gen

    def _digits(self, code: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            code, r = divmod(code, p)
            out.append(r)
        return out

    def _code(self, digits: Sequence[int]) -> int:
        code = 0
        for c in reversed(digits):
            code = code * self.p + c % self.p
        return code

    def _digit_add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p, out, m = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * m
            a //= p
            b //= p
            m *= p
        return out

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _pmul(self._digits(a), self._digits(b), self.p)
        return self._code(_pmod(prod, self.modulus, self.p))

    def _slow_pow(self, a: int, n: int) -> int:
        r, base = 1, a
        while n:
            if n & 1:
                r = self._slow_mul(r, base)
            base = self._slow_mul(base, base)
            n >>= 1
        return r

    # -- code-level arithmetic -------------------------------------------------

    def _add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._zech is None:
            return self._digit_add(a, b)
        if not a:
            return b
        if not b:
            return a
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % (self.q - 1)]
        return 0 if z < 0 else self._exp[la + z]

    def _neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._code([-c for c in self._digits(a)])

    def _mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self.e == 1:
            return a * b % self.p
        if self._log is None:
            return self._slow_mul(a, b)
        return self._exp[self._log[a] + self._log[b]]

    def _inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.e == 1:
            return pow(a, -1, self.p)
        if self._log is None:
            return self._slow_pow(a, self.q - 2)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def _pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self._inv(a), -n
        if not a:
            return 1 if n == 0 else 0
        if self.e == 1:
            return pow(a, n, self.p)
        if self._log is None:
            return self._slow_pow(a, n % (self.q - 1))
        return self._exp[self._log[a] * n % (self.q - 1)]

    # -- public surface --------------------------------------------------------

    def __call__(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.ctx is not self:
                raise FieldMismatchError(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, int):
            return FieldElem(self, value % self.p)
        if isinstance(value, (list, tuple)):
            if len(value) > self.e:
                raise ValueError(f"representation {value} too long for {self!r}")
            return FieldElem(self, self._code(list(value)))
        raise TypeError(f"cannot convert {value!r} to an element of {self!r}")

    def from_code(self, code: int) -> FieldElem:
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FieldElem(self, code)

    @property
    def gen(self) -> FieldElem:
        """The class of x in F_p[x]/(modulus) (the element 1 when e = 1)."""
        return self([0, 1]) if self.e > 1 else self.one

    def elements(self) -> list[FieldElem]:
        return [FieldElem(self, c) for c in range(self.q)]

    def subfield(self, r: int) -> list[FieldElem]:
        """Elements of the subfield with r elements, sorted by code."""
        p, k = prime_power(r)
        if p != self.p or self.e % k:
            raise ValueError(f"F_{r} is not a subfield of {self!r}")
        if r == self.q:
            return self.elements()
        if self.e == 1 or r == p:
            return [FieldElem(self, c) for c in range(p)]
        if self._exp is not None:
            step = (self.q - 1) // (r - 1)
            codes = {0} | {self._exp[i * step] for i in range(r - 1)}
        else:
            codes = {c for c in range(self.q) if self._pow(c, r) == c}
        return [FieldElem(self, c) for c in sorted(codes)]

    def random_element(self, rng: random.Random) -> FieldElem:
        return FieldElem(self, rng.randrange(self.q))

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus) if self.modulus else None}

    @staticmethod
    def from_json(data: dict) -> FieldCtx:
        return field_make(data["p"], data["e"], data.get("modulus"))

    def __repr__(self) -> str:
        if self.e == 1:
            return f"F_{self.p}"
        return f"F_{self.q}[{_mod_str(self.modulus)}]"


def _mod_str(m: Sequence[int]) -> str:
    terms = []
    for i in range(len(m) - 1, -1, -1):
        c = m[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


class FieldElem:
    """An element of a :class:`FieldCtx`; immutable."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    @property
    def rep(self) -> tuple[int, ...]:
        return tuple(self.ctx._digits(self.code))

    def _other(self, other) -> int | None:
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise FieldMismatchError(f"cannot combine {self.ctx!r} and {other.ctx!r}")
            return other.code
        if isinstance(other, int):
            return other % self.ctx.p
        return None

    def __add__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx._add(self.code, b))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx._neg(self.code))

    def __sub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx._add(self.code, self.ctx._neg(b)))

    def __rsub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx._add(b, self.ctx._neg(self.code)))

    def __mul__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx._mul(self.code, b))

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        return FieldElem(self.ctx, self.ctx._inv(self.code))

    def __truediv__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx._mul(self.code, self.ctx._inv(b)))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx._mul(b, self.ctx._inv(self.code)))

    def __pow__(self, n: int):
        return FieldElem(self.ctx, self.ctx._pow(self.code, n))

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.ctx is other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.ctx.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.code))

    def to_json(self) -> list[int]:
        return list(self.rep)

    def __repr__(self) -> str:
        if self.ctx.e == 1:
            return str(self.code)
        return "[" + ",".join(map(str, self.rep)) + "]"


@functools.lru_cache(maxsize=None)
def _intern(p: int, e: int, modulus: tuple[int, ...] | None) -> FieldCtx:
    return FieldCtx(p, e, modulus)


def field_make(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Build (or fetch) the context for F_{p^e}.

    ``modulus`` is an ascending coefficient sequence of a monic irreducible
    polynomial of degree ``e`` over F_p.  When omitted and ``e > 1`` the
    built-in Conway polynomial table (q <= 64) supplies one.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if e == 1:
        if modulus is not None and len(_ptrim([c % p for c in modulus])) != 2:
            raise ValueError("modulus of a prime field must have degree 1")
        return _intern(p, 1, None)
    if modulus is None:
        try:
            modulus = DEFAULT_MODULI[(p, e)]
        except KeyError:
            raise ValueError(
                f"no built-in modulus for F_{p}^{e}; supply one or use field_extension"
            ) from None
    mod = tuple(c % p for c in modulus)
    if len(_ptrim(list(mod))) != e + 1 or len(mod) != e + 1:
        raise ValueError(f"modulus must have degree exactly {e}")
    if mod[-1] != 1:
        raise ValueError("modulus must be monic")
    if not is_irreducible_mod_p(mod, p):
        raise ValueError(f"modulus {_mod_str(mod)} is reducible over F_{p}")
    return _intern(p, e, mod)


def field_from_order(q: int) -> FieldCtx:
    """F_q with the built-in modulus, or the first irreducible one outside the table."""
    p, e = prime_power(q)
    return field_extension(field_make(p), e)


def field_extension(base: FieldCtx, m: int) -> FieldCtx:
    """Context for F_{q^m} where q = base.q (as an absolute extension of F_p).

    The modulus comes from the built-in table when possible and is otherwise
    the lexicographically first monic irreducible polynomial of that degree.
    The copy of F_q inside is ``ctx.subfield(base.q)``.
    """
    e = base.e * m
    if e == 1 or (base.p, e) in DEFAULT_MODULI:
        return field_make(base.p, e)
    return field_make(base.p, e, _first_irreducible(base.p, e))


def frobenius(x: FieldElem, n: int, q: int | None = None) -> FieldElem:
    """Return x^(q^n); q defaults to the characteristic p."""
    if n < 0:
        raise ValueError("frobenius needs n >= 0")
    q = x.ctx.p if q is None else q
    if x.ctx.e == 1:
        return x
    # exponent reduced modulo q_field - 1 keeps pow cheap for large n
    e = pow(q, n, x.ctx.q - 1) if x.code else 1
    if e == 0:
        e = x.ctx.q - 1
    return x**e if x else x


def enumerate_tuples(ctx: FieldCtx, d: int, exclude_zero: bool = False) -> Iterator[tuple[FieldElem, ...]]:
    """All length-d tuples over ctx, lexicographic in element codes (last entry fastest)."""
    if d < 1:
        raise ValueError("tuple length must be >= 1")
    elems = ctx.elements()
    it = itertools.product(elems, repeat=d)
    if exclude_zero:
        next(it)  # the all-zero tuple comes first
    return it


def seed_stream(seed: int) -> random.Random:
    """Deterministic generator seeded with a 64-bit integer."""
    return random.Random(seed & 0xFFFFFFFFFFFFFFFF)


def random_elem(ctx: FieldCtx, rng: random.Random) -> FieldElem:
    return ctx.random_element(rng)

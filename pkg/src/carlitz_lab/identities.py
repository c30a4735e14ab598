"""Randomized checks of the two multivariable identities over F_{q^m}, and the
Lucas-theorem multinomial congruence behind them.

Both identities become polynomial identities after clearing denominators, so
evaluating at random points of a large field certifies them up to the
Schwartz-Zippel error probability, which the reports carry.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .field import FieldCtx, FieldElem, field_extension, field_from_order, seed_stream
from .report import FAIL, PASS, VerifyReport


def _lin(theta, vec):
    acc = vec[0].ctx.zero
    for c, v in zip(theta, vec):
        if c:
            acc = acc + c * v
    return acc


@dataclass
class Thm2Instance:
    d: int
    s: int
    q: int
    b: list
    B: list  # B[i][j], i < d, j < s
    field: FieldCtx

    def thetas(self):
        scalars = self.field.subfield(self.q)
        it = itertools.product(scalars, repeat=self.d)
        next(it)  # drop the zero tuple (first in code order)
        return it

    def column(self, j: int) -> list:
        return [self.B[i][j] for i in range(self.d)]

    def to_json(self) -> dict:
        return {"d": self.d, "s": self.s, "q": self.q, "b": [x.to_json() for x in self.b],
                "B": [[x.to_json() for x in row] for row in self.B]}


@dataclass
class Thm5Instance:
    d: int
    s: int
    q: int
    mu: FieldElem
    M: list
    b: list
    B: list
    field: FieldCtx

    def thetas(self):
        return itertools.product(self.field.subfield(self.q), repeat=self.d)

    def column(self, j: int) -> list:
        return [self.B[i][j] for i in range(self.d)]

    def to_json(self) -> dict:
        return {"d": self.d, "s": self.s, "q": self.q, "mu": self.mu.to_json(),
                "M": [x.to_json() for x in self.M], "b": [x.to_json() for x in self.b],
                "B": [[x.to_json() for x in row] for row in self.B]}


def thm2_sides(inst: Thm2Instance) -> tuple[FieldElem, FieldElem]:
    F = inst.field
    cols = [inst.column(j) for j in range(inst.s)]
    sums = [F.zero] * inst.s
    rhs = F.zero
    for theta in inst.thetas():
        den = _lin(theta, inst.b)
        if not den:
            raise ZeroDivisionError("zero denominator: b is F_q-linearly dependent")
        inv = den.inverse()
        prod = F.one
        for j, col in enumerate(cols):
            num = _lin(theta, col)
            sums[j] = sums[j] + num * inv
            prod = prod * num
        rhs = rhs + prod * inv**inst.s
    lhs = F.one
    for v in sums:
        lhs = lhs * v
    if inst.s % 2 == 0:
        rhs = -rhs
    return lhs, rhs


def thm5_sides(inst: Thm5Instance, reading: str = "affine") -> tuple[FieldElem, FieldElem]:
    """Both sides of the affine identity.

    ``reading='affine'`` uses M_j + sum_i theta_i B_ij over mu + sum_i theta_i b_i.
    ``reading='literal'`` sums the constants over i too, giving d*M_j and d*mu.
    """
    if reading not in ("affine", "literal"):
        raise ValueError(f"unknown reading {reading!r}")
    F = inst.field
    w = 1 if reading == "affine" else inst.d
    mu = inst.mu * w
    Ms = [m * w for m in inst.M]
    cols = [inst.column(j) for j in range(inst.s)]
    sums = [F.zero] * inst.s
    recip = F.zero
    tail = F.zero
    for theta in inst.thetas():
        den = mu + _lin(theta, inst.b)
        if not den:
            raise ZeroDivisionError("zero affine denominator")
        inv = den.inverse()
        recip = recip + inv
        prod = F.one
        for j, col in enumerate(cols):
            num = Ms[j] + _lin(theta, col)
            sums[j] = sums[j] + num * inv
            prod = prod * num
        tail = tail + prod * inv
    lhs = F.one
    for v in sums:
        lhs = lhs * v
    return lhs, recip ** (inst.s - 1) * tail


def _independent(b: Sequence[FieldElem], q: int) -> bool:
    ctx = b[0].ctx
    scalars = ctx.subfield(q)
    seen = set()
    for theta in itertools.product(scalars, repeat=len(b)):
        seen.add(_lin(theta, b))
    return len(seen) == q ** len(b)


def _draw(rng, F: FieldCtx, n: int) -> list:
    return [F.random_element(rng) for _ in range(n)]


MAX_RESAMPLES = 1000


class DegenerateSampling(ValueError):
    """Raised when valid instances essentially never occur (e.g. a denominator is identically 0)."""


def _give_up(resamples: int) -> None:
    if resamples >= MAX_RESAMPLES:
        raise DegenerateSampling(f"no valid instance after {resamples} draws")


def sample_thm2(rng, F: FieldCtx, q: int, d: int, s: int) -> tuple[Thm2Instance, int]:
    """Draw an instance with independent b, returning it with the resample count."""
    resamples = 0
    while True:
        _give_up(resamples)
        b = _draw(rng, F, d)
        B = [_draw(rng, F, s) for _ in range(d)]
        if _independent(b, q):
            return Thm2Instance(d, s, q, b, B, F), resamples
        resamples += 1


def sample_thm5(rng, F: FieldCtx, q: int, d: int, s: int, reading: str = "affine") -> tuple[Thm5Instance, int]:
    resamples = 0
    w = 1 if reading == "affine" else d
    scalars = F.subfield(q)
    while True:
        _give_up(resamples)
        mu = F.random_element(rng)
        M = _draw(rng, F, s)
        b = _draw(rng, F, d)
        B = [_draw(rng, F, s) for _ in range(d)]
        dens = (mu * w + _lin(theta, b) for theta in itertools.product(scalars, repeat=d))
        if all(dens):
            return Thm5Instance(d, s, q, mu, M, b, B, F), resamples
        resamples += 1


def sz_degrees(which: str, q: int, d: int, s: int) -> tuple[int, int]:
    """(degree of the cleared identity, degree of the cleared denominator)."""
    if which == "thm2":
        classes = (q**d - 1) // (q - 1)
        return s * classes, classes
    if which == "thm5":
        return s * q**d, q**d
    raise ValueError(which)


def sz_bound(which: str, q: int, d: int, s: int, Q: int) -> float:
    """Per-trial probability that a false identity survives one random evaluation.

    Zero for s = 1, where both sides coincide term by term.
    """
    if s == 1:
        return 0.0
    deg, den = sz_degrees(which, q, d, s)
    if den >= Q:
        return 1.0
    return min(1.0, (deg / Q) / (1 - den / Q))


SZ_TARGET = 2.0**-10


def verify_randomized(which: str, d: int, s: int, trials: int = 100, seed: int = 42, m: int = 8,
                      q: int = 3, reading: str = "affine",
                      evaluator: Callable | None = None) -> VerifyReport:
    """Run ``trials`` random instances over F_{q^m}; per-trial seed is seed XOR index."""
    if which not in ("thm2", "thm5"):
        raise ValueError(f"unknown identity {which!r}")
    if d < 1 or s < 1 or trials < 1:
        raise ValueError("need d, s, trials >= 1")
    if which == "thm2" and s > q:
        raise ValueError("the identity is stated for s <= q")
    if which == "thm5" and s >= q:
        raise ValueError("the identity is stated for s < q")
    F = field_extension(field_from_order(q), m)
    if evaluator is None:
        evaluator = thm2_sides if which == "thm2" else (lambda inst: thm5_sides(inst, reading))
    passed, resamples, failures = 0, 0, []
    for i in range(trials):
        rng = seed_stream(seed ^ i)
        if which == "thm2":
            inst, r = sample_thm2(rng, F, q, d, s)
        else:
            inst, r = sample_thm5(rng, F, q, d, s, reading)
        resamples += r
        lhs, rhs = evaluator(inst)
        if lhs == rhs:
            passed += 1
        elif len(failures) < 3:
            failures.append({"trial": i, "lhs": lhs, "rhs": rhs, "instance": inst.to_json()})
    bound = sz_bound(which, q, d, s, F.q)
    params = {"which": which, "d": d, "s": s, "q": q, "ext": m, "trials": trials, "seed": seed}
    if which == "thm5":
        params["reading"] = reading
    extra = {"passed": passed, "resamples": resamples, "sz_bound": bound,
             "sz_bound_log2": (math.log2(bound) if bound else None),
             "sz_bound_ok": bound < SZ_TARGET, "field_order": F.q}
    status = PASS if passed == trials else FAIL
    return VerifyReport(which, params, passed, trials, status,
                        {"failures": failures} if failures else None, extra)


# --- Lucas theorem and the multinomial congruence ---------------------------------------

def _digits(n: int, p: int) -> list[int]:
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


def multinomial_mod_p(p: int, top: int, parts: Sequence[int]) -> int:
    """top! / prod(parts!) mod p, digit by digit in base p (Lucas)."""
    if any(x < 0 for x in parts):
        raise ValueError("parts must be nonnegative")
    if sum(parts) != top:
        raise ValueError(f"parts sum to {sum(parts)}, not {top}")
    result = 1
    td = _digits(top, p)
    pds = [_digits(x, p) for x in parts]
    for pos, tdig in enumerate(td):
        digs = [pd[pos] if pos < len(pd) else 0 for pd in pds]
        if sum(digs) != tdig:
            return 0  # a carry happens in this position
        c = math.factorial(tdig)
        for x in digs:
            c //= math.factorial(x)
        result = result * c % p
    return result


def _even_compositions(n: int, d: int, q: int) -> list[tuple[int, ...]]:
    """Ordered d-tuples of positive multiples of q-1 summing to n."""
    step = q - 1
    if n % step:
        return []
    units = n // step
    if units < d:
        return []
    out = []
    for cuts in itertools.combinations(range(1, units), d - 1):
        bounds = (0, *cuts, units)
        out.append(tuple((bounds[i + 1] - bounds[i]) * step for i in range(d)))
    return out


def remark5_sides(q: int, d: int, k_list: Sequence[int], m_parts: Sequence[int]) -> tuple[int, int]:
    p = _char(q)
    s = len(k_list)
    top = sum(q**k - 1 for k in k_list)
    lhs = multinomial_mod_p(p, top, m_parts)
    # dynamic programme over the s factors: partial coordinate sums -> weight
    states = {tuple([0] * d): 1}
    target = tuple(m_parts)
    for k in k_list:
        comps = [(c, multinomial_mod_p(p, q**k - 1, c)) for c in _even_compositions(q**k - 1, d, q)]
        nxt: dict[tuple, int] = {}
        for vec, w in states.items():
            for c, mc in comps:
                if not mc:
                    continue
                new = tuple(a + b for a, b in zip(vec, c))
                if all(a <= t for a, t in zip(new, target)):
                    nxt[new] = (nxt.get(new, 0) + w * mc) % p
        states = nxt
    rhs = states.get(target, 0)
    if ((d - 1) * (s - 1)) % 2:
        rhs = -rhs % p
    return lhs, rhs


def _char(q: int) -> int:
    p = 2
    while q % p:
        p += 1
    return p


def verify_remark5(q: int, d: int, s: int, k_list: Sequence[int], m_parts: Sequence[int]) -> VerifyReport:
    """The multinomial congruence equivalent to the H-product identity."""
    if len(k_list) != s:
        raise ValueError("k_list must have s entries")
    if not 1 <= s <= q:
        raise ValueError("need 1 <= s <= q")
    if len(m_parts) != d:
        raise ValueError("m_parts must have d entries")
    if any(k < 1 for k in k_list):
        raise ValueError("need k_i >= 1")
    if any(m <= 0 or m % (q - 1) for m in m_parts):
        raise ValueError("each m_i must be positive and divisible by q-1")
    if sum(m_parts) != sum(q**k for k in k_list) - s:
        raise ValueError("m_parts must sum to sum(q^k_i) - s")
    lhs, rhs = remark5_sides(q, d, k_list, m_parts)
    params = {"q": q, "d": d, "s": s, "k_list": list(k_list), "m_parts": list(m_parts)}
    return VerifyReport.compare("remark5", params, lhs, rhs)


def remark5_instances(q: int, d: int, k_list: Sequence[int]):
    """Every admissible m-tuple for the given q, d, k_list."""
    total = sum(q**k for k in k_list) - len(k_list)
    return _even_compositions(total, d, q)

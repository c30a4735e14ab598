"""The verification matrix behind ``verify all`` and the acceptance tests.

Each section returns a list of VerifyReports.  ``verify_all`` runs the
sections (optionally on a thread pool capped by CARLITZ_LAB_THREADS) and
folds them into one summary whose content depends only on profile and seed.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

from .carlitz import (CarlitzCtx, bernoulli, bernoulli_qk_closed, bernoulli_qk_exponents,
                      carlitz_binomial, carlitz_exp, factor_exponents)
from .field import field_extension, field_from_order, seed_stream, FieldCtx
from .identities import remark5_instances, verify_randomized, verify_remark5
from .linear import LinearSeries, check_ppower, comp_inverse, from_root_space, span
from .powersums import (PowerSumQuery, admissible_instances, carlitz_inverse_closed,
                        check_inverse_conjecture, closed_form, counterexamples, is_admissible,
                        max_index, order_for, powersum_brute, powersum_fast, run_instance,
                        scaled_binomial)
from .report import EXPECTED_FAIL, FAIL, PASS, SCHEMA, VerifyReport, encode
from .zeta import euler_carlitz_crosscheck, multizeta_instances, verify_multizeta_identity

THEOREMS = ("thm1", "thm3", "thm4", "thm6")
PROFILES = {
    "quick": {"qs": (2, 3), "k_max": 2, "random": 3, "trials": 20, "zeta_q": (3,)},
    "full": {"qs": (2, 3, 4), "k_max": 3, "random": 20, "trials": 100, "zeta_q": (3, 5)},
}


def _ctx(q: int) -> CarlitzCtx:
    return _CTX.setdefault(q, CarlitzCtx(field_from_order(q)))


_CTX: dict[int, CarlitzCtx] = {}


# --- series under test ------------------------------------------------------------------

def _nonzero(draw):
    while True:
        x = draw()
        if x:
            return x


def _drawer(rng, dom):
    if isinstance(dom, FieldCtx):
        return lambda: dom.random_element(rng)
    return lambda: dom.random_element(rng, degree=1)


def random_linear(rng, dom, length: int) -> list:
    """f_0, ..., f_{length-1} with f_0 and the last coefficient nonzero."""
    draw = _drawer(rng, dom)
    cs = [draw() for _ in range(length)]
    cs[0] = _nonzero(draw)
    cs[-1] = _nonzero(draw)
    return cs


def theorem_series(q: int, N: int, n_random: int, seed: int) -> list[tuple[str, LinearSeries, LinearSeries | None]]:
    """(label, series for h/a, polynomial for H/alpha or None).

    Covers the Carlitz exponential (truncated as a series and as polynomials),
    binomials of q-degree 1 and 2, and seeded random draws over F_{q^2} and F_q(t).
    A random draw also yields a polynomial of q-degree 1 or 2 sharing its low terms.
    """
    ctx = _ctx(q)
    order = order_for(q, N)
    out = [("carlitz-exp", carlitz_exp(ctx, order), None)]
    for d in (1, 2):
        e = carlitz_exp(ctx, d)
        out.append((f"carlitz-exp-poly:{d}", LinearSeries(e.coeffs, q, e.field, "polynomial"), None))
        out.append((f"carlitz-binomial:{d}", carlitz_binomial(ctx, d), None))
    for j, (name, dom) in enumerate((("F_q^2", field_extension(ctx.base, 2)), ("F_q(t)", ctx.K))):
        for i in range(n_random):
            rng = seed_stream(seed ^ (q << 20) ^ (j << 16) ^ i)
            cs = random_linear(rng, dom, order + 1)
            d = 1 + i % 2
            poly = LinearSeries(cs[:d] + [_nonzero(_drawer(rng, dom))], q, dom, "polynomial")
            out.append((f"random:{name}:{i}", LinearSeries(cs, q, dom, "series"), poly))
    return out


def theorem_matrix(qs=(2, 3, 4), k_max: int = 3, n_random: int = 20, seed: int = 42,
                   which=THEOREMS) -> list[VerifyReport]:
    """Every admissible instance of each product identity over every series in the pool."""
    reports = []
    for q in qs:
        N = max(max_index(w, q, k_max) for w in ("thm1", "thm4"))
        for label, series, poly in theorem_series(q, N, n_random, seed):
            for w in which:
                needs_poly = w in ("thm3", "thm6")
                f = (poly or series) if needs_poly else series
                if needs_poly and f.kind != "polynomial":
                    continue
                for inst in admissible_instances(w, q, k_max):
                    rep = run_instance(w, f, inst)
                    rep.params = {"q": q, "series": label, "instance": encode(list(inst))}
                    reports.append(rep)
    return reports


# --- oracles -----------------------------------------------------------------------------

def powersum_oracle(qs=(2, 3), d_max: int = 2, k_max: int = 40) -> list[VerifyReport]:
    out = []
    for q in qs:
        ctx = _ctx(q)
        for d in range(d_max + 1):
            for scope in ("exact", "below"):
                for k in range(-k_max, k_max + 1):
                    if k == 0 or (scope == "below" and d == 0):
                        continue
                    query = PowerSumQuery(d, k, scope)
                    if not is_admissible(q, query):
                        continue
                    fast = powersum_fast(ctx, query)
                    out.append(VerifyReport.compare("powersum", {"q": q, **query.to_json()},
                                                    fast.value, powersum_brute(ctx, query),
                                                    method=fast.method))
    return out


def root_space_oracle(qs=(2, 3, 4), d_max: int = 2, m_max: int = 4, n_max: int = 30,
                      seed: int = 42) -> list[VerifyReport]:
    """H_n = -sum_{v in V} v^n and alpha_n = sum_{w in mu+V} w^n for random root spaces V of F_{q^m}."""
    out = []
    for q in qs:
        base = field_from_order(q)
        for m in range(1, m_max + 1):
            F = field_extension(base, m)
            for d in range(1, min(d_max, m) + 1):
                rng = seed_stream(seed ^ (q << 8) ^ (m << 4) ^ d)
                basis = _independent_basis(rng, F, q, d)
                V = span(basis, q)
                H = from_root_space(basis, q).table("H", n_max)
                # an affine shift needs a point outside V, so only when V is proper
                mu = _nonzero_outside(rng, F, V) if d < m else None
                al = from_root_space(basis, q, shift=mu).table("alpha", n_max) if mu else None
                for n in range(1, n_max + 1):
                    params = {"q": q, "m": m, "d": d, "n": n}
                    ps = sum((v**n for v in V), F.zero)
                    out.append(VerifyReport.compare("rootspace-H", params, H[n], -ps))
                    if al is not None:
                        aff = sum(((mu + v) ** n for v in V), F.zero)
                        out.append(VerifyReport.compare("rootspace-alpha", params, al[n], aff))
    return out


def _independent_basis(rng, F, q, d):
    while True:
        basis = [F.random_element(rng) for _ in range(d)]
        if len(set(span(basis, q))) == q**d:
            return basis


def _nonzero_outside(rng, F, V):
    Vs = set(V)
    while True:
        x = F.random_element(rng)
        if x not in Vs:
            return x


def closed_form_checks(qs=(2, 3), d_max: int = 2) -> list[VerifyReport]:
    out = []
    for q in qs:
        ctx = _ctx(q)
        for d in range(d_max + 1):
            f = carlitz_binomial(ctx, d)
            top = q ** (d + 3) - 1
            for family in ("h", "a", "H", "alpha"):
                if family in ("h", "H") and d < 1:
                    continue
                tab = f.table(family, top)
                for i in range(d + 4):
                    if (family == "a" and i < 1) or (family in ("H", "alpha") and i < d):
                        continue
                    out.append(VerifyReport.compare(f"closed-{family}", {"q": q, "d": d, "i": i},
                                                    tab[q**i - 1], closed_form(ctx, d, i, family)))
            if d >= 1:
                g = comp_inverse(scaled_binomial(ctx, d), 3)
                for j in range(4):
                    out.append(VerifyReport.compare("carlitz-inverse", {"q": q, "d": d, "j": j},
                                                    g.coeffs[j], carlitz_inverse_closed(ctx, d, j)))
    return out


def bernoulli_checks(qs=(2, 3), k_max: int = 3) -> list[VerifyReport]:
    out = []
    for q in qs:
        ctx = _ctx(q)
        for k in range(1, k_max + 1):
            n = q**k - 1
            entry = bernoulli(ctx, n, max_deg=k)
            params = {"q": q, "k": k, "n": n}
            out.append(VerifyReport.compare("bernoulli-closed", params, entry.value,
                                            bernoulli_qk_closed(ctx, k)))
            got = factor_exponents(entry)
            want = bernoulli_qk_exponents(ctx, k)
            out.append(VerifyReport.compare("bernoulli-exponents", params,
                                            {str(P): e for P, e in sorted(got.items(), key=lambda x: str(x[0]))},
                                            {str(P): e for P, e in sorted(want.items(), key=lambda x: str(x[0]))},
                                            complete=entry.num_factors.complete and entry.den_factors.complete))
    return out


def randomized_checks(qs=(2, 3), d_max: int = 3, trials: int = 100, seed: int = 42, m: int = 8) -> list[VerifyReport]:
    out = []
    for q in qs:
        for d in range(1, d_max + 1):
            for s in range(1, min(q, d + 1) + 1):
                out.append(verify_randomized("thm2", d, s, trials, seed, m, q))
                if s < q:
                    out.append(verify_randomized("thm5", d, s, trials, seed, m, q, "affine"))
    return out


def remark5_checks(qs=(2, 3, 4, 5), d_max: int = 3, k_vals=(1, 2)) -> list[VerifyReport]:
    import itertools

    out = []
    for q in qs:
        for d in range(1, d_max + 1):
            for s in range(1, q + 1):
                for ks in itertools.combinations_with_replacement(k_vals, s):
                    for parts in remark5_instances(q, d, ks):
                        out.append(verify_remark5(q, d, s, ks, parts))
    return out


def multizeta_checks(qs=(3, 5), n_max: int = 2, prec: int = 40) -> list[VerifyReport]:
    return [verify_multizeta_identity(_ctx(q), n, ks, prec)
            for q in qs for n, ks in multizeta_instances(q, n_max)]


def euler_checks(prec: int = 20) -> list[VerifyReport]:
    return [euler_carlitz_crosscheck(_ctx(3), 2, 4, prec),
            euler_carlitz_crosscheck(_ctx(2), 1, 3, prec)]


def conjecture_checks(qs=(2, 3), k_max: int = 4) -> list[VerifyReport]:
    out = []
    for q in qs:
        ctx = _ctx(q)
        out.append(check_inverse_conjecture(carlitz_exp(ctx, order_for(q, q**k_max - 1)), k_max))
    return out


def ppower_checks(qs=(2, 3), N: int = 60) -> list[VerifyReport]:
    out = []
    for q in qs:
        ctx = _ctx(q)
        f = carlitz_binomial(ctx, 2)
        for fam in ("h", "a", "H", "alpha"):
            out.append(check_ppower(f.table(fam, N)))
    return out


# --- driver ----------------------------------------------------------------------------

def sections(profile: str, seed: int) -> list[tuple[str, Callable[[], list[VerifyReport]]]]:
    cfg = PROFILES[profile]
    qs, k_max = cfg["qs"], cfg["k_max"]
    full = profile == "full"
    return [
        ("theorems", lambda: theorem_matrix(qs, k_max, cfg["random"], seed)),
        ("counterexamples", lambda: counterexamples(_ctx(3))),
        ("powersum", lambda: powersum_oracle((2, 3), 2, 40 if full else 12)),
        ("rootspace", lambda: root_space_oracle((2, 3, 4) if full else (2, 3), 2, 4 if full else 3,
                                                30, seed)),
        ("closed-forms", lambda: closed_form_checks()),
        ("bernoulli", lambda: bernoulli_checks(k_max=3 if full else 2)),
        ("randomized", lambda: randomized_checks(trials=cfg["trials"], seed=seed)),
        ("remark5", lambda: remark5_checks((2, 3, 4, 5) if full else (2, 3))),
        ("multizeta", lambda: multizeta_checks(cfg["zeta_q"])),
        ("euler-carlitz", lambda: euler_checks()),
        ("conjecture", lambda: conjecture_checks(k_max=4 if full else 3)),
        ("ppower", lambda: ppower_checks()),
    ]


def thread_count() -> int:
    raw = os.environ.get("CARLITZ_LAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"CARLITZ_LAB_THREADS must be an integer, got {raw!r}") from None


def verify_all(profile: str = "quick", seed: int = 42, threads: int | None = None,
               keep_reports: bool = False) -> dict:
    """Run the matrix and summarize per-id pass/fail/expected-fail counts.

    Failures are listed (up to 20) with witnesses.  With ``keep_reports`` the
    individual reports are attached under ``reports`` (not JSON-encoded).
    """
    if profile not in PROFILES:
        raise ValueError(f"profile must be one of {sorted(PROFILES)}")
    plan = sections(profile, seed)
    n = threads or thread_count()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(lambda item: item[1](), plan))
    else:
        results = [fn() for _, fn in plan]
    counts: dict[str, dict[str, int]] = {}
    failures = []
    everything = []
    for (name, _), reps in zip(plan, results):
        for r in reps:
            row = counts.setdefault(r.id, {PASS: 0, FAIL: 0, EXPECTED_FAIL: 0})
            row[r.status] += 1
            if r.status == FAIL and len(failures) < 20:
                failures.append({"section": name, **r.to_json()})
        everything.extend(reps)
    totals = {s: sum(row[s] for row in counts.values()) for s in (PASS, FAIL, EXPECTED_FAIL)}
    summary = {"schema": SCHEMA, "id": "verify-all", "profile": profile, "seed": seed,
               "counts": {k: counts[k] for k in sorted(counts)}, "totals": totals,
               "status": FAIL if totals[FAIL] else PASS, "failures": failures}
    if keep_reports:
        summary["reports"] = everything
    return summary

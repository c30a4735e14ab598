"""Command-line front end: ``carlitz-lab <subcommand> ...`` or ``python -m carlitz_lab``.

Exit status is 0 on success (expected-fail included), 1 when a verification
fails and 2 on usage errors.  ``--json`` prints one record per line.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable

from .algebra import RatFunc
from .carlitz import CarlitzCtx, bernoulli, carlitz_binomial, carlitz_exp, carlitz_factorial
from .field import field_extension, field_from_order, field_make, prime_power, seed_stream
from .identities import verify_randomized, verify_remark5
from .linear import FAMILIES, LinearSeries, check_ppower, comp_inverse, from_root_space
from .powersums import (PowerSumQuery, check_inverse_conjecture, closed_form, order_for,
                        powersum_brute, powersum_fast, verify_thm1, verify_thm3, verify_thm4,
                        verify_thm6)
from .report import FAIL, SCHEMA, VerifyReport, encode
from .suite import random_linear, verify_all
from .zeta import ZetaQuery, euler_carlitz_crosscheck, multizeta, verify_multizeta_identity, zeta


class UsageError(Exception):
    pass


# --- argument helpers ---------------------------------------------------------------

def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def make_ctx(args) -> CarlitzCtx:
    try:
        p, e = prime_power(args.q)
    except ValueError as exc:
        raise UsageError(f"--q must be a prime power: {exc}") from None
    base = field_make(p, e, args.modulus) if args.modulus else field_from_order(args.q)
    return CarlitzCtx(base)


def parse_series(ctx: CarlitzCtx, spec: str, need: int | None = None) -> LinearSeries:
    """Resolve a series preset.

    carlitz-exp[:order]    the Carlitz exponential (order defaults to cover ``need``)
    carlitz-binomial:d     binom(z, q^d)_c
    random:seed[:d]        seeded polynomial of q-degree d (default 2) over F_q(t)
    roots:m:c1,c2[@mu]     root space in F_{q^m} from element codes, optional affine shift
    poly:f0;f1;...         explicit coefficients in F_q(t), e.g. poly:t;1;t+1
    """
    q = ctx.q
    name, _, rest = spec.partition(":")
    try:
        if name == "carlitz-exp":
            order = int(rest) if rest else order_for(q, need or q**3)
            return carlitz_exp(ctx, order)
        if name == "carlitz-binomial":
            return carlitz_binomial(ctx, int(rest))
        if name == "random":
            seed, _, d = rest.partition(":")
            d = int(d) if d else 2
            rng = seed_stream(int(seed))
            return LinearSeries(random_linear(rng, ctx.K, d + 1), q, ctx.K, "polynomial")
        if name == "roots":
            m, _, codes = rest.partition(":")
            codes, _, mu = codes.partition("@")
            F = field_extension(ctx.base, int(m))
            basis = [F.from_code(int(c)) for c in codes.split(",")]
            return from_root_space(basis, q, F.from_code(int(mu)) if mu else None)
        if name == "poly":
            coeffs = [RatFunc.parse(ctx.base, c) for c in rest.split(";")]
            return LinearSeries(coeffs, q, ctx.K, "polynomial")
    except (ValueError, IndexError) as exc:
        raise UsageError(f"bad series {spec!r}: {exc}") from None
    raise UsageError(f"unknown series preset {name!r} (carlitz-exp, carlitz-binomial:d, random:seed, "
                     "roots:m:codes, poly:f0;f1;...)")


# --- output -------------------------------------------------------------------------

def _record(kind: str, payload: dict) -> dict:
    return {"schema": SCHEMA, "kind": kind, **encode(payload)}


def emit(args, records: Iterable, out=sys.stdout) -> int:
    status = 0
    for rec in records:
        if isinstance(rec, VerifyReport):
            if rec.status == FAIL:
                status = 1
            if args.json:
                print(rec.dumps(), file=out)
            else:
                print(_report_text(rec), file=out)
            continue
        if rec.pop("_fail", False):
            status = 1
        if args.json:
            print(json.dumps(rec, sort_keys=True), file=out)
        else:
            print(_plain(rec), file=out)
    return status


def _report_text(rep: VerifyReport) -> str:
    params = ", ".join(f"{k}={v}" for k, v in rep.params.items() if k not in ("f",))
    line = f"{rep.id} [{params}]: {rep.status}"
    if rep.lhs is not None or rep.rhs is not None:
        line += f"\n  lhs = {rep.lhs}\n  rhs = {rep.rhs}"
    label = rep.extra.get("label")
    if label:
        line += f"\n  {label}"
    return line


def _plain(rec: dict) -> str:
    body = {k: v for k, v in rec.items() if k not in ("schema", "kind")}
    if "text" in body:
        return body["text"]
    return json.dumps(body, sort_keys=True)


# --- subcommands ----------------------------------------------------------------------

def cmd_coeffs(args):
    ctx = make_ctx(args)
    f = parse_series(ctx, args.f, args.N)
    tab = f.table(args.family, args.N)
    if args.json:
        yield _record("coeffs", tab.to_json())
    else:
        for n, v in enumerate(tab.values):
            if v:
                yield {"text": f"{args.family}_{n} = {v}"}


def cmd_inverse(args):
    ctx = make_ctx(args)
    g = comp_inverse(parse_series(ctx, args.f), args.order)
    if args.json:
        yield _record("inverse", g.to_json())
    else:
        for j, c in enumerate(g.coeffs):
            yield {"text": f"g_{j} = {c}"}


def cmd_powersum(args):
    ctx = make_ctx(args)
    query = PowerSumQuery(args.d, args.k, args.scope)
    if args.brute:
        value, payload = powersum_brute(ctx, query), {"method": "brute", "fallback": False}
    else:
        res = powersum_fast(ctx, query)
        value, payload = res.value, res.to_json()
    payload.update(query=query.to_json(), value=value)
    yield _record("powersum", payload) if args.json else {"text": str(value)}


def cmd_closed_form(args):
    ctx = make_ctx(args)
    value = closed_form(ctx, args.d, args.i, args.family)
    payload = {"d": args.d, "i": args.i, "family": args.family, "index": ctx.q**args.i - 1, "value": value}
    yield _record("closed-form", payload) if args.json else {"text": str(value)}


def cmd_bernoulli(args):
    ctx = make_ctx(args)
    entry = bernoulli(ctx, args.n, max_deg=args.max_deg)
    yield _record("bernoulli", entry.to_json()) if args.json else {"text": f"B_{args.n} = {entry.value}"}


def cmd_factorial(args):
    ctx = make_ctx(args)
    value = carlitz_factorial(ctx, args.n)
    yield _record("factorial", {"n": args.n, "value": str(value)}) if args.json else {"text": str(value)}


def cmd_zeta(args):
    ctx = make_ctx(args)
    z = zeta(ctx, ZetaQuery((args.s,), args.prec, args.d_max))
    yield _record("zeta", {"s": args.s, "value": z}) if args.json else {"text": str(z)}


def cmd_multizeta(args):
    ctx = make_ctx(args)
    z = multizeta(ctx, args.s1, args.s2, args.prec)
    yield _record("multizeta", {"s1": args.s1, "s2": args.s2, "value": z}) if args.json else {"text": str(z)}


def cmd_verify(args):
    which = args.which
    if which == "all":
        summary = verify_all(args.profile, args.seed)
        failed = summary["status"] == FAIL
        if args.json:
            yield {**summary, "_fail": failed}
            return
        for key, row in summary["counts"].items():
            yield {"text": f"{key:22s} pass={row['pass']:6d} fail={row['fail']:4d} "
                           f"expected-fail={row['expected-fail']:3d}"}
        for item in summary["failures"]:
            yield {"text": f"FAILED {item['id']} {json.dumps(item['params'], sort_keys=True)}"}
        yield {"text": f"overall: {summary['status']}", "_fail": failed}
        return
    if which in ("thm2", "thm5"):
        yield verify_randomized(which, args.d, args.s, args.trials, args.seed, args.ext, args.q,
                                args.reading)
        return
    if which == "remark5":
        if args.m_parts is None:
            raise UsageError("verify remark5 needs --m")
        yield verify_remark5(args.q, args.d, len(args.ks), args.ks, args.m_parts)
        return
    ctx = make_ctx(args)
    if which == "multizeta":
        yield verify_multizeta_identity(ctx, args.n, args.ks if args.ks else [args.k], args.prec)
    elif which == "euler-carlitz":
        yield euler_carlitz_crosscheck(ctx, args.n, args.m, args.prec)
    elif which == "conjecture":
        f = parse_series(ctx, args.f, ctx.q**args.k - 1)
        yield check_inverse_conjecture(f, args.k)
    elif which == "ppower":
        f = parse_series(ctx, args.f, args.N)
        yield check_ppower(f.table(args.family, args.N))
    elif which == "thm1":
        ks = _need_ks(args)
        yield verify_thm1(parse_series(ctx, args.f, len(ks) * ctx.q**args.k), args.k, ks)
    elif which == "thm4":
        yield verify_thm4(parse_series(ctx, args.f, ctx.q**args.k), args.k, _need_ks(args))
    elif which == "thm3":
        yield verify_thm3(parse_series(ctx, args.f), _need_ks(args))
    elif which == "thm6":
        yield verify_thm6(parse_series(ctx, args.f), _need_ks(args))


def _need_ks(args) -> list[int]:
    if not args.ks:
        raise UsageError(f"verify {args.which} needs --ks")
    return args.ks


# --- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=3, help="field order q = p^e (default 3)")
    common.add_argument("--modulus", type=int_list, help="defining polynomial of F_q, low degree first")
    common.add_argument("--json", action="store_true", help="emit one JSON record per line")
    common.add_argument("--seed", type=int, default=42)

    parser = argparse.ArgumentParser(prog="carlitz-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="coefficient table of h, a, H or alpha")
    p.add_argument("--f", default="carlitz-exp")
    p.add_argument("--family", choices=FAMILIES, default="h")
    p.add_argument("--N", type=int, default=30)
    p.set_defaults(run=cmd_coeffs)

    p = sub.add_parser("inverse", parents=[common], help="compositional inverse")
    p.add_argument("--f", default="carlitz-exp:3")
    p.add_argument("--order", type=int, default=3)
    p.set_defaults(run=cmd_inverse)

    p = sub.add_parser("powersum", parents=[common], help="S_d(k) or S_<d(k)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--scope", choices=("exact", "below"), default="exact")
    p.add_argument("--brute", action="store_true", help="enumerate instead of reading tables")
    p.set_defaults(run=cmd_powersum)

    p = sub.add_parser("closed-form", parents=[common], help="closed form at index q^i - 1")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.set_defaults(run=cmd_closed_form)

    p = sub.add_parser("bernoulli", parents=[common], help="Bernoulli-Carlitz fraction B_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-deg", type=int, help="trial-division degree bound for the factorization")
    p.set_defaults(run=cmd_bernoulli)

    p = sub.add_parser("factorial", parents=[common], help="Carlitz factorial n!_c")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(run=cmd_factorial)

    p = sub.add_parser("zeta", parents=[common], help="truncated zeta(s) in F_q((1/t))")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--prec", type=int, default=40)
    p.add_argument("--d-max", type=int)
    p.set_defaults(run=cmd_zeta)

    p = sub.add_parser("multizeta", parents=[common], help="depth-two multizeta zeta(s1, s2)")
    p.add_argument("--s1", type=int, required=True)
    p.add_argument("--s2", type=int, required=True)
    p.add_argument("--prec", type=int, default=40)
    p.set_defaults(run=cmd_multizeta)

    p = sub.add_parser("verify", parents=[common], help="check an identity")
    p.add_argument("which", choices=("thm1", "thm2", "thm3", "thm4", "thm5", "thm6", "remark5",
                                     "multizeta", "euler-carlitz", "conjecture", "ppower", "all"))
    p.add_argument("--f", default="carlitz-exp", help="series preset")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--ks", type=int_list, default=None, help="comma-separated k_i")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", dest="m", type=int, default=4, help="second index for euler-carlitz")
    p.add_argument("--m-parts", type=int_list, help="composition for remark5")
    p.add_argument("--ext", type=int, default=8, help="extension degree for randomized checks")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--reading", choices=("affine", "literal"), default="affine")
    p.add_argument("--prec", type=int, default=40)
    p.add_argument("--N", type=int, default=60)
    p.add_argument("--family", choices=FAMILIES, default="h")
    p.add_argument("--profile", choices=("quick", "full"), default="quick")
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return emit(args, (r for r in args.run(args) if r is not None), out)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"carlitz-lab {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())

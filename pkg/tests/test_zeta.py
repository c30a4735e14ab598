import importlib

import pytest

from carlitz_lab.algebra import RatFunc, laurent_expand
from carlitz_lab.carlitz import bracket
from carlitz_lab.zeta import (ZetaQuery, cutoff, euler_carlitz_crosscheck, multizeta, multizeta_factor,
                              multizeta_instances, powersum_laurent, valuation_bound,
                              verify_multizeta_identity, zeta)
zeta_mod = importlib.import_module("carlitz_lab.zeta")


def test_degree_one_power_sum_matches_fraction(ctx3):
    # S_1(s) = sum_c (t + c)^(-s)
    for s in (1, 2, 5):
        exact = sum((RatFunc(1, (ctx3.t + c) ** s) for c in (0, 1, 2)), ctx3.K.zero)
        assert powersum_laurent(ctx3, 1, s, 30) == laurent_expand(exact, 30)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("s", [1, 2, 4])
def test_valuation_bound_holds(ctx3, d, s):
    S = powersum_laurent(ctx3, d, s, 60)
    assert S.is_zero() or S.lead >= valuation_bound(3, s, d)


@pytest.mark.parametrize("s", [2, 4, 8])
def test_cutoff_is_sound(ctx3, s):
    D = cutoff(3, s, 40)
    assert zeta(ctx3, ZetaQuery((s,), 40, D + 5)) == zeta(ctx3, s, 40)


def test_zeta_leading_terms(ctx3):
    z = zeta(ctx3, 2, 40)
    assert z.lead == 0 and z.coeff(0) == ctx3.base.one
    assert z.coeff(6) == ctx3.base.one  # first correction comes from S_1(2)


def test_negative_weights_need_explicit_cutoff(ctx3):
    with pytest.raises(ValueError):
        ZetaQuery((-2,), 10)
    z = zeta(ctx3, ZetaQuery((-2,), 10, d_max=2))
    assert z.prec == 10


def test_query_validation():
    with pytest.raises(ValueError):
        ZetaQuery((2,), 0)
    with pytest.raises(ValueError):
        ZetaQuery((0,), 10)


def test_depth_two_double_sum_small_case(ctx3):
    # with prec small enough only d1 = 1, d2 = 0 contributes: zeta(s1, s2) = S_1(s1)
    z = multizeta(ctx3, 2, 6, 10)
    assert z == powersum_laurent(ctx3, 1, 2, 10)


def test_multizeta_identity_q3(ctx3):
    rep = verify_multizeta_identity(ctx3, 1, (0,), 40)
    assert rep.status == "pass"
    assert rep.extra["compared"] >= 30
    assert rep.params["weights"] == [2, 6] and rep.params["zeta_weight"] == 8
    assert rep.extra["factor"] == RatFunc(1, bracket(ctx3, 1) ** 2)


@pytest.mark.parametrize("name", ["ctx3", "ctx5"])
def test_multizeta_identity_all_admissible(request, name):
    ctx = request.getfixturevalue(name)
    for n, ks in multizeta_instances(ctx.q, 2):
        rep = verify_multizeta_identity(ctx, n, ks, 40)
        assert rep.status == "pass", (n, ks)
        assert rep.extra["compared"] >= 40


def test_multizeta_identity_detects_wrong_factor(ctx5, monkeypatch):
    orig = multizeta_factor
    monkeypatch.setattr(zeta_mod, "multizeta_factor",
                        lambda c, n, k: orig(c, n, k) * (c.K.t + 1) / c.K.t)
    rep = verify_multizeta_identity(ctx5, 2, (1, 0), 40)
    assert rep.status == "fail"
    assert rep.witness["first_difference"] is not None


def test_multizeta_rejects_inadmissible(ctx3):
    with pytest.raises(ValueError):
        verify_multizeta_identity(ctx3, 1, (0, 0, 0))
    with pytest.raises(ValueError):
        verify_multizeta_identity(ctx3, 1, (1,))


def test_euler_carlitz_crosscheck(ctx2, ctx3):
    rep = euler_carlitz_crosscheck(ctx3, 2, 4, 20)
    assert rep.status == "pass" and rep.extra["compared"] >= 20
    assert euler_carlitz_crosscheck(ctx2, 1, 3, 20).status == "pass"
    with pytest.raises(ValueError):
        euler_carlitz_crosscheck(ctx3, 1, 2)

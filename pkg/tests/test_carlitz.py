import pytest

from carlitz_lab import compose, comp_inverse
from carlitz_lab.algebra import Poly, RatFunc, enumerate_monic
from carlitz_lab.carlitz import (bernoulli, bernoulli_qk_closed, bernoulli_qk_exponents, bigD, bigL,
                                 bracket, carlitz_binomial, carlitz_exp, carlitz_factorial, carlitz_log,
                                 ell, factor_exponents)


def product(polys, one):
    out = one
    for p in polys:
        out = out * p
    return out


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_D_is_product_of_monics(ctx3, m):
    one = Poly.const(ctx3.base, 1)
    assert bigD(ctx3, m) == product(enumerate_monic(ctx3.base, m), one)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_L_is_lcm_of_monics(ctx3, n):
    lcm = Poly.const(ctx3.base, 1)
    for a in enumerate_monic(ctx3.base, n):
        lcm = (lcm * a).divrem(lcm.gcd(a))[0]
    assert bigL(ctx3, n) == lcm.monic()


def test_bracket_and_sign(ctx3):
    t = ctx3.t
    assert bracket(ctx3, 1) == t**3 - t
    assert ell(ctx3, 1) == -(t**3 - t)
    assert ell(ctx3, 2) == bigL(ctx3, 2)


def test_log_is_inverse_of_exp(ctx3):
    e, log = carlitz_exp(ctx3, 3), carlitz_log(ctx3, 3)
    assert compose(e, log, 3).coeffs == (ctx3.K.one,) + (ctx3.K.zero,) * 3
    assert comp_inverse(e, 3).coeffs == log.coeffs


def test_factorial_digits(ctx3):
    # 5 = 2 + 1*3, so 5! = d_0^2 d_1
    assert carlitz_factorial(ctx3, 5) == bracket(ctx3, 1)
    assert carlitz_factorial(ctx3, 0) == Poly.const(ctx3.base, 1)
    assert carlitz_factorial(ctx3, 9) == bigD(ctx3, 2)


@pytest.mark.parametrize("d", [0, 1, 2])
def test_binomial_product_form_checked(ctx3, d):
    f = carlitz_binomial(ctx3, d, check=True)
    assert f.kind == "polynomial" and f.d == d


def test_binomial_vanishes_on_small_polys(ctx2):
    # binom(a, q^d) = 0 for deg a < d, evaluated in F_q(t)
    f = carlitz_binomial(ctx2, 2)
    for a in [Poly.const(ctx2.base, 0), ctx2.t, ctx2.t + 1]:
        val = sum((c * RatFunc(a) ** (2**i) for i, c in enumerate(f.coeffs)), ctx2.K.zero)
        assert val.is_zero()


def test_small_bernoulli_values(ctx3):
    assert bernoulli(ctx3, 2).value == -RatFunc(1, bracket(ctx3, 1))
    assert bernoulli(ctx3, 8).value == RatFunc(bracket(ctx3, 1), bracket(ctx3, 2))
    assert bernoulli(ctx3, 1).value.is_zero()  # odd index in the (q-1) sense


def test_bernoulli_matches_h_table(ctx3):
    h = carlitz_exp(ctx3, 3).table("h", 60)
    for n in range(61):
        assert h[n] * carlitz_factorial(ctx3, n) == bernoulli(ctx3, n).value


@pytest.mark.parametrize("q_fixture", ["ctx2", "ctx3"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_bernoulli_closed_form_and_exponents(request, q_fixture, k):
    ctx = request.getfixturevalue(q_fixture)
    entry = bernoulli(ctx, ctx.q**k - 1, max_deg=k)
    assert entry.value == bernoulli_qk_closed(ctx, k)
    assert entry.num_factors.complete and entry.den_factors.complete
    assert factor_exponents(entry) == bernoulli_qk_exponents(ctx, k)


def test_bernoulli_json(ctx3):
    data = bernoulli(ctx3, 8).to_json()
    assert data["n"] == 8
    assert set(data["value"]) == {"num", "den"}


def test_negative_index_rejected(ctx3):
    with pytest.raises(ValueError):
        bracket(ctx3, -1)

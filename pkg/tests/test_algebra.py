import pytest
from hypothesis import given, settings, strategies as st

from carlitz_lab.algebra import (FactorMap, LaurentSeries, Poly, RatFunc, enumerate_monic, factor_trial,
                                 function_field, laurent_expand, monic_irreducibles)
from carlitz_lab.field import field_from_order

F3 = field_from_order(3)
t = Poly.t(F3)

coeff_lists = st.lists(st.integers(0, 2), min_size=0, max_size=7)


def P(cs):
    return Poly(F3, [F3(c) for c in cs])


@given(coeff_lists, coeff_lists)
@settings(max_examples=100, deadline=None)
def test_division_with_remainder(a, b):
    A, B = P(a), P(b)
    if B.is_zero():
        return
    Q, R = A.divrem(B)
    assert Q * B + R == A
    assert R.is_zero() or R.degree < B.degree


@given(coeff_lists, coeff_lists)
@settings(max_examples=80, deadline=None)
def test_ratfunc_field_ops(a, b):
    A, B = P(a), P(b)
    if A.is_zero() or B.is_zero():
        return
    r = RatFunc(A, B)
    assert r * r.inverse() == RatFunc(1 + 0 * t)
    assert RatFunc(A) / RatFunc(B) == r
    assert r.den.is_monic()


def test_text_round_trip():
    for text in ["2*t^3+t", "t^9+2*t", "1", "t"]:
        assert str(Poly.parse(F3, text)) == text
    r = RatFunc.parse(F3, "(t^2+2*t)/(t^3+1)")
    assert str(r) == "(t^2+2*t)/(t^3+1)"
    assert RatFunc.from_json(F3, r.to_json()) == r
    assert str(RatFunc(1, t**2)) == "1/t^2"


def test_fraction_normal_form():
    a = RatFunc(t**2 - 1, 2 * t + 2)  # (t-1)(t+1) / 2(t+1)
    assert a == RatFunc(2 * t - 2)
    assert RatFunc(2 * t - 2).is_poly()


def test_gcd_and_derivative():
    a = (t + 1) ** 2 * (t**2 + 1)
    b = (t + 1) * (t + 2)
    assert a.gcd(b) == t + 1
    assert (t**3).derivative().is_zero()  # characteristic 3


def test_frobenius_on_polys():
    f = t**2 + 2 * t + 1
    assert f.frobenius(1) == f**3


def test_enumerate_monic_counts():
    for d in range(4):
        polys = list(enumerate_monic(F3, d))
        assert len(polys) == 3**d
        assert all(p.is_monic() and p.degree == d for p in polys)


@pytest.mark.parametrize("d,count", [(1, 3), (2, 3), (3, 8), (4, 18)])
def test_number_of_irreducibles_matches_necklace_count(d, count):
    assert len(monic_irreducibles(F3, d)) == count


def test_trial_factorization_reconstructs():
    f = 2 * (t**2 + 1) ** 3 * (t + 2) * (t**3 + 2 * t + 1)
    fm = factor_trial(f, 3)
    assert fm.complete
    assert fm.expand() == f
    assert fm.exponent(t**2 + 1) == 3
    assert FactorMap.from_json(F3, fm.to_json()).expand() == f


def test_partial_factorization_keeps_cofactor():
    f = (t + 1) * (t**4 + t**3 + 2)  # degree 4 factor is irreducible mod 3 or splits higher
    fm = factor_trial(f, 1)
    assert fm.expand() == f


def test_laurent_expansion_of_simple_fraction():
    # 1/(t - 1) = u + u^2 + u^3 + ...
    s = laurent_expand(RatFunc(1, t - 1), 10)
    assert s.lead == 1
    assert all(s.coeff(n) == F3.one for n in range(1, 10))


@given(coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_laurent_expansion_is_a_ring_map(a, b):
    A, B = P(a), P(b)
    if A.is_zero() or B.is_zero():
        return
    r1, r2 = RatFunc(1, A), RatFunc(B, A + t**8)
    prec = 20
    lhs = laurent_expand(r1 * r2, prec)
    rhs = laurent_expand(r1, prec) * laurent_expand(r2, prec)
    common = min(lhs.prec, rhs.prec)
    assert lhs.agrees_with(rhs, common)


def test_laurent_inverse_and_json():
    s = laurent_expand(RatFunc(t**2 + 1, t**5 + t), 15)
    one = s * s.inverse()
    assert one.agrees_with(LaurentSeries.one(F3, one.prec), one.prec)
    assert LaurentSeries.from_json(F3, s.to_json()) == s


def test_laurent_difference_reports_first_mismatch():
    a = laurent_expand(RatFunc(1, t - 1), 12)
    b = laurent_expand(RatFunc(1, t - 2), 12)
    assert a.first_difference(b) == 2  # u coefficients agree, u^2 differs


def test_function_field_json():
    K = function_field(F3)
    assert K.to_json()["type"] == "ratfunc"
    assert K.t == RatFunc(t)

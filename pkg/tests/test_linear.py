"""Engine tables against independent expansions and hand-derived values."""

import random

import pytest

from carlitz_lab import CarlitzCtx, LinearSeries, comp_inverse, compose, field_from_order
from carlitz_lab.algebra import function_field
from carlitz_lab.field import field_extension
from carlitz_lab.linear import (CoeffTable, check_ppower, expansion_of, from_root_space, identity_series,
                                ls_eval, span, vanishing_violations)

F3 = field_from_order(3)
K3 = function_field(F3)
F9 = field_from_order(9)


def dense_reciprocal(c, n, one):
    """Power-series reciprocal by the schoolbook recursion (independent of the engine)."""
    inv0 = one / c[0]
    out = [inv0]
    for k in range(1, n + 1):
        acc = one * 0
        for j in range(1, k + 1):
            if j < len(c) and c[j]:
                acc = acc + c[j] * out[k - j]
        out.append(-(acc * inv0))
    return out


def example_series(f0, f1, f2):
    return LinearSeries([f0, f1, f2], 3, f0.ctx if hasattr(f0, "ctx") else K3, "polynomial")


def test_h_matches_dense_reciprocal():
    t = K3.t
    f = LinearSeries([t, K3.one, t + 1], 3, K3, "polynomial")
    N = 40
    dense = expansion_of(f, N + 1)
    # f/z = f_0 + f_1 z^2 + f_2 z^8;  h = f_0 z / f = f_0 / (f/z)
    recip = dense_reciprocal(dense[1:], N, K3.one)
    h = f.table("h", N)
    assert all(h[n] == t * recip[n] for n in range(N + 1))


def test_a_matches_dense_reciprocal():
    t = K3.t
    f = LinearSeries([t, t + 1, K3.one], 3, K3, "polynomial")
    N = 30
    dense = expansion_of(f, N)
    one_minus_f = [K3.one] + [-c for c in dense[1:]]
    recip = dense_reciprocal(one_minus_f, N, K3.one)
    a = f.table("a", N)
    assert a[0] == K3.zero
    assert all(a[n] == t * recip[n - 1] for n in range(1, N + 1))


class TestDocumentedValues:
    """q = 3, f = f0 z + f1 z^3 + f2 z^9."""

    def check(self, f0, f1, f2, dom):
        f = LinearSeries([f0, f1, f2], 3, dom, "polynomial")
        H, al, a = f.table("H", 26), f.table("alpha", 26), f.table("a", 8)
        assert H[2] == dom.zero
        assert H[8] == -f0 / f2
        assert H[26] == f0 * f1**3 / f2**4
        assert a[6] == f0**6
        assert a[8] == f0**8 - f0**5 * f1
        assert al[26] == (-f0 * f1**3 + f0 * f2) / f2**4
        assert al[8] == f0 / f2

    def test_over_function_field(self):
        t = K3.t
        self.check(t, K3.one, t + 1, K3)

    def test_random_specializations(self):
        rng = random.Random(2024)
        nonzero = [x for x in F9.elements() if x]
        for _ in range(50):
            self.check(rng.choice(nonzero), rng.choice(F9.elements()), rng.choice(nonzero), F9)


def test_vanishing_rules_hold():
    t = K3.t
    f = LinearSeries([t, K3.one, t + 1], 3, K3, "polynomial")
    for fam in ("h", "H", "alpha"):
        assert vanishing_violations(f.table(fam, 60)) == []


@pytest.mark.parametrize("fam", ["h", "a", "H", "alpha"])
def test_p_power_property(fam):
    ctx = CarlitzCtx(F3)
    t = ctx.K.t
    f = LinearSeries([t + 2, t, ctx.K.one], 3, ctx.K, "polynomial")
    assert check_ppower(f.table(fam, 90)).status == "pass"


def test_truncated_series_refuses_indices_past_validity():
    f = LinearSeries([K3.one, K3.t], 3, K3, "series")
    assert f.valid_bound == 7
    f.table("h", 7)
    with pytest.raises(ValueError, match="only determines"):
        f.table("h", 8)
    with pytest.raises(ValueError):
        f.table("H", 3)


def test_incremental_tables_agree_with_fresh():
    t = K3.t
    f = LinearSeries([t, K3.one, t + 1], 3, K3, "polynomial")
    g = LinearSeries([t, K3.one, t + 1], 3, K3, "polynomial")
    f.table("alpha", 10)
    assert f.table("alpha", 50).values == g.table("alpha", 50).values


def test_degenerate_flag_when_f0_vanishes():
    f = LinearSeries([K3.zero, K3.one], 3, K3, "polynomial")
    assert f.table("a", 5).degenerate


def test_table_json_round_trip():
    f = LinearSeries([K3.t, K3.one, K3.t + 1], 3, K3, "polynomial")
    tab = f.table("H", 26)
    back = CoeffTable.from_json(tab.to_json(), f)
    assert back.values == tab.values
    assert LinearSeries.from_json(f.to_json()) == f


def test_composition_with_identity_and_inverse():
    t = K3.t
    f = LinearSeries([t, K3.one, t + 1], 3, K3, "series")
    one = identity_series(3, K3)
    assert compose(f, one, 2).coeffs == f.coeffs
    g = comp_inverse(f, 4)
    fg = compose(f, g, 4)
    assert fg.coeffs == (K3.one, K3.zero, K3.zero, K3.zero, K3.zero)


def test_composition_is_evaluation():
    F = field_extension(F3, 4)
    rng = random.Random(5)
    f = LinearSeries([F.random_element(rng) for _ in range(3)], 3, F, "polynomial")
    g = LinearSeries([F.random_element(rng) for _ in range(3)], 3, F, "polynomial")
    fg = compose(f, g, 4)
    for x in F.elements()[:40]:
        assert ls_eval(fg, x) == ls_eval(f, ls_eval(g, x))


def test_linear_series_are_fq_linear():
    F = field_extension(F3, 3)
    rng = random.Random(1)
    f = LinearSeries([F.random_element(rng) for _ in range(3)], 3, F, "polynomial")
    for _ in range(20):
        x, y = F.random_element(rng), F.random_element(rng)
        c = F.subfield(3)[2]
        assert ls_eval(f, c * x + y) == c * ls_eval(f, x) + ls_eval(f, y)


def test_root_space_polynomial_vanishes_on_the_space():
    F = field_extension(field_from_order(4), 2)
    basis = [F.from_code(5)]
    f = from_root_space(basis, 4)
    assert all(not ls_eval(f, v) for v in span(basis, 4))
    # H_m = b^m on a line spanned by b (sum over F_4 b of v^m is -b^m for 3 | m)
    b = basis[0]
    H = f.table("H", 30)
    for m in range(1, 31):
        assert H[m] == (b**m if m % 3 == 0 else F.zero)


def test_affine_shift_normalizes():
    F = field_extension(F3, 3)
    basis = [F.from_code(1), F.from_code(3)]
    mu = F.from_code(9)
    f = from_root_space(basis, 3, shift=mu)
    assert all(ls_eval(f, mu + v) == F.one for v in span(basis, 3))


def test_dependent_basis_rejected():
    F = field_extension(F3, 2)
    b = F.from_code(4)
    with pytest.raises(ValueError):
        from_root_space([b, b + b], 3)


def test_field_not_containing_fq_rejected():
    with pytest.raises(ValueError):
        LinearSeries([F9.one], 27, F9)

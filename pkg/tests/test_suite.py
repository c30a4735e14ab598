"""Harness self-tests: the matrix goes red when an engine is broken."""

import pytest

import carlitz_lab.linear as linear
from carlitz_lab.suite import thread_count, theorem_matrix, verify_all


def signflip_alpha(f, vals, N):
    """The alpha recursion with the seed term f_0 entering with the wrong sign.

    (Flipping the signs of the lower f_j instead is a symmetry of the identity:
    it yields -alpha of f with f_0..f_{d-1} negated, so it would go unnoticed.)
    """
    F, q, d = f.field, f.q, f.d
    top = q**d
    inv_d = F.one / f.coeffs[d]
    vals = list(vals)
    for m in range(len(vals), N + 1):
        if m < top - 1:
            vals.append(F.zero)
            continue
        acc = -f.coeffs[0] if m == top - 1 else F.zero  # should be +f_0
        if m >= top:
            acc = acc + vals[m - top]
        for j in range(d):
            idx = m - top + q**j
            if f.coeffs[j] and idx >= 0:
                acc = acc - f.coeffs[j] * vals[idx]
        vals.append(acc * inv_d)
    return vals


def test_quick_profile_is_green():
    summary = verify_all("quick", 42)
    assert summary["status"] == "pass", summary["failures"][:2]
    assert summary["totals"]["expected-fail"] == 4


def test_sign_bug_in_alpha_turns_thm6_red(monkeypatch):
    monkeypatch.setitem(linear._ENGINES, "alpha", signflip_alpha)
    reps = theorem_matrix((3,), 2, 2, 42, which=("thm6",))
    failed = [r for r in reps if r.status == "fail"]
    assert failed
    assert all(r.witness and "lhs" in r.witness for r in failed)


def test_identical_seed_gives_identical_summary():
    assert verify_all("quick", 11) == verify_all("quick", 11)


def test_threads_do_not_change_the_summary(monkeypatch):
    monkeypatch.setenv("CARLITZ_LAB_THREADS", "3")
    assert thread_count() == 3
    assert verify_all("quick", 5) == verify_all("quick", 5, threads=1)


def test_bad_thread_setting(monkeypatch):
    monkeypatch.setenv("CARLITZ_LAB_THREADS", "many")
    with pytest.raises(ValueError):
        thread_count()


def test_unknown_profile():
    with pytest.raises(ValueError):
        verify_all("medium")

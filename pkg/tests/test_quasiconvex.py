import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasibounds.core import DomainError, Interval, ValidationError
from quasibounds.functions import DEFAULT_CORPUS, get_function
from quasibounds.quasiconvex import (
    brute_force_qc,
    check_derivative_power,
    check_quasiconvex,
    derivative_power,
)

UNIT = Interval(0.0, 1.0)


def bump(x):
    return -((x - 0.5) ** 2) + 1


def test_monotone_examples():
    v = check_derivative_power(get_function("pow:2"), UNIT, 1.0)
    assert v.holds and v.valley_point == 0.0
    v = check_derivative_power(get_function("recip"), Interval(1.0, 2.0), 1.0)
    assert v.holds and v.valley_point == 2.0


def test_interior_maximum_fails():
    v = check_quasiconvex(bump, UNIT, n_samples=2001)
    assert not v.holds
    assert v.worst_violation == pytest.approx(0.25, abs=1e-12)
    oracle = brute_force_qc(bump, UNIT, n=199)
    assert oracle.worst_violation == pytest.approx(0.25, abs=1e-12)
    assert abs(oracle.worst_violation - check_quasiconvex(bump, UNIT, 199).worst_violation) <= 1e-12


def test_convex_holds():
    g = lambda x: x * x  # noqa: E731
    assert check_quasiconvex(g, Interval(-1.0, 1.0)).holds
    assert brute_force_qc(g, Interval(-1.0, 1.0), n=101).holds


def test_valley_shaped_abs_derivative():
    # |f'| for x**3 on [-1, 2] is 3x^2: falls to 0 then rises
    v = check_derivative_power(get_function("pow:3"), Interval(-1.0, 2.0), 1.5)
    assert v.holds
    assert abs(v.valley_point) <= 2e-3


def test_two_humps_fail():
    g = lambda x: np.sin(3 * np.pi * x)  # noqa: E731
    fast = check_quasiconvex(g, UNIT, 150)
    slow = brute_force_qc(g, UNIT, 150)
    assert not fast.holds
    assert fast.worst_violation == pytest.approx(slow.worst_violation, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=3, max_size=40))
def test_fast_check_matches_brute_force(values):
    vals = np.array(values)
    n = len(vals)
    iv = Interval(0.0, float(n - 1))

    def g(x):
        return vals[np.rint(np.asarray(x)).astype(int)]

    fast = check_quasiconvex(g, iv, n)
    slow = brute_force_qc(g, iv, n)
    assert fast.holds == slow.holds
    assert abs(fast.worst_violation - slow.worst_violation) <= 1e-12


@pytest.mark.parametrize("key", DEFAULT_CORPUS)
def test_corpus_verdicts_agree_with_oracle(key):
    f = get_function(key)
    for iv in (UNIT, Interval(1.0, 2.0), Interval(-1.0, 2.0)):
        if not f.valid_domain(iv):
            continue
        for q in (1.0, 2.0):
            g = derivative_power(f, q)
            kinks = f.kinks_in(iv)
            fast = check_quasiconvex(g, iv, 200, kinks=kinks)
            slow = brute_force_qc(g, iv, 200, kinks=kinks)
            assert fast.holds == slow.holds


def test_validation():
    with pytest.raises(ValidationError):
        brute_force_qc(bump, UNIT, n=201)
    with pytest.raises(ValidationError):
        brute_force_qc(bump, UNIT, n=2)
    with pytest.raises(ValidationError):
        check_quasiconvex(bump, UNIT, n_samples=2)


def test_non_finite_samples_raise():
    with pytest.raises(DomainError):
        check_quasiconvex(lambda x: 1.0 / x, Interval(-1.0, 1.0), n_samples=3)
    with pytest.raises(DomainError):
        check_derivative_power(get_function("log"), Interval(-1.0, 1.0), 1.0)

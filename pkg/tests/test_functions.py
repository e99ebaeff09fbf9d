import math

import numpy as np
import pytest

from quasibounds.core import DomainError, Interval, ValidationError
from quasibounds.functions import DEFAULT_CORPUS, get_function, parse_number
from quasibounds.quadrature import reference_integral

ALL_KEYS = ["pow:2", "pow:3", "pow:4", "pow:5", "pow:6", "recip", "exp", "negexp", "absshift:0.5", "log"]
INTERVALS = [Interval(0.0, 1.0), Interval(1.0, 2.0), Interval(-1.0, 2.0), Interval(-3.0, -0.5)]
VALID_PAIRS = [
    pytest.param(k, iv, id=f"{k}-{iv}") for k in ALL_KEYS for iv in INTERVALS if get_function(k).valid_domain(iv)
]


@pytest.mark.parametrize("key, iv", VALID_PAIRS)
def test_derivative_self_test(key, iv):
    f = get_function(key)
    assert f.check_derivative(iv) <= 1e-6


@pytest.mark.parametrize("key, iv", VALID_PAIRS)
def test_antiderivative_matches_adaptive(key, iv):
    f = get_function(key)
    exact = reference_integral(f, iv).value
    adaptive = reference_integral(f, iv, tol=1e-12, use_antiderivative=False)
    assert abs(exact - adaptive.value) <= 2e-12
    assert adaptive.abs_err_est >= 0 and adaptive.evals > 0


@pytest.mark.parametrize("key", ["pow:4", "pow:6", "recip", "exp", "negexp", "log"])
def test_fourth_derivative_by_differences(key):
    f = get_function(key)
    x = np.linspace(1.2, 1.8, 7)
    h = 1e-2
    fd = (f.f(x - 2 * h) - 4 * f.f(x - h) + 6 * f.f(x) - 4 * f.f(x + h) + f.f(x + 2 * h)) / h**4
    np.testing.assert_allclose(fd, f.f4(x), rtol=1e-3, atol=1e-6)


def test_domains():
    assert not get_function("recip").valid_domain(Interval(-1.0, 2.0))
    assert get_function("recip").valid_domain(Interval(-2.0, -1.0))
    assert not get_function("log").valid_domain(Interval(0.0, 1.0))
    with pytest.raises(DomainError, match="log"):
        get_function("log").require_domain(Interval(-1.0, 1.0))


def test_kink_handling():
    f = get_function("absshift:0.5")
    assert f.kinks_in(Interval(0.0, 1.0)) == [0.5]
    assert f.kinks_in(Interval(1.0, 2.0)) == []
    # one-sided magnitudes are both 1 at the kink
    assert f.abs_deriv_pow(0.5, 2.0) == 1.0
    np.testing.assert_array_equal(f.abs_deriv_pow(np.array([0.0, 0.5, 1.0]), 1.0), [1.0, 1.0, 1.0])


@pytest.mark.parametrize("bad", ["pow:1", "pow:7", "pow:x", "sin", "absshift", "exp:2"])
def test_unknown_keys(bad):
    with pytest.raises(ValidationError):
        get_function(bad)


def test_aliases_and_corpus():
    assert get_function("neg_exp").id == "negexp"
    assert len(DEFAULT_CORPUS) == 7
    for key in DEFAULT_CORPUS:
        get_function(key)


def test_parse_number():
    assert parse_number("1/3") == 1 / 3
    assert parse_number("0.25") == 0.25
    assert parse_number("-2") == -2.0
    assert math.isclose(parse_number("1e-3"), 1e-3)
    with pytest.raises(ValidationError):
        parse_number("abc")
    with pytest.raises(ValidationError):
        parse_number("1/0")

import math
import random

import mpmath
import pytest

from quasibounds.core import DomainError, UnsupportedExponentError, ValidationError, make_params
from quasibounds.means import (
    MeanInputs,
    arithmetic,
    harmonic,
    logarithmic,
    n_logarithmic,
    n_logarithmic_power,
    proposition_bound,
    reciprocal_mean,
    weighted_arithmetic,
    weighted_harmonic,
)

GRID = (0.0, 0.25, 1 / 3, 0.5, 1.0)


def test_mean_examples():
    assert arithmetic(1, 3) == 2
    assert weighted_arithmetic(1, 3, 0.25) == 2.5
    assert harmonic(1, 2) == pytest.approx(4 / 3)
    assert weighted_harmonic(1, 2, 0.5) == pytest.approx(4 / 3)
    assert logarithmic(1, 2) == pytest.approx(1 / math.log(2), rel=1e-15)
    assert n_logarithmic(0, 1, 2) == pytest.approx(math.sqrt(1 / 3), rel=1e-15)
    assert n_logarithmic_power(0, 1, 2) == pytest.approx(1 / 3, rel=1e-15)


def test_odd_n_logarithmic_negative():
    assert n_logarithmic(-2, -1, 3) == pytest.approx(-((15 / 4) ** (1 / 3)))


@pytest.mark.parametrize("a, gap", [(1.0, 1e-9), (3.5, 1e-12), (1e-3, 1e-14), (7.0, 5e-9)])
def test_logarithmic_series_against_mpmath(a, gap):
    mpmath.mp.dps = 50
    b = a + gap * a
    exact = (mpmath.mpf(b) - a) / (mpmath.log(b) - mpmath.log(a))
    assert logarithmic(a, b) == pytest.approx(float(exact), rel=1e-15)


def test_mean_value_identities():
    rng = random.Random(7)
    mpmath.mp.dps = 30
    for _ in range(20):
        a = rng.uniform(-3, 3)
        b = a + rng.uniform(0.1, 3)
        for n in range(2, 7):
            exact = mpmath.quad(lambda x: x**n, [a, b]) / (mpmath.mpf(b) - a)
            assert abs(n_logarithmic_power(a, b, n) - float(exact)) <= 1e-12 * max(1.0, abs(float(exact)))
        lo = rng.uniform(0.1, 3)
        hi = lo + rng.uniform(0.1, 3)
        exact = mpmath.quad(lambda x: 1 / x, [lo, hi]) / (mpmath.mpf(hi) - lo)
        assert abs(reciprocal_mean(lo, hi) - float(exact)) <= 1e-12
        assert abs(reciprocal_mean(-hi, -lo) + float(exact)) <= 1e-12


@pytest.mark.parametrize(
    "fn, args",
    [
        (logarithmic, (0, 1)),
        (logarithmic, (2, 2)),
        (harmonic, (0, 1)),
        (harmonic, (-1, 1)),
        (weighted_harmonic, (0, 1, 0.5)),
        (n_logarithmic, (0, 1, 0)),
        (n_logarithmic_power, (1, 1, 2)),
        (reciprocal_mean, (-1, 1)),
    ],
)
def test_mean_domain_errors(fn, args):
    with pytest.raises(DomainError):
        fn(*args)


def test_p1_example():
    rep = proposition_bound("P1", MeanInputs(0, 1, 0.5, 2), make_params(0.5, 0, 1))
    assert rep.lhs == pytest.approx(1 / 12, rel=1e-14)
    assert rep.bound == pytest.approx(0.5, rel=1e-15)
    assert rep.paths_agree and rep.qc.holds
    assert rep.constants["E"] == 1.0


def test_p3_example():
    rep = proposition_bound("P3", MeanInputs(1, 2, 0.5), make_params(0.5, 1, 1))
    assert rep.lhs == pytest.approx(0.75 - math.log(2), rel=1e-13)
    assert rep.bound == pytest.approx(0.25, rel=1e-15)
    assert rep.constants["K"] == 1.0
    assert rep.slack > 0


CASES = [
    ("P1", (0.0, 1.0), 2, (1.0, 1.5, 2.0)),
    ("P1", (-1.0, 2.0), 3, (1.0, 1.5, 2.0)),
    ("P2", (0.0, 1.0), 2, (1.5, 2.0, 3.0)),
    ("P2", (-1.0, 2.0), 4, (1.5, 2.0, 3.0)),
    ("P3", (1.0, 2.0), None, (1.0, 1.5, 2.0)),
    ("P3", (-2.0, -1.0), None, (1.0, 1.5, 2.0)),
    ("P4", (1.0, 3.0), None, (1.5, 2.0, 3.0)),
]


@pytest.mark.parametrize("which, iv, n, qs", CASES)
def test_proposition_grid(which, iv, n, qs):
    for al in GRID:
        for lm in GRID:
            for q in qs:
                rep = proposition_bound(which, MeanInputs(iv[0], iv[1], al, n), make_params(al, lm, q))
                assert abs(rep.bound - rep.generic_bound) <= 1e-12
                assert rep.lhs <= rep.bound + 1e-9


@pytest.mark.parametrize(
    "which, inputs, params, exc",
    [
        ("P5", MeanInputs(0, 1, 0.5, 2), make_params(0.5, 0), ValidationError),
        ("P1", MeanInputs(0, 1, 0.5), make_params(0.5, 0), DomainError),
        ("P1", MeanInputs(0, 1, 0.5, 1), make_params(0.5, 0), DomainError),
        ("P1", MeanInputs(1, 1, 0.5, 2), make_params(0.5, 0), DomainError),
        ("P3", MeanInputs(-1, 1, 0.5), make_params(0.5, 0), DomainError),
        ("P4", MeanInputs(-2, -1, 0.5), make_params(0.5, 0, 2), DomainError),
        ("P2", MeanInputs(0, 1, 0.5, 2), make_params(0.5, 0, 1), UnsupportedExponentError),
        ("P1", MeanInputs(0, 1, 0.25, 2), make_params(0.5, 0), ValidationError),
    ],
)
def test_proposition_errors(which, inputs, params, exc):
    with pytest.raises(exc):
        proposition_bound(which, inputs, params)

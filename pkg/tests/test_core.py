import numpy as np
import pytest
from hypothesis import given, strategies as st

from quasibounds.core import (
    CHAIN_TOL,
    Interval,
    Regime,
    RuleParams,
    ValidationError,
    classify_regime,
    make_params,
    regime_chain,
    sup_witness,
)

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


def test_make_params_simpson_point():
    p = make_params(0.5, 1 / 3, 1)
    assert (p.alpha, p.lam, p.q, p.p) == (0.5, 1 / 3, 1.0, None)


def test_make_params_conjugate():
    assert make_params(0.5, 0, 2).p == 2.0


@pytest.mark.parametrize(
    "args, field",
    [((1.2, 0, 1), "alpha"), ((-0.1, 0, 1), "alpha"), ((0.5, 1.5, 1), "lambda"), ((0.5, 0.5, 0.9), "q")],
)
def test_make_params_rejects(args, field):
    with pytest.raises(ValidationError, match=f"{field} out of range") as exc:
        make_params(*args)
    assert exc.value.field == field


def test_make_params_rejects_nan():
    with pytest.raises(ValidationError):
        make_params(float("nan"), 0.5, 1)


def test_mismatched_p_rejected():
    with pytest.raises(ValidationError):
        RuleParams(0.5, 0.5, 2.0, p=3.0)
    with pytest.raises(ValidationError):
        RuleParams(0.5, 0.5, 1.0, p=2.0)


@given(st.floats(min_value=1.0 + 1e-9, max_value=1e6))
def test_conjugate_identity(q):
    p = make_params(0.3, 0.3, q).p
    assert abs(1 / p + 1 / q - 1) <= 1e-15


@pytest.mark.parametrize("bad", [(1.0, 1.0), (2.0, 1.0), (float("inf"), 3.0)])
def test_interval_rejects(bad):
    with pytest.raises(ValidationError):
        Interval(*bad)


def test_interval_node():
    iv = Interval(1.0, 3.0)
    assert iv.width == 2.0
    assert iv.node(0.5) == 2.0
    assert iv.node(1.0) == 1.0 and iv.node(0.0) == 3.0


@pytest.mark.parametrize(
    "alpha, lam, expected",
    [
        (0.5, 1 / 3, Regime.R1),  # 1/6 <= 1/2 <= 5/6
        (0.5, 1.0, Regime.R1),  # three-way tie
        (0.9, 0.9, Regime.R3),  # 0.1 <= 0.81 <= 0.91
        (0.2, 0.5, Regime.R2),  # 0.1 <= 0.6 <= 0.8
        (1 / 3, 1.0, Regime.R2),  # 1 - lambda(1-alpha) lands an ulp below alpha*lambda
    ],
)
def test_classify_regime_examples(alpha, lam, expected):
    assert classify_regime(make_params(alpha, lam)) is expected


def _chain_ok(params, regime):
    lo, mid, hi = regime_chain(params, regime)
    return lo <= mid + CHAIN_TOL and mid <= hi + CHAIN_TOL


def test_regime_exhaustive_on_million_samples():
    rng = np.random.default_rng(2012)
    samples = rng.uniform(0, 1, size=(10**6, 2))
    x = samples[:, 0] * samples[:, 1]
    c = 1 - samples[:, 1] * (1 - samples[:, 0])
    assert np.all(x <= c + 1e-15)
    bad = 0
    for al, lm in samples.tolist():
        p = RuleParams(al, lm)
        bad += not _chain_ok(p, classify_regime(p))
    assert bad == 0


@given(unit, unit)
def test_regime_chain_holds(alpha, lam):
    p = make_params(alpha, lam)
    r = classify_regime(p)
    assert _chain_ok(p, r)
    # lower-numbered tags must not apply
    for lower in list(Regime)[: list(Regime).index(r)]:
        assert not _chain_ok(p, lower)


@given(unit, unit, st.floats(min_value=1.0, max_value=50.0))
def test_regime_independent_of_q(alpha, lam, q):
    assert classify_regime(make_params(alpha, lam, q)) is classify_regime(make_params(alpha, lam, 1.0))


def test_sup_witness_tie_goes_to_smallest():
    w = sup_witness([4.0, 4.0, 1.0], [2.0, -1.0, 0.0])
    assert w.value == 4.0 and w.arg == -1.0
    assert w.candidates == (2.0, -1.0, 0.0)

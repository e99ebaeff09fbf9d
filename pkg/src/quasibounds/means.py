"""Special means of two reals and the rule-error bounds they inherit.

The four propositions instantiate the general bounds for f(x) = x**n
(P1, P2) and f(x) = 1/x (P3, P4).  P1 and P3 use the power-mean bound
with endpoint suprema; P2 and P4 use the split Hoelder bound with
suprema taken at an endpoint and at the weighted arithmetic mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .bounds import (
    first_moment,
    gamma_upsilon,
    holder_moments,
    power_mean_bound,
    second_moment,
    split_holder_bound,
)
from .core import DomainError, Interval, Regime, RuleParams, UnsupportedExponentError, ValidationError, classify_regime
from .functions import get_function
from .quasiconvex import QCVerdict, check_derivative_power

AGREEMENT_TOL = 1e-12
# Relative gap below which the logarithmic mean switches to its series.
_LOG_SERIES_GAP = 1e-8


def weighted_arithmetic(a: float, b: float, alpha: float) -> float:
    return alpha * a + (1.0 - alpha) * b


def arithmetic(a: float, b: float) -> float:
    return (a + b) / 2.0


def weighted_harmonic(a: float, b: float, alpha: float) -> float:
    if a == 0.0 or b == 0.0:
        raise DomainError("weighted harmonic mean needs a, b != 0")
    s = alpha / a + (1.0 - alpha) / b
    if s == 0.0:
        raise DomainError("weighted harmonic mean is infinite for these inputs")
    return 1.0 / s


def harmonic(a: float, b: float) -> float:
    if a == 0.0 or b == 0.0 or a + b == 0.0:
        raise DomainError("harmonic mean needs a, b != 0 and a + b != 0")
    return 2.0 * a * b / (a + b)


def logarithmic(a: float, b: float) -> float:
    if not (a > 0.0 and b > 0.0):
        raise DomainError("logarithmic mean needs a, b > 0")
    if a == b:
        raise DomainError("logarithmic mean needs a != b")
    u = (b - a) / a
    if abs(b - a) < _LOG_SERIES_GAP * abs(a):
        # u / log1p(u) expanded to third order
        return a * (1.0 + u / 2.0 - u * u / 12.0 + u**3 / 24.0)
    return (b - a) / (math.log(b) - math.log(a))


def n_logarithmic_power(a: float, b: float, n: int) -> float:
    """L_n(a, b)**n, the mean value of x**n over [a, b]."""
    if n < 1:
        raise DomainError("n-logarithmic mean needs n >= 1")
    if a == b:
        raise DomainError("n-logarithmic mean needs a != b")
    return (b ** (n + 1) - a ** (n + 1)) / ((n + 1) * (b - a))


def n_logarithmic(a: float, b: float, n: int) -> float:
    v = n_logarithmic_power(a, b, n)
    if v < 0.0:
        if n % 2 == 0:
            raise DomainError("negative mean value for even n")
        return -((-v) ** (1.0 / n))
    return v ** (1.0 / n)


def reciprocal_mean(a: float, b: float) -> float:
    """Mean value of 1/x over an interval not containing 0.

    Equals 1/L(a, b) for positive endpoints and -1/L(-b, -a) for negative
    ones."""
    if a <= 0.0 <= b:
        raise DomainError("reciprocal mean needs 0 outside [a, b]")
    if a > 0.0:
        return 1.0 / logarithmic(a, b)
    return -1.0 / logarithmic(-b, -a)


@dataclass(frozen=True)
class MeanInputs:
    a: float
    b: float
    alpha: float
    n: Optional[int] = None


@dataclass(frozen=True)
class PropositionReport:
    which: str
    lhs: float
    bound: float
    generic_bound: float
    slack: float
    paths_agree: bool
    regime: Regime
    qc: QCVerdict
    constants: dict


def _propositional_lhs(which: str, inp: MeanInputs, lam: float) -> float:
    a, b, al = inp.a, inp.b, inp.alpha
    if which in ("P1", "P2"):
        n = inp.n
        val = (
            lam * weighted_arithmetic(a**n, b**n, al)
            + (1.0 - lam) * weighted_arithmetic(a, b, al) ** n
            - n_logarithmic_power(a, b, n)
        )
    else:
        val = (
            lam / weighted_harmonic(a, b, al)
            + (1.0 - lam) / weighted_arithmetic(a, b, al)
            - reciprocal_mean(a, b)
        )
    return abs(val)


def _validate(which: str, inp: MeanInputs, params: RuleParams) -> None:
    if which not in ("P1", "P2", "P3", "P4"):
        raise ValidationError("prop", f"unknown proposition {which!r}")
    if not inp.a < inp.b:
        raise DomainError(f"{which} needs a < b")
    if inp.alpha != params.alpha:
        raise ValidationError("alpha", "MeanInputs.alpha and params.alpha differ")
    if which in ("P1", "P2") and (inp.n is None or inp.n < 2):
        raise DomainError(f"{which} needs an integer n >= 2")
    if which == "P3" and inp.a <= 0.0 <= inp.b:
        raise DomainError("P3 needs 0 outside [a, b]")
    if which == "P4" and not inp.a > 0.0:
        raise DomainError("P4 needs 0 < a < b")
    if which in ("P2", "P4") and params.q <= 1.0:
        raise UnsupportedExponentError(f"{which} needs q > 1")


def proposition_bound(which: str, inputs: MeanInputs, params: RuleParams) -> PropositionReport:
    """Evaluate a proposition from the mean formulas and, independently,
    from the generic bound for x**n or 1/x."""
    _validate(which, inputs, params)
    a, b, al, q = inputs.a, inputs.b, inputs.alpha, params.q
    regime = classify_regime(params)
    width = b - a
    node = weighted_arithmetic(a, b, al)
    if which in ("P1", "P2"):
        n = inputs.n
        f = get_function(f"pow:{n}")
        scale = float(n)
        dp = (n - 1) * q  # |x|^{(n-1)q}
    else:
        f = get_function("recip")
        scale = 1.0
        dp = -2.0 * q

    def mag(x):
        return abs(x) ** dp

    if which in ("P1", "P3"):
        gu = gamma_upsilon(params)
        E = max(mag(a), mag(b))
        bound = scale * width * (first_moment(gu, regime) + second_moment(gu, regime)) * E ** (1.0 / q)
        generic = power_mean_bound(f, Interval(a, b), params).value
        constants = {"E" if which == "P1" else "K": E}
    else:
        p = params.p
        e_first, e_second = holder_moments(params, p, regime)
        F = max(mag(a), mag(node))
        G = max(mag(b), mag(node))
        bracket = (1.0 - al) ** (1.0 / q) * F ** (1.0 / q) * e_first ** (1.0 / p) + al ** (1.0 / q) * G ** (
            1.0 / q
        ) * e_second ** (1.0 / p)
        bound = width * (1.0 / (p + 1.0)) ** (1.0 / p) * scale * bracket
        generic = split_holder_bound(f, Interval(a, b), params).value
        constants = {"F": F, "G": G} if which == "P2" else {"M": F, "N": G}
    lhs = _propositional_lhs(which, inputs, params.lam)
    qc = check_derivative_power(f, Interval(a, b), q)
    return PropositionReport(
        which=which,
        lhs=lhs,
        bound=bound,
        generic_bound=generic,
        slack=bound - lhs,
        paths_agree=abs(bound - generic) <= AGREEMENT_TOL,
        regime=regime,
        qc=qc,
        constants=constants,
    )

"""Domain types shared across the package: intervals, rule parameters,
regimes and supremum witnesses."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

# Slack used when asserting the chain inequalities that define a regime.
CHAIN_TOL = 1e-15


class QuasiBoundsError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(QuasiBoundsError, ValueError):
    """An input value is outside its admissible range."""

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field


class DomainError(QuasiBoundsError, ValueError):
    """A function or mean was evaluated outside its domain."""


class UnsupportedExponentError(QuasiBoundsError, ValueError):
    """A Hoelder-type bound was requested with q = 1 (no finite conjugate)."""


class ConvergenceError(QuasiBoundsError, RuntimeError):
    """The adaptive integrator ran out of evaluations."""

    def __init__(self, message: str, best_estimate: float, abs_err_est: float, evals: int):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.abs_err_est = abs_err_est
        self.evals = evals


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValidationError("interval", f"interval endpoints must be finite, got [{self.a}, {self.b}]")
        if not self.a < self.b:
            raise ValidationError("interval", f"interval requires a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def node(self, alpha: float) -> float:
        """Interior node alpha*a + (1 - alpha)*b of the three-point rule."""
        return alpha * self.a + (1.0 - alpha) * self.b

    def contains(self, x: float) -> bool:
        return self.a <= x <= self.b

    def __str__(self):
        return f"[{self.a!r}, {self.b!r}]"


@dataclass(frozen=True)
class RuleParams:
    alpha: float
    lam: float
    q: float = 1.0
    p: Optional[float] = None

    def __post_init__(self):
        # Callers normally go through make_params; this keeps direct
        # construction honest as well.
        _check_unit("alpha", self.alpha)
        _check_unit("lambda", self.lam)
        if not (math.isfinite(self.q) and self.q >= 1.0):
            raise ValidationError("q", f"q out of range: need q >= 1, got {self.q}")
        if self.q > 1.0:
            if self.p is None:
                object.__setattr__(self, "p", conjugate_exponent(self.q))
            elif abs(1.0 / self.p + 1.0 / self.q - 1.0) > 1e-15:
                raise ValidationError("p", f"p={self.p} is not the conjugate of q={self.q}")
        elif self.p is not None:
            raise ValidationError("p", "p is defined only for q > 1")
        if self.alpha * self.lam > 1.0 - self.lam * (1.0 - self.alpha) + CHAIN_TOL:
            raise ValidationError("lambda", "internal: alpha*lambda exceeds 1 - lambda*(1 - alpha)")

    @property
    def node_split(self) -> float:
        """The seam t = 1 - alpha between the two kernel pieces."""
        return 1.0 - self.alpha

    @property
    def first_kink(self) -> float:
        return self.alpha * self.lam

    @property
    def second_kink(self) -> float:
        return 1.0 - self.lam * (1.0 - self.alpha)

    def with_q(self, q: float) -> "RuleParams":
        return make_params(self.alpha, self.lam, q)


def _check_unit(name: str, value: float) -> None:
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise ValidationError(name, f"{name} out of range: need 0 <= {name} <= 1, got {value}")


def conjugate_exponent(q: float) -> float:
    """Hoelder conjugate p = q/(q - 1) for q > 1."""
    if q <= 1.0:
        raise UnsupportedExponentError(f"conjugate exponent undefined for q={q}")
    return q / (q - 1.0)


def make_params(alpha: float, lam: float, q: float = 1.0) -> RuleParams:
    for name, value in (("alpha", alpha), ("lambda", lam), ("q", q)):
        if not math.isfinite(value):
            raise ValidationError(name, f"{name} must be finite, got {value}")
    return RuleParams(float(alpha), float(lam), float(q))


class Regime(str, enum.Enum):
    """Ordering of alpha*lambda, 1 - alpha and 1 - lambda*(1 - alpha).

    R1: al <= 1-a <= 1-l(1-a);  R2: al <= 1-l(1-a) <= 1-a;
    R3: 1-a <= al <= 1-l(1-a).
    """

    R1 = "R1"
    R2 = "R2"
    R3 = "R3"

    def __str__(self):
        return self.value


def regime_chain(params: RuleParams, regime: Regime) -> tuple[float, float, float]:
    """The three quantities of the defining chain of ``regime``, in order."""
    x, s, c = params.first_kink, params.node_split, params.second_kink
    if regime is Regime.R1:
        return (x, s, c)
    if regime is Regime.R2:
        return (x, c, s)
    return (s, x, c)


def classify_regime(params: RuleParams) -> Regime:
    """Return the lowest-numbered regime whose chain holds (to within
    CHAIN_TOL)."""
    x, s, c = params.first_kink, params.node_split, params.second_kink
    t = CHAIN_TOL
    # The slack absorbs rounding in 1 - lambda*(1 - alpha): at lambda = 1 it
    # equals alpha*lambda exactly but can land an ulp below it.
    if x <= s + t and s <= c + t:
        return Regime.R1
    if x <= c + t and c <= s + t:
        return Regime.R2
    return Regime.R3


@dataclass(frozen=True)
class SupWitness:
    value: float
    arg: float
    candidates: tuple[float, ...]


def sup_witness(values: Sequence[float], candidates: Sequence[float]) -> SupWitness:
    """Maximum of ``values``; ties go to the smallest candidate."""
    best = None
    for x, v in zip(candidates, values):
        if best is None or v > best[1] or (v == best[1] and x < best[0]):
            best = (x, v)
    return SupWitness(value=float(best[1]), arg=float(best[0]), candidates=tuple(float(c) for c in candidates))

"""Closed registry of test functions with exact derivatives.

Every member carries f, f', an exact antiderivative and (where it exists)
f''''.  All callables accept scalars or numpy arrays.  Registry keys are
the external names used on the command line: ``pow:<n>``, ``recip``,
``exp``, ``negexp``, ``absshift:<c>``, ``log``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .core import DomainError, Interval, ValidationError

Fn = Callable[[np.ndarray], np.ndarray]

# Half-width of the neighbourhood around a kink that sampling avoids.
KINK_GAP = 1e-12


@dataclass(frozen=True)
class FunctionSpec:
    id: str
    f: Fn
    fprime: Fn
    f4: Optional[Fn] = None
    antiderivative: Optional[Fn] = None
    valid_domain: Callable[[Interval], bool] = lambda iv: True
    convex_on: Callable[[Interval], bool] = lambda iv: False
    kinks: tuple[float, ...] = field(default=())

    def __call__(self, x):
        return self.f(x)

    def require_domain(self, iv: Interval) -> None:
        if not self.valid_domain(iv):
            raise DomainError(f"function {self.id!r} is not defined on {iv}")

    def kinks_in(self, iv: Interval) -> list[float]:
        return [c for c in self.kinks if iv.a < c < iv.b]

    def abs_deriv_pow(self, x, q: float = 1.0):
        """|f'(x)|**q, with points within KINK_GAP of a kink replaced by the
        larger of the two one-sided values."""
        x = np.asarray(x, dtype=float)
        out = np.abs(self.fprime(x)) ** q
        for c in self.kinks:
            near = np.abs(x - c) <= KINK_GAP
            if np.any(near):
                left = np.abs(self.fprime(x[near] - 2 * KINK_GAP)) ** q
                right = np.abs(self.fprime(x[near] + 2 * KINK_GAP)) ** q
                out = np.array(out, dtype=float)
                out[near] = np.maximum(left, right)
        return out if out.ndim else float(out)

    def check_derivative(self, iv: Interval, n: int = 100, rtol: float = 1e-6) -> float:
        """Compare f' with a central difference of f at ``n`` interior points.

        Returns the worst scaled discrepancy; raises if it exceeds ``rtol``.
        The scale is max(1, |f'|) so zeros of f' do not blow up the ratio.
        """
        self.require_domain(iv)
        x = np.linspace(iv.a, iv.b, n + 2)[1:-1]
        for c in self.kinks:
            x = x[np.abs(x - c) > 1e-4 * iv.width]
        h = 1e-6 * np.maximum(1.0, np.abs(x))
        h = np.minimum(h, 0.5 * np.minimum(x - iv.a, iv.b - x))
        fd = (self.f(x + h) - self.f(x - h)) / (2 * h)
        exact = self.fprime(x)
        worst = float(np.max(np.abs(fd - exact) / np.maximum(1.0, np.abs(exact))))
        if worst > rtol:
            raise ValidationError("fprime", f"{self.id}: derivative self-test failed ({worst:.3e} > {rtol})")
        return worst


def _excludes_zero(iv: Interval) -> bool:
    return not (iv.a <= 0.0 <= iv.b)


def power(n: int) -> FunctionSpec:
    if n not in range(2, 7):
        raise ValidationError("n", f"power exponent must be in 2..6, got {n}")
    fall4 = n * (n - 1) * (n - 2) * (n - 3)
    return FunctionSpec(
        id=f"pow:{n}",
        f=lambda x: np.power(x, n),
        fprime=lambda x: n * np.power(x, n - 1),
        f4=lambda x: fall4 * np.power(x, n - 4) if n >= 4 else np.zeros_like(np.asarray(x, dtype=float)),
        antiderivative=lambda x: np.power(x, n + 1) / (n + 1),
        convex_on=lambda iv: n % 2 == 0 or iv.a >= 0.0,
    )


def reciprocal() -> FunctionSpec:
    return FunctionSpec(
        id="recip",
        f=lambda x: 1.0 / np.asarray(x, dtype=float),
        fprime=lambda x: -1.0 / np.square(x),
        f4=lambda x: 24.0 / np.power(x, 5),
        antiderivative=lambda x: np.log(np.abs(x)),
        valid_domain=_excludes_zero,
        convex_on=lambda iv: iv.a > 0.0,
    )


def exponential() -> FunctionSpec:
    return FunctionSpec(
        id="exp",
        f=np.exp,
        fprime=np.exp,
        f4=np.exp,
        antiderivative=np.exp,
        convex_on=lambda iv: True,
    )


def neg_exponential() -> FunctionSpec:
    return FunctionSpec(
        id="negexp",
        f=lambda x: np.exp(-np.asarray(x, dtype=float)),
        fprime=lambda x: -np.exp(-np.asarray(x, dtype=float)),
        f4=lambda x: np.exp(-np.asarray(x, dtype=float)),
        antiderivative=lambda x: -np.exp(-np.asarray(x, dtype=float)),
        convex_on=lambda iv: True,
    )


def abs_shift(c: float) -> FunctionSpec:
    # f' is undefined at c; np.sign gives 0 there, which abs_deriv_pow and
    # the samplers step around.
    return FunctionSpec(
        id=f"absshift:{c!r}",
        f=lambda x: np.abs(np.asarray(x, dtype=float) - c),
        fprime=lambda x: np.sign(np.asarray(x, dtype=float) - c),
        f4=None,
        antiderivative=lambda x: 0.5 * (np.asarray(x, dtype=float) - c) * np.abs(np.asarray(x, dtype=float) - c),
        convex_on=lambda iv: True,
        kinks=(c,),
    )


def logarithm() -> FunctionSpec:
    return FunctionSpec(
        id="log",
        f=np.log,
        fprime=lambda x: 1.0 / np.asarray(x, dtype=float),
        f4=lambda x: -6.0 / np.power(x, 4),
        antiderivative=lambda x: np.asarray(x, dtype=float) * np.log(x) - x,
        valid_domain=lambda iv: iv.a > 0.0,
    )


_SIMPLE = {
    "recip": reciprocal,
    "exp": exponential,
    "negexp": neg_exponential,
    "neg_exp": neg_exponential,
    "log": logarithm,
}

_CACHE: dict[str, FunctionSpec] = {}


def parse_number(text: str) -> float:
    """Decimal literal or simple fraction such as ``1/3``."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise ValidationError("number", f"not a number or fraction: {text!r}") from None


def get_function(key: str) -> FunctionSpec:
    """Look up a registry member by its external key."""
    key = key.strip()
    if key in _CACHE:
        return _CACHE[key]
    name, _, arg = key.partition(":")
    if name == "pow" and arg:
        try:
            n = int(arg)
        except ValueError:
            raise ValidationError("function", f"bad power exponent in {key!r}") from None
        spec = power(n)
    elif name == "absshift" and arg:
        spec = abs_shift(parse_number(arg))
    elif name in _SIMPLE and not arg:
        spec = _SIMPLE[name]()
    else:
        raise ValidationError("function", f"unknown function key {key!r}; known: {', '.join(registry_keys())}")
    spec.check_derivative(Interval(1.0, 2.0) if spec.valid_domain(Interval(1.0, 2.0)) else Interval(0.5, 1.0))
    _CACHE[key] = spec
    return spec


def registry_keys() -> list[str]:
    return [f"pow:{n}" for n in range(2, 7)] + ["recip", "exp", "negexp", "absshift:<c>", "log"]


# Default corpus used by sweeps and the identity suite.
DEFAULT_CORPUS = ("pow:2", "pow:3", "pow:4", "recip", "exp", "absshift:0.5", "log")


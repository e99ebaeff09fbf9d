"""Numerical quasi-convexity check on a uniform grid.

A sampled g is quasi-convex iff every value is at most the larger of the
smallest value to its left and the smallest value to its right, i.e. g
falls to its minimum and then rises.  The O(n) check computes, for every
interior grid point z, the worst excess g(z) - max(g(x), g(y)) over grid
points x < z < y, which is exactly what the cubic brute-force oracle
measures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .core import DomainError, Interval, ValidationError
from .functions import KINK_GAP, FunctionSpec

DEFAULT_SAMPLES = 2001
DEFAULT_TOL = 1e-10
BRUTE_FORCE_MAX = 200


@dataclass(frozen=True)
class QCVerdict:
    holds: bool
    valley_point: Optional[float]
    worst_violation: float
    samples: int


def _grid(iv: Interval, n: int, kinks: Iterable[float]) -> np.ndarray:
    x = np.linspace(iv.a, iv.b, n)
    for c in kinks:
        x[np.abs(x - c) <= KINK_GAP] = c + 2 * KINK_GAP
    return x


def _sample(g, x: np.ndarray) -> np.ndarray:
    try:
        with np.errstate(divide="ignore", invalid="ignore"):
            y = np.asarray(g(x), dtype=float)
        if y.shape != x.shape:
            y = np.array([float(g(t)) for t in x])
    except (ValueError, ZeroDivisionError, FloatingPointError) as exc:
        raise DomainError(f"could not evaluate g on the grid: {exc}") from exc
    if not np.all(np.isfinite(y)):
        raise DomainError("g is not finite on the grid")
    return y


def check_quasiconvex(
    g: Callable,
    iv: Interval,
    n_samples: int = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
    kinks: Iterable[float] = (),
) -> QCVerdict:
    if n_samples < 3:
        raise ValidationError("n_samples", f"need at least 3 samples, got {n_samples}")
    x = _grid(iv, n_samples, kinks)
    y = _sample(g, x)
    prefix = np.minimum.accumulate(y)
    suffix = np.minimum.accumulate(y[::-1])[::-1]
    bound = np.maximum(prefix[:-2], suffix[2:])
    worst = float(max(0.0, np.max(y[1:-1] - bound)))
    valley = float(x[int(np.argmin(y))])
    return QCVerdict(holds=bool(worst <= tol), valley_point=valley, worst_violation=worst, samples=n_samples)


def brute_force_qc(
    g: Callable,
    iv: Interval,
    n: int = BRUTE_FORCE_MAX,
    tol: float = DEFAULT_TOL,
    kinks: Iterable[float] = (),
) -> QCVerdict:
    """Check g(z) <= max(g(x), g(y)) over every grid triple x < z < y."""
    if not 3 <= n <= BRUTE_FORCE_MAX:
        raise ValidationError("n", f"brute force needs 3 <= n <= {BRUTE_FORCE_MAX}, got {n}")
    x = _grid(iv, n, kinks)
    y = _sample(g, x)
    worst = 0.0
    for j in range(1, n - 1):
        # every pair (x_i, x_k) with i < j < k, written out in full
        pair_max = np.maximum.outer(y[:j], y[j + 1 :])
        excess = float(np.max(y[j] - pair_max))
        worst = max(worst, excess)
    valley = float(x[int(np.argmin(y))])
    return QCVerdict(holds=bool(worst <= tol), valley_point=valley, worst_violation=worst, samples=n)


def derivative_power(f: FunctionSpec, q: float) -> Callable:
    """g = |f'|**q, kink-aware."""
    return lambda x: f.abs_deriv_pow(x, q)


def check_derivative_power(
    f: FunctionSpec, iv: Interval, q: float, n_samples: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL
) -> QCVerdict:
    f.require_domain(iv)
    return check_quasiconvex(derivative_power(f, q), iv, n_samples, tol, kinks=f.kinks_in(iv))

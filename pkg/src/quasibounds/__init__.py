"""Error bounds for the generalized three-point quadrature rule under
quasi-convexity of |f'|**q, with a numerical verification harness."""

from .bounds import (
    BoundValue,
    baseline_bounds,
    corollary_crosscheck,
    gamma_upsilon,
    holder_bound,
    power_mean_bound,
    split_holder_bound,
    sup_A,
    sup_B_C,
)
from .core import (
    ConvergenceError,
    DomainError,
    Interval,
    Regime,
    RuleParams,
    SupWitness,
    UnsupportedExponentError,
    ValidationError,
    classify_regime,
    make_params,
)
from .functions import FunctionSpec, get_function
from .quadrature import kernel_identity_residual, reference_integral, rule_value, true_error
from .quasiconvex import brute_force_qc, check_quasiconvex

__version__ = "0.1.0"

__all__ = [
    "baseline_bounds",
    "BoundValue",
    "brute_force_qc",
    "check_quasiconvex",
    "classify_regime",
    "ConvergenceError",
    "corollary_crosscheck",
    "DomainError",
    "FunctionSpec",
    "gamma_upsilon",
    "get_function",
    "holder_bound",
    "Interval",
    "kernel_identity_residual",
    "make_params",
    "power_mean_bound",
    "reference_integral",
    "Regime",
    "rule_value",
    "RuleParams",
    "split_holder_bound",
    "sup_A",
    "sup_B_C",
    "SupWitness",
    "true_error",
    "UnsupportedExponentError",
    "ValidationError",
]

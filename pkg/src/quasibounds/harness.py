"""Parameter sweeps over (function, interval, alpha, lambda, q).

Each tuple yields a :class:`BoundReport` with the true rule error, the
quasi-convexity verdict for |f'|**q and every applicable bound with its
slack and verdict.  Reports come back in the lexicographic order of the
config lists, so output is reproducible byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .bounds import (
    COROLLARY_IDS,
    SIMPSON,
    TRAPEZOID,
    baseline_bounds,
    corollary_crosscheck,
    holder_bound,
    power_mean_bound,
    split_holder_bound,
)
from .core import Interval, QuasiBoundsError, ValidationError, classify_regime, make_params
from .functions import DEFAULT_CORPUS, get_function, parse_number
from .quadrature import DEFAULT_TOL, kernel_identity_residual, mean_value, true_error
from .quasiconvex import QCVerdict, check_derivative_power

log = logging.getLogger(__name__)

SOUND = "SOUND"
VIOLATION = "VIOLATION"
HYPOTHESIS_UNMET = "HYPOTHESIS_UNMET"
SKIPPED = "SKIPPED"
VERDICTS = (SOUND, VIOLATION, HYPOTHESIS_UNMET, SKIPPED)

THEOREM_LABELS = ("thm21", "thm22", "thm23")
BASELINE_LABELS = (
    "base_12",
    "base_13",
    "base_14",
    "base_15",
    "simpson_classical_printed",
    "simpson_classical_standard",
)
BOUND_LABELS = THEOREM_LABELS + BASELINE_LABELS

CSV_COLUMNS = (
    "function",
    "interval_a",
    "interval_b",
    "alpha",
    "lambda",
    "q",
    "regime",
    "qc_holds",
    "true_error",
    "thm21",
    "thm22",
    "thm23",
    "base_12",
    "base_13",
    "base_14",
    "base_15",
    "slack_min",
    "verdict",
)

DEFAULT_GRID = (0.0, 0.25, 1.0 / 3.0, 0.5, 1.0)
DEFAULT_Q = (1.0, 1.5, 2.0)
DEFAULT_INTERVALS = ((0.0, 1.0), (1.0, 2.0), (-1.0, 2.0))
DEFAULT_EXTRAS = ((0.9, 0.9),)
HH_TOL = 1e-12


@dataclass
class SweepConfig:
    functions: list = field(default_factory=lambda: list(DEFAULT_CORPUS))
    intervals: list = field(default_factory=lambda: [Interval(a, b) for a, b in DEFAULT_INTERVALS])
    alpha_grid: list = field(default_factory=lambda: list(DEFAULT_GRID))
    lambda_grid: list = field(default_factory=lambda: list(DEFAULT_GRID))
    q_grid: list = field(default_factory=lambda: list(DEFAULT_Q))
    extra_points: list = field(default_factory=lambda: list(DEFAULT_EXTRAS))
    random_points: int = 0
    tol_violation: float = 1e-9
    integrator_tol: float = DEFAULT_TOL
    seed: int = 0
    qc_samples: int = 2001

    def __post_init__(self):
        for name in ("functions", "intervals", "alpha_grid", "lambda_grid", "q_grid"):
            if not getattr(self, name):
                raise ValidationError(name, f"{name} must be non-empty")
        self.intervals = [iv if isinstance(iv, Interval) else Interval(*map(_num, iv)) for iv in self.intervals]
        self.alpha_grid = [_num(v) for v in self.alpha_grid]
        self.lambda_grid = [_num(v) for v in self.lambda_grid]
        self.q_grid = [_num(v) for v in self.q_grid]
        self.extra_points = [tuple(_num(v) for v in pt) for pt in self.extra_points]
        for q in self.q_grid:
            if q < 1.0:
                raise ValidationError("q_grid", f"q values must be >= 1, got {q}")
        for al, lm in self.param_points():
            make_params(al, lm)
        for key in self.functions:
            get_function(key)

    def param_points(self) -> list[tuple[float, float]]:
        pts = [(al, lm) for al in self.alpha_grid for lm in self.lambda_grid]
        pts += [pt for pt in self.extra_points if pt not in pts]
        if self.random_points:
            rng = np.random.default_rng(self.seed)
            pts += [(float(al), float(lm)) for al, lm in rng.uniform(0.0, 1.0, size=(self.random_points, 2))]
        return pts

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValidationError("config", f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path) -> "SweepConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["intervals"] = [[iv.a, iv.b] for iv in self.intervals]
        d["extra_points"] = [list(pt) for pt in self.extra_points]
        return d


def _num(v) -> float:
    return parse_number(v) if isinstance(v, str) else float(v)


@dataclass
class BoundEntry:
    value: Optional[float]
    slack: Optional[float]
    verdict: str
    reason: str = ""


@dataclass
class BoundReport:
    function: str
    interval: Interval
    alpha: float
    lam: float
    q: float
    regime: Optional[str]
    qc_holds: Optional[bool]
    qc_worst_violation: Optional[float]
    true_error: Optional[float]
    bounds: dict
    error: str = ""

    @property
    def key(self) -> tuple:
        return (self.function, self.interval.a, self.interval.b, self.alpha, self.lam, self.q)

    @property
    def slack_min(self) -> Optional[float]:
        slacks = [self.bounds[k].slack for k in THEOREM_LABELS if self.bounds[k].slack is not None]
        return min(slacks) if slacks else None

    @property
    def verdict(self) -> str:
        """Worst verdict over the theorem bounds."""
        seen = {self.bounds[k].verdict for k in THEOREM_LABELS}
        for v in (VIOLATION, HYPOTHESIS_UNMET, SOUND):
            if v in seen:
                return v
        return SKIPPED

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "interval": [self.interval.a, self.interval.b],
            "alpha": self.alpha,
            "lambda": self.lam,
            "q": self.q,
            "regime": self.regime,
            "qc_holds": self.qc_holds,
            "qc_worst_violation": self.qc_worst_violation,
            "true_error": self.true_error,
            "bounds": {k: asdict(v) for k, v in self.bounds.items()},
            "slack_min": self.slack_min,
            "verdict": self.verdict,
            "error": self.error,
        }


def judge(value: float, err: float, qc_holds: bool, tol: float) -> BoundEntry:
    if not math.isfinite(value):
        return BoundEntry(None, None, VIOLATION, f"non-finite bound value {value!r}")
    slack = value - err
    if slack < -tol:
        return BoundEntry(value, slack, VIOLATION if qc_holds else HYPOTHESIS_UNMET)
    return BoundEntry(value, slack, SOUND)


def _is_point(al: float, lm: float, point: tuple[float, float]) -> bool:
    return abs(al - point[0]) <= 1e-12 and abs(lm - point[1]) <= 1e-12


class _QCCache:
    def __init__(self, n: int):
        self.n = n
        self._store: dict = {}

    def get(self, f, iv, q) -> QCVerdict:
        key = (f.id, iv, q)
        if key not in self._store:
            self._store[key] = check_derivative_power(f, iv, q, self.n)
        return self._store[key]


def _skipped(reason: str) -> dict:
    return {k: BoundEntry(None, None, SKIPPED, reason) for k in BOUND_LABELS}


def evaluate_tuple(
    key: str, iv: Interval, alpha: float, lam: float, q: float, config: SweepConfig, qc_cache: Optional[_QCCache] = None
) -> BoundReport:
    qc_cache = qc_cache or _QCCache(config.qc_samples)
    f = get_function(key)
    if not f.valid_domain(iv):
        return BoundReport(key, iv, alpha, lam, q, None, None, None, None, _skipped("outside domain"), "outside domain")
    try:
        params = make_params(alpha, lam, q)
        regime = classify_regime(params)
        err = true_error(f, iv, params, config.integrator_tol)
        qc = qc_cache.get(f, iv, q)
    except QuasiBoundsError as exc:
        log.warning("tuple %s %s %s %s %s failed: %s", key, iv, alpha, lam, q, exc)
        return BoundReport(key, iv, alpha, lam, q, None, None, None, None, _skipped(str(exc)), str(exc))

    tol = config.tol_violation
    entries = {}
    entries["thm21"] = judge(power_mean_bound(f, iv, params).value, err, qc.holds, tol)
    if q > 1.0:
        entries["thm22"] = judge(holder_bound(f, iv, params).value, err, qc.holds, tol)
        entries["thm23"] = judge(split_holder_bound(f, iv, params).value, err, qc.holds, tol)
    else:
        entries["thm22"] = entries["thm23"] = BoundEntry(None, None, SKIPPED, "needs q > 1")

    on_trap = _is_point(alpha, lam, TRAPEZOID)
    on_simpson = _is_point(alpha, lam, SIMPSON)
    for base in baseline_bounds(f, iv, q):
        target_hit = on_trap if base.target == "trapezoid" else on_simpson
        if not target_hit:
            entries[base.label] = BoundEntry(None, None, SKIPPED, f"applies to the {base.target} rule only")
        elif base.bound is None:
            entries[base.label] = BoundEntry(None, None, SKIPPED, base.reason)
        else:
            if base.label == "base_12":
                hyp = qc_cache.get(f, iv, 1.0).holds
            elif base.target == "simpson":
                hyp = f.f4 is not None
            else:
                hyp = qc.holds
            entries[base.label] = judge(base.bound.value, err, hyp, tol)
    return BoundReport(key, iv, alpha, lam, q, regime.value, qc.holds, qc.worst_violation, err, entries)


@dataclass
class SummaryStats:
    total: int
    counts: dict
    min_slack: dict
    crosschecks: dict
    theorem_violations: int
    baseline_violations: int

    def to_dict(self) -> dict:
        return asdict(self)


def _crosscheck_table(config: SweepConfig) -> dict:
    """Printed/general ratios for every special-rule form over the config's
    valid (function, interval) pairs and q values."""
    table = {}
    for cid in COROLLARY_IDS:
        family = cid.split("-")[0]
        ratios = []
        for key in config.functions:
            f = get_function(key)
            for iv in config.intervals:
                if not f.valid_domain(iv):
                    continue
                qs = [1.0] if cid == "21-q1" else [q for q in config.q_grid if q > 1.0 or family == "21"]
                for q in qs:
                    cc = corollary_crosscheck(cid, f, iv, q)
                    if cc.general > 0.0:
                        ratios.append((cc.ratio, cc.expected_ratio))
        if ratios:
            r = [x for x, _ in ratios]
            table[cid] = {
                "expected_ratio": ratios[0][1],
                "min_ratio": min(r),
                "max_ratio": max(r),
                "max_deviation": max(abs(x - e) for x, e in ratios),
                "count": len(ratios),
            }
    return table


def summarize(reports: list, config: SweepConfig) -> SummaryStats:
    counts = {label: Counter() for label in BOUND_LABELS}
    min_slack = {}
    for rep in reports:
        for label, entry in rep.bounds.items():
            counts[label][entry.verdict] += 1
            if entry.slack is not None and (label not in min_slack or entry.slack < min_slack[label]["slack"]):
                min_slack[label] = {"slack": entry.slack, "witness": list(rep.key)}
    return SummaryStats(
        total=len(reports),
        counts={k: {v: counts[k].get(v, 0) for v in VERDICTS} for k in BOUND_LABELS},
        min_slack=min_slack,
        crosschecks=_crosscheck_table(config),
        theorem_violations=sum(counts[k][VIOLATION] for k in THEOREM_LABELS),
        baseline_violations=sum(counts[k][VIOLATION] for k in BASELINE_LABELS),
    )


def iter_tuples(config: SweepConfig):
    points = config.param_points()
    for key in config.functions:
        for iv in config.intervals:
            for al, lm in points:
                for q in config.q_grid:
                    yield key, iv, al, lm, q


def run_sweep(config: Optional[SweepConfig] = None) -> tuple[list, SummaryStats]:
    config = config or SweepConfig()
    cache = _QCCache(config.qc_samples)
    reports = [evaluate_tuple(*t, config, cache) for t in iter_tuples(config)]
    return reports, summarize(reports, config)


# ---------------------------------------------------------------------------
# Serialization


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, float, np.floating)):
        return repr(float(v))
    return str(v)


def csv_row(rep: BoundReport) -> list:
    row = [
        rep.function,
        rep.interval.a,
        rep.interval.b,
        rep.alpha,
        rep.lam,
        rep.q,
        rep.regime,
        rep.qc_holds,
        rep.true_error,
        *(rep.bounds[k].value for k in ("thm21", "thm22", "thm23", "base_12", "base_13", "base_14", "base_15")),
        rep.slack_min,
        rep.verdict,
    ]
    return [_fmt(v) for v in row]


def to_csv(reports: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        w.writerow(csv_row(rep))
    return buf.getvalue()


def to_json(reports: list, summary: SummaryStats, config: SweepConfig) -> str:
    doc = {
        "config": config.to_dict(),
        "summary": summary.to_dict(),
        "records": [rep.to_dict() for rep in reports],
    }
    return json.dumps(doc, indent=1, allow_nan=False)


# ---------------------------------------------------------------------------
# Identity and Hermite-Hadamard suites


@dataclass(frozen=True)
class IdentityRow:
    function: str
    interval: Interval
    alpha: float
    lam: float
    residual: float


def identity_suite(config: Optional[SweepConfig] = None) -> tuple[list, float]:
    config = config or SweepConfig()
    rows = []
    for key in config.functions:
        f = get_function(key)
        for iv in config.intervals:
            if not f.valid_domain(iv):
                continue
            for al, lm in config.param_points():
                r = kernel_identity_residual(f, iv, make_params(al, lm), config.integrator_tol)
                rows.append(IdentityRow(key, iv, al, lm, r))
    worst = max((row.residual for row in rows), default=0.0)
    return rows, worst


@dataclass(frozen=True)
class HermiteHadamardRow:
    function: str
    interval: Interval
    midpoint_value: float
    mean_value: float
    endpoint_average: float

    @property
    def holds(self) -> bool:
        return (
            self.midpoint_value <= self.mean_value + HH_TOL
            and self.mean_value <= self.endpoint_average + HH_TOL
        )


def hermite_hadamard_suite(config: Optional[SweepConfig] = None) -> list:
    """Midpoint <= mean value <= endpoint average for every convex member."""
    config = config or SweepConfig()
    rows = []
    for key in config.functions:
        f = get_function(key)
        for iv in config.intervals:
            if not (f.valid_domain(iv) and f.convex_on(iv)):
                continue
            mid = float(f.f(iv.midpoint))
            mv = mean_value(f, iv, config.integrator_tol)
            avg = 0.5 * (float(f.f(iv.a)) + float(f.f(iv.b)))
            rows.append(HermiteHadamardRow(key, iv, mid, mv, avg))
    return rows


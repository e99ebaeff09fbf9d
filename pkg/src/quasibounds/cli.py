"""Command-line front end.

Exit codes: 0 success, 1 a checked inequality failed, 2 usage, domain or
validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .bounds import (
    COROLLARY_IDS,
    baseline_bounds,
    corollary_crosscheck,
    holder_bound,
    power_mean_bound,
    split_holder_bound,
    sup_A,
    sup_B_C,
)
from .core import Interval, QuasiBoundsError, classify_regime, make_params
from .functions import get_function, parse_number
from .means import MeanInputs, proposition_bound
from .quadrature import true_error
from .quasiconvex import check_derivative_power

IDENTITY_TOL = 1e-9


def _number(text: str) -> float:
    try:
        return parse_number(text)
    except QuasiBoundsError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _interval_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=_number, required=True, help="lower endpoint")
    p.add_argument("--b", type=_number, required=True, help="upper endpoint")


def cmd_bound(args) -> int:
    f = get_function(args.fn)
    iv = Interval(args.a, args.b)
    params = make_params(args.alpha, args.lam, args.q)
    regime = classify_regime(params)
    err = true_error(f, iv, params)
    qc = check_derivative_power(f, iv, params.q)
    A = sup_A(f, iv, params.q)
    B, C = sup_B_C(f, iv, params)
    _out(f"function      {f.id}")
    _out(f"interval      {iv}")
    _out(f"alpha         {params.alpha!r}")
    _out(f"lambda        {params.lam!r}")
    _out(f"q             {params.q!r}")
    _out(f"regime        {regime}")
    _out(f"qc_holds      {str(qc.holds).lower()}  (worst violation {qc.worst_violation!r})")
    _out(f"sup_A         {A.value!r} at x={A.arg!r}")
    _out(f"sup_B         {B.value!r} at x={B.arg!r}")
    _out(f"sup_C         {C.value!r} at x={C.arg!r}")
    _out(f"true_error    {err!r}")
    _out(f"thm21         {power_mean_bound(f, iv, params).value!r}")
    if params.q > 1.0:
        _out(f"thm22         {holder_bound(f, iv, params).value!r}")
        _out(f"thm23         {split_holder_bound(f, iv, params).value!r}")
    else:
        _out("thm22         (needs q > 1)")
        _out("thm23         (needs q > 1)")
    if args.baselines:
        for base in baseline_bounds(f, iv, params.q):
            shown = repr(base.bound.value) if base.bound else f"({base.reason})"
            _out(f"{base.label:<27s} [{base.target}] {shown}")
    return 0


def cmd_identity(args) -> int:
    if args.grid != "default":
        raise argparse.ArgumentTypeError(f"unknown grid {args.grid!r}")
    rows, worst = harness.identity_suite()
    if args.verbose:
        for row in rows:
            _out(f"{row.function:<14s} {str(row.interval):<12s} {row.alpha!r:<20} {row.lam!r:<20} {row.residual!r}")
    hh = harness.hermite_hadamard_suite()
    _out(f"identity points      {len(rows)}")
    _out(f"max residual         {worst!r}")
    _out(f"hermite-hadamard     {sum(r.holds for r in hh)}/{len(hh)} convex cases hold")
    ok = worst <= IDENTITY_TOL and all(r.holds for r in hh)
    _out("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_sweep(args) -> int:
    config = harness.SweepConfig.from_json(args.config) if args.config else harness.SweepConfig()
    reports, summary = harness.run_sweep(config)
    csv_text = harness.to_csv(reports)
    json_text = harness.to_json(reports, summary, config)
    if args.out:
        out = Path(args.out)
        out.write_text(csv_text)
        json_path = Path(args.json) if args.json else out.with_suffix(".json")
        json_path.write_text(json_text)
        _out(f"wrote {out} and {json_path}")
    else:
        sys.stdout.write(csv_text)
    stream = sys.stderr if not args.out else sys.stdout
    print(f"tuples {summary.total}", file=stream)
    for label, counts in summary.counts.items():
        print(f"{label:<27s} " + " ".join(f"{k}={v}" for k, v in counts.items()), file=stream)
    print(f"theorem violations {summary.theorem_violations}", file=stream)
    print(f"baseline violations {summary.baseline_violations}", file=stream)
    return 0 if summary.theorem_violations == 0 else 1


def cmd_corollaries(args) -> int:
    f = get_function(args.fn)
    iv = Interval(args.a, args.b)
    _out(f"{'id':<12s} {'alpha':>6s} {'lambda':>8s} {'q':>5s} {'printed':>22s} {'general':>22s} {'ratio':>20s}  status")
    for cid in COROLLARY_IDS:
        cc = corollary_crosscheck(cid, f, iv, args.q)
        status = "ok" if cc.consistent else ("known discrepancy" if cc.matches_expected else "MISMATCH")
        _out(
            f"{cid:<12s} {cc.alpha:>6.4g} {cc.lam:>8.4g} {cc.q:>5.4g} {cc.printed!r:>22} {cc.general!r:>22} "
            f"{cc.ratio!r:>20}  {status}"
        )
        if cc.note:
            _out(f"{'':<12s} note: {cc.note}")
    return 0


def cmd_means(args) -> int:
    params = make_params(args.alpha, args.lam, args.q)
    rep = proposition_bound(args.prop, MeanInputs(args.a, args.b, params.alpha, args.n), params)
    _out(f"proposition   {rep.which}")
    _out(f"regime        {rep.regime}")
    for k, v in rep.constants.items():
        _out(f"{k:<13s} {v!r}")
    _out(f"lhs           {rep.lhs!r}")
    _out(f"bound         {rep.bound!r}")
    _out(f"generic       {rep.generic_bound!r}")
    _out(f"slack         {rep.slack!r}")
    _out(f"qc_holds      {str(rep.qc.holds).lower()}")
    return 0 if rep.slack >= -1e-9 and rep.paths_agree else 1


def cmd_qc(args) -> int:
    f = get_function(args.fn)
    v = check_derivative_power(f, Interval(args.a, args.b), args.q, args.samples)
    _out(f"g             |{f.id}'|^{args.q!r}")
    _out(f"holds         {str(v.holds).lower()}")
    _out(f"valley_point  {v.valley_point!r}")
    _out(f"worst         {v.worst_violation!r}")
    _out(f"samples       {v.samples}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasibounds", description="Three-point rule error bounds under quasi-convexity"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="true error and the three bound families at one point")
    p.add_argument("--fn", required=True)
    _interval_args(p)
    p.add_argument("--alpha", type=_number, required=True)
    p.add_argument("--lambda", dest="lam", type=_number, required=True)
    p.add_argument("--q", type=_number, default=1.0)
    p.add_argument("--baselines", action="store_true", help="also print the literature baselines")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("identity", help="kernel identity residuals and Hermite-Hadamard check")
    p.add_argument("--grid", default="default", choices=["default"])
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("sweep", help="parameter sweep to CSV + JSON")
    p.add_argument("--config", help="JSON file mirroring SweepConfig")
    p.add_argument("--out", help="CSV output path (JSON written alongside)")
    p.add_argument("--json", help="explicit JSON output path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("corollaries", help="printed special-rule forms versus the general bounds")
    p.add_argument("--fn", default="exp")
    p.add_argument("--a", type=_number, default=0.0)
    p.add_argument("--b", type=_number, default=1.0)
    p.add_argument("--q", type=_number, default=2.0)
    p.set_defaults(func=cmd_corollaries)

    p = sub.add_parser("means", help="special-means propositions")
    p.add_argument("--prop", required=True, choices=["P1", "P2", "P3", "P4"])
    _interval_args(p)
    p.add_argument("--alpha", type=_number, required=True)
    p.add_argument("--lambda", dest="lam", type=_number, required=True)
    p.add_argument("--q", type=_number, default=1.0)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_means)

    p = sub.add_parser("qc", help="quasi-convexity check of |f'|^q")
    p.add_argument("--fn", required=True)
    _interval_args(p)
    p.add_argument("--q", type=_number, default=1.0)
    p.add_argument("--samples", type=int, default=2001)
    p.set_defaults(func=cmd_qc)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QuasiBoundsError, argparse.ArgumentTypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""
Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage or domain error.
"""

import argparse
import math
import sys

from sievekit.arithmetic import build_sieve, singular_series
from sievekit.counting import CountQuery, count_representations, scan_grid, sift_weighted
from sievekit.delta import PAPER_LAMBDA, DeltaParams, Mode, delta_pair, find_threshold, main_term_bound
from sievekit.errors import SievekitError
from sievekit.output import OutputSpec, emit
from sievekit.quadrature import QuadratureConfig
from sievekit.sieve_functions import eval_f, eval_F
from sievekit.verify import run_verification

DELTA_COLUMNS = ["mode", "param", "lambda", "delta_a", "delta_b", "margin", "error_bound"]
COUNT_COLUMNS = ["N", "mode", "param", "r", "count", "predicted", "ratio"]
SIFT_COLUMNS = ["N", "z", "s1", "s2", "weighted", "d13", "exceptions", "holds"]
EVAL_COLUMNS = ["function", "s", "value", "error_bound", "branch"]
THRESHOLD_COLUMNS = ["mode", "lambda", "threshold", "margin_at_threshold", "iterations",
                     "bracket_width"]
BOUND_COLUMNS = ["N", "mode", "param", "lambda", "C_N", "bound"]
SERIES_COLUMNS = ["N", "value", "twin_constant", "truncation_prime", "tail_bound"]
VERIFY_COLUMNS = ["name", "claimed", "computed", "pass"]


class UsageError(Exception):
    """Bad flag combination detected after argparse."""


def _global_flags(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = parser.add_argument_group("output and numerics")
    g.add_argument("--format", choices=["table", "csv", "json"], default=d("table"))
    g.add_argument("--out", metavar="PATH", default=d(None),
                   help="write records here instead of standard output")
    g.add_argument("--precision", type=int, metavar="N", default=d(10),
                   help="significant digits of printed reals (default 10)")
    g.add_argument("--tol", type=float, metavar="X", default=d(1e-10),
                   help="absolute and relative quadrature tolerance (default 1e-10)")
    g.add_argument("--lambda", dest="lam", type=float, metavar="X", default=d(PAPER_LAMBDA),
                   help=f"sieve level, z = N^(1/lambda) (default {PAPER_LAMBDA})")
    g.add_argument("--exploratory", action="store_true", default=d(False),
                   help="allow lambda other than the default in Δ formulas")
    g.add_argument("--quick", action="store_true", default=d(False),
                   help="verify: shorter counting range")


def _exponent_flags(parser, required):
    grp = parser.add_mutually_exclusive_group(required=required)
    grp.add_argument("--theta", type=float, help="small primes: p <= N^theta")
    grp.add_argument("--kappa", type=float, help="short interval: |p - N/2| <= N^kappa")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sievekit",
        description="Linear-sieve functions, Δ margins and exact N - p = P_r counts.",
    )
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        _global_flags(p, suppress=True)
        return p

    p = add("eval", "evaluate F(s) or f(s)")
    p.add_argument("function", choices=["F", "f"])
    p.add_argument("--s", type=float, required=True)

    p = add("delta", "Δ pair and margin for one theta or kappa")
    _exponent_flags(p, required=True)

    p = add("threshold", "bisect for the exponent where the margin vanishes")
    p.add_argument("--mode", required=True,
                   choices=["small-primes", "short-interval", "small_primes", "short_interval"])

    p = add("bound", "main term of the lower bound for the P3 count")
    p.add_argument("--n", type=int, required=True)
    _exponent_flags(p, required=True)
    p.add_argument("--cn", type=float, help="C(N); computed when omitted")

    p = add("count", "exact number of p with N - p a P_r")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=3)
    _exponent_flags(p, required=False)
    p.add_argument("--include-unit", action="store_true", help="count N - p = 1 as a P_r")

    p = add("sift", "exact weighted sifting sums S1 - S2/2 against the P3 count")
    p.add_argument("--n", type=int, required=True)
    _exponent_flags(p, required=False)

    p = add("series", "singular series C(N)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--truncation", type=int, default=10**8)

    p = add("scan", "count over a list or range of N")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n-list", help="comma-separated N values")
    src.add_argument("--n-range", nargs=3, type=int, metavar=("START", "STOP", "STEP"),
                     help="N in range(START, STOP + 1, STEP)")
    p.add_argument("--r", type=int, default=3)
    _exponent_flags(p, required=False)
    p.add_argument("--include-unit", action="store_true")
    p.add_argument("--workers", type=int, default=1)

    p = add("verify", "reproduce the numerical claims; exit 1 on any failure")
    p.add_argument("--inject-gamma-fault", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def _mode_param(args, default_theta=None):
    if getattr(args, "theta", None) is not None:
        return Mode.SMALL_PRIMES, args.theta
    if getattr(args, "kappa", None) is not None:
        return Mode.SHORT_INTERVAL, args.kappa
    if default_theta is not None:
        return Mode.SMALL_PRIMES, default_theta
    return Mode.FULL, None


def _count_record(rep):
    q = rep.query
    return {"N": q.N, "mode": q.mode.value, "param": q.param, "r": q.r, "count": rep.count,
            "predicted": rep.predicted_main_term, "ratio": rep.ratio}


def _sieve_for(N, mode, param):
    if mode is Mode.SMALL_PRIMES:
        return build_sieve(max(math.isqrt(N) + 1, min(N, math.floor(N ** param)) + 1, 2))
    return build_sieve(max(N, 2))


def cmd_eval(args, cfg):
    fn = eval_F if args.function == "F" else eval_f
    v = fn(args.s, cfg)
    return [{"function": args.function, "s": v.s, "value": v.value,
             "error_bound": v.error_bound, "branch": v.branch.value}], EVAL_COLUMNS, 0


def cmd_delta(args, cfg):
    mode, x = _mode_param(args)
    d = delta_pair(DeltaParams(mode, x, args.lam, args.exploratory), cfg)
    return [{"mode": mode.value, "param": x, "lambda": args.lam, "delta_a": d.delta_a,
             "delta_b": d.delta_b, "margin": d.margin, "error_bound": d.error_bound}], \
        DELTA_COLUMNS, 0


def cmd_threshold(args, cfg):
    t = find_threshold(args.mode, args.lam, cfg, exploratory=args.exploratory)
    return [{"mode": t.mode.value, "lambda": args.lam, "threshold": t.threshold,
             "margin_at_threshold": t.margin_at_threshold, "iterations": t.iterations,
             "bracket_width": t.bracket_width}], THRESHOLD_COLUMNS, 0


def cmd_bound(args, cfg):
    mode, x = _mode_param(args)
    params = DeltaParams(mode, x, args.lam, args.exploratory)
    C_N = args.cn if args.cn is not None else singular_series(args.n).value
    b = main_term_bound(args.n, params, C_N, cfg)
    return [{"N": args.n, "mode": mode.value, "param": x, "lambda": args.lam,
             "C_N": C_N, "bound": b}], BOUND_COLUMNS, 0


def cmd_count(args, cfg):
    mode, x = _mode_param(args)
    q = CountQuery(args.n, args.r, mode, x, args.include_unit)
    rep = count_representations(q, _sieve_for(args.n, mode, x), cfg)
    return [_count_record(rep)], COUNT_COLUMNS, 0


def cmd_sift(args, cfg):
    mode, x = _mode_param(args, default_theta=1.0)
    params = DeltaParams(mode, x, args.lam, exploratory=args.lam != PAPER_LAMBDA)
    rep = sift_weighted(args.n, params, _sieve_for(args.n, mode, x))
    return [{"N": rep.N, "z": rep.z, "s1": rep.s1, "s2": rep.s2, "weighted": rep.weighted,
             "d13": rep.d13, "exceptions": rep.exceptions, "holds": rep.holds}], \
        SIFT_COLUMNS, 0


def cmd_series(args, cfg):
    r = singular_series(args.n, args.truncation)
    return [{"N": r.N, "value": r.value, "twin_constant": r.twin_constant,
             "truncation_prime": r.truncation_prime, "tail_bound": r.tail_bound}], \
        SERIES_COLUMNS, 0


def cmd_scan(args, cfg):
    if args.n_list is not None:
        try:
            Ns = [int(t) for t in args.n_list.split(",") if t.strip()]
        except ValueError:
            raise UsageError(f"--n-list must be comma-separated integers, got {args.n_list!r}")
    else:
        start, stop, step = args.n_range
        if step <= 0:
            raise UsageError("--n-range STEP must be positive")
        Ns = list(range(start, stop + 1, step))
    mode, x = _mode_param(args)
    template = CountQuery(6, args.r, mode, x, args.include_unit)
    top = max([N for N in Ns if N >= 2], default=2)
    results = scan_grid(Ns, template, build_sieve(top), cfg, workers=args.workers)
    records, status = [], 0
    for N, res in zip(Ns, results):
        if isinstance(res, SievekitError):
            print(f"sievekit: scan N={N}: {res}", file=sys.stderr)
            status = 2
            continue
        records.append(_count_record(res))
    return records, COUNT_COLUMNS, status


def cmd_verify(args, cfg):
    report = run_verification(args.quick, cfg, gamma_fault=args.inject_gamma_fault)
    records = [{"name": c.name, "claimed": c.claimed, "computed": c.computed, "pass": c.passed}
               for c in report.checks]
    records.append({"name": "overall", "claimed": "all checks pass", "computed": None,
                    "pass": report.overall})
    return records, VERIFY_COLUMNS, 0 if report.overall else 1


COMMANDS = {
    "eval": cmd_eval,
    "delta": cmd_delta,
    "threshold": cmd_threshold,
    "bound": cmd_bound,
    "count": cmd_count,
    "sift": cmd_sift,
    "series": cmd_series,
    "scan": cmd_scan,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = OutputSpec(args.format, args.out, args.precision)
        cfg = QuadratureConfig(abs_tol=args.tol, rel_tol=args.tol)
        records, columns, status = COMMANDS[args.command](args, cfg)
    except (SievekitError, UsageError, ValueError) as exc:
        print(f"sievekit {args.command}: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure; keep the exit-code contract
        print(f"sievekit {args.command}: internal error: {exc!r}", file=sys.stderr)
        return 2
    emit(records, columns, spec)
    return status


if __name__ == "__main__":
    sys.exit(main())

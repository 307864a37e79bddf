"""Command line front end.

Subcommands: z (partition function), profile (boundary one-point
profile), validate (cross-route checks), bench (route timings).  Floats
are emitted with 17 significant digits so identical inputs reproduce
byte-identical output.

Exit codes: 0 success / checks passed, 1 validation failure, 2 bad or
degenerate parameters, 3 size cap exceeded.
"""
from __future__ import annotations

import argparse
import itertools
import json
import math
import statistics
import sys
import time

from .determinants import tsuchiya_z
from .errors import (
    SamplingExhaustedError,
    SingularParameterError,
    SingularWeightError,
    SizeCapError,
)
from .lattice_oracle import enumerate_z, partition_oracle
from .onepoint import METHODS, f_det, f_perm, profile
from .params import EPS_GENERIC, ModelParams, random_generic, require_generic
from .validation import run_checks

Z_METHODS = ("oracle", "tsuchiya", "enumerate")
BENCH_METHODS = ("perm", "det")


class ParamUsageError(ValueError):
    """Inconsistent or incomplete parameter flags."""


def _fmt(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(float(x), ".17g")


def _to_json(obj) -> str:
    if isinstance(obj, dict):
        return "{" + ", ".join(
            f"{json.dumps(k)}: {_to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return _fmt(obj)
    if isinstance(obj, int):
        return str(obj)
    return json.dumps(obj)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _float_list(s: str):
    try:
        return tuple(float(x) for x in s.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad float list {s!r}") from exc


def _int_list(s: str):
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad int list {s!r}") from exc


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--params", metavar="FILE",
                   help="JSON file with keys n, eta, zeta_plus, lambdas, nus")
    p.add_argument("--n", type=int, help="number of columns")
    p.add_argument("--seed", type=int, help="sample generic parameters with this seed")
    p.add_argument("--eta", type=float)
    p.add_argument("--zeta-plus", dest="zeta_plus", type=float)
    p.add_argument("--lambdas", type=_float_list, metavar="X,Y,..")
    p.add_argument("--nus", type=_float_list, metavar="X,Y,..")
    p.add_argument("--eps", type=float, default=EPS_GENERIC,
                   help="genericity threshold (default %(default)g)")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")


def _resolve_params(args) -> ModelParams:
    inline = (args.eta, args.zeta_plus, args.lambdas, args.nus)
    if args.params:
        if args.seed is not None or any(v is not None for v in inline):
            raise ParamUsageError("--params conflicts with other parameter flags")
        with open(args.params) as fh:
            p = ModelParams.from_json(fh.read())
        require_generic(p, eps=args.eps)
        return p
    if all(v is not None for v in inline):
        n = args.n if args.n is not None else len(args.lambdas)
        p = ModelParams(n=n, eta=args.eta, zeta_plus=args.zeta_plus,
                        lambdas=args.lambdas, nus=args.nus)
        require_generic(p, eps=args.eps)
        return p
    if any(v is not None for v in inline):
        raise ParamUsageError("give all of --eta --zeta-plus --lambdas --nus")
    if args.n is not None and args.seed is not None:
        return random_generic(args.n, seed=args.seed, eps=args.eps)
    raise ParamUsageError(
        "give --params FILE, or --n with --seed, or --eta --zeta-plus --lambdas --nus")


def _rel_gap(a: float, b: float) -> float:
    den = max(abs(a), abs(b))
    return 0.0 if den == 0.0 else abs(a - b) / den


def cmd_z(args) -> int:
    params = _resolve_params(args)
    methods = tuple(dict.fromkeys(args.method)) if args.method else ("oracle", "tsuchiya")
    compute = {"oracle": partition_oracle, "tsuchiya": tsuchiya_z,
               "enumerate": enumerate_z}
    values = [(m, compute[m](params)) for m in methods]
    gap = max((_rel_gap(a, b) for (_, a), (_, b) in
               itertools.combinations(values, 2)), default=0.0)
    if args.format == "csv":
        lines = ["method,value"]
        lines += [f"{m},{_fmt(v)}" for m, v in values]
        lines.append(f"max_rel_gap,{_fmt(gap)}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        doc = {"command": "z", "params": params.to_dict(),
               "results": [{"method": m, "value": v} for m, v in values],
               "max_rel_gap": gap}
        _emit(_to_json(doc) + "\n", args.out)
    return 0


def cmd_profile(args) -> int:
    params = _resolve_params(args)
    prof = profile(params, method=args.method)
    if args.format == "csv":
        lines = ["M,value"]
        lines += [f"{m},{_fmt(v)}" for m, v in enumerate(prof.values, start=1)]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        doc = {"command": "profile", "method": prof.method,
               "params": params.to_dict(), "values": list(prof.values),
               "normalization_gap": prof.normalization_gap}
        _emit(_to_json(doc) + "\n", args.out)
    return 0


def cmd_validate(args) -> int:
    results = run_checks(args.n, trials=args.trials, seed=args.seed, tol=args.tol)
    for r in results:
        line = (f"{'PASS' if r.passed else 'FAIL'} {r.name:<16} "
                f"worst={r.worst:.3e} threshold={r.threshold:.1e}")
        if r.detail:
            line += f"  [{r.detail}]"
        print(line)
    npass = sum(r.passed for r in results)
    print(f"{npass}/{len(results)} checks passed")
    return 0 if npass == len(results) else 1


def cmd_bench(args) -> int:
    fns = {"perm": f_perm, "det": f_det}
    lines = ["n,method,median_ns,terms"]
    for n in args.sizes:
        params = random_generic(n, seed=args.seed)
        for meth in args.methods:
            times = []
            for _ in range(args.repeats):
                t0 = time.perf_counter_ns()
                fns[meth](params, 1)
                times.append(time.perf_counter_ns() - t0)
            terms = 2 ** (n - 1)
            if meth == "perm":
                terms *= math.factorial(n - 1)
            lines.append(f"{n},{meth},{int(statistics.median(times))},{terms}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svreflect",
        description="Exact six-vertex evaluation with one reflecting end")
    sub = parser.add_subparsers(dest="command", required=True)

    p_z = sub.add_parser("z", help="partition function by one or more routes")
    _add_param_flags(p_z)
    p_z.add_argument("--method", action="append", choices=Z_METHODS,
                     help="repeatable; default oracle + tsuchiya")
    _add_output_flags(p_z)
    p_z.set_defaults(func=cmd_z)

    p_p = sub.add_parser("profile", help="boundary one-point profile F(1..n)")
    _add_param_flags(p_p)
    p_p.add_argument("--method", choices=METHODS, default="ratio-det")
    _add_output_flags(p_p)
    p_p.set_defaults(func=cmd_profile)

    p_v = sub.add_parser("validate", help="cross-route consistency checks")
    p_v.add_argument("--n", type=int, default=4)
    p_v.add_argument("--trials", type=int, default=5)
    p_v.add_argument("--seed", type=int, default=0)
    p_v.add_argument("--tol", type=float, default=None,
                     help="override every per-check threshold")
    p_v.set_defaults(func=cmd_validate)

    p_b = sub.add_parser("bench", help="time the one-point routes (CSV)")
    p_b.add_argument("--sizes", type=_int_list, default=(2, 3, 4, 5), metavar="N,N,..")
    p_b.add_argument("--methods", type=lambda s: tuple(s.split(",")),
                     default=BENCH_METHODS, metavar="perm,det")
    p_b.add_argument("--seed", type=int, default=0)
    p_b.add_argument("--repeats", type=int, default=5)
    p_b.add_argument("--out", metavar="FILE")
    p_b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParamUsageError, SingularParameterError, SingularWeightError,
            SamplingExhaustedError, FileNotFoundError, KeyError,
            json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface: reproducible experiments emitting CSV or JSON.

Subcommands
-----------
summary   truncated summary coefficients, optionally evaluated at n
pdf       approximate and exact densities on an evaluation grid
compare   maximum interval-probability error of a model vs the exact CDF
moment    one sample-mean moment as a polynomial in 1/n
mc        Monte Carlo vs exact-CDF validation (Kolmogorov-Smirnov)

Every command is deterministic given its flags (including --seed); errors go
to stderr with a nonzero exit code, never interleaved with data.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import delta, edgeworth, exact, metrics
from .errors import DegenerateStatisticError, DomainError, NumericError, UsageError
from .moments import pearson_cumulants, sample_mean_moment

_TRANSFORMS = ("identity", "arctanh", "basic-fisher")


def _fmt(value) -> str:
    return format(float(value), ".17g")


def _add_common(p, *, need_n=True, need_rho=True):
    if need_n:
        p.add_argument("--n", type=int, required=True, help="sample size")
    if need_rho:
        p.add_argument("--rho", type=float, required=True, help="population correlation")
    p.add_argument("--format", choices=("csv", "json"), default=None, help="output format")
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def _add_model_flags(p):
    p.add_argument("--transform", choices=_TRANSFORMS, default="arctanh")
    p.add_argument("--no-gamma3", action="store_true", help="drop the skewness term")
    p.add_argument("--no-gamma4", action="store_true", help="drop the kurtosis term")


def _add_grid_flags(p):
    p.add_argument("--grid", type=int, default=metrics.DEFAULT_POINTS, help="grid points")
    p.add_argument("--clip", type=float, default=metrics.DEFAULT_CLIP, help="boundary clip")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgeworth-lab",
        description="Edgeworth-series approximations for the sample correlation coefficient",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summary", help="summary coefficients of a transform")
    p.add_argument("--n", type=int, default=None, help="evaluate m, V, gamma3, gamma4 at n")
    _add_common(p, need_n=False)
    _add_model_flags(p)

    p = sub.add_parser("pdf", help="approximate and exact densities on a grid")
    _add_common(p)
    _add_model_flags(p)
    _add_grid_flags(p)

    p = sub.add_parser("compare", help="maximum interval error vs the exact CDF")
    _add_common(p)
    _add_model_flags(p)
    _add_grid_flags(p)

    p = sub.add_parser("moment", help="sample-mean moment as a polynomial in 1/n")
    _add_common(p, need_n=False)
    p.add_argument(
        "--index",
        required=True,
        help="comma-separated exponents of the five deviation variables, e.g. 2,1,1,0,0",
    )

    p = sub.add_parser("mc", help="Monte Carlo vs exact-CDF validation")
    _add_common(p)
    p.add_argument("--reps", type=int, default=100_000, help="Monte Carlo replicates")
    p.add_argument("--seed", type=int, default=20_250_809, help="RNG seed (uint64)")
    _add_grid_flags(p)

    return parser


def _config_echo(args) -> dict:
    skip = {"out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload: dict):
    payload = dict(payload)
    payload["config"] = _config_echo(args)
    _emit(args, json.dumps(payload, indent=2) + "\n")


def _model_label(args) -> str:
    if args.transform == "basic-fisher":
        return "basic-fisher"
    label = f"{args.transform}-edgeworth"
    if args.no_gamma3:
        label += "-no-gamma3"
    if args.no_gamma4:
        label += "-no-gamma4"
    return label


def _warn_basic_fisher(args):
    if args.transform == "basic-fisher" and (args.no_gamma3 or args.no_gamma4):
        print(
            "warning: basic-fisher has no Edgeworth terms; ignoring --no-gamma3/--no-gamma4",
            file=sys.stderr,
        )


def _approx_pdf_callable(args, stats):
    if args.transform == "basic-fisher":
        return lambda r: edgeworth.basic_fisher_pdf_r(args.n, args.rho, r)
    model = edgeworth.build_model(
        stats,
        args.n,
        delta.make_transform(args.transform, args.rho),
        include_gamma3=not args.no_gamma3,
        include_gamma4=not args.no_gamma4,
    )
    return lambda r: edgeworth.approx_pdf_r(model, r)


def cmd_summary(args) -> int:
    if args.transform == "basic-fisher":
        raise UsageError(
            "summary coefficients are defined for 'identity' and 'arctanh'; "
            "use 'compare' or 'pdf' for the basic-fisher baseline"
        )
    stats = delta.pearson_summary(args.rho, args.transform)
    record = {
        "transform": args.transform,
        "m0": stats.m0,
        "m1": stats.m1,
        "v1": stats.v1,
        "v2": stats.v2,
        "g3coef": stats.g3coef,
        "g4coef": stats.g4coef,
    }
    if args.n is not None:
        model = edgeworth.build_model(
            stats,
            args.n,
            delta.make_transform(args.transform, args.rho),
            include_gamma3=not args.no_gamma3,
            include_gamma4=not args.no_gamma4,
        )
        record.update(m=model.m, V=model.v, gamma3=model.gamma3, gamma4=model.gamma4)
    if (args.format or "json") == "json":
        _emit_json(args, record)
    else:
        keys = list(record)
        lines = [",".join(keys)]
        lines.append(",".join(record[k] if isinstance(record[k], str) else _fmt(record[k]) for k in keys))
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_pdf(args) -> int:
    _warn_basic_fisher(args)
    stats = None
    if args.transform != "basic-fisher":
        stats = delta.pearson_summary(args.rho, args.transform)
    approx = _approx_pdf_callable(args, stats)
    if args.grid < 2:
        raise UsageError("the evaluation grid needs at least two points")
    if not 0.0 < args.clip <= 1e-4:
        raise UsageError("clip must lie in (0, 1e-4]")
    r = np.linspace(-1.0 + args.clip, 1.0 - args.clip, args.grid)
    approx_pdf = np.asarray(approx(r), dtype=float)
    exact_pdf = exact.hotelling_pdf_r(args.n, args.rho, r)
    if (args.format or "csv") == "csv":
        lines = ["r,approx_pdf,exact_pdf"]
        for i in range(r.size):
            lines.append(f"{_fmt(r[i])},{_fmt(approx_pdf[i])},{_fmt(exact_pdf[i])}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit_json(
            args,
            {
                "model": _model_label(args),
                "r": [float(v) for v in r],
                "approx_pdf": [float(v) for v in approx_pdf],
                "exact_pdf": [float(v) for v in exact_pdf],
            },
        )
    return 0


def cmd_compare(args) -> int:
    _warn_basic_fisher(args)
    stats = None
    if args.transform != "basic-fisher":
        stats = delta.pearson_summary(args.rho, args.transform)
    approx = _approx_pdf_callable(args, stats)
    approx_cdf = metrics.cdf_on_grid(approx, points=args.grid, clip=args.clip)
    exact_cdf = metrics.cdf_on_grid(
        lambda r: exact.hotelling_pdf_r(args.n, args.rho, r),
        points=args.grid,
        clip=args.clip,
    )
    error, a, b = metrics.max_interval_error(approx_cdf, exact_cdf)
    _emit_json(
        args,
        {"model": _model_label(args), "max_interval_error": error, "a": a, "b": b},
    )
    return 0


def cmd_moment(args) -> int:
    try:
        idx = tuple(int(part) for part in args.index.split(","))
    except ValueError:
        raise UsageError("--index must be comma-separated integers") from None
    if len(idx) != 5:
        raise UsageError("the correlation tables have five variables; give five exponents")
    if any(e < 0 for e in idx):
        raise UsageError("exponents must be non-negative")
    if sum(idx) > 6:
        raise UsageError("moment order above 6 is not supported")
    poly = sample_mean_moment(pearson_cumulants(args.rho), idx)
    coeffs = {}
    for half_power, coeff in sorted(poly.terms.items()):
        if half_power % 2:
            raise NumericError("sample-mean moments should carry whole 1/n powers")
        coeffs[str(half_power // 2)] = float(coeff)
    if (args.format or "json") == "json":
        _emit_json(args, {"index": list(idx), "coefficients": coeffs})
    else:
        lines = ["power_of_inv_n,coefficient"]
        for power, coeff in coeffs.items():
            lines.append(f"{power},{_fmt(coeff)}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_mc(args) -> int:
    cfg = exact.McConfig(n=args.n, rho=args.rho, replicates=args.reps, seed=args.seed)
    sample = exact.mc_sample_r(cfg)
    reference = metrics.cdf_on_grid(
        lambda r: exact.hotelling_pdf_r(args.n, args.rho, r),
        points=args.grid,
        clip=args.clip,
    )
    ks = metrics.ks_distance(sample, reference)
    _emit_json(args, {"ks_distance": ks, "replicates": cfg.replicates, "seed": cfg.seed})
    return 0


_COMMANDS = {
    "summary": cmd_summary,
    "pdf": cmd_pdf,
    "compare": cmd_compare,
    "moment": cmd_moment,
    "mc": cmd_mc,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, DomainError, DegenerateStatisticError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line entry point.

Exit status: 0 when every check passed, 1 when a campaign recorded a
failure (the report is still written), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from . import lab
from .clique import max_clique_order
from .core import (
    compress,
    compress_sweep,
    compress_to_fixpoint,
    make_colex_graph,
    read_hypergraphs,
)
from .errors import HyperlagError
from .solver import SolverOptions, maximize, oracle_maximize


class UsageError(Exception):
    pass


@contextmanager
def _open_in(path):
    if path == "-":
        yield sys.stdin
    else:
        try:
            fh = open(path)
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from exc
        with fh:
            yield fh


@contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _graphs(path):
    with _open_in(path) as fh:
        graphs = list(read_hypergraphs(fh))
    if not graphs:
        raise UsageError(f"no hypergraphs in {path}")
    return graphs


def _opts(args) -> SolverOptions:
    return SolverOptions(seed=args.seed, restarts=args.restarts)


# ---------------------------------------------------------------- handlers


def cmd_colex_gen(args, out):
    out.write(make_colex_graph(args.r, args.m).dumps() + "\n")
    return 0


def cmd_solve(args, out):
    opts = _opts(args)
    for G in _graphs(args.input):
        res = oracle_maximize(G, args.depth, opts) if args.oracle else maximize(G, opts)
        out.write(json.dumps(res.to_record()) + "\n")
    return 0


def cmd_clique(args, out):
    for G in _graphs(args.input):
        res = max_clique_order(G)
        out.write(json.dumps({"order": res.order, "witness": list(res.witness)}) + "\n")
    return 0


def cmd_compress(args, out):
    for G in _graphs(args.input):
        if args.pair:
            H = compress(G, *args.pair)
        elif args.to_fixpoint:
            H = compress_to_fixpoint(G)
        else:
            H = compress_sweep(G)
        out.write(H.dumps() + "\n")
    return 0


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"verify {args.campaign} needs " + ", ".join("--" + n for n in missing))


def _campaign(args) -> lab.Report:
    opts = _opts(args)
    c = args.campaign
    common = dict(opts=opts, workers=args.workers)
    if c == "ms":
        return lab.verify_motzkin_straus(args.n or 5, args.tol, budget=args.budget, **common)
    if c == "ff":
        _need(args, "r", "n", "m")
        return lab.verify_frankl_furedi(args.r, args.n, args.m, args.tol, budget=args.budget,
                                        **common)
    if c == "plateau":
        _need(args, "r", "t")
        return lab.verify_colex_plateau(args.r, args.t, args.tol, **common)
    if c == "dichotomy":
        _need(args, "r", "t")
        return lab.verify_clique_dichotomy(args.r, args.t, args.tol, args.budget, **common)
    if c == "nbhd":
        _need(args, "r", "t")
        return lab.verify_neighborhood_dichotomy(args.r, args.t, budget=args.budget, **common)
    if c == "bounds":
        r = args.r or 4
        if args.scan_t is not None:
            return lab.verify_bounds(r, args.scan_t)
        _need(args, "t")
        return lab.verify_bounds(r, args.t, t_min=args.t)
    if c == "ineq":
        return lab.check_power_inequality(args.r_min, args.r_max, args.t_max)
    if c == "compress-mono":
        corpus = _graphs(args.input) if args.input else None
        return lab.verify_compression_monotone(corpus, args.tol, count=args.count,
                                               seed=args.seed, **common)
    raise UsageError(f"unknown campaign {c}")


def cmd_verify(args, out):
    report = _campaign(args)
    if args.format == "csv":
        report.write_csv(out)
    else:
        report.write_jsonl(out, trailer=not args.no_trailer)
    return 0 if report.ok else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperlag", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    solver = argparse.ArgumentParser(add_help=False, parents=[output])
    solver.add_argument("--seed", type=int, default=0)
    solver.add_argument("--restarts", type=int, default=SolverOptions.restarts)

    colex = sub.add_parser("colex", help="colex constructions")
    colex_sub = colex.add_subparsers(dest="action", required=True)
    gen = colex_sub.add_parser("gen", parents=[output], help="emit C_{r,m}")
    gen.add_argument("-r", type=int, required=True)
    gen.add_argument("-m", type=int, required=True)
    gen.set_defaults(func=cmd_colex_gen)

    lag = sub.add_parser("lagrangian", help="Lagrangian computations")
    lag_sub = lag.add_subparsers(dest="action", required=True)
    solve = lag_sub.add_parser("solve", parents=[solver], help="maximize over the simplex")
    solve.add_argument("-i", "--input", required=True, help="hypergraph file, '-' for stdin")
    solve.add_argument("--oracle", action="store_true", help="use the exhaustive oracle")
    solve.add_argument("--depth", type=int, default=10, help="oracle grid resolution")
    solve.set_defaults(func=cmd_solve)

    cl = sub.add_parser("clique", parents=[output], help="maximum clique order")
    cl.add_argument("-i", "--input", required=True)
    cl.set_defaults(func=cmd_clique)

    comp = sub.add_parser("compress", parents=[output], help="left-compression")
    comp.add_argument("-i", "--input", required=True)
    comp.add_argument("--to-fixpoint", action="store_true")
    comp.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"),
                      help="a single compression step moving J to I")
    comp.set_defaults(func=cmd_compress)

    ver = sub.add_parser("verify", parents=[solver], help="verification campaigns")
    ver.add_argument("campaign", choices=["ms", "ff", "plateau", "dichotomy", "nbhd", "bounds",
                                          "ineq", "compress-mono"])
    ver.add_argument("-r", type=int)
    ver.add_argument("-t", type=int)
    ver.add_argument("-n", type=int)
    ver.add_argument("-m", type=int)
    ver.add_argument("-i", "--input", help="corpus file for compress-mono")
    ver.add_argument("--tol", type=float, default=1e-7)
    ver.add_argument("--budget", type=int, default=lab.DEFAULT_BUDGET)
    ver.add_argument("--workers", type=int, default=None)
    ver.add_argument("--scan-t", type=int, help="bounds: scan t up to this value")
    ver.add_argument("--r-min", type=int, default=4)
    ver.add_argument("--r-max", type=int, default=12)
    ver.add_argument("--t-max", type=int, default=10**4)
    ver.add_argument("--count", type=int, default=500, help="compress-mono corpus size")
    ver.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    ver.add_argument("--no-trailer", action="store_true", help="omit the timing trailer")
    ver.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with _open_out(args.output) as out:
            return args.func(args, out)
    except (UsageError, HyperlagError) as exc:
        print(f"hyperlag: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())

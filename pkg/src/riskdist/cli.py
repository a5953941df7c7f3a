"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 non-convergence (or a
counterexample that fails verification).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from . import quad
from .counterex import verify_median_counterexample, verify_mode_counterexample
from .dists import FAMILIES, make_family
from .exceptions import DomainError, NonConvergenceError, RiskDistError
from .mapping import mc_of, mcmap, mcmap_generic
from .simkit import DESK_C, DESK_M, FULL_C, FULL_M, SimGrid, frange, run_grid, write_csv

SCHEMA_VERSION = 1

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NONCONV = 0, 1, 2, 3

_GENERIC_TRANSFORMS = {
    "beta": ((lambda a, b: (math.log(a), math.log(b))), (lambda u, v: (math.exp(u), math.exp(v)))),
    "logitnorm": ((lambda mu, s: (mu, math.log(s))), (lambda mu, v: (mu, math.exp(v)))),
    "probitnorm": ((lambda mu, s: (mu, math.log(s))), (lambda mu, v: (mu, math.exp(v)))),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="riskdist", description="Identify risk distributions from mean and c-statistic.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def solver_flags(sp):
        sp.add_argument("--quad-tol", type=float, default=quad.DEFAULT_TOL)
        sp.add_argument("--max-iter", type=int, default=None)

    mp = sub.add_parser("map", help="solve family parameters from (mean, c)")
    mp.add_argument("--family", required=True, choices=[*FAMILIES, "generic"])
    mp.add_argument("--mean", required=True, type=float)
    mp.add_argument("--cstat", required=True, type=float)
    mp.add_argument("--generic-base", choices=list(FAMILIES), default="beta",
                    help="family whose CDF the generic solver uses")
    mp.add_argument("--start", nargs=2, type=float, metavar=("P1", "P2"), default=None,
                    help="start point for the generic solver")
    mp.add_argument("--json", action="store_true")
    solver_flags(mp)

    ep = sub.add_parser("eval", help="mean and c-statistic of a family member")
    ep.add_argument("--family", required=True, choices=list(FAMILIES))
    ep.add_argument("--p1", required=True, type=float)
    ep.add_argument("--p2", required=True, type=float)
    ep.add_argument("--json", action="store_true")
    ep.add_argument("--quad-tol", type=float, default=quad.DEFAULT_TOL)

    gp = sub.add_parser("grid", help="Monte-Carlo accuracy grid as CSV")
    gp.add_argument("--families", nargs="+", choices=list(FAMILIES), default=list(FAMILIES))
    gp.add_argument("--full", action="store_true", help="the 50 x 49 grid m=0.01..0.50, c=0.51..0.99")
    gp.add_argument("--m-from", type=float)
    gp.add_argument("--m-to", type=float)
    gp.add_argument("--m-step", type=float)
    gp.add_argument("--c-from", type=float)
    gp.add_argument("--c-to", type=float)
    gp.add_argument("--c-step", type=float)
    gp.add_argument("--se", type=float, default=0.001)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--jobs", type=int, default=1)
    gp.add_argument("--out", default="-", help="output CSV path, '-' for stdout")
    solver_flags(gp)

    cp = sub.add_parser("counterexample", help="verify a mode/median counterexample")
    cp.add_argument("--kind", required=True, choices=["mode", "median"])
    cp.add_argument("--a", required=True, type=float)
    cp.add_argument("--json", action="store_true")
    return p


def _emit(record: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, **record}) + "\n")
    else:
        for k, v in record.items():
            if v is None:
                continue
            out.write(f"{k}: {v!r}\n" if isinstance(v, float) else f"{k}: {v}\n")


def _solver_kwargs(args) -> dict:
    kw = {"quad_tol": args.quad_tol}
    if args.max_iter is not None:
        kw["max_iter"] = args.max_iter
    return kw


def _cmd_map(args, out) -> int:
    kw = _solver_kwargs(args)
    if args.family == "generic":
        base = args.generic_base
        to_int, from_int = _GENERIC_TRANSFORMS[base]
        start = args.start or ((2.0, 2.0) if base == "beta" else (0.0, 1.0))
        report = mcmap_generic(lambda a, b: make_family(base, a, b), args.mean, args.cstat, start,
                               to_internal=to_int, from_internal=from_int, name=f"generic:{base}", **kw)
    else:
        report = mcmap(args.family, args.mean, args.cstat, **kw)
    _emit({"mean": args.mean, "cstat": args.cstat, **report.as_dict()}, args.json, out)
    return EXIT_OK if report.converged else EXIT_NONCONV


def _cmd_eval(args, out) -> int:
    m, c = mc_of(make_family(args.family, args.p1, args.p2), tol=args.quad_tol)
    _emit({"family": args.family, "p1": args.p1, "p2": args.p2, "m": m, "c": c}, args.json, out)
    return EXIT_OK


def _grid_axis(start, stop, step, default_full, default_desk, full):
    if start is None and stop is None and step is None:
        return default_full if full else default_desk
    if None in (start, stop, step):
        raise DomainError("give all of --*-from, --*-to and --*-step, or none")
    return frange(start, stop, step)


def _cmd_grid(args, out) -> int:
    m_values = _grid_axis(args.m_from, args.m_to, args.m_step, FULL_M, DESK_M, args.full)
    c_values = _grid_axis(args.c_from, args.c_to, args.c_step, FULL_C, DESK_C, args.full)
    grid = SimGrid(m_values, c_values, tuple(args.families), args.se, args.seed)
    cells = run_grid(grid, jobs=args.jobs, solver_kwargs=_solver_kwargs(args))
    if args.out == "-":
        write_csv(cells, out)
    else:
        with open(args.out, "w", newline="") as fh:
            write_csv(cells, fh)
    failed = sum(not c.converged for c in cells)
    if failed:
        sys.stderr.write(f"{failed} of {len(cells)} cells did not converge\n")
    return EXIT_OK


def _cmd_counterexample(args, out) -> int:
    verify = verify_mode_counterexample if args.kind == "mode" else verify_median_counterexample
    report = verify(args.a)
    _emit(report.as_dict(), args.json, out)
    return EXIT_OK if report.verified else EXIT_NONCONV


_COMMANDS = {
    "map": _cmd_map,
    "eval": _cmd_eval,
    "grid": _cmd_grid,
    "counterexample": _cmd_counterexample,
}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except (NonConvergenceError, RiskDistError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NONCONV


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Batch command-line front end.

Reads a JSON problem file (or stdin), dispatches the requested checker and
writes a JSON report (CSV for `scan`) to stdout or --out.  Exit codes:

    0  sufficient / verified / catalyst found
    2  refuted / catalyst fails
    3  inconclusive / nothing found
    4  malformed input
    5  resource cap hit (grid budget, degree cap, embedding cap)

Config precedence: command-line flags > problem-file fields > defaults.
Decimal strings in problem files are parsed digit-for-digit, so exact-mode
runs never round through binary floats.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Optional

import mpmath

from . import reports
from .coherence import check_coherent_trumping, pure_state_from_amplitudes, pure_state_from_probs
from .context import DEFAULT_CONTEXT, Context
from .errors import CatamajError, DegreeCapExceeded, EmbeddingTooLarge, GridTooLarge, InputError
from .majorization import GridSpec, THERMO, LOCC, search_catalyst, verify_catalyst
from .thermo import check_thermo, gibbs_vector, renyi_divergence, thermal_from_gibbs
from .trumping import check_trumping
from .vectors import ProbVector, make_prob_vector, pad_pair, renyi_entropy, scaled_p_norm

EXIT_SUFFICIENT = 0
EXIT_REFUTED = 2
EXIT_INCONCLUSIVE = 3
EXIT_INPUT = 4
EXIT_CAP = 5

_STATUS_EXIT = {
    "trumping_sufficient": EXIT_SUFFICIENT,
    "closure_sufficient": EXIT_SUFFICIENT,
    "sufficient": EXIT_SUFFICIENT,
    "refuted": EXIT_REFUTED,
    "inconclusive": EXIT_INCONCLUSIVE,
}


def _load_problem(path: Optional[str]) -> dict:
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        data = json.loads(text, parse_float=str)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read problem file: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("problem file must contain a JSON object")
    return data


def _context(args, problem: dict) -> Context:
    ctx = DEFAULT_CONTEXT
    backend = args.backend or problem.get("backend")
    if backend:
        ctx = ctx.with_backend(backend)
    overrides = {}
    if args.precision or problem.get("precision"):
        overrides["precision"] = int(args.precision or problem["precision"])
    if args.tol or problem.get("tol"):
        overrides["lorenz_tol"] = float(args.tol or problem["tol"])
    if args.degree_cap or problem.get("degree_cap"):
        overrides["degree_cap"] = int(args.degree_cap or problem["degree_cap"])
    if overrides:
        ctx = replace(ctx, **overrides)
    return ctx


def _vector(problem: dict, key: str, ctx: Context) -> ProbVector:
    if key not in problem:
        raise InputError(f"problem file is missing field {key!r}")
    value = problem[key]
    if not isinstance(value, list):
        raise InputError(f"field {key!r} must be an array of numbers")
    tolerate = problem.get("sum_tol")
    if tolerate is not None:
        tolerate = Fraction(str(tolerate))
    return make_prob_vector(value, ctx, tolerate_sum=tolerate)


def _grid(args, problem: dict) -> Optional[GridSpec]:
    text = args.grid or problem.get("grid")
    if text is None:
        return None
    return GridSpec.parse(text)


def _thermal(problem: dict, ctx: Context):
    if "g" in problem:
        return thermal_from_gibbs(_vector(problem, "g", ctx))
    if "energies" in problem and "beta" in problem:
        return gibbs_vector([Fraction(e) if isinstance(e, str) else e
                             for e in problem["energies"]], Fraction(problem["beta"]), ctx)
    raise InputError("thermo problems need either 'g' or 'energies' plus 'beta'")


def _check_mode(problem: dict, expected: str):
    mode = problem.get("mode")
    if mode is not None and mode != expected:
        raise InputError(f"problem file says mode {mode!r} but command expects {expected!r}")


def _emit(payload: str, out: Optional[str]):
    if out:
        # single atomic publication so a crashed run never leaves half a report
        tmp = f"{out}.tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp, out)
    else:
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")


def _report(command: str, body: dict, out: Optional[str]) -> None:
    body = {"schema": reports.SCHEMA, "command": command, **body}
    _emit(json.dumps(body, indent=2), out)


def cmd_check_trumping(args) -> int:
    problem = _load_problem(args.problem)
    _check_mode(problem, "locc")
    ctx = _context(args, problem)
    x = _vector(problem, "x", ctx)
    y = _vector(problem, "y", ctx)
    verdict = check_trumping(x, y, ctx, grid=_grid(args, problem))
    _report("check-trumping", reports.trumping_verdict_to_json(verdict), args.out)
    if verdict.cap_hit:
        return EXIT_CAP
    return _STATUS_EXIT[verdict.status]


def cmd_check_thermo(args) -> int:
    problem = _load_problem(args.problem)
    _check_mode(problem, "thermo")
    ctx = _context(args, problem)
    q_rho = _vector(problem, "q_rho", ctx)
    q_sigma = _vector(problem, "q_sigma", ctx)
    spec = _thermal(problem, ctx)
    g_eps = None
    if "g_eps" in problem:
        exact_ctx = ctx.with_backend("exact")
        g_eps = make_prob_vector(problem["g_eps"], exact_ctx)
    eps = Fraction(args.eps) if args.eps else Fraction(str(problem.get("eps", "1/1000")))
    verdict = check_thermo(q_rho, q_sigma, spec, g_eps=g_eps, eps=eps, ctx=ctx,
                           grid=_grid(args, problem))
    _report("check-thermo", reports.thermo_verdict_to_json(verdict), args.out)
    if verdict.cap_hit:
        return EXIT_CAP
    return _STATUS_EXIT[verdict.status]


def cmd_check_coherence(args) -> int:
    problem = _load_problem(args.problem)
    _check_mode(problem, "coherence")
    ctx = _context(args, problem)
    build = pure_state_from_probs if problem.get("probabilities") else pure_state_from_amplitudes
    for key in ("psi", "phi"):
        if key not in problem:
            raise InputError(f"problem file is missing field {key!r}")
    psi = build(problem["psi"], ctx)
    phi = build(problem["phi"], ctx)
    verdict = check_coherent_trumping(psi, phi, ctx, grid=_grid(args, problem))
    _report("check-coherence", reports.trumping_verdict_to_json(verdict), args.out)
    if verdict.cap_hit:
        return EXIT_CAP
    return _STATUS_EXIT[verdict.status]


def cmd_verify_catalyst(args) -> int:
    problem = _load_problem(args.problem)
    ctx = _context(args, problem)
    x = _vector(problem, "x", ctx)
    y = _vector(problem, "y", ctx)
    c = _vector(problem, "catalyst", ctx)
    mode = problem.get("mode", LOCC)
    g = g_cat = None
    if mode == THERMO:
        g = _thermal(problem, ctx).g
        if "g_cat" in problem:
            g_cat = _vector(problem, "g_cat", ctx)
    ok = verify_catalyst(x, y, c, mode, g, g_cat, ctx)
    _report("verify-catalyst", {"verified": ok, "mode": mode,
                                "catalyst": reports.vector_to_json(c)}, args.out)
    return EXIT_SUFFICIENT if ok else EXIT_REFUTED


def cmd_search_catalyst(args) -> int:
    problem = _load_problem(args.problem)
    ctx = _context(args, problem)
    x = _vector(problem, "x", ctx)
    y = _vector(problem, "y", ctx)
    dim = int(problem.get("dim", 2))
    resolution = Fraction(str(problem.get("resolution", "1/100")))
    mode = problem.get("mode", LOCC)
    g = g_cat = None
    if mode == THERMO:
        g = _thermal(problem, ctx).g
        if "g_cat" in problem:
            g_cat = _vector(problem, "g_cat", ctx)
    found = search_catalyst(x, y, dim, resolution, mode, g, g_cat, ctx,
                            threads=args.threads)
    body = {"found": found is not None, "catalyst": reports.vector_to_json(found),
            "dim": dim, "resolution": str(resolution)}
    _report("search-catalyst", body, args.out)
    return EXIT_SUFFICIENT if found is not None else EXIT_INCONCLUSIVE


def cmd_scan(args) -> int:
    problem = _load_problem(args.problem)
    ctx = _context(args, problem)
    grid = _grid(args, problem) or GridSpec()
    if "q_rho" in problem:
        q_rho = _vector(problem, "q_rho", ctx)
        q_sigma = _vector(problem, "q_sigma", ctx)
        g = _thermal(problem, ctx).g
        _emit(emit_divergence_scan(q_rho, q_sigma, g, grid, ctx), args.out)
    else:
        x = _vector(problem, "x", ctx)
        y = _vector(problem, "y", ctx)
        _emit(emit_scan(x, y, grid, ctx), args.out)
    return EXIT_SUFFICIENT


def emit_scan(x: ProbVector, y: ProbVector, grid: GridSpec,
              ctx: Context = DEFAULT_CONTEXT) -> str:
    """CSV of (p, ||x||_p, ||y||_p, H_p(x), H_p(y)) over the grid.

    Rows ascend in p; values carry 12 significant digits; p in {0, 1} is
    excluded (those points live in the dedicated Burg/Shannon checks).
    """
    x, y = pad_pair(x, y)
    lines = ["p,norm_x,norm_y,renyi_x,renyi_y"]
    for p in grid.points():
        cells = [mpmath.nstr(mpmath.mpf(float(p)), 12),
                 mpmath.nstr(scaled_p_norm(x, p, ctx), 12),
                 mpmath.nstr(scaled_p_norm(y, p, ctx), 12),
                 mpmath.nstr(renyi_entropy(x, p, ctx), 12),
                 mpmath.nstr(renyi_entropy(y, p, ctx), 12)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def emit_divergence_scan(q_rho: ProbVector, q_sigma: ProbVector, g: ProbVector,
                         grid: GridSpec, ctx: Context = DEFAULT_CONTEXT) -> str:
    """CSV of (p, D_p(q_rho||g), D_p(q_sigma||g)) over the grid."""
    lines = ["p,divergence_rho,divergence_sigma"]
    for p in grid.points():
        cells = [mpmath.nstr(mpmath.mpf(float(p)), 12),
                 mpmath.nstr(renyi_divergence(q_rho, g, p, ctx), 12),
                 mpmath.nstr(renyi_divergence(q_sigma, g, p, ctx), 12)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catamaj",
        description="Finite sufficient-condition checkers for catalytic "
                    "majorization, thermal operations, and pure-state "
                    "coherence, with brute-force corroboration.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("problem", nargs="?", default=None,
                       help="JSON problem file ('-' or omitted reads stdin)")
        p.add_argument("--backend", choices=["exact", "float"], default=None,
                       help="scalar backend (default: exact)")
        p.add_argument("--precision", type=int, default=None,
                       help="float mantissa bits (default: 256)")
        p.add_argument("--tol", default=None,
                       help="float-mode dominance tolerance (default: 1e-12)")
        p.add_argument("--eps", default=None,
                       help="l1 target for rational Gibbs approximation (default: 1/1000)")
        p.add_argument("--grid", default=None,
                       help="oracle grid 'min:max:step' (default: -20:20:1/20)")
        p.add_argument("--degree-cap", dest="degree_cap", default=None,
                       help="polynomial degree cap n*r (default: 4096)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker processes for catalyst search (default: 1)")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")

    for name, handler in [("check-trumping", cmd_check_trumping),
                          ("check-thermo", cmd_check_thermo),
                          ("check-coherence", cmd_check_coherence),
                          ("verify-catalyst", cmd_verify_catalyst),
                          ("search-catalyst", cmd_search_catalyst),
                          ("scan", cmd_scan)]:
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(handler=handler)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (GridTooLarge, DegreeCapExceeded, EmbeddingTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except CatamajError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (KeyError, ValueError, TypeError) as exc:
        print(f"error: malformed problem input ({exc})", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands: solve, workspace, benchmark, tradeoff, serve. Exit codes:
0 success, 2 completed but infeasible, 1 error. The VINEDESIGN_SEED
environment variable overrides the problem file's seed; an explicit --seed
flag overrides both.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import replace

from . import __version__
from .data import SCENARIOS, scenario_path
from .design import Region, benchmark_table, tradeoff_sweep, workspace_analysis
from .errors import VineDesignError
from .problem_io import (
    ProblemSpec,
    build_solution_document,
    load_problem,
    load_solution,
    save_solution,
    solve_problem,
)
from .svg_render import render_svg, render_workspace_svg

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 means "infeasible" here, so remap.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message} (see --help; file schemas in docs/formats.md)", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _resolve_problem_path(path: str) -> str:
    """A bundled scenario name (e.g. 'four-targets') resolves to its file."""
    name = path.replace("-", "_")
    if not os.path.exists(path) and name in SCENARIOS:
        return str(scenario_path(name))
    return path


def _load_problem_with_seed(path: str, seed: int | None) -> ProblemSpec:
    problem = load_problem(_resolve_problem_path(path))
    env_seed = os.environ.get("VINEDESIGN_SEED")
    if env_seed is not None:
        problem = replace(problem, search=replace(problem.search, seed=int(env_seed)))
    if seed is not None:
        problem = replace(problem, search=replace(problem.search, seed=seed))
    return problem


def _parse_int_list(text: str) -> list[int]:
    """'2..6' or '2,3,4' or '5'."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",") if v]


def _print_solution(doc) -> None:
    lengths = ", ".join(f"{v:.4f}" for v in doc.design.lengths)
    state = "feasible" if doc.feasible else "INFEASIBLE"
    print(f"{state}: {doc.design.n} links [{lengths}] m (total {sum(doc.design.lengths):.4f} m)")
    for j in range(len(doc.configurations)):
        flag = "ok " if doc.per_target_feasible[j] else "MISS"
        print(
            f"  target {j + 1}: {flag} link {doc.active_links[j]}, "
            f"d = {doc.distance_residuals[j] * 1000:.2f} mm, "
            f"o = {math.degrees(doc.orientation_residuals[j]):.3f} deg"
        )


def cmd_solve(args) -> int:
    problem = _load_problem_with_seed(args.problem, args.seed)
    doc = solve_problem(problem, budget=args.budget, restarts=args.restarts)
    _print_solution(doc)
    if args.out:
        save_solution(doc, args.out)
        print(f"solution written to {args.out}")
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_svg(doc))
        print(f"figure written to {args.svg}")
    return EXIT_OK if doc.feasible else EXIT_INFEASIBLE


def cmd_workspace(args) -> int:
    path = _resolve_problem_path(args.input)
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if isinstance(raw, dict) and "design" in raw:
        doc = load_solution(path)
    else:
        problem = _load_problem_with_seed(path, args.seed)
        doc = solve_problem(problem)
        if not doc.feasible:
            print("warning: problem solved infeasible; analyzing best attempt", file=sys.stderr)
    x0, x1, y0, y1, p0, p1 = (float(v) for v in args.region.split(","))
    region = Region.from_degrees(x0, x1, y0, y1, p0, p1)
    result = workspace_analysis(
        doc.design,
        region,
        args.samples,
        doc.problem.constraints,
        doc.problem.weights,
        doc.problem.tolerance,
        doc.problem.search,
        seed=args.seed if args.seed is not None else doc.seed,
        workers=args.workers,
    )
    print(f"workspace success rate: {result.success_rate:.4f} over {args.samples} samples")
    if args.out:
        result.write_csv(args.out)
        print(f"samples written to {args.out}")
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_workspace_svg(result))
        print(f"figure written to {args.svg}")
    return EXIT_OK


def cmd_benchmark(args) -> int:
    m_values = _parse_int_list(args.m)
    n_values = _parse_int_list(args.n)
    result = benchmark_table(
        m_values,
        n_values,
        trials_per_cell=args.trials,
        seed=args.seed if args.seed is not None else 0,
        workers=args.workers,
    )
    header = "n\\m " + " ".join(f"{m:>6}" for m in result.m_values)
    print(header)
    for i, n in enumerate(result.n_values):
        print(f"{n:<4}" + " ".join(f"{v:6.3f}" for v in result.per_target_rate[i]))
    if args.out:
        result.write_csv(args.out)
        print(f"table written to {args.out}")
    return EXIT_OK


def cmd_tradeoff(args) -> int:
    problem = _load_problem_with_seed(args.problem, args.seed)
    limits = [float(v) for v in args.angles.split(",") if v]
    variants = [problem.constraints.with_bend_limit_degrees(limit) for limit in limits]
    solutions = tradeoff_sweep(
        problem.targets,
        variants,
        problem.weights,
        problem.tolerance,
        problem.search,
        budget=args.budget,
    )
    print("bendLimitDeg  links  feasible  totalLength")
    infeasible = False
    for idx, (limit, solution) in enumerate(zip(limits, solutions)):
        infeasible |= not solution.feasible
        print(
            f"{limit:12.1f}  {solution.design.n:5d}  {str(solution.feasible):>8}  "
            f"{solution.design.total_length:10.4f}"
        )
        if args.out_dir:
            os.makedirs(args.out_dir, exist_ok=True)
            doc = build_solution_document(replace(problem, constraints=variants[idx]), solution)
            out = os.path.join(args.out_dir, f"solution_bend{limit:g}.json")
            save_solution(doc, out)
    return EXIT_INFEASIBLE if infeasible else EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .api_server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vinedesign", description=__doc__)
    parser.add_argument("--version", action="version", version=f"vinedesign {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="synthesize a design for a problem file")
    p.add_argument("problem", help="problem JSON path or bundled scenario name")
    p.add_argument("--out", help="write the solution document here")
    p.add_argument("--svg", help="render the solution to this SVG file")
    p.add_argument("--seed", type=int, default=None, help="override the search seed")
    p.add_argument("--budget", type=int, default=None, help="pin the link budget (skip the outer loop)")
    p.add_argument("--restarts", type=int, default=None, help="search restarts per budget")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("workspace", help="Monte-Carlo reachability of a design")
    p.add_argument("input", help="solution document or problem file (problems are solved first)")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--region", default="0.1,0.9,0.1,0.9,-90,90", help="x0,x1,y0,y1,phi0,phi1 (deg)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write per-sample CSV here")
    p.add_argument("--svg", help="render the scatter to this SVG file")
    p.set_defaults(func=cmd_workspace)

    p = sub.add_parser("benchmark", help="success-rate table on random feasible instances")
    p.add_argument("--m", default="2..6", help="target counts, e.g. 2..6 or 2,4,6")
    p.add_argument("--n", default="2..8", help="link budgets, e.g. 2..8")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write the CSV table here")
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("tradeoff", help="re-solve under different bend limits")
    p.add_argument("problem", help="problem JSON path or bundled scenario name")
    p.add_argument("--angles", default="15,30,45", help="bend limits in degrees")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out-dir", help="write per-variant solution documents here")
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)
    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except VineDesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()

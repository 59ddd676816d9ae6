"""Command-line surface: generate graphs, reduce them, run the solver,
play matches, evaluate strategies, query formulas and run verify suites.

Machine-readable JSON goes to stdout, human summaries to stderr.
Exit codes: 0 success or verified, 1 verification failure, 2 usage,
schema or protocol errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from . import generators
from .formulas import FORMULAS
from .game import (
    FixedAssignmentAdversary,
    ProtocolViolation,
    best_response_rounds,
    run_match,
    worst_case_rounds,
)
from .graph import Graph, GraphError, SchemaError, dumps, loads, to_dot, validate
from .reduce import (
    longest_generalized_path_len,
    longest_path_len,
    reduce_multi,
    reduce_simple,
)
from .solver import SolverConfig, solve_curve, solve_exact
from .strategies import StrategyError, make_adversary, make_questioner
from .verification import BUDGETS, SUITES, run_suite

FAMILIES: dict[str, tuple[Any, tuple[str, ...]]] = {
    "tree": (generators.gen_tree, ("d", "n")),
    "pyramid": (generators.gen_pyramid, ("n",)),
    "gpy_complete": (generators.gen_gpy_complete, ("d", "n")),
    "gpy_grid": (generators.gen_gpy_grid, ("d", "n")),
    "hl": (generators.gen_hl, ("k", "l")),
    "spine_forks": (generators.gen_spine_forks, ("k", "l")),
    "tree_remark": (generators.gen_tree_remark, ("n",)),
    "tree_of_h": (generators.gen_tree_of_h, ("k", "l")),
    "random": (
        generators.random_dag,
        ("n_vertices", "max_outdeg", "min_outdeg", "multigraph", "seed"),
    ),
}


def _read_graph(path: str | None) -> Graph:
    text = sys.stdin.read() if path in (None, "-") else open(path).read()
    return loads(text)


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _emit(doc: Any, path: str | None = None) -> None:
    _write(json.dumps(doc, indent=2), path)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="switchquest",
        description="Switch-search games on single-source directed graphs.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph family instance")
    g.add_argument("family", choices=sorted(FAMILIES))
    g.add_argument("params", nargs="*", type=int, help="family parameters, in order")
    g.add_argument("-o", "--output", default=None)

    r = sub.add_parser("reduce", help="collapse out-degree-1 vertices")
    r.add_argument("--mode", choices=("simple", "multi"), required=True)
    r.add_argument("-i", "--input", default=None)
    r.add_argument("-o", "--output", default=None)

    lp = sub.add_parser("lp", help="longest path length from the source")
    lp.add_argument("-i", "--input", default=None)

    glp = sub.add_parser("glp", help="longest generalized path length (cycles allowed)")
    glp.add_argument("-i", "--input", default=None)
    glp.add_argument("--cap", type=int, default=20)

    s = sub.add_parser("solve", help="exact optimal rounds")
    s.add_argument("-i", "--input", default=None)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--goal", choices=("sink", "path"), required=True)
    s.add_argument("--max-askable", type=int, default=16)
    s.add_argument("--curve", type=int, default=None, metavar="K_MAX",
                   help="emit values for budgets 1..K_MAX instead")
    s.add_argument("--symmetry", action="store_true")
    s.add_argument("--parallel", action="store_true")

    m = sub.add_parser("match", help="play one questioner/adversary match")
    m.add_argument("-i", "--input", default=None)
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--goal", choices=("sink", "path"), required=True)
    m.add_argument("--questioner", required=True)
    m.add_argument("--adversary", default=None)
    m.add_argument("--assignment", default=None, help="JSON file mapping vertex to edge")

    e = sub.add_parser("eval", help="worst-case or best-response round counts")
    e.add_argument("-i", "--input", default=None)
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--goal", choices=("sink", "path"), required=True)
    mode = e.add_mutually_exclusive_group(required=True)
    mode.add_argument("--worst-case", action="store_true")
    mode.add_argument("--best-response", action="store_true")
    e.add_argument("--questioner", default=None)
    e.add_argument("--adversary", default=None)
    e.add_argument("--cap", type=int, default=22)
    e.add_argument("--sample", type=int, default=None)
    e.add_argument("--seed", type=int, default=None)
    e.add_argument("--max-askable", type=int, default=16)

    f = sub.add_parser("formula", help="evaluate a closed-form bound")
    f.add_argument("name", choices=sorted(FORMULAS))
    f.add_argument("params", nargs="*", type=int)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--budget", choices=BUDGETS, default=None)

    x = sub.add_parser("export", help="export a graph document")
    x.add_argument("--dot", action="store_true")
    x.add_argument("-i", "--input", default=None)
    x.add_argument("-o", "--output", default=None)

    val = sub.add_parser("validate", help="list invariant violations of a graph document")
    val.add_argument("-i", "--input", default=None)
    return p


def _cmd_gen(args) -> int:
    fn, names = FAMILIES[args.family]
    if len(args.params) != len(names):
        raise GraphError(
            f"family {args.family} takes {len(names)} parameters ({', '.join(names)}), "
            f"got {len(args.params)}"
        )
    params = list(args.params)
    if args.family == "random":
        params[3] = bool(params[3])
    g = fn(*params)
    _write(dumps(g), args.output)
    _note(f"{g.name}: {len(g.vertices)} vertices, {len(g.edges)} edges, {len(g.sinks)} sinks")
    return 0


def _cmd_reduce(args) -> int:
    g = _read_graph(args.input)
    res = reduce_simple(g) if args.mode == "simple" else reduce_multi(g)
    _emit(res.to_json_doc(), args.output)
    _note(
        f"reduced {len(g.vertices)} -> {len(res.graph.vertices)} vertices "
        f"({args.mode} mode)"
    )
    return 0


def _cmd_solve(args) -> int:
    g = _read_graph(args.input)
    cfg = SolverConfig(
        max_askable=args.max_askable,
        symmetry_reduction=args.symmetry,
        parallel=args.parallel,
    )
    if args.curve is not None:
        curve = solve_curve(g, args.curve, args.goal, cfg)
        _emit({"goal": args.goal, "curve": [[k, v] for k, v in curve]})
        return 0
    res = solve_exact(g, args.k, args.goal, cfg)
    _emit(res.to_json_doc())
    _note(
        f"{g.name}: {args.goal} value {res.value} with k={args.k} "
        f"({res.stats.states} states, {res.stats.ms:.1f} ms)"
    )
    return 0


def _cmd_match(args) -> int:
    g = _read_graph(args.input)
    questioner = make_questioner(args.questioner)
    if args.assignment:
        with open(args.assignment) as fh:
            assignment = json.load(fh)
        adversary = FixedAssignmentAdversary(assignment)
    elif args.adversary:
        adversary = make_adversary(args.adversary)
    else:
        raise StrategyError("match needs --adversary or --assignment")
    res = run_match(g, args.k, questioner, adversary, args.goal)
    _emit(res.to_json_doc())
    _note(f"{g.name}: {res.rounds} rounds ({args.questioner} vs {adversary.name})")
    return 0


def _cmd_eval(args) -> int:
    g = _read_graph(args.input)
    if args.worst_case:
        if not args.questioner:
            raise StrategyError("--worst-case needs --questioner")
        value = worst_case_rounds(
            g,
            args.k,
            make_questioner(args.questioner),
            args.goal,
            cap=args.cap,
            sample_size=args.sample,
            seed=args.seed or 0,
        )
        exhaustive = len([v for v in g.vertex_ids if g.out_degree(v) >= 2]) <= args.cap
        _emit(
            {
                "mode": "worst_case",
                "strategy": args.questioner,
                "value": value,
                "exhaustive": exhaustive,
            }
        )
        if not exhaustive:
            _note("sampled assignments only: the value is a lower estimate")
    else:
        if not args.adversary:
            raise StrategyError("--best-response needs --adversary")
        value = best_response_rounds(
            g,
            args.k,
            make_adversary(args.adversary),
            args.goal,
            max_askable=args.max_askable,
        )
        _emit({"mode": "best_response", "strategy": args.adversary, "value": value})
    return 0


def _cmd_formula(args) -> int:
    fn, names, kind = FORMULAS[args.name]
    if len(args.params) != len(names):
        raise ValueError(
            f"formula {args.name} takes {len(names)} parameters ({', '.join(names)}), "
            f"got {len(args.params)}"
        )
    value = fn(*args.params)
    _emit(
        {
            "name": args.name,
            "params": dict(zip(names, args.params)),
            "value": value,
            "kind": kind,
        }
    )
    return 0


def _cmd_verify(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("SWITCHQUEST_SEED", "1"))
    budget = args.budget
    if budget is None:
        budget = os.environ.get("SWITCHQUEST_BUDGET", "small")
    reports = run_suite(args.suite, seed=seed, budget=budget)
    for rep in reports:
        for line in rep.lines():
            _note(line)
    doc = {
        "suite": args.suite,
        "seed": seed,
        "budget": budget,
        "passed": all(r.passed for r in reports),
        "reports": [r.to_json_doc() for r in reports],
    }
    _emit(doc)
    return 0 if doc["passed"] else 1


def _cmd_export(args) -> int:
    g = _read_graph(args.input)
    if args.dot:
        _write(to_dot(g), args.output)
    else:
        _write(dumps(g), args.output)
    return 0


def _cmd_lp(args) -> int:
    g = _read_graph(args.input)
    _emit({"value": longest_path_len(g)})
    return 0


def _cmd_glp(args) -> int:
    g = _read_graph(args.input)
    _emit({"value": longest_generalized_path_len(g, max_vertices=args.cap)})
    return 0


def _cmd_validate(args) -> int:
    g = _read_graph(args.input)
    problems = validate(g)
    _emit({"valid": not problems, "violations": problems})
    return 0 if not problems else 1


_HANDLERS = {
    "gen": _cmd_gen,
    "reduce": _cmd_reduce,
    "lp": _cmd_lp,
    "glp": _cmd_glp,
    "solve": _cmd_solve,
    "match": _cmd_match,
    "eval": _cmd_eval,
    "formula": _cmd_formula,
    "verify": _cmd_verify,
    "export": _cmd_export,
    "validate": _cmd_validate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (SchemaError, GraphError, StrategyError, ProtocolViolation, ValueError) as exc:
        _note(f"error: {exc}")
        return 2
    except FileNotFoundError as exc:
        _note(f"error: {exc}")
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()

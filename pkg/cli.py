#!/usr/bin/env python3
"""
Anterial CLI - One entry point for every graph and model operation
==================================================================
Usage:
  python cli.py validate g.json
  python cli.py separate g.json --a 1 --b 4 --given 2,3
  python cli.py marginalize g.json --over 3 [--dot out.dot]
  python cli.py condition g.json --on 3
  python cli.py maximize g.json
  python cli.py equivalent g1.json g2.json
  python cli.py intervene g.json --on 2,3
  python cli.py counterfactual g.json --on 2
  python cli.py swaig g.json --on 2
  python cli.py pw-swig dag.json --on 1,4
  python cli.py adjust g.json --treatment 2 --outcome "5^do(2)" --lower 1 --upper 1,4,6
  python cli.py verify-adjust g.json --treatment 2 --outcome 5 --set 1,4
  python cli.py simulate m.json --n 10000 --mode equilibrium|gibbs|coupled --seed 7
  python cli.py markov-report m.json [--graph g.json] [--exact] [--csv out.csv]
  python cli.py corresponding-graph m.json

Exit codes: 0 success, 1 usage error (stderr), 2 domain error or
infeasible adjustment (JSON body on stdout).
"""

import argparse
import logging
import sys
from typing import List, Optional

from rich.console import Console
from rich.logging import RichHandler

from anterial.adjust import AdjustmentProblem, select_adjustment, verify_adjustment
from anterial.causal import InterventionSpec, do_graph, parallel_worlds_swig, phi, swaig
from anterial.gaussian import (
    coupled_law, corresponding_graph, gibbs_sample, joint_law, markov_report,
    sample_coupled, sample_equilibrium,
)
from anterial.graph import AnterialError, MixedGraph, classify, maximize
from anterial.io import dump_graph, load_graph, load_model, samples_to_csv, to_dot
from anterial.separation import connecting_walk, markov_equivalent, separated_bruteforce
from anterial.transforms import alpha_c, alpha_m
from config import Config, ConfigError
from utils import dump_json, emit, markov_table, parse_nodes, parse_values, print_table, write_text

logger = logging.getLogger("anterial.cli")


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """argparse with exit code 1 for usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def setup_logging(config: Config) -> None:
    level = logging.DEBUG if config.verbose else getattr(logging, config.log_level, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


# ============================================================================
# VERBS
# ============================================================================

def _emit_graph(g: MixedGraph, args, config: Config) -> int:
    emit(dump_graph(g, indent=config.output.indent), args.out)
    if args.dot:
        write_text(args.dot, to_dot(g))
    return 0


def cmd_validate(args, config: Config) -> int:
    g = load_graph(args.graph)
    emit(dump_json(classify(g).to_dict(), config.output.indent), args.out)
    return 0


def cmd_separate(args, config: Config) -> int:
    g = load_graph(args.graph)
    a, b, z = parse_nodes(args.a), parse_nodes(args.b), parse_nodes(args.z)
    walk = connecting_walk(g, a, b, z)
    payload = {"separated": walk is None, "walk": walk}
    if args.bruteforce:
        payload["bruteforce"] = separated_bruteforce(g, a, b, z, max_nodes=config.separation.bruteforce_max_nodes)
    emit(dump_json(payload, config.output.indent), args.out)
    return 0


def cmd_marginalize(args, config: Config) -> int:
    g = load_graph(args.graph)
    return _emit_graph(alpha_m(g, parse_nodes(args.nodes)), args, config)


def cmd_condition(args, config: Config) -> int:
    g = load_graph(args.graph)
    return _emit_graph(alpha_c(g, parse_nodes(args.nodes)), args, config)


def cmd_maximize(args, config: Config) -> int:
    return _emit_graph(maximize(load_graph(args.graph)), args, config)


def cmd_equivalent(args, config: Config) -> int:
    same = markov_equivalent(load_graph(args.graph), load_graph(args.other),
                             max_nodes=config.separation.equivalence_max_nodes)
    emit(dump_json({"equivalent": same}, config.output.indent), args.out)
    return 0


def cmd_intervene(args, config: Config) -> int:
    return _emit_graph(do_graph(load_graph(args.graph), parse_nodes(args.on)), args, config)


def cmd_counterfactual(args, config: Config) -> int:
    return _emit_graph(phi(load_graph(args.graph), parse_nodes(args.on)), args, config)


def cmd_swaig(args, config: Config) -> int:
    return _emit_graph(swaig(load_graph(args.graph), parse_nodes(args.on)), args, config)


def cmd_pw_swig(args, config: Config) -> int:
    return _emit_graph(parallel_worlds_swig(load_graph(args.graph), parse_nodes(args.on)), args, config)


def _adjustment_problem(args) -> AdjustmentProblem:
    return AdjustmentProblem.of(
        load_graph(args.graph),
        parse_nodes(args.treatment),
        parse_nodes(args.outcome),
        lower=parse_nodes(args.lower),
        upper=parse_nodes(args.upper),
        observational_only=args.observational_only,
    )


def cmd_adjust(args, config: Config) -> int:
    result = select_adjustment(_adjustment_problem(args))
    emit(dump_json(result.to_dict(), config.output.indent), args.out)
    return 0 if result.feasible else 2


def cmd_verify_adjust(args, config: Config) -> int:
    problem = _adjustment_problem(args)
    report = verify_adjustment(problem, parse_nodes(args.set), max_free=config.separation.minimality_max_free)
    emit(dump_json({**report.to_dict(), "ok": report.ok}, config.output.indent), args.out)
    return 0 if report.ok else 2


def _intervention(args) -> InterventionSpec:
    treated = parse_nodes(args.on)
    values = parse_values(args.values) if args.values else {node: 0.0 for node in treated}
    return InterventionSpec.of(treated, values)


def cmd_simulate(args, config: Config) -> int:
    model = load_model(args.model)
    seed = config.seed if args.seed is None else args.seed
    if args.mode == "gibbs":
        n = args.n or config.gaussian.gibbs_samples
        burn_in = config.gaussian.burn_in if args.burn_in is None else args.burn_in
        samples = gibbs_sample(model, n, burn_in=burn_in, seed=seed)
    elif args.mode == "coupled":
        if not args.on:
            raise UsageError("--mode coupled needs --on")
        samples = sample_coupled(model, _intervention(args), args.n or config.gaussian.samples, seed=seed)
    else:
        samples = sample_equilibrium(model, args.n or config.gaussian.samples, seed=seed)
    emit(samples_to_csv(samples, config.output.float_digits), args.out)
    return 0


def cmd_markov_report(args, config: Config) -> int:
    model = load_model(args.model)
    g = load_graph(args.graph) if args.graph else corresponding_graph(model, tol=config.gaussian.zero_tol)
    seed = config.seed if args.seed is None else args.seed
    if args.mode == "coupled" and not args.on:
        raise UsageError("--mode coupled needs --on")
    if args.on:
        spec = _intervention(args)
        data = coupled_law(model, spec) if args.exact else sample_coupled(
            model, spec, args.n or config.gaussian.samples, seed=seed)
    elif args.exact:
        data = joint_law(model)
    elif args.mode == "gibbs":
        data = gibbs_sample(model, args.n or config.gaussian.gibbs_samples,
                            burn_in=config.gaussian.burn_in if args.burn_in is None else args.burn_in, seed=seed)
    else:
        data = sample_equilibrium(model, args.n or config.gaussian.samples, seed=seed)

    rows = [row.to_dict() for row in markov_report(g, data, tol=config.gaussian.ci_tol)]
    emit(dump_json({"alpha": config.gaussian.alpha, "exact": args.exact, "rows": rows},
                   config.output.indent), args.out)
    if args.csv:
        lines = ["i,j,conditioning,implied,p_value,verdict"]
        for row in rows:
            lines.append(",".join([
                row["i"], row["j"], " ".join(row["conditioning"]), str(row["implied"]).lower(),
                "" if row["p_value"] is None else repr(row["p_value"]),
                "" if row["verdict"] is None else str(row["verdict"]).lower(),
            ]))
        write_text(args.csv, "\n".join(lines) + "\n")
    if config.verbose:
        print_table(markov_table(rows, config.gaussian.alpha))
    return 0


def cmd_corresponding_graph(args, config: Config) -> int:
    model = load_model(args.model)
    return _emit_graph(corresponding_graph(model, tol=config.gaussian.zero_tol), args, config)


# ============================================================================
# PARSER
# ============================================================================

def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--config", help="Config file (YAML or JSON)")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    common.add_argument("--out", help="Also write the payload to this file")

    graph_out = ArgumentParser(add_help=False)
    graph_out.add_argument("--dot", help="Write Graphviz DOT to this file")

    parser = ArgumentParser(description="Anterial graph toolkit")
    sub = parser.add_subparsers(dest="verb", metavar="verb", parser_class=ArgumentParser)
    sub.required = True

    p = sub.add_parser("validate", parents=[common], help="Graph-class predicates")
    p.add_argument("graph")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("separate", parents=[common], help="A _||_ B | Z")
    p.add_argument("graph")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--given", "--z", dest="z", default="")
    p.add_argument("--bruteforce", action="store_true", help="Also run the walk-enumeration oracle")
    p.set_defaults(func=cmd_separate)

    for verb, func, flag, text in (("marginalize", cmd_marginalize, "--over", "alpha_m"),
                                   ("condition", cmd_condition, "--on", "alpha_c")):
        p = sub.add_parser(verb, parents=[common, graph_out], help=text)
        p.add_argument("graph")
        p.add_argument(flag, "--nodes", dest="nodes", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("maximize", parents=[common, graph_out], help="Maximal completion")
    p.add_argument("graph")
    p.set_defaults(func=cmd_maximize)

    p = sub.add_parser("equivalent", parents=[common], help="Markov equivalence of two graphs")
    p.add_argument("graph")
    p.add_argument("other")
    p.set_defaults(func=cmd_equivalent)

    for verb, func, text in (("intervene", cmd_intervene, "do_C(g)"),
                             ("counterfactual", cmd_counterfactual, "phi(g; C)"),
                             ("swaig", cmd_swaig, "single-world graph of phi"),
                             ("pw-swig", cmd_pw_swig, "parallel-worlds SWIG of a DAG (ordered --on)")):
        p = sub.add_parser(verb, parents=[common, graph_out], help=text)
        p.add_argument("graph")
        p.add_argument("--on", required=True)
        p.set_defaults(func=func)

    problem_args = ArgumentParser(add_help=False)
    problem_args.add_argument("graph")
    problem_args.add_argument("--treatment", required=True)
    problem_args.add_argument("--outcome", required=True)
    problem_args.add_argument("--lower", default="")
    problem_args.add_argument("--upper", default="")
    problem_args.add_argument("--observational-only", action="store_true")

    p = sub.add_parser("adjust", parents=[common, problem_args], help="Constrained adjustment set")
    p.set_defaults(func=cmd_adjust)

    p = sub.add_parser("verify-adjust", parents=[common, problem_args], help="Check a candidate adjustment set")
    p.add_argument("--set", required=True, help="Candidate S")
    p.set_defaults(func=cmd_verify_adjust)

    model_args = ArgumentParser(add_help=False)
    model_args.add_argument("model")
    model_args.add_argument("--n", type=int)
    model_args.add_argument("--mode", choices=["equilibrium", "gibbs", "coupled"], default="equilibrium")
    model_args.add_argument("--burn-in", type=int)
    model_args.add_argument("--seed", type=int, help="Default: config seed / ANTERIAL_SEED")
    model_args.add_argument("--on", help="Treated nodes")
    model_args.add_argument("--values", help="Treatment values, e.g. 2=1.0 (default 0)")

    p = sub.add_parser("simulate", parents=[common, model_args], help="Sample CSV")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("markov-report", parents=[common, model_args], help="Pairwise Markov table")
    p.add_argument("--graph")
    p.add_argument("--exact", action="store_true", help="Closed-form law instead of samples")
    p.add_argument("--csv", help="Write the table as CSV")
    p.set_defaults(func=cmd_markov_report)

    p = sub.add_parser("corresponding-graph", parents=[common, graph_out], help="Graph of a Gaussian model")
    p.add_argument("model")
    p.set_defaults(func=cmd_corresponding_graph)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = Config.load(args.config)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    if args.verbose:
        config.verbose = True
    setup_logging(config)

    try:
        return args.func(args, config)
    except AnterialError as e:
        logger.debug("%s failed", args.verb, exc_info=True)
        print(dump_json({"error": type(e).__name__, "message": str(e)}, config.output.indent))
        return 2
    except (UsageError, ValueError, FileNotFoundError) as e:
        print(f"{parser.prog} {args.verb}: error: {e}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command line interface.

Exit codes: 0 success, 1 bad input, 2 hypothesis failure, 3 degree budget
exhausted, 4 inconclusive orbit resolution.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import CoreError, HypothesisFailure, OrbitInconclusive, SubgroupSpec
from .graph import GraphError, SimplicialGraph, check_hypotheses
from .pipeline import BudgetExhausted, Config, SeparationRequest, build_core, export_dot, raag_separate, separate
from .words import RACG, WordError

EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_BUDGET, EXIT_INCONCLUSIVE = 1, 2, 3, 4


def _load(path):
    with open(path) as fh:
        return json.load(fh)


def load_subgroup(data, group: RACG):
    """Parse a subgroup file: ``{"kind", "generators", "reps"?, "enumeration_bound"?}``."""
    if data is None:
        return SubgroupSpec.trivial(), None
    kind = data.get("kind", "trivial")
    bound = data.get("enumeration_bound", 8)
    reps = [group.word(r) for r in data["reps"]] if data.get("reps") is not None else None
    if kind == "trivial":
        return SubgroupSpec.trivial(), None
    if kind == "parabolic":
        return SubgroupSpec.parabolic(group.graph.index(str(v)) for v in data["generators"]), None
    if kind == "words":
        return SubgroupSpec.words([group.word(w) for w in data["generators"]], bound), reps
    raise ValueError(f"unknown subgroup kind {kind!r}")


def _config(args) -> Config:
    return Config(
        window=args.window,
        prime_search_limit=args.prime_search_limit,
        enumeration_bound=args.enumeration_bound,
        max_degree=args.max_degree,
    )


def cmd_separate(args) -> int:
    graph = SimplicialGraph.from_json(_load(args.graph))
    subgroup = _load(args.subgroup) if args.subgroup else None
    gammas = _load(args.gammas)
    target = {"alt": "alternating", "sym": "symmetric"}[args.target]
    cfg = _config(args)
    if args.raag:
        words = subgroup.get("generators", []) if subgroup else []
        report = raag_separate(graph, words, gammas, target, cfg)
    else:
        G = RACG(graph)
        spec, reps = load_subgroup(subgroup, G)
        if spec.kind == "words":
            spec = SubgroupSpec.words(spec.generators, cfg.enumeration_bound)
        elements = [G.word(g) for g in gammas]
        report = separate(SeparationRequest(graph, spec, elements, target, cfg, reps))
    text = report.dumps() + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_check(args) -> int:
    graph = SimplicialGraph.from_json(_load(args.graph))
    report = check_hypotheses(graph)
    print(json.dumps(report.to_json(), sort_keys=True, indent=2))
    return 0 if report.ok else EXIT_HYPOTHESIS


def cmd_dot(args) -> int:
    graph = SimplicialGraph.from_json(_load(args.graph))
    G = RACG(graph)
    spec, reps = load_subgroup(_load(args.subgroup) if args.subgroup else None, G)
    core = build_core(G, spec, reps, args.window)
    text = export_dot(core, args.window)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxsep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sep = sub.add_parser("separate", help="build a verified alternating or symmetric quotient")
    sep.add_argument("--graph", required=True)
    sep.add_argument("--subgroup")
    sep.add_argument("--gammas", required=True)
    sep.add_argument("--target", choices=("alt", "sym"), default="alt")
    sep.add_argument("--out")
    sep.add_argument("--raag", action="store_true", help="read graph and words as a right-angled Artin group")
    defaults = Config()
    sep.add_argument("--window", type=int, default=defaults.window)
    sep.add_argument("--prime-search-limit", type=int, default=defaults.prime_search_limit)
    sep.add_argument("--enumeration-bound", type=int, default=defaults.enumeration_bound)
    sep.add_argument("--max-degree", type=int, default=defaults.max_degree)
    sep.set_defaults(func=cmd_separate)

    chk = sub.add_parser("check", help="report the graph hypotheses")
    chk.add_argument("--graph", required=True)
    chk.set_defaults(func=cmd_check)

    dot = sub.add_parser("dot", help="export a window of a subgroup core as DOT")
    dot.add_argument("--graph", required=True)
    dot.add_argument("--subgroup")
    dot.add_argument("--window", type=int, default=2)
    dot.add_argument("--out")
    dot.set_defaults(func=cmd_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HypothesisFailure as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        if exc.components:
            print("complement components: " + json.dumps([list(c) for c in exc.components]), file=sys.stderr)
        return EXIT_HYPOTHESIS
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OrbitInconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (CoreError, GraphError, WordError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

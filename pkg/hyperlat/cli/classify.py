import argparse
import random

from hyperlat.cli.common import emit, metadata, resolve_lattice, write_text
from hyperlat.core.config import settings
from hyperlat.services.neighbor import classify_dimension, graph_checks

DEFAULT_START = {8: "e8", 16: "e8^2", 24: "e8^3"}
BUDGET_EXIT = 3


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("classify", help="Neighbor graph of the unimodular lattices of one dimension")
    parser.add_argument("--dim", type=int, required=True, choices=sorted(DEFAULT_START))
    parser.add_argument("--start", help="start lattice (default e8^k)")
    parser.add_argument("--budget-min", type=float, default=None, help="wall clock budget in minutes")
    parser.add_argument("--max-nodes", type=int, default=200)
    parser.add_argument("--samples", type=int, default=None, help="classes of B/2B tried per even lattice")
    parser.add_argument("--dot", help="write the graph as DOT")
    parser.add_argument("--json", dest="output")
    parser.set_defaults(handler=run_classify)


def run_classify(args: argparse.Namespace) -> int:
    start = resolve_lattice(args.start or DEFAULT_START[args.dim])
    graph = classify_dimension(
        args.dim,
        start,
        samples=args.samples,
        max_nodes=args.max_nodes,
        rng=random.Random(settings.random_seed),
        time_budget=args.budget_min * 60 if args.budget_min else None,
    )
    document = graph.to_dict()
    document["checks"] = graph_checks(graph)
    document["meta"] = metadata(args, max_nodes=args.max_nodes, budget_min=args.budget_min)
    write_text(graph.to_dot(f"unimodular{args.dim}"), args.dot)
    emit(document, args.output)
    return 0 if graph.complete else BUDGET_EXIT

import argparse

from hyperlat.cli.common import emit, metadata, parse_int_vector, resolve_lattice, write_text
from hyperlat.core.exceptions import UsageError
from hyperlat.core.utils import parse_rational, to_jsonable
from hyperlat.models.lattice import VinbergDocument
from hyperlat.services.hyperbolic import vinberg


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("vinberg", help="Simple roots of a Lorentzian reflection group")
    parser.add_argument("--gram", "--lattice", dest="lattice", required=True, help="lattice file or name, e.g. II_17,1")
    parser.add_argument("--controlling", required=True, help="controlling vector of norm <= 0")
    parser.add_argument("--root-norms", default="2", help="comma separated subset of 1,2")
    parser.add_argument("--max-roots", type=int, default=None)
    parser.add_argument("--max-dist", default=None, help="largest distance examined")
    parser.add_argument("--dot", help="write the Coxeter diagram as DOT")
    parser.add_argument("--json", dest="output")
    parser.set_defaults(handler=run_vinberg)


def run_vinberg(args: argparse.Namespace) -> int:
    lattice = resolve_lattice(args.lattice)
    w = parse_int_vector(args.controlling)
    if len(w) != lattice.rank:
        raise UsageError(detail=f"controlling vector has {len(w)} coordinates, the lattice has rank {lattice.rank}")
    run = vinberg(
        lattice,
        w,
        root_norms=parse_int_vector(args.root_norms),
        max_roots=args.max_roots,
        max_distance=parse_rational(args.max_dist) if args.max_dist else None,
    )
    document = VinbergDocument.model_validate(to_jsonable({
        "lattice": lattice.label,
        "controlling": run.controlling,
        "roots": run.roots,
        "distances": run.distances,
        "step0": run.step0,
        "termination": run.termination,
        "finite_volume": run.finite_volume,
        "gram": run.gram,
        "meta": metadata(args),
    }))
    write_text(run.to_dot(), args.dot)
    emit(document, args.output)
    return 0

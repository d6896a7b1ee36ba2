import argparse

from hyperlat.cli.common import emit, metadata, resolve_lattice
from hyperlat.core.exceptions import UsageError
from hyperlat.core.utils import parse_rational, to_jsonable
from hyperlat.models.theta import ThetaDocument
from hyperlat.services.theta import decompose, theta_series


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("theta", help="Theta series coefficients, optionally decomposed")
    parser.add_argument("--lattice", required=True)
    parser.add_argument("--max-norm", required=True, help="largest norm counted")
    parser.add_argument("--decompose", action="store_true", help="solve for a_r (unimodular lattices)")
    parser.add_argument("--json", dest="output")
    parser.set_defaults(handler=run_theta)


def run_theta(args: argparse.Namespace) -> int:
    lattice = resolve_lattice(args.lattice)
    max_norm = parse_rational(args.max_norm)
    if max_norm < 0:
        raise UsageError(detail="--max-norm must be non-negative")
    a = characteristic = None
    if args.decompose:
        if max_norm.denominator != 1:
            raise UsageError(detail="--decompose needs an integral --max-norm")
        decomposition = decompose(lattice, int(max_norm))
        series = decomposition.theta
        a = decomposition.a
        if 24 <= lattice.rank < 32:
            characteristic = decomposition.characteristic_counts()
    else:
        series = theta_series(lattice, max_norm)
    document = ThetaDocument.model_validate(to_jsonable({
        "lattice": lattice.label,
        "max_norm": max_norm,
        "coeffs": series.to_dict()["coeffs"],
        "a": a,
        "characteristic": {str(k): v for k, v in characteristic.items()} if characteristic else None,
        "meta": metadata(args),
    }))
    emit(document, args.output)
    return 0

import argparse
from typing import Dict, List

from hyperlat.cli.common import emit, metadata, parse_vector, resolve_lattice
from hyperlat.core.exceptions import UsageError
from hyperlat.core.utils import parse_rational
from hyperlat.models.lattice import ShellsDocument, VectorShellRecord
from hyperlat.services.enumerate import vectors_in_ball


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("shells", help="Enumerate lattice vectors in a ball, grouped by norm")
    parser.add_argument("--lattice", required=True, help="lattice file, corpus name or root system")
    parser.add_argument("--radius-sq", required=True, help="exact squared radius, e.g. 4 or 9/2")
    parser.add_argument("--center", help="comma separated rational center in lattice coordinates")
    parser.add_argument("--counts-only", action="store_true", help="omit the vectors themselves")
    parser.add_argument("--json", dest="output", help="write the document here instead of stdout")
    parser.set_defaults(handler=run_shells)


def run_shells(args: argparse.Namespace) -> int:
    lattice = resolve_lattice(args.lattice)
    radius_sq = parse_rational(args.radius_sq)
    center = parse_vector(args.center)
    if center is not None and len(center) != lattice.rank:
        raise UsageError(detail=f"center has {len(center)} coordinates, the lattice has rank {lattice.rank}")
    by_norm: Dict = {}
    for x, dist in vectors_in_ball(lattice, radius_sq, center=center, with_norms=True):
        by_norm.setdefault(dist, []).append(list(x))
    shells: List[VectorShellRecord] = [
        VectorShellRecord(norm=str(d), count=len(vs), vectors=None if args.counts_only else vs)
        for d, vs in sorted(by_norm.items())
    ]
    document = ShellsDocument(
        lattice=lattice.label,
        center=[str(c) for c in center] if center is not None else None,
        radius_sq=str(radius_sq),
        shells=shells,
        meta=metadata(args),
    )
    emit(document, args.output)
    return 0

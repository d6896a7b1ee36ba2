import argparse
import sys

from hyperlat.cli.common import emit, metadata
from hyperlat.core.utils import to_jsonable
from hyperlat.models.e8 import E8OrbitsDocument
from hyperlat.services.e8orbits import e8_mod_n_orbits, enumerate_e8, format_table


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("e8-orbits", help="Weyl orbits of e8 vectors by alcove parameter")
    parser.add_argument("--max-n", type=int, default=6)
    parser.add_argument("--table", action="store_true", help="print the plain text table")
    parser.add_argument("--json", dest="output")
    parser.set_defaults(handler=run_e8_orbits)


def run_e8_orbits(args: argparse.Namespace) -> int:
    rows = enumerate_e8(args.max_n)
    table = format_table(rows)
    mod_n = {
        str(n): [{"x": row.label, "size": row.orbit_size // d} for row, d in e8_mod_n_orbits(n, rows)]
        for n in range(1, args.max_n + 1)
    }
    document = E8OrbitsDocument.model_validate(to_jsonable({
        "max_n": args.max_n,
        "rows": [r.to_dict() for r in rows],
        "mod_n": mod_n,
        "table": table,
        "meta": metadata(args),
    }))
    if args.table:
        sys.stdout.write(table)
    if args.output or not args.table:
        emit(document, args.output)
    return 0

import argparse
import random

from hyperlat.cli.common import emit, metadata
from hyperlat.core.config import NIEMEIER_SOURCES, settings
from hyperlat.core.utils import to_jsonable
from hyperlat.models.orbits import OrbitsDocument
from hyperlat.services.leech import niemeier_inventory
from hyperlat.services.orbits25 import (
    check_norm2_identities,
    check_norm4_identities,
    default_model,
    duality_report,
    enumerate_orbits,
    table_row,
)

IDENTITY_CHECKS = {-2: check_norm2_identities, -4: check_norm4_identities}


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("orbits", help="Orbits of vectors of norm 0, -2 or -4 in II_25,1")
    parser.add_argument("--norm", type=int, choices=(0, -2, -4), required=True)
    parser.add_argument("--max-height", type=int, default=None)
    parser.add_argument("--source", choices=NIEMEIER_SOURCES, default=None, help="how the Niemeier lattices are derived")
    parser.add_argument("--samples", type=int, default=None, help="random cusps sampled for the Niemeier inventory")
    parser.add_argument("--duality", action="store_true", help="group norm -2 root systems by the duality")
    parser.add_argument("--json", dest="output")
    parser.set_defaults(handler=run_orbits)


def run_orbits(args: argparse.Namespace) -> int:
    model = default_model()
    inventory = niemeier_inventory(
        model.leech, samples=args.samples, rng=random.Random(settings.random_seed), source=args.source
    )
    records = enumerate_orbits(args.norm, args.max_height, inventory=inventory, model=model)
    failures = {}
    check = IDENTITY_CHECKS.get(args.norm)
    if check is not None:
        for rec in records:
            for name, ok in check(rec).items():
                failures[name] = failures.get(name, 0) + (not ok)
    document = OrbitsDocument.model_validate(to_jsonable({
        "norm": args.norm,
        "max_height": args.max_height,
        "count": len(records),
        "rows": [table_row(r) for r in records],
        "records": [r.to_dict() for r in records],
        "identities": failures,
        "duality": duality_report(records) if args.duality else [],
        "meta": metadata(args, inventory_complete=inventory.seeded, missing=inventory.missing(), missing_cusps=inventory.missing_cusps()),
    }))
    emit(document, args.output)
    return 0

import argparse
import random

from hyperlat.cli.common import emit, metadata, resolve_lattice
from hyperlat.core.config import NIEMEIER_SOURCES, settings
from hyperlat.core.utils import to_jsonable
from hyperlat.models.leech import HolesDocument, LeechDocument
from hyperlat.services.corpus import CorpusStore
from hyperlat.services.enumerate import minimum
from hyperlat.services.leech import (
    deep_holes,
    halving_chain,
    holy_construction,
    leech_from_small,
    leech_lattice,
    niemeier_inventory,
    niemeier_record,
)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("leech", help="Construct the Leech lattice")
    parser.add_argument("--via", choices=("halving", "weyl", "holy"), default="weyl")
    parser.add_argument(
        "--seed-lattice",
        help="Niemeier lattice for halving/holy (default e8^3); small unimodular lattice for weyl",
    )
    parser.add_argument("--json", dest="output")
    parser.set_defaults(handler=run_leech)

    holes = subparsers.add_parser("deep-holes", help="Deep holes of the Leech lattice, one per Niemeier lattice with roots")
    holes.add_argument("--source", choices=NIEMEIER_SOURCES, default=None, help="how the Niemeier lattices are derived")
    holes.add_argument("--samples", type=int, default=0, help="random cusps sampled alongside the Niemeier inventory")
    holes.add_argument("--json", dest="output")
    holes.set_defaults(handler=run_deep_holes)


def run_leech(args: argparse.Namespace) -> int:
    chain = []
    seed = args.seed_lattice
    if args.via == "weyl":
        lattice = leech_from_small(resolve_lattice(seed)) if seed else leech_lattice(CorpusStore())
    else:
        record = niemeier_record(resolve_lattice(seed or "e8^3"))
        if args.via == "halving":
            chain = halving_chain(record)
            lattice = chain[-1].lattice.with_label("leech")
        else:
            chain = [record]
            lattice = holy_construction(record)
    document = LeechDocument.model_validate(to_jsonable({
        "via": args.via,
        "seed": seed,
        "chain": [r.to_dict() for r in chain],
        "minimum": minimum(lattice),
        "lattice": lattice.to_record().model_dump(),
        "meta": metadata(args),
    }))
    emit(document, args.output)
    return 0


def run_deep_holes(args: argparse.Namespace) -> int:
    inventory = niemeier_inventory(samples=args.samples, rng=random.Random(settings.random_seed), source=args.source)
    records = sorted((r for r in inventory.records.values() if r.h), key=lambda r: (r.h, r.name))
    rows = []
    for rec, hole in zip(records, deep_holes(records)):
        row = hole.to_dict()
        row["checks"] = hole.checks(rec.datum)
        rows.append(row)
    document = HolesDocument.model_validate(to_jsonable({
        "count": len(rows),
        "holes": rows,
        "missing": inventory.missing(),
        "meta": metadata(args, samples=args.samples, source=inventory.source),
    }))
    emit(document, args.output)
    return 0

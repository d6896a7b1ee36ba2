import argparse

from hyperlat.cli.common import emit
from hyperlat.core.exceptions import ValidationError
from hyperlat.models.corpus import CorpusIndex
from hyperlat.services.corpus import CorpusStore


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("corpus", help="Inspect the lattice corpus under HYPERLAT_CACHE")
    actions = parser.add_subparsers(dest="action", required=True)
    actions.add_parser("list", help="names of the stored lattices").set_defaults(handler=run_list)
    show = actions.add_parser("show", help="print one entry")
    show.add_argument("name")
    show.set_defaults(handler=run_show)
    verify = actions.add_parser("verify", help="rebuild an entry and compare")
    verify.add_argument("name")
    verify.set_defaults(handler=run_verify)


def run_list(args: argparse.Namespace) -> int:
    emit(CorpusIndex(entries=CorpusStore().names()))
    return 0


def run_show(args: argparse.Namespace) -> int:
    emit(CorpusStore().get(args.name))
    return 0


def run_verify(args: argparse.Namespace) -> int:
    ok = CorpusStore().verify(args.name)
    if not ok:
        raise ValidationError(detail=f"rebuilt {args.name!r} differs from the stored lattice")
    emit({"name": args.name, "identical": True})
    return 0

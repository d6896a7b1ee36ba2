import argparse

from hyperlat.cli import classify, corpus, e8, leech, orbits, shells, theta, verify, vinberg
from hyperlat.cli.common import add_budget_arguments
from hyperlat.core.config import LOG_LEVELS, settings

# Import all command modules
COMMANDS = (shells, vinberg, classify, leech, orbits, theta, e8, verify, corpus)


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperlat",
        description="Exact arithmetic for integral lattices, Lorentzian reflection groups and the Leech lattice",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.app_version}")
    parser.add_argument("--log-level", choices=sorted(LOG_LEVELS), default=None)
    parser.add_argument("--log-json", action="store_true", default=None, help="one JSON object per log record")
    parser.add_argument("--log-file", default=None)
    parser.add_argument("--system-info", action="store_true", help="add host details to the output metadata")
    add_budget_arguments(parser)

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    # Include all command modules
    for module in COMMANDS:
        module.register(subparsers)
    return parser

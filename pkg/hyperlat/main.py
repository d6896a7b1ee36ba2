"""Application factory for the ``hyperlat`` command line."""

import argparse
from typing import Optional, Sequence

from hyperlat.cli.common import apply_budgets, metadata
from hyperlat.cli.router import create_parser
from hyperlat.core.error_handlers import handle_cli_exception, with_error_handling
from hyperlat.core.exceptions import BudgetExceededError
from hyperlat.core.logging import app_logger, setup_logging
from hyperlat.core.utils import dump_json


def create_cli() -> argparse.ArgumentParser:
    return create_parser()


def _write_partial(args: argparse.Namespace, exc: BudgetExceededError) -> None:
    path = getattr(args, "output", None)
    if not path:
        return
    dump_json({"complete": False, "partial": exc.partial, "detail": exc.detail, "meta": metadata(args)}, path)
    app_logger.warning(f"budget exceeded; partial result written to {path}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run the command and return the exit status.

    0 on success, 1 when a verification fails, 2 for usage errors, 3 when
    a budget ran out (after writing any partial artifact), 4 to 6 for the
    other domain errors.
    """
    parser = create_cli()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    setup_logging(args.log_level, args.log_json, args.log_file)
    try:
        apply_budgets(args)
        app_logger.debug(f"running {args.command}")
        return with_error_handling(args.handler)(args)
    except BudgetExceededError as exc:
        _write_partial(args, exc)
        return handle_cli_exception(exc)
    except Exception as exc:
        return handle_cli_exception(exc)

import functools
import sys
import traceback
from typing import Any, Callable, Dict, List, Optional, TextIO, Union

import pydantic

from hyperlat.core.exceptions import ErrorDetail, ErrorResponse, HyperlatException, ValidationError
from hyperlat.core.logging import app_logger


def create_error_response(
    exit_code: int,
    detail: Union[str, List[ErrorDetail]],
    context: Optional[Dict[str, Any]] = None
) -> ErrorResponse:
    """Create a standardized error report.

    Args:
        exit_code: Process exit code
        detail: Error detail message or list of error details
        context: Optional extra data (budgets, partial results)

    Returns:
        ErrorResponse ready to be serialized
    """
    return ErrorResponse(detail=detail, exit_code=exit_code, context=context or {})


def as_hyperlat_exception(exc: BaseException) -> HyperlatException:
    """Map any exception onto the domain hierarchy."""
    if isinstance(exc, HyperlatException):
        return exc
    if isinstance(exc, pydantic.ValidationError):
        errors = [
            {"loc": [str(p) for p in e.get("loc", [])], "msg": e.get("msg", ""), "type": e.get("type", "")}
            for e in exc.errors()
        ]
        return ValidationError(detail="Invalid input document", errors=errors)
    return HyperlatException(exit_code=1, detail=f"{exc.__class__.__name__}: {exc}")


def handle_cli_exception(exc: BaseException, stream: Optional[TextIO] = None) -> int:
    """Write the JSON error report for ``exc`` and return its exit code."""
    stream = stream or sys.stderr
    mapped = as_hyperlat_exception(exc)
    if isinstance(mapped, ValidationError) and mapped.errors:
        detail: Union[str, List[ErrorDetail]] = [
            ErrorDetail(loc=e.get("loc", []), msg=e.get("msg", mapped.detail), type=e.get("type", "validation_error"))
            for e in mapped.errors
        ]
    else:
        detail = mapped.detail
    context = dict(mapped.context)
    partial = getattr(mapped, "partial", None)
    if partial is not None:
        context["partial"] = partial
    response = create_error_response(mapped.exit_code, detail, context)
    stream.write(response.model_dump_json() + "\n")
    return mapped.exit_code


def with_error_handling(func: Callable) -> Callable:
    """Decorator to add error handling to any function.

    Domain exceptions are logged and re-raised; anything else is logged
    with its traceback and wrapped into a HyperlatException.

    Args:
        func: The function to wrap with error handling

    Returns:
        Wrapped function with error handling
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except HyperlatException as exc:
            app_logger.error(f"{exc.__class__.__name__} in {func.__name__}: {exc.detail}")
            raise
        except pydantic.ValidationError as exc:
            app_logger.warning(f"Validation error in {func.__name__}: {exc}")
            raise as_hyperlat_exception(exc) from exc
        except Exception as exc:
            app_logger.error(
                f"Unhandled exception in {func.__name__}: {str(exc)}",
                extra={"traceback": traceback.format_exc()}
            )
            raise HyperlatException(exit_code=1, detail=f"{exc.__class__.__name__}: {exc}") from exc

    return wrapper

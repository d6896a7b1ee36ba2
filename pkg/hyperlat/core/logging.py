import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import Any, Dict, Optional

from pythonjsonlogger.jsonlogger import JsonFormatter

from hyperlat.core.config import LOG_LEVELS, settings

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"

# Create a logger for the package; stdout is reserved for JSON artifacts
app_logger = logging.getLogger("hyperlat")
app_logger.setLevel(settings.log_level)
app_logger.propagate = False

formatter: logging.Formatter = logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT)

console_handler = logging.StreamHandler(sys.stderr)
console_handler.setFormatter(formatter)
app_logger.addHandler(console_handler)

file_handler: Optional[RotatingFileHandler] = None


def _make_formatter(json_format: bool) -> logging.Formatter:
    if json_format:
        return JsonFormatter(LOG_FORMAT, datefmt=LOG_DATEFMT)
    return logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT)


def setup_logging(
    level: Optional[str] = None,
    json_format: Optional[bool] = None,
    log_file: Optional[str] = None,
) -> logging.Logger:
    """(Re)configure the package logger.

    Args:
        level: Log level name; defaults to the configured level
        json_format: Emit one JSON object per record (python-json-logger)
        log_file: Path of a rotating log file (10 MB, 5 backups)

    Returns:
        The package logger
    """
    global formatter, file_handler

    level = (level or settings.log_level).upper()
    if level in LOG_LEVELS:
        app_logger.setLevel(getattr(logging, level))

    if json_format is None:
        json_format = settings.log_json
    formatter = _make_formatter(json_format)
    console_handler.setFormatter(formatter)

    log_file = log_file or settings.log_file
    if file_handler is not None:
        app_logger.removeHandler(file_handler)
        file_handler.close()
        file_handler = None
    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=10 * 1024 * 1024,  # 10 MB
            backupCount=5,
        )
        file_handler.setFormatter(formatter)
        app_logger.addHandler(file_handler)

    return app_logger


def get_logger(name: str, level: Optional[str] = None) -> logging.Logger:
    """Create a logger for a specific module.

    Module loggers live under ``hyperlat`` and inherit its handlers.

    Args:
        name: The name of the module (typically __name__)
        level: Optional log level override

    Returns:
        A configured logger instance
    """
    if not name.startswith("hyperlat"):
        name = f"hyperlat.{name}"
    logger = logging.getLogger(name)
    if level and level.upper() in LOG_LEVELS:
        logger.setLevel(getattr(logging, level.upper()))
    return logger


def log_structured(logger: logging.Logger, level: str, message: str, data: Dict[str, Any]) -> None:
    """Log a message with structured data.

    With the JSON formatter the keys of ``data`` become top-level fields;
    the plain formatter appends them to the message.

    Args:
        logger: The logger instance
        level: The log level (debug, info, warning, error, critical)
        message: The log message
        data: Dictionary of structured data to include
    """
    method = getattr(logger, level.lower(), None)
    if method is None:
        method = logger.info
    if isinstance(formatter, JsonFormatter):
        method(message, extra=data)
    else:
        method(f"{message} - {data}")


if settings.log_file or settings.log_json:
    setup_logging()

"""Core module for hyperlat.

This module contains the ambient functionality shared by every service:
- Configuration management
- Logging
- Exception handling
- Utilities (deterministic JSON, hashing, cache location)
- Run metadata

These components are imported by the services and the command line.
"""

# This directory contains modules for:
# - config.py: Settings, budgets and environment profiles
# - logging.py: Logging setup and configuration
# - exceptions.py: Domain exception classes and error reports
# - error_handlers.py: Error handling utilities for library and CLI code
# - utils.py: Utility functions
# - health.py: Host information and run metadata

from hyperlat.core.config import settings, get_settings
from hyperlat.core.logging import setup_logging, app_logger, get_logger, log_structured
from hyperlat.core.exceptions import (
    HyperlatException,
    ValidationError,
    UsageError,
    BudgetExceededError,
    SingularLatticeError,
    IndefiniteLatticeError,
    NotIsotropicError,
    NotPrimitiveError,
    ConstructionError,
    ConfigurationError,
)
from hyperlat.core.error_handlers import create_error_response, handle_cli_exception, with_error_handling
from hyperlat.core.utils import dump_json, load_json, content_hash, slug, get_cache_dir
from hyperlat.core.health import HealthCheck, run_metadata

__all__ = [
    "settings",
    "get_settings",
    "setup_logging",
    "app_logger",
    "get_logger",
    "log_structured",
    "HyperlatException",
    "ValidationError",
    "UsageError",
    "BudgetExceededError",
    "SingularLatticeError",
    "IndefiniteLatticeError",
    "NotIsotropicError",
    "NotPrimitiveError",
    "ConstructionError",
    "ConfigurationError",
    "create_error_response",
    "handle_cli_exception",
    "with_error_handling",
    "dump_json",
    "load_json",
    "content_hash",
    "slug",
    "get_cache_dir",
    "HealthCheck",
    "run_metadata",
]

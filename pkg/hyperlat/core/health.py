import os
import platform
import sys
import time
from typing import Any, Dict, Optional

import psutil

from hyperlat.core.config import settings
from hyperlat.core.logging import app_logger


class HealthCheck:
    """Host information attached to every computation report.

    Long enumerations are memory bound, so the process footprint is
    recorded next to the budgets that produced an artifact.
    """

    @staticmethod
    def check_system() -> Dict[str, Any]:
        """Check system resources (CPU count, memory).

        Returns:
            Dict with system information
        """
        try:
            memory = psutil.virtual_memory()
            process = psutil.Process(os.getpid())
            process_memory_mb = process.memory_info().rss / (1024 * 1024)  # Convert to MB

            return {
                "status": "warning" if memory.percent > 90 else "healthy",
                "cpu_count": psutil.cpu_count(logical=True),
                "memory": {
                    "total_mb": round(memory.total / (1024 * 1024), 2),
                    "percent": memory.percent,
                },
                "process": {
                    "memory_mb": round(process_memory_mb, 2),
                },
                "platform": platform.platform(),
                "python": sys.version.split()[0],
            }
        except Exception as e:
            app_logger.error(f"Error checking system health: {e}")
            return {
                "status": "error",
                "message": str(e),
            }


def effective_budgets(overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    budgets = {
        "enumeration_budget": settings.enumeration_budget,
        "isometry_budget": settings.isometry_budget,
        "vinberg_max_roots": settings.vinberg_max_roots,
        "type_search_cap": settings.type_search_cap,
        "workers": settings.workers,
        "random_seed": settings.random_seed,
    }
    for key, value in (overrides or {}).items():
        if value is not None:
            budgets[key] = value
    return budgets


def run_metadata(budgets: Optional[Dict[str, Any]] = None, include_system: bool = True) -> Dict[str, Any]:
    """Metadata block embedded in command outputs.

    Args:
        budgets: Budget values that differ from the settings
        include_system: Attach host information; disabled for byte-stable artifacts

    Returns:
        Dict with version, budgets and (optionally) system information
    """
    meta: Dict[str, Any] = {
        "app": settings.app_name,
        "version": settings.app_version,
        "budgets": effective_budgets(budgets),
    }
    if include_system:
        meta["timestamp"] = round(time.time(), 3)
        meta["system"] = HealthCheck.check_system()
    return meta

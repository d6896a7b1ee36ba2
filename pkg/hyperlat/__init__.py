"""hyperlat: an exact-arithmetic laboratory for unimodular and Lorentzian lattices."""

from hyperlat.core.config import settings

__version__ = settings.app_version

__all__ = ["__version__"]

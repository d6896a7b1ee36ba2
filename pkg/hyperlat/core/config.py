"""
Configuration settings for hyperlat
Handles environment variables, computation budgets and cache locations
"""

import os
from pathlib import Path
from typing import Optional

from pydantic import AliasChoices, Field, field_validator
from pydantic import ValidationError as PydanticValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from hyperlat.core.exceptions import ConfigurationError

DEFAULT_CACHE_DIR = "~/.cache/hyperlat"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
NIEMEIER_SOURCES = ("neighbors", "glue")


class Settings(BaseSettings):
    """Laboratory settings with environment variable support"""

    # Application Info
    app_name: str = "hyperlat"
    app_version: str = "0.4.0"
    app_description: str = "Exact-arithmetic laboratory for unimodular and Lorentzian lattices"

    # Storage
    cache_dir: str = Field(
        DEFAULT_CACHE_DIR,
        validation_alias=AliasChoices("HYPERLAT_CACHE", "HYPERLAT_CACHE_DIR", "cache_dir"),
    )

    # Budgets
    enumeration_budget: int = 10**8  # vectors emitted by one enumeration
    isometry_budget: int = 10**6  # backtracking nodes per isometry test
    vinberg_max_roots: int = 64
    neighbor_samples: int = 48  # random classes of B/2B tried per lattice
    type_search_cap: int = 4
    niemeier_source: str = "neighbors"  # how the Niemeier inventory is derived
    classification_time_budget: Optional[float] = None  # seconds per neighbor classification

    # Execution
    workers: int = 1
    random_seed: int = 0

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None
    log_json: bool = False

    model_config = SettingsConfigDict(
        env_prefix="HYPERLAT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
        populate_by_name=True,
    )

    @field_validator("log_level", mode="before")
    @classmethod
    def parse_log_level(cls, v):
        level = str(v).upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"Unknown log level: {v}")
        return level

    @field_validator("log_json", mode="before")
    @classmethod
    def parse_log_json(cls, v):
        if isinstance(v, str):
            return v.lower() in ("true", "1", "yes", "on")
        return v

    @field_validator("workers")
    @classmethod
    def validate_workers(cls, v):
        if v < 1:
            raise ValueError("workers must be at least 1")
        return v

    @field_validator("niemeier_source")
    @classmethod
    def validate_niemeier_source(cls, v):
        if v not in NIEMEIER_SOURCES:
            raise ValueError(f"niemeier_source must be one of {', '.join(NIEMEIER_SOURCES)}")
        return v

    @field_validator("enumeration_budget", "isometry_budget", "vinberg_max_roots", "neighbor_samples")
    @classmethod
    def validate_budget(cls, v):
        if v <= 0:
            raise ValueError("budgets must be positive")
        return v

    @property
    def cache_path(self) -> Path:
        return Path(self.cache_dir).expanduser()


# Environment-specific configurations
class DevelopmentSettings(Settings):
    """Development environment settings"""
    log_level: str = "INFO"


class ProductionSettings(Settings):
    """Production environment settings"""

    @field_validator("cache_dir")
    @classmethod
    def validate_cache_dir(cls, v):
        if not Path(v).expanduser().is_absolute():
            raise ValueError("cache_dir must be an absolute path in production")
        return v


class TestingSettings(Settings):
    """Testing environment settings"""
    niemeier_source: str = "glue"
    enumeration_budget: int = 5 * 10**6
    isometry_budget: int = 2 * 10**5
    workers: int = 1
    log_level: str = "WARNING"

    @field_validator("workers")
    @classmethod
    def force_single_worker(cls, v):
        return 1


def get_settings() -> Settings:
    """Get settings based on environment

    Raises:
        ConfigurationError: An environment variable or .env entry is invalid
    """
    env = os.getenv("HYPERLAT_ENV", "development").lower()
    profile = {"production": ProductionSettings, "testing": TestingSettings}.get(env, DevelopmentSettings)
    try:
        return profile()
    except PydanticValidationError as e:
        raise ConfigurationError(
            detail=f"invalid {env} settings",
            context={"errors": [{"loc": [str(p) for p in err["loc"]], "msg": err["msg"]} for err in e.errors()]},
        ) from e


# Use environment-specific settings
settings = get_settings()

# core/config.py
import os
from pathlib import Path

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


def default_cache_dir() -> str:
    """User cache directory for the Kac cache"""
    base = os.getenv("XDG_CACHE_HOME") or str(Path.home() / ".cache")
    return str(Path(base) / "quiverdt")


class Settings(BaseSettings):
    # Application
    APP_NAME: str = "quiverdt"
    VERSION: str = "1.0.0"
    DEBUG: bool = False

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_JSON: bool = True

    # Oracle capacity
    MAX_REPRESENTATIONS: int = 10**7
    MAX_GROUP_ORDER: int = 10**6
    MAX_ENDOMORPHISM_SIZE: int = 2**20
    ORBIT_METHOD: str = "mass"
    ORACLE_WORKERS: int = 1

    # Series
    DEFAULT_CUTOFF: int = 6
    GENERICITY_HORIZON: int = 12

    # Kac cache
    KAC_CACHE_DIR: str = default_cache_dir()
    KAC_CACHE_ENABLED: bool = True

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True, extra="ignore")

    @field_validator(
        "MAX_REPRESENTATIONS",
        "MAX_GROUP_ORDER",
        "MAX_ENDOMORPHISM_SIZE",
        "ORACLE_WORKERS",
        "DEFAULT_CUTOFF",
        "GENERICITY_HORIZON",
    )
    @classmethod
    def positive(cls, v: int) -> int:
        """Caps and sizes must be positive"""
        if v < 1:
            raise ValueError("must be a positive integer")
        return v

    @field_validator("ORBIT_METHOD")
    @classmethod
    def known_method(cls, v: str) -> str:
        if v not in ("canonical", "mass"):
            raise ValueError("ORBIT_METHOD must be 'canonical' or 'mass'")
        return v

    @field_validator("LOG_LEVEL")
    @classmethod
    def upper_level(cls, v: str) -> str:
        return v.upper()


settings = Settings()

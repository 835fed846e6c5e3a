"""
This module defines the base settings for matfn.
It includes the application name, logging options and the numerical policy
knobs (residual acceptance, rank and cluster thresholds, ISS limits).
Environment-specific subclasses live in app.config.settings.
"""
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class MatfnSettings(BaseSettings):
    """
    Base settings class for matfn.
    Every field can be overridden by a MATFN_-prefixed environment variable
    or by an entry in the .env file.
    """
    model_config = SettingsConfigDict(env_prefix="MATFN_", env_file=".env", extra="ignore")

    APP_NAME: str = "matfn"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[str] = None

    # acceptance residual for every constructed form or function value
    RESIDUAL_TOL: float = 1e-10
    # multiplies n * eps * ||M||_1 when no explicit rank_tol is given
    RANK_TOL_SCALE: float = 10.0
    # eigenvalues within this many cluster_tol of the negative axis are flagged
    BORDERLINE_FACTOR: float = 1e3

    ISS_K_MAX: int = 40
    ISS_CLOSENESS: float = 0.25

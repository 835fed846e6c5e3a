# settings/prod.py
"""
This module defines the production settings for matfn.
It includes configuration variables such as APP_NAME, DEBUG, and LOG_LEVEL.
"""
from app.config.config import MatfnSettings


class ProdSettings(MatfnSettings):
    """
    Production settings for matfn, used when the CLI runs inside scripts
    and test harnesses.
    """
    APP_NAME: str = "matfn - Prod"
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"

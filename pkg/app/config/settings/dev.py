"""
This module defines the development settings for matfn.
It includes configuration variables such as APP_NAME, DEBUG and LOG_LEVEL.
"""
from app.config.config import MatfnSettings


class DevSettings(MatfnSettings):
    """
    Development settings for matfn.
    Logs verbosely to stderr; a log file is written only when MATFN_LOG_FILE is set.
    """
    APP_NAME: str = "matfn - Dev"
    DEBUG: bool = True
    LOG_LEVEL: str = "DEBUG"

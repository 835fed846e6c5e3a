# settings/test.py
"""
This module defines the test settings for matfn.
"""
from app.config.config import MatfnSettings


class TestSettings(MatfnSettings):
    """
    Test settings for matfn. No log file, warnings and above only.
    """
    APP_NAME: str = "matfn - Test"
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"

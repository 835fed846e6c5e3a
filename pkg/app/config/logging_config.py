"""
This module configures the logging for matfn.
It sets the log level, format, and handlers based on the application settings.
Reports go to stdout, so log records are written to stderr (and to
LOG_FILE when one is configured).
"""

import logging
import sys
from app.config.settings import settings

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"

# Remove all handlers associated with the root logger object (to avoid duplicate logs)
for handler in logging.root.handlers[:]:
    logging.root.removeHandler(handler)


# Fallback to INFO if LOG_LEVEL is empty or invalid
level_name = getattr(settings, "LOG_LEVEL", "INFO") or "INFO"
level = getattr(logging, level_name.upper(), logging.INFO)

handlers = [logging.StreamHandler(sys.stderr)]
if settings.LOG_FILE:
    handlers.append(logging.FileHandler(settings.LOG_FILE, mode='a'))

logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers)

logger = logging.getLogger(settings.APP_NAME)

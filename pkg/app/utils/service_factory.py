"""
Service Factory for creating matfn router instances.
Provides a clean interface for service instantiation and configuration.
"""

import logging

from app.config.logging_config import logger
from app.router.matfn_router import MatfnRouter

LIBRARY_LOGGER = "app"


class ServiceFactory:
    """Factory class for creating matfn router instances"""

    @staticmethod
    def create_matfn_service(custom_logger=None):
        """
        Create a MatfnRouter with an optional custom logger.

        Args:
            custom_logger: Optional custom logger instance

        Returns:
            MatfnRouter: Configured router
        """
        service_logger = custom_logger or logger
        return MatfnRouter(service_logger)

    @staticmethod
    def create_matfn_service_with_config(log_level=None):
        """
        Create a MatfnRouter whose logger runs at a custom level.

        Args:
            log_level: Optional level name such as "DEBUG"

        Returns:
            MatfnRouter: Configured router
        """
        if log_level:
            level = getattr(logging, log_level.upper())
            # app.* library loggers otherwise inherit the root level from settings
            logging.getLogger(LIBRARY_LOGGER).setLevel(level)
            custom_logger = logging.getLogger(f"{logger.name}.custom")
            custom_logger.setLevel(level)
            return MatfnRouter(custom_logger)
        return ServiceFactory.create_matfn_service()
